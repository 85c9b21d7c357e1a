import logging

from specht_webs.orders import ORDERS
from specht_webs.registry import registry
from specht_webs.serializers import dumps
from specht_webs.specht import finest_order_report, is_unitriangular, positivity_scan, transition_matrix

from ._base import SpechtCommand

logger = logging.getLogger(__name__)


class Command(SpechtCommand):
    help = "Print the transition matrix between two bases, with its triangularity report"
    takes_n = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--from", dest="source", required=True, help="Source basis: P, M or W")
        parser.add_argument("--to", dest="target", required=True, help="Target basis: P, M or W")
        parser.add_argument("--order", choices=sorted(ORDERS), default="weak", help="Partial order to check against")
        parser.add_argument("--positivity", action="store_true", help="Also list the negative entries of P -> W")

    def run(self, **options) -> int:
        n = self.get_n(options)
        keys = [basis.key for basis in registry.get_all_bases()]
        for key in (options["source"], options["target"]):
            if key not in keys:
                raise KeyError(f"Unknown basis {key!r}; choose from {keys}")

        matrix = transition_matrix(options["source"], options["target"], n, order=options["order"])
        report = finest_order_report(matrix)
        unitriangular = is_unitriangular(matrix)
        negatives = positivity_scan(n) if options["positivity"] else None
        logger.info(f"{matrix.source} -> {matrix.target} for n={n}: unitriangular={unitriangular}")

        if options["format"] == "json":
            data = matrix.to_json()
            data["determinant"] = matrix.determinant()
            data["unitriangular"] = unitriangular
            data["finest_order"] = report.to_json()
            if negatives is not None:
                data["negative_entries"] = [
                    {"row": row.to_json()["rows"], "column": column.to_json()["rows"], "value": value}
                    for row, column, value in negatives
                ]
            self.emit(dumps(data))
            return 0

        lines = [matrix.to_text(), "", f"determinant: {matrix.determinant()}", f"unitriangular: {unitriangular}"]
        contained = [name for name, inside in sorted(report.contained_in.items()) if inside]
        lines.append(f"finest order: acyclic={report.acyclic}, inside {', '.join(contained) or 'no registered order'}")
        if negatives is not None:
            lines.append(f"negative P -> W entries: {len(negatives)}")
            lines.extend(f"  ({row}) ({column}): {value}" for row, column, value in negatives)
        self.emit("\n".join(lines))
        return 0
