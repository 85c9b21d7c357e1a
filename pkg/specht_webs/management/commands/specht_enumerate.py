import logging
from typing import Any

from specht_webs.diagrams import psi
from specht_webs.registry import registry
from specht_webs.serializers import dumps
from specht_webs.specht import check_n, web_of_tableau
from specht_webs.tableaux import enumerate_syt

from ._base import SpechtCommand

logger = logging.getLogger(__name__)

WHAT = ("syt", "m", "webs", "all")


class Command(SpechtCommand):
    help = "List the standard tableaux, M-diagrams or non-elliptic webs of shape (n, n, n)"
    takes_n = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--what", choices=WHAT, default="syt", help="Which family to list")

    def run(self, **options) -> int:
        n = self.get_n(options)
        check_n(n)
        what = options["what"]
        tableaux = enumerate_syt(n)
        kinds = ["syt", "m", "webs"] if what == "all" else [what]
        logger.info(f"Listing {', '.join(kinds)} for n={n}")

        if options["format"] == "json":
            data: dict[str, Any] = {"n": n, "count": len(tableaux)}
            if "syt" in kinds:
                data["syt"] = [tableau.to_json()["rows"] for tableau in tableaux]
            if "m" in kinds:
                data["m"] = [registry.get_basis("M").element_json(tableau)["arcs"] for tableau in tableaux]
            if "webs" in kinds:
                data["webs"] = [registry.get_basis("W").element_json(tableau) for tableau in tableaux]
            self.emit(dumps(data))
            return 0

        lines = [f"n={n} count={len(tableaux)}"]
        for k, tableau in enumerate(tableaux):
            columns = []
            if "syt" in kinds:
                columns.append(str(tableau))
            if "m" in kinds:
                columns.append(str(psi(tableau)))
            if "webs" in kinds:
                columns.append(str(web_of_tableau(tableau)))
            lines.append(f"{k:>4}  " + "  ".join(columns))
        self.emit("\n".join(lines))
        return 0
