from specht_webs.diagrams import ForkDiagram
from specht_webs.serializers import diagram_sum_json, dumps, load_item
from specht_webs.specht import expand_in_m, webs_to_m
from specht_webs.webs import reduce, web_of_fork

from ._base import SpechtCommand


class Command(SpechtCommand):
    help = "Expand a fork diagram or a web in M-diagrams or in non-elliptic webs"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("path", nargs="?", default="-", help="JSON file to read, or - for standard input")
        parser.add_argument("--to", choices=["M", "W"], required=True, help="Basis to expand in")

    def run(self, **options) -> int:
        item = load_item(self.read_input(options["path"], options))
        target = options["to"]
        self.check_size(item)

        if isinstance(item, ForkDiagram):
            result = expand_in_m(item) if target == "M" else web_of_fork(item)
        else:
            reduced = reduce(item)
            if target == "W":
                result = reduced
            else:
                if item.boundary_count % 3:
                    raise ValueError(f"A web with {item.boundary_count} boundary points has no M-expansion")
                result = webs_to_m(reduced, item.boundary_count // 3)

        if options["format"] == "text":
            self.emit(str(result))
        elif target == "M":
            self.emit(dumps(diagram_sum_json(result)))
        else:
            self.emit(dumps(result.to_json()))
        return 0
