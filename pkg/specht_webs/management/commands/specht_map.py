from specht_webs.diagrams import phi, psi
from specht_webs.serializers import dumps
from specht_webs.specht import check_n
from specht_webs.tableaux import Tableau

from ._base import SpechtCommand

MAPS = {"phi": phi, "psi": psi}


class Command(SpechtCommand):
    help = "Send a standard tableau to its polytabloid diagram (phi) or its M-diagram (psi)"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("tableau", help="JSON tableau or rows like '1 4/2 5/3 6'")
        parser.add_argument("--to", choices=sorted(MAPS), required=True, help="Which bijection to apply")

    def run(self, **options) -> int:
        tableau = Tableau.parse(options["tableau"])
        check_n(tableau.n)
        diagram = MAPS[options["to"]](tableau)
        self.emit(dumps(diagram.to_json()) if options["format"] == "json" else str(diagram))
        return 0
