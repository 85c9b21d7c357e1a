from specht_webs.rendering import render
from specht_webs.serializers import load_item

from ._base import SpechtCommand


class Command(SpechtCommand):
    help = "Draw a fork diagram or a web as SVG or TikZ"
    formats = ("svg", "tikz")

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("path", nargs="?", default="-", help="JSON file to read, or - for standard input")

    def run(self, **options) -> int:
        item = load_item(self.read_input(options["path"], options))
        self.check_size(item)
        self.emit(render(item, options["format"]))
        return 0
