import logging
import sys
from pathlib import Path

from django.core.management.base import BaseCommand

from specht_webs.diagrams import ForkDiagram
from specht_webs.specht import check_n
from specht_webs.webs import Web

logger = logging.getLogger(__name__)

INVALID_INPUT = 2
CHECK_FAILED = 1


class SpechtCommand(BaseCommand):
    """
    Shared surface of the specht commands: ``--format`` and ``--verbose``, and a ``run`` method
    returning the exit status. Invalid input is logged and exits with status 2.
    """

    formats = ("json", "text")
    takes_n = False
    stealth_options = ("stdin",)

    def add_arguments(self, parser):
        if self.takes_n:
            parser.add_argument("n", nargs="?", type=int, help="Number of columns of the tableaux")
            parser.add_argument("--n", dest="n_option", type=int, help="Same as the positional N")
        parser.add_argument("--format", choices=self.formats, default=self.formats[0], help="Output format")
        parser.add_argument("--verbose", action="store_true", help="Log every step at DEBUG level")

    def get_n(self, options) -> int:
        n, alias = options.get("n"), options.get("n_option")
        if n is None and alias is None:
            raise ValueError("Give N, either positionally or with --n")
        if n is not None and alias is not None and n != alias:
            raise ValueError(f"N given twice with different values: {n} and {alias}")
        n = n if n is not None else alias
        check_n(n)
        return n

    def check_size(self, item: ForkDiagram | Web) -> None:
        """Bound a fork diagram by its n and a web by its boundary points, three per column."""
        check_n(item.n if isinstance(item, ForkDiagram) else max(1, -(-item.boundary_count // 3)))

    def read_input(self, path: str | None, options) -> str:
        if path is None or path == "-":
            return options.get("stdin", sys.stdin).read()
        try:
            return Path(path).read_text()
        except OSError as e:
            raise ValueError(f"Cannot read {path}: {e}") from e

    def emit(self, text: str) -> None:
        self.stdout.write(text.rstrip("\n"))

    def run(self, **options) -> int:
        raise NotImplementedError

    def handle(self, *args, **options):
        package_logger = logging.getLogger("specht_webs")
        original_level = package_logger.level
        if options["verbose"]:
            package_logger.setLevel(logging.DEBUG)

        try:
            status = self.run(**options)
        except (KeyError, ValueError) as e:
            logger.error(str(e))
            status = INVALID_INPUT
        finally:
            package_logger.setLevel(original_level)

        if status:
            raise SystemExit(status)
