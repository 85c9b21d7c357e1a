import logging

from specht_webs.checks import CHECKS, run_checks
from specht_webs.serializers import dumps

from ._base import CHECK_FAILED, SpechtCommand

logger = logging.getLogger(__name__)


class Command(SpechtCommand):
    help = "Run the consistency checks for shape (n, n, n); exits with status 1 if any fails"
    takes_n = True
    formats = ("text", "json")

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--seed", type=int, help="Seed for the sampled checks")
        parser.add_argument("--limit", type=int, help="At most this many samples per sampled check")
        parser.add_argument("--only", nargs="+", choices=list(CHECKS), help="Run only these checks")

    def run(self, **options) -> int:
        n = self.get_n(options)
        if options["limit"] is not None and options["limit"] < 1:
            raise ValueError(f"--limit must be positive, got {options['limit']}")
        results = run_checks(n, seed=options["seed"], limit=options["limit"], names=options["only"])
        passed = all(result.passed for result in results)

        if options["format"] == "json":
            self.emit(dumps({"n": n, "passed": passed, "checks": [result.to_json() for result in results]}))
        else:
            lines = [
                f"{'PASS' if result.passed else 'FAIL'} {result.name}" + (f": {result.detail}" if result.detail else "")
                for result in results
            ]
            self.emit("\n".join(lines))

        if passed:
            logger.info(f"All {len(results)} checks passed for n={n}")
            return 0
        return CHECK_FAILED
