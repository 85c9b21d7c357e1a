from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Any, Callable

from django.conf import settings

from .bases import MDiagramBasis
from .diagrams import (
    ForkDiagram,
    all_fork_diagrams,
    boundary_word_of,
    crossing_pairs,
    is_m_diagram,
    is_polytabloid,
    phi,
    psi,
    random_fork_diagram,
    routing,
    tableau_of,
)
from .lincomb import LinComb
from .orders import boundary_leq
from .registry import registry
from .specht import (
    check_n,
    check_representation,
    expand_in_m,
    finest_order_report,
    is_unitriangular,
    measure,
    resolve_local,
    transition_matrix,
    web_index,
)
from .tableaux import (
    Tableau,
    act_tableau,
    all_words,
    count_syt,
    enumerate_syt,
    inversions,
    leq_weak,
    predecessors,
    sigma_of,
    superstandard,
    word_of,
)
from .webs import (
    CrossingDiagram,
    PlanarMap,
    Web,
    WebSum,
    act_web,
    is_non_elliptic,
    reduce,
    resolve_crossing,
    stack_crossing,
    superstandard_web,
    web_of_fork,
)

logger = logging.getLogger(__name__)

LEMMA_MAX_COLUMNS = 4


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class CheckContext:
    n: int
    rng: random.Random
    confluence_samples: int
    oracle_samples: int


CheckFunction = Callable[[CheckContext], CheckResult]
CHECKS: dict[str, CheckFunction] = {}


def check(name: str) -> Callable[[CheckFunction], CheckFunction]:
    """
    Decorator that adds a named check to the suite, in definition order.

    Usage:
        @check("dimension")
        def dimension(context: CheckContext) -> CheckResult:
            ...
    """

    def decorator(function: CheckFunction) -> CheckFunction:
        CHECKS[name] = function
        return function

    return decorator


def web_image(combination: LinComb[ForkDiagram]) -> WebSum:
    """Send a combination of M-diagrams to webs."""
    result = WebSum()
    for diagram, coefficient in combination:
        result += coefficient * MDiagramBasis.expand_in_w(tableau_of(diagram))
    return result


def sample_diagrams(n: int, samples: int, rng: random.Random) -> list[ForkDiagram]:
    """Every fork diagram when there are at most ``samples`` of them, otherwise a random sample."""
    if n <= 3:
        diagrams = all_fork_diagrams(n)
        if len(diagrams) <= samples:
            return diagrams
    return [random_fork_diagram(n, rng) for _ in range(samples)]


def remark_pair() -> tuple[Tableau, Tableau]:
    """Two tableaux with 9 boxes comparable under the boundary order but not under the weak order."""
    lower = Tableau.from_columns([[1, 2, 5], [3, 4, 7], [6, 8, 9]])
    upper = Tableau.from_columns([[1, 2, 5], [3, 6, 7], [4, 8, 9]])
    return lower, upper


@check("dimension")
def dimension(context: CheckContext) -> CheckResult:
    tableaux = enumerate_syt(context.n)
    expected = count_syt(context.n)
    if len(tableaux) != expected or len(set(tableaux)) != expected:
        return CheckResult("dimension", False, f"enumerated {len(tableaux)} tableaux, expected {expected}")
    index = web_index(context.n)
    if len(index) != expected:
        return CheckResult("dimension", False, f"indexed {len(index)} webs, expected {expected}")
    elliptic = [key for key in index if not is_non_elliptic(Web.decode(key))]
    if elliptic:
        return CheckResult("dimension", False, f"{len(elliptic)} indexed webs are elliptic")
    if context.n <= 3:
        m_count = sum(1 for diagram in all_fork_diagrams(context.n) if is_m_diagram(diagram))
        if m_count != expected:
            return CheckResult("dimension", False, f"{m_count} M-diagrams, expected {expected}")
    return CheckResult("dimension", True, f"{expected} tableaux, M-diagrams and non-elliptic webs")


@check("bijections")
def bijections(context: CheckContext) -> CheckResult:
    origin = superstandard(context.n)
    for tableau in enumerate_syt(context.n):
        polytabloid, m_diagram = phi(tableau), psi(tableau)
        if not is_polytabloid(polytabloid) or tableau_of(polytabloid) != tableau:
            return CheckResult("bijections", False, f"phi fails to invert at {tableau}")
        if not is_m_diagram(m_diagram) or tableau_of(m_diagram) != tableau:
            return CheckResult("bijections", False, f"psi fails to invert at {tableau}")
        if boundary_word_of(m_diagram) != word_of(tableau) or boundary_word_of(polytabloid) != word_of(tableau):
            return CheckResult("bijections", False, f"boundary word mismatch at {tableau}")
        if act_tableau(origin, sigma_of(tableau)) != tableau:
            return CheckResult("bijections", False, f"sigma_of does not carry T0 to {tableau}")
    return CheckResult("bijections", True)


@check("lemma")
def lemma(context: CheckContext) -> CheckResult:
    words = 0
    for columns in range(1, LEMMA_MAX_COLUMNS + 1):
        for word in all_words(columns):
            words += 1
            for lower in predecessors(word):
                if inversions(lower) >= inversions(word):
                    return CheckResult("lemma", False, f"{lower} < {word} without losing inversions")
    return CheckResult("lemma", True, f"{words} words up to length {3 * LEMMA_MAX_COLUMNS}")


@check("remark")
def remark(context: CheckContext) -> CheckResult:
    lower, upper = remark_pair()
    if not boundary_leq(lower, upper):
        return CheckResult("remark", False, f"{lower} is not below {upper} in the boundary order")
    if leq_weak(lower, upper) or leq_weak(upper, lower):
        return CheckResult("remark", False, f"{lower} and {upper} are weakly comparable")
    return CheckResult("remark", True)


@check("resolve_identities")
def resolve_identities(context: CheckContext) -> CheckResult:
    for rule in registry.get_all_rules():
        pattern = ForkDiagram.from_triples(rule.pattern)
        expected = LinComb(
            (ForkDiagram.from_triples(arcs), coefficient) for coefficient, arcs in rule.expansion
        )
        if expand_in_m(pattern) != expected:
            return CheckResult("resolve_identities", False, f"{rule.key}: expand_in_m gives {expand_in_m(pattern)}")
        if web_image(expected) != web_of_fork(pattern):
            return CheckResult("resolve_identities", False, f"{rule.key}: webs disagree")
    return CheckResult("resolve_identities", True, f"{len(registry.get_all_rules())} rules")


def theta() -> Web:
    """Two trivalent vertices joined by three edges."""
    planar = PlanarMap()
    source, sink = planar.add_vertex(), planar.add_vertex()
    edges = [planar.add_edge(source, sink) for _ in range(3)]
    planar.rotation[sink] = [(edges[0], 1), (edges[2], 1), (edges[1], 1)]
    return Web.from_map(planar)


@check("reidemeister")
def reidemeister(context: CheckContext) -> CheckResult:
    origin = superstandard_web(context.n)
    with_loop = Web(origin.boundary_count, origin.vertices, 1)
    if reduce(with_loop) != WebSum.of_web(origin, 3):
        return CheckResult("reidemeister", False, "a loop does not count 3")
    empty = Web(0, ())
    if reduce(theta()) != WebSum.of_web(empty, -6):
        return CheckResult("reidemeister", False, "the theta web does not evaluate to -6")
    if act_web(WebSum.of_web(origin), 1) != WebSum.of_web(origin, -1):
        return CheckResult("reidemeister", False, "a crossing on one fork does not give -W0")
    for key in web_index(context.n):
        web = WebSum({key: 1})
        for i in range(1, 3 * context.n):
            if act_web(act_web(web, i), i) != web:
                return CheckResult("reidemeister", False, f"s_{i} is not an involution on {Web.decode(key)}")
    return CheckResult("reidemeister", True)


def random_smoothing(diagram: CrossingDiagram, rng: random.Random) -> Web:
    """Resolve every crossing by a random skein term, without reducing."""
    while diagram.crossings:
        diagram = resolve_crossing(diagram, diagram.crossings[0])[rng.randrange(2)][0]
    return Web.from_map(diagram.to_map())


@check("confluence")
def confluence(context: CheckContext) -> CheckResult:
    for _ in range(context.confluence_samples):
        diagram = random_fork_diagram(context.n, context.rng)
        stacked: Web = superstandard_web(context.n)
        for i in routing(diagram).reduced_word():
            stacked = stack_crossing(stacked, i)
        web = random_smoothing(stacked, context.rng) if isinstance(stacked, CrossingDiagram) else stacked
        default = reduce(web)
        shuffled = reduce(web, choose=lambda faces: context.rng.randrange(len(faces)))
        if default != shuffled:
            return CheckResult("confluence", False, f"two schedules disagree on {web}: {default} vs {shuffled}")
    return CheckResult("confluence", True, f"{context.confluence_samples} samples")


@check("oracle")
def oracle(context: CheckContext) -> CheckResult:
    diagrams = sample_diagrams(context.n, context.oracle_samples, context.rng)
    for diagram in diagrams:
        if web_image(expand_in_m(diagram)) != web_of_fork(diagram):
            return CheckResult("oracle", False, f"diagram and web expansions disagree on {diagram}")
    return CheckResult("oracle", True, f"{len(diagrams)} fork diagrams")


@check("termination")
def termination(context: CheckContext) -> CheckResult:
    diagrams = sample_diagrams(context.n, context.oracle_samples, context.rng)
    for diagram in diagrams:
        before = measure(diagram)
        for pair in crossing_pairs(diagram):
            for term, _ in resolve_local(diagram, pair):
                if measure(term) >= before:
                    return CheckResult("termination", False, f"{term} does not lower the measure of {diagram}")
    return CheckResult("termination", True, f"{len(diagrams)} fork diagrams")


@check("unitriangular")
def unitriangular(context: CheckContext) -> CheckResult:
    n = context.n
    details = []
    passed = True
    for source, target in (("P", "M"), ("M", "W"), ("P", "W")):
        matrix = transition_matrix(source, target, n, order="boundary")
        report = finest_order_report(matrix)
        orders = ",".join(name for name, contained in sorted(report.contained_in.items()) if contained) or "none"
        details.append(f"{source}->{target} det={matrix.determinant()} triangular for: {orders}")
        if matrix.determinant() != 1 or not is_unitriangular(matrix):
            passed = False
            details.append(f"{source}->{target} is not unitriangular for the boundary order")
    if n <= 2 and not all(
        is_unitriangular(transition_matrix(source, target, n))
        for source in ("P", "M", "W")
        for target in ("P", "M", "W")
    ):
        passed = False
        details.append("some matrix is not unitriangular for the weak order")
    return CheckResult("unitriangular", passed, "; ".join(details))


@check("coxeter")
def coxeter(context: CheckContext) -> CheckResult:
    report = check_representation(context.n)
    return CheckResult("coxeter", report.passed, report.violation or f"{3 * context.n - 1} generators")


def run_checks(
    n: int, seed: int | None = None, limit: int | None = None, names: list[str] | None = None
) -> list[CheckResult]:
    """
    Run the named checks (all by default) for tableaux with n columns.

    Args:
        n: Number of columns
        seed: Seed for the sampled checks, SPECHT_DEFAULT_SEED when None
        limit: Upper bound on the samples of the sampled checks
        names: Checks to run, in suite order

    Raises:
        ValueError: If n is out of range
        KeyError: If a check name is unknown
    """
    check_n(n)
    selected = list(CHECKS) if names is None else names
    for name in selected:
        if name not in CHECKS:
            raise KeyError(f"Unknown check {name!r}; choose from {list(CHECKS)}")

    confluence_samples = getattr(settings, "SPECHT_CONFLUENCE_SAMPLES", 200)
    oracle_samples = getattr(settings, "SPECHT_ORACLE_SAMPLES", 500)
    if limit is not None:
        confluence_samples = min(confluence_samples, limit)
        oracle_samples = min(oracle_samples, limit)
    context = CheckContext(
        n=n,
        rng=random.Random(getattr(settings, "SPECHT_DEFAULT_SEED", 0) if seed is None else seed),
        confluence_samples=confluence_samples,
        oracle_samples=oracle_samples,
    )

    results = []
    for name in CHECKS:
        if name not in selected:
            continue
        logger.info(f"Running check {name} for n={n}")
        try:
            result = CHECKS[name](context)
        except RuntimeError as e:
            logger.error(f"Check {name} hit a broken invariant: {e}")
            result = CheckResult(name, False, str(e))
        if not result.passed:
            logger.warning(f"Check {name} failed: {result.detail}")
        results.append(result)
    return results
