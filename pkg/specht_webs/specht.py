from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cache, cached_property
from typing import Any

import networkx as nx
from django.conf import settings
from sympy import ImmutableMatrix, Matrix, eye

from .diagrams import (
    Arc,
    ForkDiagram,
    boundary_word_of,
    crossing_count,
    crossing_pairs,
    is_m_diagram,
    psi,
    strands_cross,
    swap,
    tableau_of,
)
from .lincomb import LinComb
from .orders import ORDERS, get_order, linear_extension
from .registry import registry
from .rules import LocalRule
from .tableaux import Tableau, inversions
from .webs import Web, WebSum, act_web, web_of_fork

logger = logging.getLogger(__name__)


def max_n() -> int:
    return getattr(settings, "SPECHT_MAX_N", 5)


def check_n(n: int) -> None:
    """
    Raises:
        ValueError: If n is not between 1 and SPECHT_MAX_N
    """
    if not 1 <= n <= max_n():
        raise ValueError(f"n must be between 1 and {max_n()} (SPECHT_MAX_N), got {n}")


def measure(diagram: ForkDiagram) -> tuple[int, int]:
    """Inversions of the boundary word, then crossings; expansion lowers it lexicographically."""
    return (inversions(boundary_word_of(diagram)), crossing_count(diagram))


def _rule_for(diagram: ForkDiagram, pair: tuple[Arc, Arc]) -> type[LocalRule]:
    first, second = pair
    if first == second or first not in diagram.arcs or second not in diagram.arcs:
        raise ValueError(f"{first} and {second} are not two arcs of {diagram}")
    if not (strands_cross(first.left_arc, second.left_arc) or strands_cross(first.right_arc, second.right_arc)):
        raise ValueError(f"Arcs {first} and {second} do not cross")

    points = sorted(point for arc in pair for point in arc.endpoints)
    local = {point: k + 1 for k, point in enumerate(points)}
    pattern = frozenset(tuple(local[point] for point in arc.endpoints) for arc in pair)
    try:
        return registry.get_rule_for_pattern(pattern)
    except KeyError as e:
        raise RuntimeError(f"No local rule covers arcs {first} and {second}: {e}") from e


def resolve_local(diagram: ForkDiagram, pair: tuple[Arc, Arc]) -> LinComb[ForkDiagram]:
    """
    Rewrite one crossing pair of arcs with the matching local rule.

    Raises:
        ValueError: If the arcs are not in the diagram or do not cross
        RuntimeError: If no registered rule matches the local pattern
    """
    rule = _rule_for(diagram, pair)
    logger.debug(f"Applying rule {rule.key} to {pair[0]}, {pair[1]} in {diagram}")
    return rule.apply(diagram, pair)


@cache
def expand_in_m(diagram: ForkDiagram) -> LinComb[ForkDiagram]:
    """
    Write a fork diagram in M-diagrams by resolving its leftmost crossing pair until none is left.

    Raises:
        RuntimeError: If the rule's leading term is missing or changes the boundary word, or if a
            produced term does not have a smaller (inversions, crossings) measure
    """
    pairs = crossing_pairs(diagram)
    if not pairs:
        return LinComb.of(diagram)
    rule = _rule_for(diagram, pairs[0])
    terms = rule.apply(diagram, pairs[0])
    logger.debug(f"Applying rule {rule.key} to {pairs[0][0]}, {pairs[0][1]} in {diagram}")
    leading = rule.leading_term(diagram, pairs[0])
    if terms.coefficient(leading) != 1 or boundary_word_of(leading) != boundary_word_of(diagram):
        raise RuntimeError(f"Rule {rule.key} has no leading term with the boundary word of {diagram}")
    before = measure(diagram)
    result: LinComb[ForkDiagram] = LinComb()
    for term, coefficient in terms:
        if measure(term) >= before:
            raise RuntimeError(f"Expanding {diagram} produced {term} with measure {measure(term)} >= {before}")
        result += coefficient * expand_in_m(term)
    return result


def expand_via_webs(diagram: ForkDiagram) -> WebSum:
    return web_of_fork(diagram)


@cache
def web_index(n: int) -> dict[bytes, Tableau]:
    """
    Index the non-elliptic webs by tableaux using the web expansions of the M-diagrams.

    Repeatedly takes the first M-diagram, in linear-extension order, whose expansion has exactly one
    web without an index and with coefficient 1, and gives that web the M-diagram's tableau.

    Raises:
        RuntimeError: If at some point no M-diagram qualifies
    """
    remaining = linear_extension(n)
    expansions = {tableau: web_of_fork(psi(tableau)) for tableau in remaining}
    index: dict[bytes, Tableau] = {}
    while remaining:
        for tableau in remaining:
            unindexed = [(key, coefficient) for key, coefficient in expansions[tableau] if key not in index]
            if len(unindexed) == 1 and unindexed[0][1] == 1:
                index[unindexed[0][0]] = tableau
                remaining.remove(tableau)
                logger.debug(f"Web {Web.decode(unindexed[0][0])} indexed by {tableau}")
                break
        else:
            raise RuntimeError(f"Cannot index the remaining {len(remaining)} webs for n={n}")
    logger.info(f"Indexed {len(index)} non-elliptic webs for n={n}")
    return index


@cache
def _webs_by_tableau(n: int) -> dict[Tableau, bytes]:
    return {tableau: key for key, tableau in web_index(n).items()}


def web_of_tableau(tableau: Tableau) -> Web:
    return Web.decode(_webs_by_tableau(tableau.n)[tableau])


def web_coordinates(s: WebSum, n: int) -> dict[Tableau, int]:
    index = web_index(n)
    coordinates = {}
    for key, coefficient in s:
        if key not in index:
            raise RuntimeError(f"Web {Web.decode(key)} is not one of the indexed non-elliptic webs for n={n}")
        coordinates[index[key]] = coefficient
    return coordinates


def m_coordinates(combination: LinComb[ForkDiagram]) -> dict[Tableau, int]:
    coordinates = {}
    for diagram, coefficient in combination:
        if not is_m_diagram(diagram):
            raise RuntimeError(f"{diagram} is not an M-diagram")
        coordinates[tableau_of(diagram)] = coefficient
    return coordinates


def _integer_matrix(matrix: Matrix, context: str) -> ImmutableMatrix:
    if not all(entry.is_integer for entry in matrix):
        raise RuntimeError(f"{context} has non-integer entries")
    return ImmutableMatrix(matrix)


def _columns(source: str, target: str, n: int) -> Matrix | None:
    """Expand every source element directly in the target basis, or None if the source cannot."""
    basis = registry.get_basis(source)
    tableaux = linear_extension(n)
    position = {tableau: k for k, tableau in enumerate(tableaux)}
    entries = Matrix.zeros(len(tableaux), len(tableaux))
    for column, tableau in enumerate(tableaux):
        if target == "M":
            expansion = basis.expand_in_m(tableau)
            coordinates = None if expansion is None else m_coordinates(expansion)
        elif target == "W":
            web_expansion = basis.expand_in_w(tableau)
            coordinates = None if web_expansion is None else web_coordinates(web_expansion, n)
        else:
            coordinates = None
        if coordinates is None:
            return None
        for row_tableau, coefficient in coordinates.items():
            entries[position[row_tableau], column] = coefficient
    return entries


@cache
def _direct_entries(source: str, target: str, n: int) -> ImmutableMatrix | None:
    direct = _columns(source, target, n)
    return None if direct is None else ImmutableMatrix(direct)


@cache
def _transition_entries(source: str, target: str, n: int) -> ImmutableMatrix:
    registry.get_basis(source)
    registry.get_basis(target)
    size = len(linear_extension(n))
    if source == target:
        return ImmutableMatrix(eye(size))

    direct = _direct_entries(source, target, n)
    if direct is None:
        forward = _direct_entries(target, source, n)
        if forward is not None:
            logger.info(f"Inverting {target} -> {source} for n={n}")
            return _integer_matrix(forward.inv(), f"{source} -> {target} for n={n}")
        if "M" in (source, target):
            raise RuntimeError(f"Cannot compute {source} -> {target} directly or by inverting {target} -> {source}")
        logger.info(f"Computing {source} -> {target} for n={n} through M")
        return ImmutableMatrix(_transition_entries("M", target, n) * _transition_entries(source, "M", n))

    if target == "W" and source != "M" and _direct_entries(source, "M", n) is not None:
        composed = _transition_entries("M", "W", n) * _transition_entries(source, "M", n)
        if composed != direct:
            raise RuntimeError(f"{source} -> W for n={n} differs from (M -> W)({source} -> M)")
    logger.info(f"Computed {source} -> {target} for n={n}")
    return ImmutableMatrix(direct)


@dataclass(frozen=True)
class TransitionMatrix:
    """
    Column T holds the coefficients of source element T in the target basis. Rows and columns follow
    ``order``, a linear extension of the partial order named by ``order_name``.
    """

    source: str
    target: str
    n: int
    order: tuple[Tableau, ...]
    entries: ImmutableMatrix = field(compare=False)
    order_name: str = "weak"

    @cached_property
    def _position(self) -> dict[Tableau, int]:
        return {tableau: k for k, tableau in enumerate(self.order)}

    def entry(self, row: Tableau, column: Tableau) -> int:
        return int(self.entries[self._position[row], self._position[column]])

    def determinant(self) -> int:
        return int(self.entries.det())

    def rows(self) -> list[list[int]]:
        return [[int(value) for value in self.entries.row(r)] for r in range(self.entries.rows)]

    def to_json(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "target": self.target,
            "n": self.n,
            "order_name": self.order_name,
            "order": [tableau.to_json()["rows"] for tableau in self.order],
            "entries": self.rows(),
        }

    def to_text(self) -> str:
        rows = self.rows()
        width = max((len(str(value)) for row in rows for value in row), default=1)
        lines = [f"{self.source} -> {self.target}, n={self.n}, order={self.order_name}"]
        for k, tableau in enumerate(self.order):
            lines.append(f"{k:>3}  {tableau}")
        lines.append("")
        lines.extend(" ".join(str(value).rjust(width) for value in row) for row in rows)
        return "\n".join(lines)


def transition_matrix(source: str, target: str, n: int, order: str = "weak") -> TransitionMatrix:
    """
    The base change between two registered bases for shape (n, n, n).

    Args:
        source: Key of the basis whose elements are expanded (columns)
        target: Key of the basis they are expanded in (rows)
        n: Number of columns of the tableaux
        order: Name of the partial order the matrix is checked against

    Raises:
        ValueError: If n is out of range
        KeyError: If a basis or the order is unknown
        RuntimeError: If two computations of the same matrix disagree or an inverse is not integral
    """
    check_n(n)
    get_order(order)
    return TransitionMatrix(
        source=source,
        target=target,
        n=n,
        order=tuple(linear_extension(n)),
        entries=_transition_entries(source, target, n),
        order_name=order,
    )


def is_unitriangular(matrix: TransitionMatrix) -> bool:
    """Unit diagonal, and every other nonzero entry sits at (S, T) with S strictly below T in the order."""
    leq = get_order(matrix.order_name)
    for c, column in enumerate(matrix.order):
        for r, row in enumerate(matrix.order):
            value = matrix.entries[r, c]
            if r == c:
                if value != 1:
                    return False
            elif value != 0 and not leq(row, column):
                return False
    return True


def finest_order(matrix: TransitionMatrix) -> nx.DiGraph:
    """Transitive closure of the off-diagonal support, with an edge S -> T for every nonzero (S, T)."""
    graph = nx.DiGraph()
    graph.add_nodes_from(matrix.order)
    for c, column in enumerate(matrix.order):
        for r, row in enumerate(matrix.order):
            if r != c and matrix.entries[r, c] != 0:
                graph.add_edge(row, column)
    return nx.transitive_closure(graph, reflexive=False)


@dataclass(frozen=True)
class OrderReport:
    source: str
    target: str
    n: int
    unit_diagonal: bool
    acyclic: bool
    relations: int
    contained_in: dict[str, bool]

    def to_json(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "target": self.target,
            "n": self.n,
            "unit_diagonal": self.unit_diagonal,
            "acyclic": self.acyclic,
            "relations": self.relations,
            "contained_in": dict(sorted(self.contained_in.items())),
        }


def finest_order_report(matrix: TransitionMatrix) -> OrderReport:
    """
    Whether the matrix is triangular for any order at all, and for which registered orders.

    The matrix is unitriangular for an order exactly when the diagonal is 1 and the finest order is
    acyclic and contained in it.
    """
    closure = finest_order(matrix)
    acyclic = nx.is_directed_acyclic_graph(closure)
    contained_in = {
        name: acyclic and all(leq(lower, upper) for lower, upper in closure.edges) for name, leq in ORDERS.items()
    }
    return OrderReport(
        source=matrix.source,
        target=matrix.target,
        n=matrix.n,
        unit_diagonal=all(matrix.entries[k, k] == 1 for k in range(len(matrix.order))),
        acyclic=acyclic,
        relations=closure.number_of_edges(),
        contained_in=contained_in,
    )


def positivity_scan(n: int) -> list[tuple[Tableau, Tableau, int]]:
    """Every negative entry of the P -> W matrix as (row tableau, column tableau, value)."""
    matrix = transition_matrix("P", "W", n)
    return [
        (row, column, matrix.entry(row, column))
        for column in matrix.order
        for row in matrix.order
        if matrix.entry(row, column) < 0
    ]


def webs_to_m(s: WebSum, n: int) -> LinComb[ForkDiagram]:
    """
    Express a combination of non-elliptic webs in M-diagrams through the inverse of M -> W.

    Raises:
        RuntimeError: If a coefficient comes out non-integral
    """
    tableaux = linear_extension(n)
    coordinates = web_coordinates(s, n)
    vector = Matrix([coordinates.get(tableau, 0) for tableau in tableaux])
    result = _transition_entries("W", "M", n) * vector
    if not all(value.is_integer for value in result):
        raise RuntimeError(f"Web combination {s} has non-integral M-coordinates")
    return LinComb({psi(tableau): int(value) for tableau, value in zip(tableaux, result)})


@cache
def _act_on_diagram(diagram: ForkDiagram, i: int) -> LinComb[ForkDiagram]:
    if diagram.arc_containing(i) == diagram.arc_containing(i + 1):
        logger.debug(f"s_{i} swaps two legs of one arc of {diagram}; going through webs")
        return webs_to_m(act_web(web_of_fork(diagram), i), diagram.n)
    return expand_in_m(swap(diagram, i))


def act_module(x: LinComb[ForkDiagram], i: int) -> LinComb[ForkDiagram]:
    """
    Right action of s_i on a combination of fork diagrams, returned in M-diagrams.

    Raises:
        ValueError: If i is not in 1..3n-1
    """
    for diagram in x.support():
        if not 1 <= i < 3 * diagram.n:
            raise ValueError(f"Generator index {i} out of range 1..{3 * diagram.n - 1}")
    return x.apply(lambda diagram: _act_on_diagram(diagram, i))


@cache
def generator_matrix(i: int, n: int) -> ImmutableMatrix:
    """The matrix of s_i on the M basis, columns in linear-extension order."""
    tableaux = linear_extension(n)
    position = {tableau: k for k, tableau in enumerate(tableaux)}
    entries = Matrix.zeros(len(tableaux), len(tableaux))
    for column, tableau in enumerate(tableaux):
        for row_tableau, coefficient in m_coordinates(act_module(LinComb.of(psi(tableau)), i)).items():
            entries[position[row_tableau], column] = coefficient
    return ImmutableMatrix(entries)


@dataclass(frozen=True)
class RepresentationReport:
    n: int
    dimension: int
    passed: bool
    violation: str = ""


def check_representation(n: int) -> RepresentationReport:
    """Check the Coxeter relations of the generator matrices, stopping at the first one that fails."""
    check_n(n)
    count = 3 * n - 1
    generators = {i: generator_matrix(i, n) for i in range(1, count + 1)}
    dimension = len(linear_extension(n))
    identity = eye(dimension)

    def failed(violation: str) -> RepresentationReport:
        logger.warning(f"Representation check for n={n} failed: {violation}")
        return RepresentationReport(n, dimension, False, violation)

    for i, g in generators.items():
        if g * g != identity:
            return failed(f"s_{i}^2 is not the identity")
        for j in range(i + 2, count + 1):
            if g * generators[j] != generators[j] * g:
                return failed(f"s_{i} and s_{j} do not commute")
        if i < count:
            h = generators[i + 1]
            if g * h * g != h * g * h:
                return failed(f"s_{i} and s_{i + 1} break the braid relation")
    return RepresentationReport(n, dimension, True)
