from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable, Iterator, Mapping

from .permutations import Permutation
from .tableaux import LETTERS, BoundaryWord, Tableau, tableau_from_word, word_of


@dataclass(frozen=True, order=True)
class Arc:
    """Three boundary points joined at one trivalent vertex."""

    left: int
    middle: int
    right: int

    def __post_init__(self) -> None:
        if not 1 <= self.left < self.middle < self.right:
            raise ValueError(f"Arc endpoints must satisfy 1 <= left < middle < right, got {self.endpoints}")

    @classmethod
    def of(cls, points: Iterable[int]) -> Arc:
        left, middle, right = sorted(points)
        return cls(left, middle, right)

    @property
    def endpoints(self) -> tuple[int, int, int]:
        return (self.left, self.middle, self.right)

    @property
    def left_arc(self) -> tuple[int, int]:
        return (self.left, self.middle)

    @property
    def right_arc(self) -> tuple[int, int]:
        return (self.middle, self.right)

    def __str__(self) -> str:
        return f"({self.left},{self.middle},{self.right})"


def strands_cross(first: tuple[int, int], second: tuple[int, int]) -> bool:
    """Two upper half-plane strands (a, b) and (c, d) cross iff their endpoints interleave."""
    (a, b), (c, d) = first, second
    return a < c < b < d or c < a < d < b


@dataclass(frozen=True, order=True)
class ForkDiagram:
    """
    A partition of 1..3n into n arcs.

    Arcs are kept sorted by left endpoint, so two diagrams are equal exactly when their arc sets are.
    """

    n: int
    arcs: tuple[Arc, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))
        if self.n < 1:
            raise ValueError(f"A fork diagram needs at least one arc, got n={self.n}")
        if len(self.arcs) != self.n:
            raise ValueError(f"Expected {self.n} arcs, got {len(self.arcs)}")
        endpoints = sorted(point for arc in self.arcs for point in arc.endpoints)
        if endpoints != list(range(1, 3 * self.n + 1)):
            raise ValueError(f"Arc endpoints must partition 1..{3 * self.n}, got {endpoints}")

    @classmethod
    def from_triples(cls, triples: Iterable[Iterable[int]]) -> ForkDiagram:
        arcs = tuple(Arc.of(triple) for triple in triples)
        return cls(len(arcs), arcs)

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> ForkDiagram:
        try:
            diagram = cls.from_triples(data["arcs"])
        except (KeyError, TypeError) as e:
            raise ValueError(f"Fork diagram JSON needs an 'arcs' array of triples: {e}") from e
        if "n" in data and data["n"] != diagram.n:
            raise ValueError(f"Fork diagram JSON declares n={data['n']} but has {diagram.n} arcs")
        return diagram

    @classmethod
    def parse(cls, text: str) -> ForkDiagram:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"Invalid fork diagram JSON: {e}") from e
        if not isinstance(data, dict):
            raise ValueError("Fork diagram JSON must be an object with 'n' and 'arcs'")
        return cls.from_json(data)

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "arcs": [list(arc.endpoints) for arc in self.arcs]}

    def __str__(self) -> str:
        return "".join(str(arc) for arc in self.arcs)

    def arc_containing(self, point: int) -> Arc:
        for arc in self.arcs:
            if point in arc.endpoints:
                return arc
        raise ValueError(f"Point {point} is not an endpoint of {self}")


def phi(tableau: Tableau) -> ForkDiagram:
    """The polytabloid diagram of a standard tableau: each column becomes an arc."""
    tableau.require_standard()
    return ForkDiagram.from_triples(tableau.columns)


def _stack_match(word: str, opening: str, closing: str) -> dict[int, int]:
    """Match every ``closing`` letter with the nearest unmatched ``opening`` letter to its left."""
    stack: list[int] = []
    matching = {}
    for position, letter in enumerate(word, start=1):
        if letter == opening:
            stack.append(position)
        elif letter == closing:
            if not stack:
                raise ValueError(f"No {opening!r} left of position {position} in {word!r} to match with {closing!r}")
            matching[stack.pop()] = position
    if stack:
        raise ValueError(f"Unmatched {opening!r} at positions {stack} in {word!r}")
    return matching


def psi(tableau: Tableau) -> ForkDiagram:
    """
    The M-diagram of a standard tableau.

    The + and 0 letters of its boundary word are matched non-crossingly, then the 0 and - letters
    are, and the two matchings are glued at the shared 0s.

    Raises:
        ValueError: If the tableau is not standard or either matching does not exist
    """
    word = word_of(tableau)
    left_arcs = _stack_match(word, "+", "0")
    right_arcs = _stack_match(word, "0", "-")
    return ForkDiagram.from_triples((left, middle, right_arcs[middle]) for left, middle in left_arcs.items())


def crossing_pairs(diagram: ForkDiagram) -> list[tuple[Arc, Arc]]:
    """
    Pairs of arcs whose left arcs cross or whose right arcs cross, ordered by smallest endpoints.

    A left arc crossing a right arc does not count.
    """
    pairs = []
    for first, second in combinations(diagram.arcs, 2):
        if strands_cross(first.left_arc, second.left_arc) or strands_cross(first.right_arc, second.right_arc):
            pairs.append((first, second))
    return pairs


def crossing_count(diagram: ForkDiagram) -> int:
    count = 0
    for first, second in combinations(diagram.arcs, 2):
        count += strands_cross(first.left_arc, second.left_arc)
        count += strands_cross(first.right_arc, second.right_arc)
    return count


def is_m_diagram(diagram: ForkDiagram) -> bool:
    """Left arcs pairwise nested or disjoint, and right arcs likewise."""
    return not crossing_pairs(diagram)


def is_polytabloid(diagram: ForkDiagram) -> bool:
    """
    True iff the arcs, sorted by left endpoint, are also sorted by middle and by right endpoint,
    i.e. the diagram is phi of the tableau whose columns are its arcs.
    """
    middles = [arc.middle for arc in diagram.arcs]
    rights = [arc.right for arc in diagram.arcs]
    if middles != sorted(middles) or rights != sorted(rights):
        return False
    return Tableau.from_columns([arc.endpoints for arc in diagram.arcs]).is_standard


def boundary_word_of(diagram: ForkDiagram) -> BoundaryWord:
    letters = [""] * (3 * diagram.n)
    for arc in diagram.arcs:
        for letter, point in zip(LETTERS, arc.endpoints):
            letters[point - 1] = letter
    return BoundaryWord("".join(letters))


def tableau_of(diagram: ForkDiagram) -> Tableau:
    """
    The tableau indexing a polytabloid diagram or an M-diagram, so that ``phi(tableau_of(d)) == d``
    or ``psi(tableau_of(d)) == d``. A diagram that is both is indexed by the same tableau either way,
    since a standard tableau is determined by its boundary word.
    """
    if not (is_polytabloid(diagram) or is_m_diagram(diagram)):
        raise ValueError(f"{diagram} is neither a polytabloid diagram nor an M-diagram")
    return tableau_from_word(boundary_word_of(diagram))


def relabel(diagram: ForkDiagram, sigma: Permutation | Mapping[int, int]) -> ForkDiagram:
    """Move every endpoint e to sigma(e); a right action for permutations."""
    if isinstance(sigma, Permutation):
        if sigma.n_points != 3 * diagram.n:
            raise ValueError(f"Permutation on {sigma.n_points} points cannot act on {3 * diagram.n} endpoints")
        mapping: Mapping[int, int] = {point: sigma(point) for point in range(1, sigma.n_points + 1)}
    else:
        mapping = sigma
    return ForkDiagram.from_triples([mapping.get(point, point) for point in arc.endpoints] for arc in diagram.arcs)


def swap(diagram: ForkDiagram, i: int) -> ForkDiagram:
    """Exchange endpoints i and i+1."""
    if not 1 <= i < 3 * diagram.n:
        raise ValueError(f"Generator index {i} out of range 1..{3 * diagram.n - 1}")
    return relabel(diagram, {i: i + 1, i + 1: i})


def routing(diagram: ForkDiagram) -> Permutation:
    """
    The permutation carrying the superstandard diagram onto ``diagram``: fork j of (3j-2, 3j-1, 3j)
    goes to the j-th arc by left endpoint.
    """
    return Permutation(tuple(point for arc in diagram.arcs for point in arc.endpoints))


def _partitions(points: tuple[int, ...]) -> Iterator[list[tuple[int, int, int]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for middle, right in combinations(rest, 2):
        remaining = tuple(point for point in rest if point not in (middle, right))
        for partition in _partitions(remaining):
            yield [(first, middle, right), *partition]


def all_fork_diagrams(n: int) -> list[ForkDiagram]:
    """Every partition of 1..3n into triples; (3n)! / (6^n n!) of them."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return [ForkDiagram.from_triples(partition) for partition in _partitions(tuple(range(1, 3 * n + 1)))]


def random_fork_diagram(n: int, rng: random.Random) -> ForkDiagram:
    points = list(range(1, 3 * n + 1))
    rng.shuffle(points)
    return ForkDiagram.from_triples(points[3 * j : 3 * j + 3] for j in range(n))
