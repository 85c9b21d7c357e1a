from __future__ import annotations

from abc import ABC
from typing import Type

from .diagrams import Arc, ForkDiagram
from .lincomb import LinComb
from .registry import registry

Triple = tuple[int, int, int]


class LocalRule(ABC):
    """
    Rewrites two crossing arcs as a combination of non-crossing pairs.

    ``pattern`` and every term of ``expansion`` are two arcs on the local points 1..6; ``leading`` is
    the term with the same boundary word as the pattern, which always has coefficient 1 and fewer
    crossings. Every other term has strictly fewer inversions in its boundary word.
    """

    key: str
    name: str
    pattern: tuple[Triple, Triple]
    expansion: tuple[tuple[int, tuple[Triple, Triple]], ...]
    leading: tuple[Triple, Triple]

    def __str__(self) -> str:
        return self.name

    @classmethod
    def place(cls, diagram: ForkDiagram, pair: tuple[Arc, Arc], local_arcs: tuple[Triple, Triple]) -> ForkDiagram:
        """Put ``local_arcs`` on the six endpoints of ``pair`` inside ``diagram``, leaving the other arcs alone."""
        points = sorted(point for arc in pair for point in arc.endpoints)
        others = [arc.endpoints for arc in diagram.arcs if arc not in pair]
        arcs = [tuple(points[local - 1] for local in triple) for triple in local_arcs]
        return ForkDiagram.from_triples([*others, *arcs])

    @classmethod
    def apply(cls, diagram: ForkDiagram, pair: tuple[Arc, Arc]) -> LinComb[ForkDiagram]:
        return LinComb((cls.place(diagram, pair, local_arcs), coefficient) for coefficient, local_arcs in cls.expansion)

    @classmethod
    def leading_term(cls, diagram: ForkDiagram, pair: tuple[Arc, Arc]) -> ForkDiagram:
        return cls.place(diagram, pair, cls.leading)


def register(cls: Type[LocalRule]) -> Type[LocalRule]:
    """
    Decorator that registers a LocalRule subclass.

    Usage:
        @register
        class MyRule(LocalRule):
            key = "mine"
            name = "My rule"
            pattern = ((1, 3, 4), (2, 5, 6))
            expansion = ((1, ((1, 5, 6), (2, 3, 4))),)
            leading = ((1, 5, 6), (2, 3, 4))
    """
    registry.register_rule(cls)
    return cls


M0: tuple[Triple, Triple] = ((1, 2, 3), (4, 5, 6))
M1: tuple[Triple, Triple] = ((1, 2, 4), (3, 5, 6))
M2: tuple[Triple, Triple] = ((1, 5, 6), (2, 3, 4))
M3: tuple[Triple, Triple] = ((1, 2, 6), (3, 4, 5))
M4: tuple[Triple, Triple] = ((1, 4, 5), (2, 3, 6))


@register
class CrossedLeftArcsRule(LocalRule):
    key = "v2"
    name = "Crossed left arcs, right arcs apart"
    pattern = ((1, 3, 4), (2, 5, 6))
    expansion = ((1, M2), (1, M1), (-1, M0))
    leading = M2


@register
class CrossedRightArcsRule(LocalRule):
    key = "v3"
    name = "Crossed right arcs, left arcs apart"
    pattern = ((1, 2, 5), (3, 4, 6))
    expansion = ((1, M3), (1, M1), (-1, M0))
    leading = M3


@register
class NestedLeftCrossedRightRule(LocalRule):
    key = "u2"
    name = "Nested left arcs, crossed right arcs"
    pattern = ((1, 4, 6), (2, 3, 5))
    expansion = ((1, M4), (1, M2), (-1, M0))
    leading = M4


@register
class CrossedLeftNestedRightRule(LocalRule):
    key = "u3"
    name = "Crossed left arcs, nested right arcs"
    pattern = ((1, 3, 6), (2, 4, 5))
    expansion = ((1, M4), (1, M3), (-1, M0))
    leading = M4


@register
class DoublyCrossedRule(LocalRule):
    key = "v4"
    name = "Crossed left arcs and crossed right arcs"
    pattern = ((1, 3, 5), (2, 4, 6))
    expansion = ((1, M4), (1, M3), (1, M2), (1, M1), (-1, M0))
    leading = M4
