from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Type

from .diagrams import ForkDiagram, phi, psi
from .lincomb import LinComb
from .registry import registry
from .tableaux import Tableau
from .webs import Web, WebSum, web_of_fork


class BaseBasis(ABC):
    """
    A basis of the Specht module indexed by standard tableaux.

    Transition matrices are assembled from ``expand_in_m`` and ``expand_in_w``; a basis returns None
    from either when its elements can only be reached through an inverse matrix.
    """

    key: str
    name: str
    description: str

    def __str__(self) -> str:
        return self.name

    @classmethod
    @abstractmethod
    def element(cls, tableau: Tableau) -> ForkDiagram | Web:
        """The basis element indexed by ``tableau``."""

    @classmethod
    def expand_in_m(cls, tableau: Tableau) -> LinComb[ForkDiagram] | None:
        return None

    @classmethod
    def expand_in_w(cls, tableau: Tableau) -> WebSum | None:
        return None

    @classmethod
    def element_json(cls, tableau: Tableau) -> dict[str, Any]:
        return cls.element(tableau).to_json()


def register(cls: Type[BaseBasis]) -> Type[BaseBasis]:
    """
    Decorator that registers a BaseBasis subclass.

    Usage:
        @register
        class MyBasis(BaseBasis):
            key = "X"
            name = "My basis"
            description = "..."
    """
    registry.register_basis(cls)
    return cls


@register
class PolytabloidBasis(BaseBasis):
    key = "P"
    name = "Polytabloid diagrams"
    description = "Fork diagrams whose arcs are the columns of a standard tableau"

    @classmethod
    def element(cls, tableau: Tableau) -> ForkDiagram:
        return phi(tableau)

    @classmethod
    def expand_in_m(cls, tableau: Tableau) -> LinComb[ForkDiagram]:
        from .specht import expand_in_m

        return expand_in_m(phi(tableau))

    @classmethod
    def expand_in_w(cls, tableau: Tableau) -> WebSum:
        return web_of_fork(phi(tableau))


@register
class MDiagramBasis(BaseBasis):
    key = "M"
    name = "M-diagrams"
    description = "Fork diagrams whose left arcs never cross each other and whose right arcs never cross each other"

    @classmethod
    def element(cls, tableau: Tableau) -> ForkDiagram:
        return psi(tableau)

    @classmethod
    def expand_in_m(cls, tableau: Tableau) -> LinComb[ForkDiagram]:
        return LinComb.of(psi(tableau))

    @classmethod
    def expand_in_w(cls, tableau: Tableau) -> WebSum:
        return web_of_fork(psi(tableau))


@register
class WebBasis(BaseBasis):
    key = "W"
    name = "Non-elliptic webs"
    description = "Webs with no loop, bigon or square face"

    @classmethod
    def element(cls, tableau: Tableau) -> Web:
        from .specht import web_of_tableau

        return web_of_tableau(tableau)

    @classmethod
    def expand_in_w(cls, tableau: Tableau) -> WebSum:
        return WebSum.of_web(cls.element(tableau))
