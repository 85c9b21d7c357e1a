from __future__ import annotations

import logging
from functools import cache
from typing import Callable

import networkx as nx

from .tableaux import Tableau, enumerate_syt, leq_weak, predecessors, sigma_of, word_of

logger = logging.getLogger(__name__)

TableauOrder = Callable[[Tableau, Tableau], bool]


@cache
def weak_order_graph(n: int) -> nx.DiGraph:
    """
    Hasse diagram of the weak order on standard tableaux of shape (n, n, n).

    There is an edge T -> T.s_i whenever i and i+1 sit in different rows and columns of T and i is
    in the lower row.
    """
    graph = nx.DiGraph()
    tableaux = enumerate_syt(n)
    graph.add_nodes_from(tableaux)
    for tableau in tableaux:
        rows = tableau.row_of
        columns = {entry: c for c, column in enumerate(tableau.columns) for entry in column}
        for i in range(1, 3 * n):
            if rows[i] > rows[i + 1] and columns[i] != columns[i + 1]:
                swapped = Tableau(
                    n,
                    tuple(
                        tuple(i + 1 if entry == i else i if entry == i + 1 else entry for entry in row)
                        for row in tableau.rows
                    ),
                )
                graph.add_edge(tableau, swapped, generator=i)
    return graph


@cache
def boundary_order_graph(n: int) -> nx.DiGraph:
    """
    The relation w < v on boundary words, restricted to words of standard tableaux.

    Edges point from the smaller tableau to the larger one.
    """
    graph = nx.DiGraph()
    tableaux = enumerate_syt(n)
    by_word = {word_of(tableau): tableau for tableau in tableaux}
    graph.add_nodes_from(tableaux)
    for tableau in tableaux:
        for lower in predecessors(word_of(tableau)):
            if lower in by_word:
                graph.add_edge(by_word[lower], tableau)
    logger.debug(f"Boundary order graph for n={n}: {graph.number_of_nodes()} nodes, {graph.number_of_edges()} edges")
    return graph


@cache
def _boundary_below(tableau: Tableau) -> frozenset[Tableau]:
    return frozenset(nx.ancestors(boundary_order_graph(tableau.n), tableau))


def boundary_leq(first: Tableau, second: Tableau) -> bool:
    """True iff word_of(first) is reached from word_of(second) by a chain of < steps (or equals it)."""
    if first.n != second.n:
        raise ValueError(f"Cannot compare tableaux with {first.n} and {second.n} columns")
    first.require_standard()
    second.require_standard()
    return first == second or first in _boundary_below(second)


def linear_extension(n: int) -> list[Tableau]:
    """
    Standard tableaux sorted by (Coxeter length of sigma_of, column word).

    The length of sigma_of(T) equals inversions(word_of(T)) minus inversions(word_of(T0)). Weak
    covers add one to it and < steps strictly raise the word's inversions, so this order extends both.
    """
    return sorted(enumerate_syt(n), key=lambda tableau: (sigma_of(tableau).length, tableau.column_word))


ORDERS: dict[str, TableauOrder] = {
    "weak": leq_weak,
    "boundary": boundary_leq,
}


def get_order(name: str) -> TableauOrder:
    try:
        return ORDERS[name]
    except KeyError:
        raise KeyError(f"Unknown order {name!r}; choose from {sorted(ORDERS)}") from None
