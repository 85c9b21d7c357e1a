from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cache, cached_property
from math import factorial, prod
from typing import Any, Iterator

from sympy.utilities.iterables import multiset_permutations

from .permutations import Permutation

ROWS = 3
LETTERS = "+0-"


class BoundaryWord(str):
    """
    A word over ``+``, ``0`` and ``-`` (Unicode minus is accepted and stored as ``-``).

    Letters are ordered ``- < 0 < +``. Row 1 of a tableau, or a left endpoint of an arc, reads ``+``;
    row 2 or a middle endpoint reads ``0``; row 3 or a right endpoint reads ``-``.
    """

    RANK = {"-": 0, "0": 1, "+": 2}

    def __new__(cls, letters: str) -> BoundaryWord:
        normalized = str(letters).replace("−", "-")
        unknown = set(normalized) - set(LETTERS)
        if unknown:
            raise ValueError(f"Boundary word {letters!r} contains letters outside '+0-': {sorted(unknown)}")
        return super().__new__(cls, normalized)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(self.RANK[letter] for letter in self)

    @property
    def is_balanced(self) -> bool:
        return len(self) % ROWS == 0 and all(self.count(letter) == len(self) // ROWS for letter in LETTERS)


@dataclass(frozen=True)
class Tableau:
    """
    A filling of the 3 x n rectangle with 1..3n, stored row by row.

    Non-standard fillings are allowed (the symmetric group moves standard tableaux to non-standard
    ones); everything that indexes a basis checks ``is_standard``.
    """

    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"A tableau needs at least one column, got n={self.n}")
        if len(self.rows) != ROWS or any(len(row) != self.n for row in self.rows):
            raise ValueError(f"Expected {ROWS} rows of length {self.n}, got {[list(row) for row in self.rows]}")
        entries = sorted(entry for row in self.rows for entry in row)
        if entries != list(range(1, ROWS * self.n + 1)):
            raise ValueError(f"Entries must be exactly 1..{ROWS * self.n}, got {entries}")

    @classmethod
    def from_rows(cls, rows: list[list[int]] | tuple[tuple[int, ...], ...]) -> Tableau:
        rows = tuple(tuple(int(entry) for entry in row) for row in rows)
        if not rows:
            raise ValueError("A tableau needs three rows")
        return cls(len(rows[0]), rows)

    @classmethod
    def from_columns(cls, columns: list[list[int]] | list[tuple[int, ...]]) -> Tableau:
        return cls.from_rows([[column[r] for column in columns] for r in range(ROWS)])

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> Tableau:
        try:
            tableau = cls.from_rows(data["rows"])
        except (KeyError, TypeError) as e:
            raise ValueError(f"Tableau JSON needs a 'rows' array: {e}") from e
        if "n" in data and data["n"] != tableau.n:
            raise ValueError(f"Tableau JSON declares n={data['n']} but has {tableau.n} columns")
        return tableau

    @classmethod
    def parse(cls, text: str) -> Tableau:
        """
        Parse a tableau given as JSON (``{"n": 2, "rows": [[1, 4], [2, 5], [3, 6]]}`` or the bare rows
        array) or as a compact row string ``"1 4/2 5/3 6"``.

        Raises:
            ValueError: If the text matches neither form
        """
        text = text.strip()
        if text.startswith("{") or text.startswith("["):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as e:
                raise ValueError(f"Invalid tableau JSON: {e}") from e
            return cls.from_json(data if isinstance(data, dict) else {"rows": data})
        if not re.fullmatch(r"[\d\s,]+(/[\d\s,]+){2}", text):
            raise ValueError(f"Cannot read {text!r} as a tableau; use JSON or rows like '1 4/2 5/3 6'")
        return cls.from_rows([[int(entry) for entry in re.split(r"[\s,]+", row.strip())] for row in text.split("/")])

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "rows": [list(row) for row in self.rows]}

    def __str__(self) -> str:
        return "/".join(" ".join(str(entry) for entry in row) for row in self.rows)

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.rows[r][c] for r in range(ROWS)) for c in range(self.n))

    @property
    def column_word(self) -> tuple[int, ...]:
        return tuple(entry for column in self.columns for entry in column)

    @cached_property
    def row_of(self) -> dict[int, int]:
        """Map each entry to its row, counted from 1."""
        return {entry: r + 1 for r, row in enumerate(self.rows) for entry in row}

    @cached_property
    def is_standard(self) -> bool:
        rows_increase = all(row[c] < row[c + 1] for row in self.rows for c in range(self.n - 1))
        columns_increase = all(column[r] < column[r + 1] for column in self.columns for r in range(ROWS - 1))
        return rows_increase and columns_increase

    def require_standard(self) -> None:
        if not self.is_standard:
            raise ValueError(f"Tableau {self} is not standard")


def superstandard(n: int) -> Tableau:
    """The tableau T0 whose column j holds 3j-2, 3j-1, 3j."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return Tableau.from_columns([[ROWS * j + r + 1 for r in range(ROWS)] for j in range(n)])


@cache
def enumerate_syt(n: int) -> tuple[Tableau, ...]:
    """
    Every standard tableau of shape (n, n, n), ordered lexicographically by column reading word.

    Entries are placed one at a time, 1 first, on any row that is shorter than the row above it,
    which walks Young's lattice from the empty shape up to (n, n, n).
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")

    found: list[Tableau] = []
    rows: list[list[int]] = [[] for _ in range(ROWS)]

    def place(entry: int) -> None:
        if entry > ROWS * n:
            found.append(Tableau.from_rows(rows))
            return
        for r in range(ROWS):
            if len(rows[r]) < n and (r == 0 or len(rows[r - 1]) > len(rows[r])):
                rows[r].append(entry)
                place(entry + 1)
                rows[r].pop()

    place(1)
    return tuple(sorted(found, key=lambda tableau: tableau.column_word))


def count_syt(n: int) -> int:
    """Number of standard tableaux of shape (n, n, n) by the hook length formula."""
    hooks = prod((n - c) + (ROWS - r) - 1 for r in range(ROWS) for c in range(n))
    return factorial(ROWS * n) // hooks


def act_tableau(tableau: Tableau, sigma: Permutation) -> Tableau:
    """
    Right action: replace every entry e by sigma(e).

    ``act_tableau(act_tableau(T, sigma), tau) == act_tableau(T, sigma * tau)``.
    """
    if sigma.n_points != ROWS * tableau.n:
        raise ValueError(f"Permutation on {sigma.n_points} points cannot act on a tableau with {ROWS * tableau.n}")
    return Tableau(tableau.n, tuple(tuple(sigma(entry) for entry in row) for row in tableau.rows))


def sigma_of(tableau: Tableau) -> Permutation:
    """The unique sigma with ``act_tableau(superstandard(n), sigma) == tableau``."""
    tableau.require_standard()
    images = [0] * (ROWS * tableau.n)
    for c, column in enumerate(tableau.columns):
        for r, entry in enumerate(column):
            images[ROWS * c + r] = entry
    return Permutation(tuple(images))


def word_of(tableau: Tableau) -> BoundaryWord:
    tableau.require_standard()
    return BoundaryWord("".join(LETTERS[tableau.row_of[entry] - 1] for entry in range(1, ROWS * tableau.n + 1)))


def tableau_from_word(word: str) -> Tableau:
    """
    The standard tableau whose boundary word is ``word``.

    Raises:
        ValueError: If the word is not balanced or some prefix has more 0s than +s or more -s than 0s
    """
    word = BoundaryWord(word)
    if not word.is_balanced or not word:
        raise ValueError(f"Word {word!r} does not have the same number of each letter")
    tableau = Tableau.from_rows(
        [[position for position, letter in enumerate(word, start=1) if letter == row] for row in LETTERS]
    )
    if not tableau.is_standard:
        raise ValueError(f"Word {word!r} is not the boundary word of a standard tableau")
    return tableau


def inversions(word: str) -> int:
    """Number of pairs i < j with word[i] > word[j] under - < 0 < +."""
    ranks = BoundaryWord(word).ranks
    return sum(1 for i in range(len(ranks)) for j in range(i + 1, len(ranks)) if ranks[i] > ranks[j])


def prec(w: str, v: str) -> bool:
    """
    True iff w comes from v by turning one out-of-order pair of letters at positions i < j
    ((+,0), (+,-) or (0,-)) into the ordered pair.
    """
    w, v = BoundaryWord(w), BoundaryWord(v)
    if len(w) != len(v):
        return False
    differences = [i for i in range(len(v)) if w[i] != v[i]]
    if len(differences) != 2:
        return False
    i, j = differences
    return BoundaryWord.RANK[v[i]] > BoundaryWord.RANK[v[j]] and (w[i], w[j]) == (v[j], v[i])


def predecessors(v: str) -> list[BoundaryWord]:
    """Every w with ``prec(w, v)``."""
    v = BoundaryWord(v)
    ranks = v.ranks
    result = []
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if ranks[i] > ranks[j]:
                letters = list(v)
                letters[i], letters[j] = letters[j], letters[i]
                result.append(BoundaryWord("".join(letters)))
    return result


def all_words(n: int) -> Iterator[BoundaryWord]:
    """Every word with n letters of each kind, in lexicographic order."""
    for letters in multiset_permutations(sorted("+" * n + "0" * n + "-" * n)):
        yield BoundaryWord("".join(letters))


def leq_weak(first: Tableau, second: Tableau) -> bool:
    """
    Weak order on standard tableaux: sigma_of(first) is a prefix of sigma_of(second).

    Covers are ``T < act_tableau(T, s_i)`` whenever i sits in a lower row than i+1 in T, so the
    superstandard tableau is the minimum.
    """
    if first.n != second.n:
        raise ValueError(f"Cannot compare tableaux with {first.n} and {second.n} columns")
    return sigma_of(first).weak_leq(sigma_of(second))
