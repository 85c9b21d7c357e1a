from __future__ import annotations

from dataclasses import dataclass
from functools import cache, cached_property


@dataclass(frozen=True, order=True)
class Permutation:
    """
    A permutation of {1..n_points} in one-line notation: ``images[e - 1]`` is the image of ``e``.

    Products compose left to right, ``(sigma * tau)(e) == tau(sigma(e))``: first sigma, then tau.
    This is the convention under which tableaux and webs carry a right action, and a word
    ``(i1, i2, ..., ik)`` stands for ``s_i1 * s_i2 * ... * s_ik``.
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{list(self.images)} is not a permutation of 1..{len(self.images)}")

    @classmethod
    def identity(cls, n_points: int) -> Permutation:
        return cls(tuple(range(1, n_points + 1)))

    @classmethod
    def simple(cls, i: int, n_points: int) -> Permutation:
        """The simple transposition s_i = (i, i+1)."""
        if not 1 <= i < n_points:
            raise ValueError(f"Generator index {i} out of range 1..{n_points - 1}")
        return cls.transposition(i, i + 1, n_points)

    @classmethod
    def transposition(cls, a: int, b: int, n_points: int) -> Permutation:
        images = list(range(1, n_points + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @classmethod
    def from_word(cls, word: tuple[int, ...] | list[int], n_points: int) -> Permutation:
        result = cls.identity(n_points)
        for i in word:
            result = result * cls.simple(i, n_points)
        return result

    @property
    def n_points(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.n_points != self.n_points:
            raise ValueError(f"Cannot compose permutations of {self.n_points} and {other.n_points} points")
        return Permutation(tuple(other(self(e)) for e in range(1, self.n_points + 1)))

    def __str__(self) -> str:
        return "[" + " ".join(str(image) for image in self.images) + "]"

    @cached_property
    def positions(self) -> tuple[int, ...]:
        """``positions[v - 1]`` is the point sent to ``v``, i.e. the one-line position of value v."""
        positions = [0] * self.n_points
        for point, image in enumerate(self.images, start=1):
            positions[image - 1] = point
        return tuple(positions)

    def inverse(self) -> Permutation:
        return Permutation(self.positions)

    @property
    def is_identity(self) -> bool:
        return all(image == point for point, image in enumerate(self.images, start=1))

    @cached_property
    def length(self) -> int:
        """Coxeter length: the number of inversions of the one-line notation."""
        images = self.images
        return sum(1 for i in range(len(images)) for j in range(i + 1, len(images)) if images[i] > images[j])

    def right_descents(self) -> list[int]:
        """Indices i with length(self * s_i) < length(self), i.e. value i+1 sits left of value i."""
        positions = self.positions
        return [i for i in range(1, self.n_points) if positions[i] < positions[i - 1]]

    def reduced_word(self) -> tuple[int, ...]:
        """
        A reduced word for this permutation, read left to right.

        Peels the smallest right descent repeatedly, so the word is deterministic.
        """
        letters: list[int] = []
        current = self
        while not current.is_identity:
            i = current.right_descents()[0]
            letters.append(i)
            current = current * Permutation.simple(i, self.n_points)
        return tuple(reversed(letters))

    def weak_lower_interval(self) -> frozenset[Permutation]:
        """Every prefix of every reduced word of this permutation, as permutations."""
        return _lower_interval(self)

    def weak_leq(self, other: Permutation) -> bool:
        """
        Prefix order: self is a prefix of other iff lengths add up along other = self * (self^-1 * other).
        """
        if other.n_points != self.n_points:
            raise ValueError(f"Cannot compare permutations of {self.n_points} and {other.n_points} points")
        return other.length == self.length + (self.inverse() * other).length


@cache
def _lower_interval(sigma: Permutation) -> frozenset[Permutation]:
    below = {sigma}
    for i in sigma.right_descents():
        below |= _lower_interval(sigma * Permutation.simple(i, sigma.n_points))
    return frozenset(below)
