from __future__ import annotations

from typing import Any, Callable, Generic, Hashable, Iterable, Iterator, Mapping, TypeVar

K = TypeVar("K", bound=Hashable)
L = TypeVar("L", bound=Hashable)


class LinComb(Generic[K]):
    """
    An integer linear combination of basis indices.

    Zero coefficients are never stored, so two combinations are equal exactly when their term
    mappings are. Iteration yields ``(index, coefficient)`` pairs in sorted index order.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[K, int] | Iterable[tuple[K, int]] | None = None) -> None:
        collected: dict[K, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for key, coefficient in items:
            if not isinstance(coefficient, int):
                raise TypeError(f"Coefficients must be integers, got {coefficient!r} for {key!r}")
            collected[key] = collected.get(key, 0) + coefficient
        self._terms = {key: coefficient for key, coefficient in collected.items() if coefficient}

    @classmethod
    def of(cls, key: K, coefficient: int = 1) -> LinComb[K]:
        return cls({key: coefficient})

    def coefficient(self, key: K) -> int:
        return self._terms.get(key, 0)

    def support(self) -> list[K]:
        return sorted(self._terms)  # type: ignore[type-var]

    def items(self) -> list[tuple[K, int]]:
        return [(key, self._terms[key]) for key in self.support()]

    def __iter__(self) -> Iterator[tuple[K, int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, key: object) -> bool:
        return key in self._terms

    def __add__(self, other: LinComb[K]) -> LinComb[K]:
        if not isinstance(other, LinComb):
            return NotImplemented
        return type(self)([*self._terms.items(), *other._terms.items()])

    def __neg__(self) -> LinComb[K]:
        return type(self)({key: -coefficient for key, coefficient in self._terms.items()})

    def __sub__(self, other: LinComb[K]) -> LinComb[K]:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: int) -> LinComb[K]:
        if not isinstance(scalar, int):
            return NotImplemented
        return type(self)({key: scalar * coefficient for key, coefficient in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({dict(self.items())!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        text = ""
        for key, coefficient in self.items():
            magnitude = "" if abs(coefficient) == 1 else f"{abs(coefficient)}*"
            if text:
                text += " - " if coefficient < 0 else " + "
            elif coefficient < 0:
                text = "-"
            text += f"{magnitude}{self._format_key(key)}"
        return text

    def _format_key(self, key: K) -> str:
        return str(key)

    def apply(self, function: Callable[[K], LinComb[L]]) -> LinComb[L]:
        """Extend ``function`` linearly to this combination."""
        result: dict[L, int] = {}
        for key, coefficient in self._terms.items():
            for image, image_coefficient in function(key)._terms.items():
                result[image] = result.get(image, 0) + coefficient * image_coefficient
        return LinComb(result)

    def to_json(self, encode_key: Callable[[K], Any]) -> list[dict[str, Any]]:
        return [{"coefficient": coefficient, "term": encode_key(key)} for key, coefficient in self.items()]
