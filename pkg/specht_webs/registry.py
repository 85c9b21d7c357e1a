from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .bases import BaseBasis
    from .rules import LocalRule


class SpechtRegistry:
    """
    Bases of the Specht module by key, and local crossing-resolution rules by key.

    Transition matrices look bases up by key; ``expand_in_m`` looks rules up by their two-arc pattern.
    A later class with an existing key replaces the earlier one.
    """

    def __init__(self) -> None:
        self._basis_classes: dict[str, type[BaseBasis]] = {}
        self._rule_classes: dict[str, type[LocalRule]] = {}
        self._registered_class_ids: set[int] = set()

    def _register(self, cls, base_class, registry_dict: dict, kind: str, force: bool = False) -> None:
        class_id = id(cls)
        if class_id in self._registered_class_ids and not force:
            return

        try:
            if not issubclass(cls, base_class):
                raise ValueError(f"Must register a {kind} subclass, got {cls!r}")
        except TypeError:
            raise ValueError(f"Must register a {kind} subclass, got {cls!r}")

        if not getattr(cls, "key", None):
            raise ValueError(f"{kind} {cls.__name__} needs a non-empty key")

        registry_dict[cls.key] = cls
        self._registered_class_ids.add(class_id)

    def register_basis(self, basis_class: type[BaseBasis], force: bool = False) -> None:
        from .bases import BaseBasis

        self._register(basis_class, BaseBasis, self._basis_classes, "BaseBasis", force)

    def register_rule(self, rule_class: type[LocalRule], force: bool = False) -> None:
        from .rules import LocalRule

        self._register(rule_class, LocalRule, self._rule_classes, "LocalRule", force)

    def get_basis(self, key: str) -> type[BaseBasis]:
        return self._basis_classes[key]

    def get_all_bases(self) -> list[type[BaseBasis]]:
        return list(self._basis_classes.values())

    def get_all_rules(self) -> list[type[LocalRule]]:
        return list(self._rule_classes.values())

    def get_rule_for_pattern(self, pattern: frozenset[tuple[int, int, int]]) -> type[LocalRule]:
        """
        The rule whose left-hand side is the given two-arc pattern on 1..6.

        Raises:
            KeyError: If no registered rule has this pattern
        """
        for rule_class in self._rule_classes.values():
            if frozenset(rule_class.pattern) == pattern:
                return rule_class
        raise KeyError(f"No local rule for pattern {sorted(pattern)}")


registry = SpechtRegistry()
