from django.test import SimpleTestCase

from specht_webs.bases import BaseBasis, MDiagramBasis, PolytabloidBasis, WebBasis
from specht_webs.registry import SpechtRegistry, registry
from specht_webs.rules import (
    CrossedLeftArcsRule,
    CrossedLeftNestedRightRule,
    CrossedRightArcsRule,
    DoublyCrossedRule,
    LocalRule,
    NestedLeftCrossedRightRule,
)


class TestBasis(BaseBasis):
    key = "X"
    name = "Test basis"
    description = ""

    @classmethod
    def element(cls, tableau):
        return None


class TestRule(LocalRule):
    key = "test"
    name = "Test rule"
    pattern = ((1, 3, 4), (2, 5, 6))
    expansion = ((1, ((1, 5, 6), (2, 3, 4))),)
    leading = ((1, 5, 6), (2, 3, 4))


class BasisTest(SimpleTestCase):
    def test_attributes(self):
        self.assertEqual(PolytabloidBasis.key, "P")
        self.assertEqual(MDiagramBasis.key, "M")
        self.assertEqual(WebBasis.key, "W")
        self.assertEqual(str(MDiagramBasis()), "M-diagrams")

    def test_default_expansions_are_missing(self):
        self.assertIsNone(TestBasis.expand_in_m(None))
        self.assertIsNone(TestBasis.expand_in_w(None))


class RegistryTest(SimpleTestCase):
    def setUp(self):
        self.registry = SpechtRegistry()

    def test_global_registry_has_bases_and_rules(self):
        self.assertEqual(sorted(basis.key for basis in registry.get_all_bases()), ["M", "P", "W"])
        self.assertEqual(sorted(rule.key for rule in registry.get_all_rules()), ["u2", "u3", "v2", "v3", "v4"])

    def test_register_and_get(self):
        self.registry.register_basis(TestBasis)
        self.registry.register_rule(TestRule)

        self.assertIs(self.registry.get_basis("X"), TestBasis)
        self.assertIs(self.registry.get_rule_for_pattern(frozenset(TestRule.pattern)), TestRule)

    def test_get_unknown_raises_key_error(self):
        with self.assertRaises(KeyError):
            self.registry.get_basis("nope")
        with self.assertRaises(KeyError):
            self.registry.get_rule_for_pattern(frozenset(TestRule.pattern))

    def test_register_rejects_wrong_classes(self):
        with self.assertRaises(ValueError):
            self.registry.register_basis(TestRule)
        with self.assertRaises(ValueError):
            self.registry.register_rule("not a class")

    def test_register_requires_key(self):
        class KeylessBasis(BaseBasis):
            key = ""
            name = "Keyless"
            description = ""

            @classmethod
            def element(cls, tableau):
                return None

        with self.assertRaises(ValueError):
            self.registry.register_basis(KeylessBasis)

    def test_same_key_replaces(self):
        class OtherBasis(TestBasis):
            name = "Other test basis"

        self.registry.register_basis(TestBasis)
        self.registry.register_basis(OtherBasis)

        self.assertEqual(self.registry.get_all_bases(), [OtherBasis])

    def test_force_registration(self):
        class OtherBasis(TestBasis):
            name = "Other test basis"

        self.registry.register_basis(TestBasis)
        self.registry.register_basis(OtherBasis)
        self.registry.register_basis(TestBasis)
        self.assertEqual(self.registry.get_all_bases(), [OtherBasis])

        self.registry.register_basis(TestBasis, force=True)
        self.assertEqual(self.registry.get_all_bases(), [TestBasis])

    def test_rule_for_pattern(self):
        lookups = {
            ((1, 3, 4), (2, 5, 6)): CrossedLeftArcsRule,
            ((1, 2, 5), (3, 4, 6)): CrossedRightArcsRule,
            ((1, 4, 6), (2, 3, 5)): NestedLeftCrossedRightRule,
            ((1, 3, 6), (2, 4, 5)): CrossedLeftNestedRightRule,
            ((1, 3, 5), (2, 4, 6)): DoublyCrossedRule,
        }
        for pattern, rule in lookups.items():
            self.assertIs(registry.get_rule_for_pattern(frozenset(pattern)), rule)
        with self.assertRaises(KeyError):
            registry.get_rule_for_pattern(frozenset({(1, 2, 3), (4, 5, 6)}))
