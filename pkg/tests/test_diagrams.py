import random

from django.test import SimpleTestCase

from specht_webs.diagrams import (
    Arc,
    ForkDiagram,
    all_fork_diagrams,
    boundary_word_of,
    crossing_count,
    crossing_pairs,
    is_m_diagram,
    is_polytabloid,
    phi,
    psi,
    random_fork_diagram,
    relabel,
    routing,
    swap,
    tableau_of,
)
from specht_webs.permutations import Permutation
from specht_webs.tableaux import Tableau, enumerate_syt, word_of

from .test_helpers import M2, M3, M4, M_DIAGRAMS, POLYTABLOIDS, T2, TABLEAUX, U2, U3, V0, V1, V2, V3, V4, diagram


class ArcTest(SimpleTestCase):
    def test_endpoints_must_increase(self):
        with self.assertRaises(ValueError):
            Arc(2, 1, 3)

    def test_of_sorts_points(self):
        arc = Arc.of([5, 1, 3])

        self.assertEqual(arc.endpoints, (1, 3, 5))
        self.assertEqual(arc.left_arc, (1, 3))
        self.assertEqual(arc.right_arc, (3, 5))
        self.assertEqual(str(arc), "(1,3,5)")


class ForkDiagramTest(SimpleTestCase):
    def test_equality_ignores_arc_order(self):
        self.assertEqual(diagram((4, 5, 6), (1, 2, 3)), V0)

    def test_endpoints_must_partition(self):
        with self.assertRaises(ValueError):
            diagram((1, 2, 3), (3, 4, 5))
        with self.assertRaises(ValueError):
            ForkDiagram(2, (Arc(1, 2, 3),))

    def test_json(self):
        self.assertEqual(M2.to_json(), {"n": 2, "arcs": [[1, 5, 6], [2, 3, 4]]})
        self.assertEqual(ForkDiagram.parse('{"n": 2, "arcs": [[2, 3, 4], [1, 5, 6]]}'), M2)

    def test_invalid_json(self):
        for text in ["not json", "[1, 2]", '{"n": 2}', '{"n": 3, "arcs": [[1, 2, 3], [4, 5, 6]]}']:
            with self.assertRaises(ValueError):
                ForkDiagram.parse(text)

    def test_arc_containing(self):
        self.assertEqual(M2.arc_containing(3), Arc(2, 3, 4))
        with self.assertRaises(ValueError):
            M2.arc_containing(7)


class BijectionTest(SimpleTestCase):
    def test_phi(self):
        self.assertEqual([phi(tableau) for tableau in TABLEAUX], POLYTABLOIDS)

    def test_psi(self):
        self.assertEqual([psi(tableau) for tableau in TABLEAUX], M_DIAGRAMS)
        self.assertEqual(psi(T2), diagram((2, 3, 4), (1, 5, 6)))

    def test_reject_non_standard(self):
        tableau = Tableau.from_rows([[2, 1], [3, 4], [5, 6]])
        with self.assertRaises(ValueError):
            phi(tableau)
        with self.assertRaises(ValueError):
            psi(tableau)

    def test_inverse_bijections(self):
        for tableau in enumerate_syt(3):
            self.assertEqual(tableau_of(phi(tableau)), tableau)
            self.assertEqual(tableau_of(psi(tableau)), tableau)

    def test_tableau_of_rejects_other_diagrams(self):
        with self.assertRaises(ValueError):
            tableau_of(U2)
        with self.assertRaises(ValueError):
            tableau_of(U3)

    def test_boundary_words_agree(self):
        for tableau in enumerate_syt(3):
            self.assertEqual(boundary_word_of(phi(tableau)), word_of(tableau))
            self.assertEqual(boundary_word_of(psi(tableau)), word_of(tableau))

    def test_boundary_words_of_local_diagrams(self):
        self.assertEqual(boundary_word_of(U2), "++00--")
        self.assertEqual(boundary_word_of(U3), "++00--")


class PredicateTest(SimpleTestCase):
    def test_crossing_counts(self):
        counts = {V0: 0, V1: 0, V2: 1, V3: 1, V4: 2, U2: 1, U3: 1, M2: 0, M3: 0, M4: 0}
        for fork_diagram, expected in counts.items():
            self.assertEqual(crossing_count(fork_diagram), expected, str(fork_diagram))

    def test_mixed_crossings_do_not_count(self):
        # Left arc (3, 5) crosses right arc (2, 4) only
        self.assertEqual(crossing_count(diagram((1, 2, 4), (3, 5, 6))), 0)

    def test_crossing_pairs(self):
        self.assertEqual(crossing_pairs(V4), [(Arc(1, 3, 5), Arc(2, 4, 6))])
        self.assertEqual(crossing_pairs(M4), [])

    def test_m_diagrams(self):
        self.assertTrue(all(is_m_diagram(m) for m in M_DIAGRAMS))
        self.assertFalse(is_m_diagram(V2))
        self.assertFalse(is_m_diagram(U3))

    def test_polytabloids(self):
        self.assertTrue(all(is_polytabloid(v) for v in POLYTABLOIDS))
        self.assertFalse(is_polytabloid(M2))
        self.assertFalse(is_polytabloid(U2))

    def test_m_diagram_count_is_dimension(self):
        for n, expected in [(2, 5), (3, 42)]:
            self.assertEqual(sum(1 for d in all_fork_diagrams(n) if is_m_diagram(d)), expected)
            self.assertEqual(sum(1 for d in all_fork_diagrams(n) if is_polytabloid(d)), expected)


class EnumerationTest(SimpleTestCase):
    def test_all_fork_diagrams(self):
        self.assertEqual(len(all_fork_diagrams(2)), 10)
        self.assertEqual(len(all_fork_diagrams(3)), 280)
        self.assertEqual(set(all_fork_diagrams(2)), {V0, V1, V2, V3, V4, M2, M3, M4, U2, U3})

    def test_random_fork_diagram_is_reproducible(self):
        first = [random_fork_diagram(4, random.Random(7)) for _ in range(3)]
        second = [random_fork_diagram(4, random.Random(7)) for _ in range(3)]
        self.assertEqual(first, second)


class RelabelTest(SimpleTestCase):
    def test_swap(self):
        self.assertEqual(swap(V1, 2), V2)
        self.assertEqual(swap(M2, 4), U2)

    def test_swap_out_of_range(self):
        with self.assertRaises(ValueError):
            swap(V0, 6)

    def test_relabel_is_a_right_action(self):
        sigma = Permutation.from_word((2, 4), 6)
        tau = Permutation.from_word((3, 1), 6)
        self.assertEqual(relabel(relabel(M3, sigma), tau), relabel(M3, sigma * tau))

    def test_routing_carries_superstandard_diagram(self):
        for fork_diagram in all_fork_diagrams(2):
            self.assertEqual(relabel(V0, routing(fork_diagram)), fork_diagram)
