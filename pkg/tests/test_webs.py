from django.test import SimpleTestCase, override_settings

from specht_webs.checks import theta
from specht_webs.specht import web_of_tableau
from specht_webs.webs import (
    CrossingDiagram,
    PlanarMap,
    Web,
    WebSum,
    act_web,
    canonical_form,
    is_non_elliptic,
    mirror,
    reduce,
    resolve_all,
    resolve_crossing,
    stack_crossing,
    superstandard_web,
    web_of_fork,
)

from .test_helpers import T1, TABLEAUX, V0, V1


def double_crossing_smoothings():
    """The four webs obtained by resolving both crossings of s_3 stacked twice on W0."""
    stacked = stack_crossing(stack_crossing(superstandard_web(2), 3), 3)
    webs = []
    for first, _ in resolve_crossing(stacked, stacked.crossings[0]):
        for second, _ in resolve_crossing(first, first.crossings[0]):
            webs.append(Web.from_map(second.to_map()))
    return webs


class SuperstandardWebTest(SimpleTestCase):
    def test_shape(self):
        origin = superstandard_web(2)

        self.assertEqual(origin.boundary_count, 6)
        self.assertEqual(origin.tags.count(0), 2)
        self.assertEqual(origin.loops, 0)
        self.assertTrue(is_non_elliptic(origin))

    def test_rejects_zero(self):
        with self.assertRaises(ValueError):
            superstandard_web(0)

    def test_canonical_form_ignores_construction_order(self):
        planar = PlanarMap()
        forks = [planar.add_vertex(), planar.add_vertex()]
        points = {position: planar.add_vertex(position=position) for position in range(6, 0, -1)}
        for k in (1, 0):
            for position in range(3 * k + 1, 3 * k + 4):
                planar.add_edge(forks[k], points[position])

        self.assertEqual(canonical_form(Web.from_map(planar)), canonical_form(superstandard_web(2)))


class ValidationTest(SimpleTestCase):
    def test_boundary_edges_must_flow_into_the_boundary(self):
        planar = PlanarMap()
        first, second = planar.add_vertex(position=1), planar.add_vertex(position=2)
        planar.add_edge(first, second)

        with self.assertRaises(ValueError):
            Web.from_map(planar, validate=True)

    def test_trivalent_vertices_need_uniform_orientation(self):
        planar = PlanarMap()
        points = [planar.add_vertex(position=position) for position in (1, 2, 3)]
        vertex = planar.add_vertex()
        planar.add_edge(vertex, points[0])
        planar.add_edge(vertex, points[1])
        planar.add_edge(points[2], vertex)

        with self.assertRaises(ValueError):
            planar.validate()

    def test_webs_cannot_hold_crossings(self):
        stacked = stack_crossing(superstandard_web(2), 1)
        with self.assertRaises(ValueError):
            Web.from_map(stacked.to_map())

    def test_json(self):
        origin = superstandard_web(2)
        stacked = stack_crossing(origin, 3)

        self.assertEqual(Web.from_json(origin.to_json()), origin)
        self.assertEqual(CrossingDiagram.from_json(stacked.to_json()), stacked)

    def test_invalid_json(self):
        data = superstandard_web(1).to_json()
        data["twin"] = list(range(len(data["twin"])))
        with self.assertRaises(ValueError):
            Web.from_json(data)
        with self.assertRaises(ValueError):
            Web.from_json({"tags": [1]})


class SkeinTest(SimpleTestCase):
    def test_resolve_crossing_gives_two_terms(self):
        stacked = stack_crossing(superstandard_web(2), 3)
        (h_term, h_coefficient), (i_term, i_coefficient) = resolve_crossing(stacked, stacked.crossings[0])

        self.assertEqual((h_coefficient, i_coefficient), (1, 1))
        self.assertEqual(h_term.tags.count(0), 4)
        self.assertEqual(i_term.tags.count(0), 2)
        self.assertEqual(resolve_all(stacked), act_web(WebSum.of_web(superstandard_web(2)), 3))

    def test_resolve_crossing_needs_a_crossing(self):
        with self.assertRaises(ValueError):
            resolve_crossing(stack_crossing(superstandard_web(2), 1), 0)

    def test_crossing_on_one_fork_is_minus_one(self):
        origin = WebSum.of_web(superstandard_web(2))
        for i in (1, 2, 4, 5):
            self.assertEqual(act_web(origin, i), -origin)

    def test_crossing_between_forks(self):
        result = act_web(WebSum.of_web(superstandard_web(2)), 3)

        self.assertEqual(result, WebSum.of_web(superstandard_web(2)) + WebSum.of_web(web_of_tableau(T1)))

    def test_act_web_out_of_range(self):
        with self.assertRaises(ValueError):
            act_web(WebSum.of_web(superstandard_web(2)), 6)


class ReductionTest(SimpleTestCase):
    def test_loop_counts_three(self):
        origin = superstandard_web(2)
        self.assertEqual(reduce(Web(origin.boundary_count, origin.vertices, 2)), WebSum.of_web(origin, 9))

    def test_theta_counts_minus_six(self):
        self.assertFalse(is_non_elliptic(theta()))
        self.assertEqual(reduce(theta()), WebSum.of_web(Web(0, ()), -6))

    def test_double_crossing_reduces_to_uncrossed_strands(self):
        total = WebSum()
        for web in double_crossing_smoothings():
            total += reduce(web)
        self.assertEqual(total, WebSum.of_web(superstandard_web(2)))

    def test_any_schedule_gives_the_same_result(self):
        for web in double_crossing_smoothings():
            self.assertEqual(reduce(web, choose=lambda faces: len(faces) - 1), reduce(web))

    def test_results_are_non_elliptic(self):
        for web in double_crossing_smoothings():
            for key, _ in reduce(web):
                self.assertTrue(is_non_elliptic(Web.decode(key)))

    @override_settings(SPECHT_CHECK_INVARIANTS=False)
    def test_reduce_without_invariant_checks(self):
        self.assertEqual(reduce(theta(), choose=lambda faces: 0), WebSum.of_web(Web(0, ()), -6))


class ActionTest(SimpleTestCase):
    def test_generators_are_involutions(self):
        for tableau in TABLEAUX:
            web = WebSum.of_web(web_of_tableau(tableau))
            for i in range(1, 6):
                self.assertEqual(act_web(act_web(web, i), i), web)

    def test_web_of_fork(self):
        origin = WebSum.of_web(superstandard_web(2))

        self.assertEqual(web_of_fork(V0), origin)
        self.assertEqual(web_of_fork(V1), act_web(origin, 3))


class MirrorTest(SimpleTestCase):
    def test_superstandard_web_is_symmetric(self):
        self.assertEqual(mirror(superstandard_web(3)), superstandard_web(3))

    def test_mirror_is_an_involution(self):
        for tableau in TABLEAUX:
            web = web_of_tableau(tableau)
            self.assertEqual(mirror(mirror(web)), web)
            self.assertTrue(is_non_elliptic(mirror(web)))

    def test_canonical_form_tells_chiral_webs_apart(self):
        webs = [web_of_tableau(tableau) for tableau in TABLEAUX]
        chiral = [web for web in webs if canonical_form(mirror(web)) != canonical_form(web)]

        self.assertEqual(len(chiral), 2)
        self.assertEqual(canonical_form(mirror(chiral[0])), canonical_form(chiral[1]))
        self.assertEqual({canonical_form(mirror(web)) for web in webs}, {canonical_form(web) for web in webs})


class WebSumTest(SimpleTestCase):
    def test_str_uses_short_names(self):
        self.assertEqual(str(WebSum.of_web(superstandard_web(2), -2)), f"-2*{superstandard_web(2)}")
        self.assertTrue(str(superstandard_web(2)).startswith("web[6:"))

    def test_to_json(self):
        data = WebSum.of_web(superstandard_web(1), 3).to_json()
        self.assertEqual(data[0]["coefficient"], 3)
        self.assertEqual(data[0]["web"]["boundary_count"], 3)
        self.assertEqual(data[0]["web"]["out"].count(True), data[0]["web"]["out"].count(False))
