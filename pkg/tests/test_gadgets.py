import random

import pytest

from palette_lab.choosability import (
    Graph,
    ListAssignment,
    complete_bipartite,
    find_l_colouring,
    is_proper_l_colouring,
)
from palette_lab.extremal import compute_R
from palette_lab.gadgets import (
    Claim,
    PreconditionError,
    hard_bipartite_assignment,
    hitting_set_used,
    kmm_assignment,
    property_k_colouring,
)
from palette_lab.setfam import GroundParams, SetFamily, elems_of, k_subsets


def random_instance(rng, k, ell, a_max):
    """Random bipartite graph with |A| <= a_max and a random (k, ell)-assignment."""
    a = rng.randint(1, a_max)
    b = rng.randint(0, 8)
    edges = [(u, a + v) for u in range(a) for v in range(b) if rng.random() < 0.6]
    g = Graph.from_edges(a + b, edges, (range(a), range(a, a + b)))
    subsets = k_subsets(ell, k)
    lists = tuple(rng.choice(subsets) for _ in range(a + b))
    return g, ListAssignment(GroundParams(k, ell), lists)


class TestHardBipartite:
    def test_triangle(self, triangle_family):
        out = hard_bipartite_assignment(triangle_family)
        assert out.graph == complete_bipartite(3, 3)
        assert out.assignment.to_json()["lists"] == [[1, 2], [1, 3], [2, 3]] * 2
        assert out.claim is Claim.UNCOLOURABLE
        assert find_l_colouring(out.graph, out.assignment) is None

    def test_all_triples_of_five(self):
        out = hard_bipartite_assignment(SetFamily.complete(3, 5))
        assert out.graph.n == 20 and out.assignment.params == GroundParams(3, 5)
        assert find_l_colouring(out.graph, out.assignment) is None

    def test_has_property_b(self):
        with pytest.raises(PreconditionError) as exc:
            hard_bipartite_assignment(SetFamily.from_sets(2, 4, [[1, 2], [3, 4]]))
        assert exc.value.witness == (1, 3)

    def test_larger_sides(self, triangle_family):
        out = hard_bipartite_assignment(triangle_family, 4, 5)
        assert out.graph == complete_bipartite(4, 5)
        assert find_l_colouring(out.graph, out.assignment) is None

    def test_deleting_a_right_vertex_frees_it(self, triangle_family):
        out = hard_bipartite_assignment(triangle_family)
        for drop in range(3, 6):
            keep = [v for v in range(6) if v != drop]
            g = out.graph.induced(keep)
            la = ListAssignment(out.assignment.params, tuple(out.assignment.lists[v] for v in keep))
            assert find_l_colouring(g, la) is not None


class TestKmm:
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_uncolourable_and_sized(self, m):
        out = kmm_assignment(m)
        assert out.graph.n == m + m**m
        assert out.assignment.params == GroundParams(m, m * m)
        assert out.graph.bipartition is not None
        assert find_l_colouring(out.graph, out.assignment) is None

    def test_m1(self):
        out = kmm_assignment(1)
        assert out.assignment.to_json()["lists"] == [[1], [1]]

    def test_m2_lists(self):
        lists = kmm_assignment(2).assignment.to_json()["lists"]
        assert lists == [[1, 2], [3, 4], [1, 3], [1, 4], [2, 3], [2, 4]]

    def test_m3_transversals(self):
        lists = kmm_assignment(3).assignment.to_json()["lists"]
        assert len(lists) == 30 and len({tuple(l) for l in lists[3:]}) == 27

    @pytest.mark.parametrize("m", [0, 5])
    def test_range(self, m):
        with pytest.raises(ValueError):
            kmm_assignment(m)


class TestPropertyKColouring:
    def test_two_disjoint_triples(self):
        g = Graph.from_edges(3, [(0, 2), (1, 2)], ([0, 1], [2]))
        la = ListAssignment.from_lists(3, 9, [[1, 2, 3], [4, 5, 6], [1, 4, 7]])
        assert hitting_set_used(g, la) == (1, 4)
        c = property_k_colouring(g, la)
        assert c.colour == (1, 4, 7)

    def test_equal_lists(self):
        g = complete_bipartite(3, 2)
        la = ListAssignment.from_lists(2, 4, [[1, 2]] * 3 + [[1, 3], [1, 4]])
        c = property_k_colouring(g, la)
        assert c.colour[:3] == (1, 1, 1)
        assert 1 not in c.colour[3:]
        assert is_proper_l_colouring(g, la, c)

    def test_no_hitting_set(self):
        g = complete_bipartite(3, 1)
        la = ListAssignment.from_lists(2, 3, [[1, 2], [1, 3], [2, 3], [1, 2]])
        with pytest.raises(PreconditionError):
            property_k_colouring(g, la)

    def test_needs_bipartition(self):
        g = Graph.from_edges(2, [(0, 1)])
        with pytest.raises(ValueError):
            property_k_colouring(g, ListAssignment.from_lists(1, 2, [[1], [2]]))

    @pytest.mark.parametrize("k,ell", [(3, 7), (3, 8), (3, 9), (2, 5)])
    def test_round_trip(self, k, ell):
        r = compute_R(GroundParams(k, ell)).value
        rng = random.Random(1000 * k + ell)
        for _ in range(100):
            g, la = random_instance(rng, k, ell, r - 1)
            c = property_k_colouring(g, la)
            assert is_proper_l_colouring(g, la, c)
            kset = set(hitting_set_used(g, la))
            side_a, side_b = g.bipartition
            assert all(c.colour[u] in kset for u in side_a)
            assert all(c.colour[v] not in kset for v in side_b)
            assert all(c.colour[u] == min(set(elems_of(la.lists[u])) & kset) for u in side_a)


def test_bundle_json(triangle_family):
    d = hard_bipartite_assignment(triangle_family).to_json()
    assert set(d) == {"graph", "assignment", "claim"} and d["claim"] == "uncolourable"
    assert Graph.from_json(d["graph"]) == complete_bipartite(3, 3)
