from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cancel_spectral import (UniformHypergraph, check_cancellative, f4, f5, link,
                             links_edge_disjoint, shadow, switch, t3, turan3)
from cancel_spectral.core import extension_stays_cancellative, is_cancellative

from oracles import brute_cancellative, brute_witnesses, random_cancellative


@st.composite
def hypergraphs(draw, max_n=7, max_m=None):
    n = draw(st.integers(3, max_n))
    triples = list(combinations(range(n), 3))
    edges = draw(st.lists(st.sampled_from(triples), unique=True, max_size=max_m or len(triples)))
    return UniformHypergraph(n, edges)


class TestUniformHypergraph:
    def test_normalizes_edge_order(self):
        G = UniformHypergraph(5, [(4, 2, 3), (2, 1, 0)])
        assert G.edges == ((0, 1, 2), (2, 3, 4))

    @pytest.mark.parametrize("edges", [[(0, 1, 1)], [(0, 1, 5)], [(0, 1)], [(-1, 0, 1)]])
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(ValueError):
            UniformHypergraph(5, edges)

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError, match="duplicate"):
            UniformHypergraph(4, [(0, 1, 2), (2, 1, 0)])

    def test_isolated_vertices_allowed(self):
        G = UniformHypergraph(6, [(0, 1, 2)])
        assert G.degrees() == [1, 1, 1, 0, 0, 0]

    def test_edges_at(self):
        G = UniformHypergraph(5, [(0, 1, 2), (0, 3, 4), (1, 2, 3)])
        assert G.edges_at(0) == ((0, 1, 2), (0, 3, 4))
        assert G.degree(3) == 2


class TestTuran:
    def test_single_edge(self):
        assert turan3(3).edges == ((0, 1, 2),)

    def test_n6_parts(self):
        G = turan3(6)
        assert G.m == 8
        parts = [{0, 1}, {2, 3}, {4, 5}]
        for e in G.edges:
            assert [sum(v in P for v in e) for P in parts] == [1, 1, 1]

    def test_n7(self):
        assert turan3(7).m == 12

    @pytest.mark.parametrize("n, expected", [(3, 1), (5, 4), (6, 8)])
    def test_t3_values(self, n, expected):
        assert t3(n) == expected

    def test_t3_matches_construction(self):
        for n in range(3, 31):
            assert turan3(n).m == t3(n)

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            turan3(2)

    def test_turan_is_cancellative(self):
        assert check_cancellative(turan3(9)).cancellative


class TestLinkShadow:
    def test_link_single_edge(self):
        assert link(UniformHypergraph(3, [(0, 1, 2)]), 0).pairs == ((1, 2),)

    def test_link_turan6(self):
        assert link(turan3(6), 0).pairs == ((2, 4), (2, 5), (3, 4), (3, 5))

    def test_link_isolated(self):
        L = link(UniformHypergraph(4, [(0, 1, 2)]), 3)
        assert L.pairs == () and len(L) == 0

    def test_link_out_of_range(self):
        with pytest.raises(ValueError):
            link(turan3(3), 3)

    def test_shadow_single_edge(self):
        assert shadow(UniformHypergraph(3, [(0, 1, 2)])).edges == ((0, 1), (0, 2), (1, 2))

    def test_shadow_turan6_is_k222(self):
        sh = shadow(turan3(6))
        assert sh.m == 12
        assert set(sh.edges) == {(u, v) for u, v in combinations(range(6), 2) if u // 2 != v // 2}

    def test_shadow_empty(self):
        assert shadow(UniformHypergraph(4)).edges == ()

    @given(hypergraphs())
    def test_link_size_is_degree(self, G):
        for v in range(G.n):
            L = link(G, v)
            assert len(L) == G.degree(v)
            for pair in L.pairs:
                assert tuple(sorted(pair + (v,))) in G.edge_set


class TestCancellative:
    def test_f4(self):
        rep = check_cancellative(f4())
        assert not rep.cancellative
        A, B, C = rep.witness
        assert (set(B) ^ set(C)) <= set(A)

    def test_f5(self):
        rep = check_cancellative(f5())
        assert not rep
        assert rep.witness == ((2, 3, 4), (0, 1, 2), (0, 1, 3))

    def test_single_edge(self):
        rep = check_cancellative(UniformHypergraph(3, [(0, 1, 2)]))
        assert rep.cancellative and rep.witness is None

    def test_matches_oracle_exhaustively_n5(self):
        triples = list(combinations(range(5), 3))
        for mask in range(1 << len(triples)):
            edges = [t for i, t in enumerate(triples) if mask >> i & 1]
            if len(edges) > 8:
                continue
            G = UniformHypergraph(5, edges)
            want = brute_witnesses(edges)
            rep = check_cancellative(G)
            assert rep.cancellative == (not want) == brute_cancellative(edges)
            if want:
                assert rep.witness == want[0]

    @settings(max_examples=300, deadline=None)
    @given(hypergraphs(max_n=8, max_m=8))
    def test_matches_oracle_random(self, G):
        want = brute_witnesses(G.edges)
        rep = check_cancellative(G)
        assert rep.cancellative == (not want)
        assert is_cancellative(G) == rep.cancellative
        if want:
            assert rep.witness == want[0]

    @settings(max_examples=200, deadline=None)
    @given(hypergraphs(max_n=7, max_m=10), st.data())
    def test_incremental_extension_check(self, G, data):
        if not is_cancellative(G):
            return
        free = [t for t in combinations(range(G.n), 3) if t not in G.edge_set]
        if not free:
            return
        t = data.draw(st.sampled_from(free))
        assert extension_stays_cancellative(G, t) == brute_cancellative(G.edges + (t,))

    def test_hereditary(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            G = random_cancellative(rng, int(rng.integers(4, 9)))
            for e in G.edges:
                assert check_cancellative(G.remove_edge(e)).cancellative


class TestLinksDisjoint:
    def test_adjacent_in_turan(self):
        assert links_edge_disjoint(turan3(6), 0, 2)

    def test_shared_pair(self):
        # 2 and 3 are not adjacent, and both links are {01}
        assert not links_edge_disjoint(UniformHypergraph(4, [(0, 1, 2), (0, 1, 3)]), 2, 3)

    def test_single_edge(self):
        assert links_edge_disjoint(UniformHypergraph(3, [(0, 1, 2)]), 0, 1)

    def test_errors(self):
        with pytest.raises(ValueError):
            links_edge_disjoint(turan3(3), 0, 0)
        with pytest.raises(ValueError):
            links_edge_disjoint(turan3(3), 0, 5)

    def test_adjacent_pairs_of_cancellative_graphs(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            G = random_cancellative(rng, int(rng.integers(4, 9)))
            for u, v in G.pair_index:
                assert links_edge_disjoint(G, u, v)


class TestSwitch:
    def test_copy_onto_isolated(self):
        G = UniformHypergraph(4, [(0, 1, 2)])
        assert switch(G, 0, 3).edges == ((0, 1, 2), (1, 2, 3))

    def test_from_isolated(self):
        G = UniformHypergraph(4, [(0, 1, 2)])
        assert switch(G, 3, 0).edges == ()

    def test_same_vertex(self):
        with pytest.raises(ValueError):
            switch(turan3(3), 1, 1)

    @given(hypergraphs(), st.data())
    def test_formula(self, G, data):
        u = data.draw(st.integers(0, G.n - 1))
        v = data.draw(st.integers(0, G.n - 1).filter(lambda w: w != u))
        H = switch(G, u, v)
        Ev = {e for e in G.edges if v in e}
        Eu = {e for e in G.edges if u in e}
        want = (set(G.edges) - Ev) | {tuple(sorted((set(e) - {u}) | {v})) for e in Eu - Ev}
        assert set(H.edges) == want
        assert H.n == G.n
        assert not H.adjacent(u, v)
        assert {e for e in G.edges if u not in e and v not in e} <= set(H.edges)

    def test_preserves_cancellative(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            G = random_cancellative(rng, int(rng.integers(4, 9)))
            u, v = rng.choice(G.n, size=2, replace=False)
            assert brute_cancellative(switch(G, int(u), int(v)).edges)
