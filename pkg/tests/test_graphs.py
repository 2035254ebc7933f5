from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from gcmanifolds import graphs, simplicial
from gcmanifolds.errors import ResourceLimitError
from gcmanifolds.graphs import Graph

from conftest import small_graphs


def brute_independence(g):
    n = g.vertex_count
    best = 0
    for mask in range(1 << n):
        vs = [v for v in range(n) if mask >> v & 1]
        if all(not g.has_edge(a, b) for a, b in combinations(vs, 2)):
            best = max(best, len(vs))
    return best


def brute_chromatic(g):
    n = g.vertex_count
    for k in range(n + 1):
        for col in product(range(k), repeat=n):
            if all(col[u] != col[v] for u, v in g.edges):
                return k
    return n


def test_complement_of_c4_is_two_edges():
    c = graphs.complement(graphs.cycle(4))
    assert graphs.is_isomorphic(c, graphs.disjoint_union(graphs.complete(2), graphs.complete(2)))


def test_c5_is_self_complementary():
    assert graphs.is_isomorphic(graphs.complement(graphs.cycle(5)), graphs.cycle(5))


def test_complement_of_complete_is_edgeless():
    assert graphs.complement(graphs.complete(6)) == graphs.edgeless(6)


def test_standard_graphs():
    assert graphs.cycle(5).sorted_edges() == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    assert len(graphs.complete(4).edges) == 6
    u = graphs.standard_graph("disjoint_union", graphs.complete(2), graphs.complete(2))
    assert (u.vertex_count, len(u.edges)) == (4, 2)
    with pytest.raises(ValueError):
        graphs.cycle(2)
    with pytest.raises(ValueError):
        graphs.standard_graph("petersen")


def test_graph_rejects_loops_and_out_of_range():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])
    assert Graph.from_edges(3, [(0, 1), (1, 0)]).edges == frozenset({(0, 1)})


def test_invariants_of_suspended_pentagon_complement():
    k = simplicial.join(simplicial.sphere0(), simplicial.cycle_complex(5))
    g = graphs.complement(k.skeleton_graph())
    # K_2 disjoint from the complement of C_5 (itself a 5-cycle): chromatic number 3
    assert g.vertex_count == 7
    assert graphs.is_isomorphic(g, graphs.disjoint_union(graphs.complete(2), graphs.cycle(5)))
    assert graphs.invariants(g).chromatic == brute_chromatic(g) == 3


def test_octahedron_complement_independence():
    g = graphs.complement(simplicial.octahedron().skeleton_graph())
    assert graphs.invariants(g).independence == brute_independence(g) == 3


def test_c6_invariants():
    inv = graphs.invariants(graphs.cycle(6))
    assert inv.bipartite and inv.max_degree == 2 and inv.chromatic == 2 and inv.connected


def test_empty_graph_conventions():
    inv = graphs.invariants(Graph(0))
    assert (inv.chromatic, inv.independence, inv.clique) == (0, 0, 0)


def test_size_bound():
    with pytest.raises(ResourceLimitError):
        graphs.chromatic_number(graphs.cycle(graphs.MAX_EXACT_VERTICES + 1))


@given(small_graphs())
def test_complement_involution(g):
    assert graphs.complement(graphs.complement(g)) == g


@given(small_graphs(max_vertices=7))
def test_invariants_match_brute_force(g):
    inv = graphs.invariants(g)
    assert inv.independence == brute_independence(g)
    assert inv.clique == brute_independence(graphs.complement(g))
    assert inv.chromatic == brute_chromatic(g)
    assert graphs.is_proper_coloring(g, graphs.optimal_coloring(g))


@given(small_graphs(min_vertices=1))
def test_chromatic_lower_bound(g):
    inv = graphs.invariants(g)
    assert inv.chromatic >= -(-g.vertex_count // inv.independence)
    assert inv.chromatic >= inv.clique
    if inv.bipartite:
        assert inv.chromatic <= 2


@given(small_graphs())
def test_text_round_trip(g):
    assert graphs.parse_graph(graphs.format_graph(g)) == g


def test_parse_graph_comments_and_errors(tmp_path):
    g = graphs.parse_graph("# a path\n3 2\n0 1\n# middle\n1 2\n")
    assert g.sorted_edges() == [(0, 1), (1, 2)]
    with pytest.raises(ValueError):
        graphs.parse_graph("3 2\n0 1\n")
    with pytest.raises(ValueError):
        graphs.parse_graph("3 1\n2 1\n")
    graphs.write_graph(g, tmp_path / "p.g")
    assert graphs.read_graph(tmp_path / "p.g") == g


@given(small_graphs(max_vertices=6), st.randoms(use_true_random=False))
def test_isomorphism_under_relabelling(g, rnd):
    perm = list(range(g.vertex_count))
    rnd.shuffle(perm)
    h = Graph.from_edges(g.vertex_count, [(perm[u], perm[v]) for u, v in g.edges])
    assert graphs.is_isomorphic(g, h)
