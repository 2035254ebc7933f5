from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from gcmanifolds import graphs, homcomplex, producttri, simplicial as S, spheres
from gcmanifolds.simplicial import Answer, SimplicialComplex

from conftest import small_graphs


def brute_independent_sets(g):
    n = g.vertex_count
    sets = []
    for size in range(n + 1):
        for vs in combinations(range(n), size):
            if all(not g.has_edge(a, b) for a, b in combinations(vs, 2)):
                sets.append(vs)
    return sets


def maximal(sets):
    ss = [frozenset(s) for s in sets]
    return {tuple(sorted(s)) for s in ss if not any(s < t for t in ss)}


@st.composite
def small_complexes(draw, max_vertices=6):
    n = draw(st.integers(1, max_vertices))
    simps = draw(st.lists(st.sets(st.integers(0, n - 1), min_size=1, max_size=min(n, 4)),
                          min_size=1, max_size=6))
    k = SimplicialComplex(n, [tuple(sorted(s)) for s in simps], allow_ghosts=True)
    return k.compact()


def test_independence_complex_of_c5_is_c5():
    ind = S.independence_complex(graphs.cycle(5))
    assert ind.facets == maximal(brute_independent_sets(graphs.cycle(5)))
    assert S.isomorphic(ind, S.cycle_complex(5))


def test_independence_complex_of_two_edges_is_square():
    g = graphs.disjoint_union(graphs.complete(2), graphs.complete(2))
    assert S.isomorphic(S.independence_complex(g), S.cycle_complex(4))


def test_independence_complex_of_complete_graph():
    assert S.independence_complex(graphs.complete(4)).facets == {(0,), (1,), (2,), (3,)}


def test_clique_complexes():
    octa = S.octahedron()
    assert S.clique_complex(octa.skeleton_graph()) == octa
    assert S.clique_complex(graphs.cycle(4)).facets == graphs.cycle(4).edges
    assert S.clique_complex(graphs.complete(3)).facets == {(0, 1, 2)}


@given(small_graphs(max_vertices=7))
def test_ind_equals_cliq_of_complement(g):
    ind = S.independence_complex(g)
    assert ind == S.clique_complex(graphs.complement(g))
    assert ind.facets == maximal(brute_independent_sets(g))


def test_is_flag():
    assert S.is_flag(S.octahedron())
    assert not S.is_flag(S.boundary_of_simplex(4))
    assert S.is_flag(S.cycle_complex(4))
    assert not S.is_flag(S.cycle_complex(3))


@given(small_complexes())
def test_flagness_via_clique_completion(k):
    completed = S.clique_complex(k.skeleton_graph())
    assert k.all_faces() <= completed.all_faces()
    assert S.is_flag(k) == (completed == k)


def test_combinatorics():
    c = S.combinatorics(S.octahedron())
    assert (c.f_vector, c.euler, c.dimension) == ([6, 12, 8], 2, 2)
    c = S.combinatorics(S.join(S.sphere0(), S.sphere0()))
    assert (c.f_vector, c.euler) == ([4, 4], 0)


def test_genus_13_surface_counts():
    hc = homcomplex.build_hom(graphs.complement(graphs.cycle(6)), graphs.complete(4))
    k = producttri.product_triangulation(hc)
    c = S.combinatorics(k)
    assert (c.f_vector, c.euler) == ([264, 864, 576], 2 - 2 * 13)


def test_links():
    assert S.isomorphic(S.link(S.octahedron(), (0,)).compact(), S.cycle_complex(4))
    assert S.link(S.cycle_complex(5), (0,)).facets == {(1,), (4,)}
    assert S.link(S.boundary_of_simplex(4), (0, 1)).facets == {(2,), (3,)}
    with pytest.raises(ValueError):
        S.link(S.cycle_complex(5), (0, 2))


def test_joins():
    assert S.isomorphic(S.join(S.sphere0(), S.sphere0()), S.cycle_complex(4))
    k = S.join(S.cycle_complex(5), S.sphere0())
    assert k.f_vector() == [7, 15, 10] and S.is_flag_pl_sphere(k) is Answer.YES
    assert S.cone(S.cycle_complex(5)).euler() == 1


@given(small_complexes(5), small_complexes(5))
def test_euler_of_join(k, l):
    ek, el = k.euler(), l.euler()
    assert S.join(k, l).euler() == ek + el - ek * el


def test_sphere_recognition_examples():
    for m in range(4, 9):
        assert S.is_flag_pl_sphere(S.cycle_complex(m)) is Answer.YES
    assert S.is_flag_pl_sphere(S.cycle_complex(3)) is Answer.NO
    assert S.is_pl_sphere(S.cycle_complex(3)) is Answer.YES
    torus = homcomplex.build_hom(graphs.complement(graphs.cycle(4)), graphs.complete(3))
    assert S.is_pl_sphere(producttri.product_triangulation(torus)) is Answer.NO
    two = SimplicialComplex(6, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3),
                                (3, 4, 5)], allow_ghosts=False)
    assert S.is_pl_sphere(two) is Answer.NO


def test_three_dimensional_sphere_recognition():
    k = S.barycentric_subdivision(S.boundary_of_simplex(5))
    assert S.is_pl_sphere(k, seed=1) is Answer.YES
    assert S.is_pl_sphere(S.join(S.cycle_complex(5), S.cycle_complex(4))) is Answer.YES


@given(st.integers(4, 9), st.integers(0, 3))
def test_links_of_spheres_are_spheres(m, which):
    k = S.join(S.cycle_complex(m), S.sphere0())
    faces = sorted(k.all_faces() - {()})
    face = faces[which * len(faces) // 4]
    lk = S.link(k, face).compact() if len(face) < 3 else None
    if lk is not None:
        assert S.is_pl_sphere(lk) is Answer.YES
        assert lk.dimension == 2 - len(face)


def test_isomorphism():
    perm = [3, 0, 4, 1, 2]
    c5 = S.cycle_complex(5)
    assert S.isomorphic(c5, c5.relabel(perm))
    assert not S.isomorphic(S.octahedron(), S.join(S.cycle_complex(5), S.sphere0()))
    a, b = spheres.flag_filter(spheres.enumerate_2spheres(8))
    assert not S.isomorphic(a, b)
    c6s0 = S.join(S.cycle_complex(6), S.sphere0())
    assert S.isomorphic(a, c6s0) != S.isomorphic(b, c6s0)


@given(small_complexes(), st.randoms(use_true_random=False))
def test_isomorphic_under_relabelling(k, rnd):
    perm = list(range(k.vertex_count))
    rnd.shuffle(perm)
    assert S.isomorphic(k, k.relabel(perm))


@given(small_complexes())
def test_text_round_trip(k):
    assert S.parse_complex(S.format_complex(k)) == k


def test_complex_validation():
    with pytest.raises(ValueError):
        SimplicialComplex(3, [(0, 1)])
    with pytest.raises(ValueError):
        SimplicialComplex(2, [(0, 2)])
    with pytest.raises(ValueError):
        S.parse_complex("3\n2 1\n")
    assert SimplicialComplex(3, [(0, 1), (0,), (1, 2)]).facets == {(0, 1), (1, 2)}


def test_barycentric_subdivision():
    b = S.barycentric_subdivision(S.boundary_of_simplex(4))
    assert b.f_vector() == [14, 36, 24]
    assert S.is_pl_sphere(b) is Answer.YES and S.is_flag(b)
