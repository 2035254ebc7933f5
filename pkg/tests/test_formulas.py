import math

import pytest
from hypothesis import given, strategies as st

from gcmanifolds import formulas as F, graphs, homcomplex


def test_f_rs_examples():
    assert F.f_rs(2, 2) == 1
    assert F.f_rs(3, 4) == 13 == 3 * F.f_rs(2, 3) + 2 * F.f_rs(3, 3)
    assert F.f_rs(1, 7) == 0
    assert F.f_rs(5, 3) == 0
    with pytest.raises(ValueError):
        F.f_rs(0, 2)


@given(st.integers(1, 9))
def test_f_rr(r):
    assert F.f_rs(r, r) == math.factorial(r) - 1


@pytest.mark.parametrize("r", range(2, 9))
def test_closed_form_for_s_equal_r_plus_one(r):
    assert F.f_rs(r, r + 1) == F.f_r_rplus1_closed(r)


@pytest.mark.parametrize("r,s", [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (3, 5), (4, 4), (4, 5)])
def test_f_rs_is_the_reduced_euler_characteristic(r, s):
    # Hom(K_r, K_s) is a wedge of f(r,s) spheres of dimension s - r
    hc = homcomplex.build_hom(graphs.complete(r), graphs.complete(s), "all_cells")
    assert hc.euler() - 1 == (-1) ** (s - r) * F.f_rs(r, s)


def test_cubical_surface_counts():
    assert F.cubical_surface_counts(2) == F.SurfaceCounts(1, 36, 72, 36)
    assert F.cubical_surface_counts(3) == F.SurfaceCounts(13, 264, 576, 288)
    c = F.cubical_surface_counts(4)
    assert (c.genus, c.vertices) == (121, 2160)
    with pytest.raises(ValueError):
        F.cubical_surface_counts(1)


def test_r4_vertex_count_by_enumeration():
    g = graphs.complement(graphs.cycle(8))
    assert len(homcomplex.homomorphisms(g, graphs.complete(5))) == F.cubical_surface_counts(4).vertices


@given(st.integers(2, 30))
def test_surface_euler_consistency(r):
    c = F.cubical_surface_counts(r)
    assert c.vertices - c.edges + c.squares == 2 - 2 * c.genus


def test_bounds():
    assert F.bounds(1, 5, 4).dim_hom == 3
    assert F.bounds(2, 9, 4).dim_hom == 3
    b = F.bounds(2, 7, 5, chi=3, s=2)
    assert b.chi_lower == 3 and b.connectivity_lower == 1
    assert homcomplex.hom_dimension(homcomplex.build_hom(graphs.cycle(5), graphs.complete(4))) == 3


def test_dimension_formula_on_flag_spheres():
    from gcmanifolds import spheres
    for k in spheres.prime_flag_spheres(9):
        g = graphs.complement(k.skeleton_graph())
        hc = homcomplex.build_hom(g, graphs.complete(4))
        assert hc.dimension == F.bounds(2, 9, 4).dim_hom


def test_odd_complement_vertices():
    assert [F.odd_complement_vertices(r) for r in (2, 3, 4)] == [30, 168, 1080]


def test_formula_table():
    text = F.formula_table([2, 3])
    assert text.splitlines()[1].split("\t")[:5] == ["2", "1", "36", "72", "36"]
    assert F.formula_table([3], [4]).splitlines()[1] == "3\t4\t13"
