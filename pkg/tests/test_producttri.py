import math

import pytest
from hypothesis import given, strategies as st

from gcmanifolds import graphs, homcomplex, homology, producttri as P, simplicial as S


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_staircase_chain_count_is_multinomial(sizes):
    chains = P.staircase_chains(sizes)
    assert len(chains) == P.multinomial([s - 1 for s in sizes])
    for chain in chains:
        assert len(chain) == sum(s - 1 for s in sizes) + 1
        for a, b in zip(chain, chain[1:]):
            assert sum(y - x for x, y in zip(a, b)) == 1 and all(y >= x for x, y in zip(a, b))


@pytest.mark.parametrize("cell", [(0b011, 0b100), (0b0011, 0b1100, 0b0011), (0b111, 0b1000, 0b110)])
def test_single_cell_triangulates_a_ball(cell):
    # vertex index over the grid of the cell
    from itertools import product
    grid = list(product(*(graphs._bits(m) for m in cell)))
    index = {v: i for i, v in enumerate(grid)}
    k = S.SimplicialComplex(len(grid), P.triangulate_cell(cell, index))
    assert k.dimension == sum(m.bit_count() - 1 for m in cell)
    assert homology.homology_integer(k).as_tuple() == ((1, ()),) + ((0, ()),) * k.dimension
    assert len(k.facets) == P.multinomial([m.bit_count() - 1 for m in cell])


def test_hexagon():
    hc = homcomplex.build_hom(graphs.complete(2), graphs.complete(3))
    assert P.product_triangulation(hc).f_vector() == [6, 6]


def test_hom_c5_k4(c5k4, c5k4_tri):
    assert c5k4_tri.f_vector() == [240, 1680, 2880, 1440]
    assert len(c5k4_tri.facets) == P.expected_top_simplices(c5k4)
    assert c5k4_tri.vertex_count == len(c5k4.vertices)


def test_torus_and_square_cells():
    hc = homcomplex.build_hom(graphs.complement(graphs.cycle(4)), graphs.complete(3))
    k = P.product_triangulation(hc)
    assert k.f_vector() == [36, 108, 72] and k.euler() == 0
    assert S.is_closed_pseudomanifold(k)


def test_faces_of_shared_cells_agree(c5k4, c5k4_tri):
    # the triangulation restricted to any facet cell equals that cell's own staircase
    index = c5k4.vertex_index
    faces = c5k4_tri.all_faces()
    for cell in c5k4.facets[::25]:
        for simplex in P.triangulate_cell(cell, index):
            assert simplex in faces


def test_resource_limit():
    from gcmanifolds.errors import ResourceLimitError
    with pytest.raises(ResourceLimitError):
        P.product_triangulation(homcomplex.build_hom(graphs.cycle(5), graphs.complete(4)), limit=100)


def test_vertex_table(c5k4, tmp_path):
    lines = P.format_vertex_table(c5k4).splitlines()
    assert len(lines) == 240
    i, cell = lines[0].split("\t")
    assert i == "0" and homcomplex.parse_cell(cell) == homcomplex.cell_from_coloring(c5k4.vertices[0])
    P.write_vertex_table(c5k4, tmp_path / "v.tsv")
    assert (tmp_path / "v.tsv").read_text().count("\n") == 240


def test_multinomial():
    assert P.multinomial([1, 1, 1]) == 6
    assert P.multinomial([2, 3]) == math.comb(5, 2)
