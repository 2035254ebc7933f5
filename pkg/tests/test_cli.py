import subprocess
import sys

import pytest

from gcmanifolds import cli, graphs, simplicial as S


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def c5_files(tmp_path):
    graphs.write_graph(graphs.cycle(5), tmp_path / "c5.g")
    return tmp_path


def test_hom_then_report(capsys, c5_files):
    cells = c5_files / "c5k4.cells"
    code, _, _ = run(capsys, "hom", "--graph", c5_files / "c5.g", "--colors", 4, "--facets", "--out", cells)
    assert code == 0 and cells.read_text().startswith("# hom")
    code, out, _ = run(capsys, "report", "--cells", cells)
    assert code == 0
    assert "vertices=240 facets=300" in out
    for line in ("f=240,1680,2880,1440", "orientable=true", "manifold=yes", "H_1 = Z/2", "H_3 = Z"):
        assert line in out.splitlines()


def test_tri_pipes_into_homology(c5_files):
    gcm = [sys.executable, "-m", "gcmanifolds.cli"]
    cells = subprocess.run(gcm + ["hom", "--graph", "cycle:5", "--colors", "4"],
                           capture_output=True, text=True, check=True).stdout
    tri = subprocess.run(gcm + ["tri"], input=cells, capture_output=True, text=True, check=True).stdout
    hom = subprocess.run(gcm + ["homology"], input=tri, capture_output=True, text=True, check=True).stdout
    assert "H_1 = Z/2" in hom.splitlines()


def test_tri_writes_vertex_table(capsys, c5_files):
    run(capsys, "hom", "--graph", "cycle:5", "--colors", 4, "--out", c5_files / "c.cells")
    code, out, _ = run(capsys, "tri", "--cells", c5_files / "c.cells", "--vertex-table", c5_files / "v.tsv")
    assert code == 0 and S.parse_complex(out).f_vector() == [240, 1680, 2880, 1440]
    assert len((c5_files / "v.tsv").read_text().splitlines()) == 240


def test_betti_coefficients(capsys, tmp_path):
    S.write_complex(S.octahedron(), tmp_path / "o.complex")
    for coeff, expected in [("q", "1,0,1"), ("p2", "1,0,1"), ("int", "1,0,1")]:
        code, out, _ = run(capsys, "betti", "--complex", tmp_path / "o.complex", "--coeff", coeff)
        assert code == 0 and out.strip().endswith(f"betti={expected}")
    code, _, _ = run(capsys, "betti", "--complex", tmp_path / "o.complex", "--coeff", "p4")
    assert code == 1


def test_enumerate_flag(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--n", 9, "--flag", "--out", tmp_path / "cat")
    assert code == 0 and len(out.splitlines()) == 4
    assert len(list((tmp_path / "cat").glob("*.complex"))) == 4
    code, out, _ = run(capsys, "enumerate", "--n", 9, "--flag", "--prime")
    assert len(out.splitlines()) == 3


def test_formulas(capsys):
    code, out, _ = run(capsys, "formulas", "--r", "2-3")
    assert code == 0 and out.splitlines()[2].startswith("3\t13\t264")
    code, out, _ = run(capsys, "formulas", "--r", "3", "--s", "4")
    assert out.splitlines()[1] == "3\t4\t13"


def test_reduce_links_manifold(capsys, tmp_path):
    S.write_complex(S.barycentric_subdivision(S.boundary_of_simplex(4)), tmp_path / "b.complex")
    code, out, _ = run(capsys, "reduce", "--complex", tmp_path / "b.complex", "--seed", 2,
                       "--restarts", 2, "--log", tmp_path / "m.log")
    assert code == 0 and S.parse_complex(out).f_vector() == [4, 6, 4]
    assert (tmp_path / "m.log").read_text().startswith("# seed=")
    code, out, _ = run(capsys, "links", "--complex", tmp_path / "b.complex")
    assert out.splitlines()[-1] == "# links=14 spheres=14 non_spheres=0 unknown=0"
    code, out, _ = run(capsys, "manifold", "--complex", tmp_path / "b.complex")
    assert out == "manifold=yes\n"


def test_links_check_the_join_formula(capsys, tmp_path):
    run(capsys, "hom", "--graph", "complete:2", "--colors", 4, "--out", tmp_path / "k2k4.cells")
    code, out, _ = run(capsys, "links", "--cells", tmp_path / "k2k4.cells")
    assert code == 0 and out.splitlines()[-1].endswith("join_ok=12")


def test_cache_hits_are_identical(capsys, tmp_path, monkeypatch):
    S.write_complex(S.octahedron(), tmp_path / "o.complex")
    args = ("report", "--complex", tmp_path / "o.complex", "--cache-dir", tmp_path / "cache")
    _, first, _ = run(capsys, *args)
    assert len(list((tmp_path / "cache").rglob("*.json"))) == 1
    monkeypatch.setattr(cli, "report_text", lambda *a: pytest.fail("cache not used"))
    _, second, _ = run(capsys, *args)
    assert first == second
    monkeypatch.setenv("GCM_CACHE", str(tmp_path / "cache"))
    _, third, _ = run(capsys, "report", "--complex", tmp_path / "o.complex")
    assert third == first


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "hom", "--colors", 3)[0] == 1
    assert run(capsys, "homology", "--complex", tmp_path / "missing.complex")[0] == 1
    assert run(capsys, "enumerate", "--n", 11)[0] == 2
    (tmp_path / "bad.cells").write_text("# hom g=- h=K3\n# mode=facets_only positions=2\n# graph 0-1\n1;1\n")
    assert run(capsys, "report", "--cells", tmp_path / "bad.cells")[0] == 1


def test_invariant_violation_exit_code(capsys, tmp_path, monkeypatch):
    from gcmanifolds.errors import InvariantViolation

    def boom(*a, **k):
        raise InvariantViolation("broken")
    monkeypatch.setattr(cli.homology, "homology_integer", boom)
    S.write_complex(S.octahedron(), tmp_path / "o.complex")
    assert run(capsys, "homology", "--complex", tmp_path / "o.complex")[0] == 3
