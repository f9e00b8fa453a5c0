import json

import pytest

from trimono.cli import main
from trimono.highdim import boundary_simplex


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out)


def test_analyze_tetrahedron(capsys):
    rep = run_json(capsys, "analyze", "--builtin", "tetrahedron")
    assert rep["monodromy"]["2"] == "Sym3"
    assert rep["colorable"]["vertex_3_colorable"] is False
    assert rep["odd_vertices"] == [1, 2, 3, 4]
    assert rep["euler_characteristic"] == 2


def test_analyze_seven_vertex_torus(capsys):
    rep = run_json(capsys, "analyze", "--builtin", "7-vertex-torus")
    assert rep["monodromy"]["2"] == "C3"
    assert rep["colorable"]["face_2_colorable"] is True
    assert rep["genus"] == 1


def test_analyze_octahedron_text(capsys):
    code, out, _ = run(capsys, "analyze", "--builtin", "octahedron")
    assert code == 0
    assert 'monodromy: {"2": "trivial"' in out
    assert "euler_characteristic: 2" in out


def test_output_is_byte_stable(capsys):
    first = run(capsys, "analyze", "--builtin", "icosahedron", "--json")
    second = run(capsys, "analyze", "--builtin", "icosahedron", "--json")
    assert first == second


def test_unfold_tetrahedron(capsys):
    rep = run_json(capsys, "unfold", "--builtin", "tetrahedron")
    assert rep["component_count"] == 1 and rep["component_degrees"] == [6]
    assert (rep["total_vertices"], rep["total_edges"], rep["total_triangles"]) == (12, 36, 24)
    assert rep["riemann_hurwitz"] == [0, 0]


def test_unfold_three_dimensional(capsys):
    rep = run_json(capsys, "unfold", "--builtin", "boundary-4-simplex")
    assert rep["facets"] == 120 and rep["link_euler_histogram"] == {"0": 20}


def test_germs(capsys):
    rep = run_json(capsys, "germs", "--builtin", "tetrahedron", "--with", "octahedron")
    assert rep["component_count"] == 2
    assert {c["genus"] for c in rep["components"]} == {13}
    for c in rep["components"]:
        assert c["riemann_hurwitz_left"][0] == c["riemann_hurwitz_left"][1]


def test_color_and_develop(capsys):
    rep = run_json(capsys, "color", "--builtin", "octahedron", "--k", "4")
    assert rep["colorable"] is True
    rep = run_json(capsys, "develop", "--builtin", "icosahedron", "--k", "5")
    assert rep["consistent"] is True
    assert all(abs(a) < 1e-9 for a in rep["holonomy_angles"].values())


def test_gen_round_trip(capsys, tmp_path):
    path = tmp_path / "t.json"
    assert run(capsys, "gen", "--builtin", "7-vertex-torus", "--out", str(path))[0] == 0
    rep = run_json(capsys, "analyze", "--in", str(path))
    assert rep["monodromy"]["2"] == "C3"


def test_gen_spheres(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "--spheres", "7", "--cache", str(tmp_path))
    assert code == 0
    assert len(out.splitlines()) == 1 + 1 + 2 + 5


def test_analyze_three_complex_from_file(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(boundary_simplex(3).to_json()))
    rep = run_json(capsys, "analyze", "--in", str(path))
    assert rep  # a report for a pure complex


def test_enumerate_verify(capsys, tmp_path):
    rep = run_json(capsys, "enumerate-verify", "--n", "8", "--cache", str(tmp_path))
    assert rep["ok"] is True and rep["census"]["8"] == 14


def test_strict_remark_exits_with_theorem_code(capsys):
    code, _, err = run(capsys, "enumerate-verify", "--n", "6", "--strict-remark")
    assert code == 3 and "theorem violation" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze"],
        ["analyze", "--builtin", "nonesuch"],
        ["enumerate-verify", "--n", "6", "--k", "7"],
        ["germs", "--builtin", "tetrahedron"],
        ["color", "--builtin", "boundary-4-simplex"],
    ],
)
def test_bad_input_exits_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error: ") and not out


def test_invalid_surface_file_names_the_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dim": 2, "facets": [[0, 1, 2], [0, 1, 3], [0, 1, 4]]}))
    code, _, err = run(capsys, "analyze", "--in", str(path))
    assert code == 2 and "error: " in err
    path.write_text("{not json")
    assert run(capsys, "analyze", "--in", str(path))[0] == 2
    assert run(capsys, "analyze", "--in", str(tmp_path / "missing.json"))[0] == 2
