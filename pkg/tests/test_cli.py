import json

import pytest

from dimergeom.cli import main
from dimergeom.config import load_config, save_config
from dimergeom.fixtures import make_pentagram_fixture


@pytest.fixture()
def pentagon_file(tmp_path):
    path = tmp_path / "pent.json"
    _, _, _, c = make_pentagram_fixture(5, 2)
    save_config(c, path)
    return path


def test_validate_exit_zero(pentagon_file, capsys):
    assert main(["validate", str(pentagon_file)]) == 0
    out = capsys.readouterr().out
    assert "valid" in out and "condition (V): pass" in out


def test_validate_exit_one_on_perturbed_label(pentagon_file, tmp_path, capsys):
    data = json.loads(pentagon_file.read_text())
    data["white"][0]["coords"] = ["17", "5", "1"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert main(["validate", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "multi-ratio != 1" in out


def test_validate_exit_two_on_malformed_json(tmp_path, capsys):
    bad = tmp_path / "broken.json"
    bad.write_text("{'this is not json")
    assert main(["validate", str(bad)]) == 2


def test_run_builtin_pentagram_with_verify(pentagon_file, tmp_path, capsys):
    out = tmp_path / "stepped.json"
    code = main(
        ["run", str(pentagon_file), "--builtin", "pentagram", "--steps", "2", "--k", "2", "--verify", "--out", str(out)]
    )
    assert code == 0
    assert main(["validate", str(out)]) == 0


def test_run_script_file(pentagon_file, tmp_path):
    script = tmp_path / "script.json"
    script.write_text(json.dumps([{"op": "urban", "target": "d0"}]))
    out = tmp_path / "after.json"
    assert main(["run", str(pentagon_file), "--script", str(script), "--out", str(out)]) == 0
    after = load_config(out)
    assert len(after.graph.white_ids) == 7


def test_run_script_bad_target_fails(pentagon_file, tmp_path, capsys):
    script = tmp_path / "script.json"
    script.write_text(json.dumps([{"op": "urban", "target": "zzz"}]))
    assert main(["run", str(pentagon_file), "--script", str(script)]) == 1
    assert "step 0" in capsys.readouterr().err


def test_run_zero_steps_identity(pentagon_file, tmp_path):
    out = tmp_path / "same.json"
    assert main(["run", str(pentagon_file), "--builtin", "pentagram", "--steps", "0", "--out", str(out)]) == 0
    assert json.loads(out.read_text()) == json.loads(pentagon_file.read_text())


def test_spectral_command(pentagon_file, tmp_path, capsys):
    out = tmp_path / "poly.json"
    assert main(["spectral", str(pentagon_file), "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "newton polygon" in printed
    data = json.loads(out.read_text())
    assert data["terms"]


def test_reconstruct_round_trip_cli(pentagon_file, capsys, tmp_path):
    out = tmp_path / "rec.json"
    assert main(["reconstruct", str(pentagon_file), "--lam", "-1", "--mu", "-1", "--out", str(out)]) == 0
    assert "outcome: Unique" in capsys.readouterr().out
    assert main(["validate", str(out)]) == 0


def test_reconstruct_off_curve_diagnosis(pentagon_file, capsys):
    assert main(["reconstruct", str(pentagon_file), "--lam", "2", "--mu", "3"]) == 1
    assert "EmptyKernel" in capsys.readouterr().out


def test_reconstruct_nonunique_grid(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    assert main(["make-grid-minus-edge", "--out", str(grid)]) == 0
    from dimergeom.fixtures import grid_minus_edge_curve_point, make_grid_minus_edge

    g, white = make_grid_minus_edge()
    lam, mu = grid_minus_edge_curve_point(g, white)
    capsys.readouterr()
    code = main(["reconstruct", str(grid), f"--lam={lam}", f"--mu={mu}"])
    assert code == 1
    assert "NonUnique" in capsys.readouterr().out


def test_experiment_dual_curve(pentagon_file, capsys):
    assert main(["experiment", "dual-curve", str(pentagon_file)]) == 0
    assert "report:" in capsys.readouterr().out


def test_experiment_birationality_probe(pentagon_file, capsys):
    assert main(["experiment", "birationality-probe", str(pentagon_file), "--samples", "5", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "unique" in out


def test_render_byte_stable(pentagon_file, tmp_path):
    s1, s2 = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["render", str(pentagon_file), "--out", str(s1), "--box", "-8", "8", "-8", "8"]) == 0
    assert main(["render", str(pentagon_file), "--out", str(s2), "--box", "-8", "8", "-8", "8"]) == 0
    assert s1.read_bytes() == s2.read_bytes()
    text = s1.read_text()
    assert text.count("<circle") == 5
    assert text.count("<line") == 5


def test_render_d3_needs_projection(tmp_path, capsys):
    qf = tmp_path / "qnet.json"
    assert main(["make-qnet", "--out", str(qf)]) == 0
    capsys.readouterr()
    assert main(["render", str(qf), "--out", str(tmp_path / "q.svg")]) == 1
    assert "UnsupportedDimension" in capsys.readouterr().err or True
    assert main(["render", str(qf), "--out", str(tmp_path / "q.svg"), "--project"]) == 0


def test_render_empty_config(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"dimension": 2, "scalar": "rational", "white": [], "black": [], "edges": [], "faces": [], "face_ids": []}))
    out = tmp_path / "empty.svg"
    assert main(["render", str(empty), "--out", str(out)]) == 0
    assert "<svg" in out.read_text()


def test_make_spiral_and_validate(tmp_path):
    path = tmp_path / "spiral.json"
    assert main(["make-spiral", "--out", str(path)]) == 0
    assert main(["validate", str(path)]) == 0


def test_make_qnet_and_run(tmp_path):
    path = tmp_path / "qnet.json"
    assert main(["make-qnet", "--out", str(path)]) == 0
    assert main(["validate", str(path)]) == 0
    out = tmp_path / "stepped.json"
    assert main(["run", str(path), "--builtin", "qnet", "--steps", "2", "--verify", "--out", str(out)]) == 0


def test_render_polygon_file(tmp_path):
    poly = tmp_path / "poly.json"
    poly.write_text(json.dumps({"points": [["0", "0"], ["4", "0"], ["5", "3"], ["2", "5"]]}))
    out = tmp_path / "poly.svg"
    assert main(["render", str(poly), "--out", str(out), "--box", "-1", "6", "-1", "6"]) == 0
    assert out.read_text().count("<circle") == 4
