import orjson
import pytest
from typer.testing import CliRunner
from app.main import app

runner = CliRunner()


def _write(tmp_path, name: str, text: str):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_schema_command():
    result = runner.invoke(app, ["schema"])
    assert result.exit_code == 0
    schema = orjson.loads(result.output)
    assert set(schema["required"]) == {"ball", "specs"}


def test_trace_writes_csv_and_svg(tmp_path, scenes_dir):
    csv_path = tmp_path / "ellipse.csv"
    svg_path = tmp_path / "ellipse.svg"
    result = runner.invoke(
        app, ["trace", "--scene", str(scenes_dir / "euclidean_ellipse.json"), "--csv", str(csv_path), "--svg", str(svg_path)]
    )
    assert result.exit_code == 0, result.output
    rows = csv_path.read_text(encoding="utf-8").splitlines()
    assert len(rows) == 721
    assert rows[0] == rows[-1]
    svg = svg_path.read_text(encoding="utf-8")
    assert svg.startswith("<?xml")
    assert "<g id='curves'>" in svg


def test_trace_diagonal_scene_with_json_output(tmp_path, scenes_dir):
    scene = orjson.loads((scenes_dir / "linf_diagonal_line.json").read_bytes())
    scene["outputs"] = [{"format": "json", "path": str(tmp_path / "summary.json")}]
    path = _write(tmp_path, "scene.json", orjson.dumps(scene).decode("utf-8"))
    result = runner.invoke(app, ["trace", "--scene", str(path)])
    assert result.exit_code == 0, result.output
    summary = orjson.loads((tmp_path / "summary.json").read_bytes())
    assert summary["ball"] == "lp:inf"
    assert [row["curves"] for row in summary["specs"]] == [1, 1, 2]
    assert all(row["segments"] > 0 for row in summary["specs"][:2])


def test_trace_empty_locus_exits_2(scenes_dir):
    result = runner.invoke(app, ["trace", "--scene", str(scenes_dir / "empty_ellipse.json")])
    assert result.exit_code == 2
    assert "empty locus" in result.output


def test_trace_malformed_json_exits_2(tmp_path):
    path = _write(tmp_path, "broken.json", '{"ball": {"type": "lp", "p": 2},\n  "specs": [}')
    result = runner.invoke(app, ["trace", "--scene", str(path)])
    assert result.exit_code == 2
    assert "Error" in result.output


def test_trace_invalid_ball_exits_2(tmp_path):
    scene = {"ball": {"type": "lp", "p": 0.5}, "specs": [{"kind": "bisector", "x": [0, 0], "y": [1, 0]}]}
    path = _write(tmp_path, "bad_ball.json", orjson.dumps(scene).decode("utf-8"))
    result = runner.invoke(app, ["trace", "--scene", str(path)])
    assert result.exit_code == 2
    assert "ball" in result.output


def test_trace_missing_scene_exits_2(tmp_path):
    result = runner.invoke(app, ["trace", "--scene", str(tmp_path / "missing.json")])
    assert result.exit_code == 2


def test_grid_writes_pgm(tmp_path, scenes_dir):
    pgm = tmp_path / "cones.pgm"
    result = runner.invoke(
        app, ["grid", "--scene", str(scenes_dir / "linf_hyperbola_cones.json"), "--resolution", "40", "--pgm", str(pgm)]
    )
    assert result.exit_code == 0, result.output
    lines = pgm.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "P2"
    assert "40 40" in lines
    assert "rays_or_cones" in lines[1]


def test_verify_passes_and_writes_json(tmp_path):
    out = tmp_path / "reports.json"
    result = runner.invoke(app, ["verify", "--claims", "thm2", "--ball", "lp:2", "--json", str(out)])
    assert result.exit_code == 0, result.output
    reports = orjson.loads(out.read_bytes())
    assert [r["claim"] for r in reports] == ["thm2"]
    assert reports[0]["pass"] is True


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "--claims", "thm2", "--ball", "ellipse:3"],
        ["verify", "--claims", "sip", "--ball", "lp:inf"],
        ["verify", "--claims", "thm42", "--ball", "lp:2"],
        ["sip", "--p", "inf", "--matrix", "1,0,0,1"],
        ["sip", "--p", "3", "--matrix", "1,2"],
        ["sip", "--p", "3", "--matrix", "1,2,2,4"],
    ],
)
def test_usage_errors_exit_2(args):
    assert runner.invoke(app, args).exit_code == 2


def test_sip_command():
    result = runner.invoke(app, ["sip", "--p", "3", "--matrix", "1,0,0,-1", "--seed", "4"])
    assert result.exit_code == 0, result.output
    report = orjson.loads(result.output)
    assert report["p"] == 3.0
    assert report["zero_directions"] == pytest.approx([0.7853981633974483, 2.356194490192345], abs=1e-8)
    assert report["matrix"] == [[1.0, 0.0], [0.0, -1.0]]


def test_counterexample_command(tmp_path):
    out = tmp_path / "counterexample.json"
    result = runner.invoke(app, ["counterexample", "--json", str(out)])
    assert result.exit_code == 0, result.output
    report = orjson.loads(out.read_bytes())[0]
    assert report["claim"] == "prop1-counterexample"
    assert report["pass"] is True
