import numpy as np
import orjson
import pytest
from pydantic import ValidationError
from app.dependencies import load_scene, parse_ball, scene_models
from app.exceptions import InvalidBallError, SceneError
from app.exporters.csv_writer import curves_to_csv, fmt
from app.exporters.json_writer import dumps, reports_to_json
from app.exporters.pgm import grid_to_pgm
from app.exporters.svg import emit_svg
from app.geometry.tracer import trace_spec
from app.models.ball import LpBall, PolygonBall
from app.models.conic import Bisector, HyperbolaLeadingCircle
from app.models.curve import OccupancyGrid, PolyCurve, TraceParams
from app.schemas.ball import ball_to_schema
from app.schemas.conic import spec_to_schema
from app.schemas.report import ClaimReport
from app.schemas.scene import Scene


def test_fmt_keeps_full_precision():
    assert float(fmt(0.1)) == 0.1
    assert fmt(2.0) == "2"


def test_curves_to_csv_layout():
    closed = PolyCurve([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], closed=True, residual_tol=1e-9)
    open_ = PolyCurve([(2.0, 2.0), (3.0, 3.5)], closed=False, residual_tol=1e-9)
    text = curves_to_csv([closed, open_])
    assert text == "0,0\n1,0\n0,1\n0,0\n\n2,2\n3,3.5\n"


def test_grid_to_pgm_flips_rows():
    grid = OccupancyGrid(np.array([[0, 1, 2], [2, 2, 1]]), (0.0, 0.0, 3.0, 2.0))
    lines = grid_to_pgm(grid, comment="lp:2  bisector").splitlines()
    assert lines == ["P2", "# lp:2 bisector", "# bbox 0 0 3 2", "3 2", "2", "2 2 1", "0 1 2"]


def test_grid_to_pgm_wraps_long_rows():
    grid = OccupancyGrid(np.zeros((1, 45), dtype=np.uint8), (0.0, 0.0, 1.0, 1.0))
    body = grid_to_pgm(grid).splitlines()[4:]
    assert [len(line.split()) for line in body] == [30, 15]


def test_svg_is_deterministic(octagon):
    spec = HyperbolaLeadingCircle(1.0, (2.0, 0.0))
    report = trace_spec(octagon, spec, TraceParams(n_lines=33, extent=8.0))
    bbox = (-8.0, -8.0, 10.0, 10.0)
    first = emit_svg(octagon, [spec], [report], bbox, size=400)
    assert first == emit_svg(octagon, [spec], [report], bbox, size=400)
    assert "<g id='asymptotes'>" in first
    assert "width='400'" in first


def test_svg_draws_regions(euclid):
    spec = Bisector((-1.0, 0.0), (1.0, 0.0))
    report = trace_spec(euclid, spec, TraceParams(bbox=(-2.0, -2.0, 2.0, 2.0), resolution=16))
    svg = emit_svg(euclid, [spec], [report], (-2.0, -2.0, 2.0, 2.0), size=200)
    assert "<rect" in svg
    assert svg.count("<circle") == 2


def test_dumps_sorted_with_newline():
    assert dumps({"b": 1, "a": np.float64(0.5)}) == b'{\n  "a": 0.5,\n  "b": 1\n}\n'


def test_reports_use_pass_alias():
    report = ClaimReport(claim="thm1", ball="lp:2", passed=True, metrics={"segments": 0.0})
    payload = orjson.loads(reports_to_json([report]))
    assert payload[0]["pass"] is True
    assert "passed" not in payload[0]


def test_scene_round_trip(scenes_dir):
    scene = load_scene(scenes_dir / "linf_diagonal_line.json")
    B, specs = scene_models(scene)
    rebuilt = Scene(
        ball=ball_to_schema(B),
        specs=[spec_to_schema(s) for s in specs],
        trace=scene.trace,
        bbox=scene.bbox,
    )
    assert rebuilt.model_dump() == scene.model_dump()
    again = Scene.model_validate(orjson.loads(rebuilt.model_dump_json()))
    assert scene_models(again) == (B, specs)


def test_polygon_ball_round_trip(octagon):
    schema = ball_to_schema(octagon)
    assert schema.type == "polygon"
    assert schema.to_model() == octagon


def test_scene_rejects_empty_bbox():
    with pytest.raises(ValidationError):
        Scene.model_validate(
            {"ball": {"type": "lp", "p": 2}, "specs": [{"kind": "bisector", "x": [0, 0], "y": [1, 0]}], "bbox": [1, 0, 0, 1]}
        )


def test_scene_error_points_to_spec(tmp_path):
    path = tmp_path / "scene.json"
    path.write_text(
        '{"ball": {"type": "lp", "p": 2}, "specs": [{"kind": "leading_line", "focus": [0, 0], '
        '"line": {"point": [-1, 0], "direction": [1, 0]}, "gamma": 2}]}',
        encoding="utf-8",
    )
    with pytest.raises(SceneError) as info:
        scene_models(load_scene(path))
    assert info.value.location == "specs[0]"


def test_scene_error_reports_line_and_column(tmp_path):
    path = tmp_path / "scene.json"
    path.write_text('{\n  "ball": ,\n}', encoding="utf-8")
    with pytest.raises(SceneError) as info:
        load_scene(path)
    assert info.value.location.startswith(f"{path}:2:")


def test_scene_error_names_field(tmp_path):
    path = tmp_path / "scene.json"
    path.write_text('{"ball": {"type": "lp", "p": 2}, "specs": [{"kind": "ellipse_foci", "f1": [0, 0], "f2": [1, 0], "a": -1}]}', encoding="utf-8")
    with pytest.raises(SceneError) as info:
        load_scene(path)
    assert "specs.0.ellipse_foci.a" in info.value.location


def test_parse_ball():
    assert parse_ball("lp:2") == LpBall(2.0)
    assert parse_ball(" LP:Infinity ") == LpBall("inf")
    assert parse_ball("regular:6") == PolygonBall.regular(6)
    diamond = parse_ball("polygon:1,0;0,1;-1,0;0,-1")
    assert isinstance(diamond, PolygonBall)
    assert len(diamond.vertices) == 4


@pytest.mark.parametrize("descriptor", ["lp:0.5", "lp:x", "hexagon:6", "polygon:1,0;0", "random:5:1"])
def test_parse_ball_rejects(descriptor):
    with pytest.raises(InvalidBallError):
        parse_ball(descriptor)


def test_random_ball_is_seeded():
    assert parse_ball("random:8:3") == parse_ball("random:8:3")
