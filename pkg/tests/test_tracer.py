import numpy as np
import pytest
from app.exceptions import DegenerateSpecError, EmptyLocusError, InvalidSpecError
from app.geometry.loci import residual
from app.geometry.tracer import (
    asymptote_candidates,
    convexity_check,
    detect_segments,
    hausdorff_distance,
    radial_trace,
    region_grid,
    sweep_trace_hyperbola_foci,
    sweep_trace_leading_line,
    trace_spec,
)
from app.geometry.norm_engine import boundary_samples
from app.models.ball import INF, Line, LpBall, PolygonBall
from app.models.conic import (
    Degeneracy,
    EllipseFoci,
    EllipseLeadingCircle,
    HyperbolaFoci,
    HyperbolaLeadingCircle,
    LeadingLineConic,
)
from app.models.curve import PolyCurve, SegmentSpan, TraceParams
from app.utils.numeric import directions

DIAGONAL_LINE = Line((1.0, 1.0), (1.0, -1.0))


def _all_points(report):
    return np.vstack([c.points for c in report.curves])


def test_euclidean_ellipse_matches_equation(euclid):
    curve = radial_trace(euclid, EllipseFoci((-3.0, 0.0), (3.0, 0.0), 5.0), n=720)
    assert curve.closed
    assert len(curve) == 720
    x, y = curve.points.T
    np.testing.assert_allclose(x**2 / 25.0 + y**2 / 16.0, 1.0, atol=1e-6)
    assert convexity_check(curve).convex
    assert detect_segments(curve) == []


def test_euclidean_hyperbola_matches_equation(euclid):
    report = sweep_trace_hyperbola_foci(euclid, HyperbolaFoci((-2.0, 0.0), (2.0, 0.0), 1.0), n_lines=33)
    assert {c.label for c in report.curves} == {"plus", "minus"}
    x, y = _all_points(report).T
    assert np.all(np.abs(x**2 - y**2 / 3.0 - 1.0) <= 1e-5 * (1.0 + x**2))
    # Rectas paralelas al eje focal: una raíz por rama y ningún intervalo
    assert set(report.lines.crossings) == {2}
    assert report.root_intervals == 0
    assert report.segments == ()


def test_euclidean_parabola_matches_equation(euclid):
    spec = LeadingLineConic((0.0, 1.0), Line((0.0, 0.0), (1.0, 0.0)), 1.0)
    report = sweep_trace_leading_line(euclid, spec, n_lines=41)
    assert len(report.curves) == 1
    x, y = report.curves[0].points.T
    assert np.all(np.abs(y - (x**2 + 1.0) / 2.0) <= 1e-5 * (1.0 + x**2))


def test_leading_line_hyperbola_has_two_curves(euclid):
    spec = LeadingLineConic((0.0, 1.0), Line((0.0, 0.0), (1.0, 0.0)), 0.5)
    report = sweep_trace_leading_line(euclid, spec, n_lines=41)
    assert [c.label for c in report.curves] == ["focal", "far"]
    assert set(report.lines.crossings) == {2}
    F = np.asarray(residual(euclid, spec, _all_points(report)))
    assert np.abs(F).max() <= 1e-6


def test_linf_parabola_has_segments(linf):
    report = sweep_trace_leading_line(linf, LeadingLineConic((0.0, 0.0), DIAGONAL_LINE, 1.0), n_lines=65)
    assert len(report.curves) == 1
    assert len(report.segments) > 0


def test_strict_ball_leading_line_has_no_segments(strict_ball):
    report = sweep_trace_leading_line(strict_ball, LeadingLineConic((0.0, 0.0), DIAGONAL_LINE, 1.0), n_lines=65)
    assert report.root_intervals == 0
    assert report.segments == ()


def test_radial_trace_leading_line_ellipse(flat_ball):
    curve = radial_trace(flat_ball, LeadingLineConic((0.0, 0.0), DIAGONAL_LINE, 2.0), n=360)
    F = np.asarray(residual(flat_ball, LeadingLineConic((0.0, 0.0), DIAGONAL_LINE, 2.0), curve.points))
    assert np.abs(F).max() <= 1e-6
    assert convexity_check(curve).convex


def test_radial_trace_rejects_unbounded(euclid):
    with pytest.raises(InvalidSpecError):
        radial_trace(euclid, LeadingLineConic((0.0, 0.0), DIAGONAL_LINE, 1.0))
    with pytest.raises(InvalidSpecError):
        radial_trace(euclid, HyperbolaFoci((-1.0, 0.0), (1.0, 0.0), 0.5))


def test_trace_spec_empty_locus(euclid):
    with pytest.raises(EmptyLocusError) as info:
        trace_spec(euclid, EllipseFoci((-3.0, 0.0), (3.0, 0.0), 1.0))
    assert "empty locus" in info.value.detail


def test_sweep_rejects_degenerate(euclid):
    with pytest.raises(DegenerateSpecError):
        sweep_trace_hyperbola_foci(euclid, HyperbolaFoci((-1.0, 0.0), (1.0, 0.0), 0.0))


def test_trace_spec_degenerate_returns_region(linf):
    spec = HyperbolaFoci((-1.0, 0.0), (1.0, 0.0), 1.0)
    report = trace_spec(linf, spec, TraceParams(bbox=(-3.0, -3.0, 3.0, 3.0), resolution=64))
    assert report.degeneracy == Degeneracy.RAYS_OR_CONES
    assert report.curves == ()
    assert report.region is not None
    assert report.region.shape == (64, 64)
    assert report.region.on_fraction > 0.0


def test_trace_spec_dispatches(euclid):
    ellipse = trace_spec(euclid, EllipseLeadingCircle(4.0, (1.0, 0.0)), TraceParams(n=90))
    assert len(ellipse.curves) == 1 and ellipse.curves[0].closed
    hyperbola = trace_spec(euclid, HyperbolaLeadingCircle(1.0, (2.0, 0.0)), TraceParams(n_lines=33))
    assert len(hyperbola.curves) == 2
    assert hyperbola.asymptotes is not None


def test_region_grid_rejects_empty_bbox(euclid):
    with pytest.raises(InvalidSpecError):
        region_grid(euclid, EllipseFoci((-1.0, 0.0), (1.0, 0.0), 2.0), (1.0, 0.0, 1.0, 2.0), 16)


def test_region_grid_marks_crossings(euclid):
    spec = EllipseFoci((-1.0, 0.0), (1.0, 0.0), 2.0)
    plain = region_grid(euclid, spec, (-3.0, -3.0, 3.0, 3.0), 64, mark_crossings=False)
    marked = region_grid(euclid, spec, (-3.0, -3.0, 3.0, 3.0), 64)
    assert marked.on_fraction > plain.on_fraction
    # El centro de la caja es interior
    assert marked.codes[32, 32] == 0


def _square_polyline(per_edge: int = 25) -> PolyCurve:
    corners = np.array([(1.0, -1.0), (1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)])
    t = np.linspace(0.0, 1.0, per_edge, endpoint=False)[:, None]
    points = np.vstack([a + t * (b - a) for a, b in zip(corners[:-1], corners[1:])])
    return PolyCurve(points, closed=True, residual_tol=1e-9)


def test_detect_segments_on_square():
    spans = detect_segments(_square_polyline())
    assert len(spans) == 4
    assert convexity_check(_square_polyline()).convex


@pytest.mark.parametrize("ball, faces", [(LpBall(INF), 4), (PolygonBall.regular(8), 8)], ids=["linf", "octagon"])
def test_detect_segments_counts_unit_circle_faces(ball, faces):
    circle = PolyCurve(boundary_samples(ball, 720), closed=True, residual_tol=1e-9)
    assert len(detect_segments(circle)) == faces


def test_default_segment_tolerances_ignore_flat_points_of_l3():
    # En los ejes la curvatura de ℓ3 se anula: dos aristas vecinas giran solo 2h²/3 ≈ 5e-5 rad
    circle = PolyCurve(boundary_samples(LpBall(3.0), 720), closed=True, residual_tol=1e-9)
    assert detect_segments(circle) == []
    loose = detect_segments(circle, angle_tol=1e-4, min_length=1e-3 * circle.extent)
    assert len(loose) >= 4


def _gentle_arc(turn: float, edges: int = 20) -> PolyCurve:
    headings = turn * np.arange(edges)
    steps = np.column_stack([np.cos(headings), np.sin(headings)])
    return PolyCurve(np.vstack([[0.0, 0.0], np.cumsum(steps, axis=0)]), closed=False, residual_tol=1e-9)


def test_detect_segments_compares_consecutive_edges():
    # 19 giros de 5e-7 rad: ninguno supera la tolerancia aunque el total sí
    assert detect_segments(_gentle_arc(5e-7), angle_tol=1e-6, min_length=1.0) == [SegmentSpan(0, 0, 20)]
    assert detect_segments(_gentle_arc(2e-6), angle_tol=1e-6, min_length=1.0) == []



def test_convexity_check_finds_star():
    angles = np.pi * np.arange(10) / 5.0
    radii = np.where(np.arange(10) % 2 == 0, 1.0, 0.4)
    star = PolyCurve(np.column_stack([radii * np.cos(angles), radii * np.sin(angles)]), True, 1e-9)
    result = convexity_check(star)
    assert not result.convex
    assert result.witness is not None


def test_convexity_check_needs_closed_curve():
    with pytest.raises(InvalidSpecError):
        convexity_check(PolyCurve(directions(8), closed=False, residual_tol=1e-9))


def test_hausdorff_distance():
    circle = PolyCurve(directions(64), closed=True, residual_tol=1e-9)
    assert hausdorff_distance(circle, circle) == 0.0
    assert hausdorff_distance(circle, 2.0 * circle.points) == pytest.approx(1.0)


@pytest.mark.parametrize("B", [LpBall(2.0), LpBall(3.0), PolygonBall.regular(8)], ids=["lp2", "lp3", "octagon"])
def test_refinement_gap_shrinks_like_one_over_n(B):
    spec = EllipseFoci((-1.0, 0.0), (1.0, 0.0), 2.0)
    ns = [90, 180, 360, 720]
    curves = [radial_trace(B, spec, n=n) for n in ns]
    gaps = [hausdorff_distance(c, d) for c, d in zip(curves, curves[1:])]
    C = gaps[0] * ns[0]
    assert all(g * n <= 1.25 * C for g, n in zip(gaps, ns))
    assert gaps[0] > gaps[1] > gaps[2]


def test_euclidean_asymptotes(euclid):
    found = asymptote_candidates(euclid, HyperbolaLeadingCircle(1.0, (2.0, 0.0)))
    assert len(found.lines) == 2 and found.cones == []
    angles = sorted(np.degrees(np.arctan2(l.line.direction[1], l.line.direction[0])) for l in found.lines)
    np.testing.assert_allclose(angles, [-60.0, 60.0], atol=1e-6)
    for item in found.lines:
        np.testing.assert_allclose(item.line.point, (1.0, 0.0))


def test_linf_asymptotes_include_cone(linf):
    found = asymptote_candidates(linf, HyperbolaLeadingCircle(1.0, (2.0, 1.0)))
    assert len(found.cones) == 1
    assert len(found.lines) == 1
    cone = found.cones[0]
    np.testing.assert_allclose(cone.apex, (1.0, 0.5))
    np.testing.assert_allclose(sorted(cone.directions), [(-1.0, 1.0), (1.0, 1.0)], atol=1e-9)


def test_asymptotes_need_leading_circle_hyperbola(euclid):
    with pytest.raises(InvalidSpecError):
        asymptote_candidates(euclid, EllipseLeadingCircle(4.0, (1.0, 0.0)))
