from __future__ import annotations

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from disklink.canonical_order import compute_canonical_order, validate_canonical_order
from disklink.graph_gen import GenSpec, generate
from disklink.io_formats import parse_drawing, serialize_drawing
from disklink.layout import draw
from disklink.plane_graph import validate_embedding
from disklink.verify import verify_drawing

STRUCTURAL = ["planar", "convex_internal", "convex_outer", "resolution", "slope_classes", "face_shape", "red_forest"]

stacked_specs = st.builds(GenSpec, st.just("stacked"), st.integers(4, 70), st.integers(0, 10**6))
ring_specs = st.builds(GenSpec, st.sampled_from(["wheel", "prism", "antiprism"]), st.integers(3, 40), st.just(0))
specs = st.one_of(stacked_specs, ring_specs)

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@SETTINGS
@given(specs)
def test_canonical_order_valid(spec):
    g = generate(spec)
    pi = compute_canonical_order(g)
    rep = validate_canonical_order(g, pi)
    assert rep.ok, rep.first_failure()


@SETTINGS
@given(specs)
def test_disklink_drawing_structural_checks(spec):
    g = generate(spec)
    fs = validate_embedding(g)
    pi = compute_canonical_order(g, fs)
    d = draw(g, pi, "disklink", f=fs.internal_count, check_steps=True)
    rep = verify_drawing(g, d, fs, STRUCTURAL)
    assert rep.ok, rep.first_failure()


@SETTINGS
@given(specs)
def test_ck_drawing_planar_convex(spec):
    g = generate(spec)
    fs = validate_embedding(g)
    d = draw(g, compute_canonical_order(g, fs), "ck", f=fs.internal_count)
    rep = verify_drawing(g, d, fs, ["planar", "convex_internal", "convex_outer", "slope_classes"])
    assert rep.ok, rep.first_failure()


@SETTINGS
@given(specs, st.sampled_from(["ck", "disklink"]))
def test_modes_agree_byte_for_byte(spec, algo):
    g = generate(spec)
    pi = compute_canonical_order(g)
    a = serialize_drawing(draw(g, pi, algo, "forest"))
    b = serialize_drawing(draw(g, pi, algo, "eager"))
    assert a == b
    assert serialize_drawing(parse_drawing(a)) == a


@SETTINGS
@given(specs)
def test_width_difference_is_charged_shifts(spec):
    g = generate(spec)
    fs = validate_embedding(g)
    pi = compute_canonical_order(g, fs)
    ck = draw(g, pi, "ck", f=fs.internal_count)
    dl = draw(g, pi, "disklink", f=fs.internal_count)
    # pivot refinements can pre-empt a CK repair, never add one
    assert ck.repairs >= dl.repairs
    assert dl.width - ck.width == dl.extra_shifts - (ck.repairs - dl.repairs)
    # widths stay within the stated bound shifted by one, plus repairs
    assert ck.width <= ck.bound + 1 + ck.repairs
    assert dl.width <= dl.bound + 1 + dl.repairs
