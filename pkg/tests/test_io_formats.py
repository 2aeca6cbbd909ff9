from __future__ import annotations

import re
from pathlib import Path

import pytest

from disklink.canonical_order import compute_canonical_order
from disklink.graph_gen import stacked, wheel
from disklink.io_formats import (
    JsonSyntaxError,
    SchemaError,
    SvgStyle,
    dumps,
    emit_svg,
    graph_to_obj,
    parse_drawing,
    parse_graph,
    parse_order,
    parse_trace,
    serialize_drawing,
    serialize_graph,
    serialize_order,
    serialize_report,
    serialize_trace,
)
from disklink.layout import draw
from disklink.plane_graph import NonSimple
from disklink.verify import verify_drawing

FIXTURES = Path(__file__).parent / "fixtures"


def test_k4_fixture_round_trips():
    raw = (FIXTURES / "k4.json").read_bytes()
    assert serialize_graph(parse_graph(raw)) == raw


def test_graph_round_trip():
    g = stacked(50, 4)
    assert parse_graph(serialize_graph(g)) == g


def test_syntax_error_offset():
    with pytest.raises(JsonSyntaxError) as e:
        parse_graph(b'{"n": 4, "rotations": [}')
    assert e.value.offset == 23


def test_syntax_error_offset_counts_bytes():
    # character 6 is the bracket; the two-byte character before it makes that byte 7
    with pytest.raises(JsonSyntaxError) as e:
        parse_graph('{"é": ]'.encode())
    assert e.value.offset == 7


def test_rotations_length_mismatch():
    with pytest.raises(SchemaError) as e:
        parse_graph(b'{"n": 5, "rotations": [[1],[0]], "outer_face": [0, 1]}')
    assert e.value.path == ".rotations"


def test_schema_paths():
    with pytest.raises(SchemaError) as e:
        parse_graph(b'{"n": 4, "rotations": [[1],[0],[3],["x"]], "outer_face": [0]}')
    assert e.value.path == ".rotations[3][0]"
    with pytest.raises(SchemaError) as e:
        parse_graph(b'{"n": 4, "rotations": []}')
    assert e.value.path == ".outer_face"
    with pytest.raises(SchemaError) as e:
        parse_graph(b"[]")
    assert e.value.path == ""


def test_duplicate_neighbour_is_non_simple(k4):
    obj = graph_to_obj(k4)
    obj["rotations"][0].append(obj["rotations"][0][0])
    with pytest.raises(NonSimple):
        parse_graph(dumps(obj))


def test_order_round_trip():
    g = stacked(30, 2)
    pi = compute_canonical_order(g)
    assert parse_order(serialize_order(pi)) == pi


def test_drawing_round_trip():
    g = stacked(30, 2)
    d = draw(g, compute_canonical_order(g))
    raw = serialize_drawing(d)
    back = parse_drawing(raw)
    assert back.coords == d.coords and back.colors == d.colors
    assert serialize_drawing(back) == raw


def test_drawing_rejects_wrong_width():
    g = wheel(5)
    d = draw(g, compute_canonical_order(g))
    raw = serialize_drawing(d).replace(b'"width":%d' % d.width, b'"width":%d' % (d.width + 1))
    with pytest.raises(SchemaError) as e:
        parse_drawing(raw)
    assert e.value.path == ".width"


def test_drawing_rejects_unknown_colour():
    g = wheel(5)
    d = draw(g, compute_canonical_order(g))
    raw = serialize_drawing(d).replace(b'"blue"', b'"pink"', 1)
    with pytest.raises(SchemaError) as e:
        parse_drawing(raw)
    assert e.value.path.startswith(".colors[")


def test_trace_and_report():
    g = wheel(6)
    d = draw(g, compute_canonical_order(g), trace=True)
    t = parse_trace(serialize_trace(d))
    assert t["algo"] == "disklink"
    assert len(t["steps"]) == compute_canonical_order(g).m
    rep = verify_drawing(g, d)
    assert serialize_report(rep).startswith(b'{"checks":')


def _svg(d, **kw):
    return emit_svg(d, SvgStyle(**kw)).decode()


def test_svg_counts_and_viewbox(k4):
    d = draw(k4, compute_canonical_order(k4))
    svg = _svg(d)
    assert svg.count("<circle") == 4
    assert svg.count("<line") == 6
    side = (d.width + 1) * 40
    assert f'viewBox="0 0 {side} {(d.height + 1) * 40}"' in svg


def test_svg_width_three_at_scale_40(k4):
    d = draw(k4, compute_canonical_order(k4), "ck")
    assert d.width == 3
    assert 'viewBox="0 0 160 160"' in _svg(d, scale=40)


def test_svg_deterministic(k4):
    d = draw(k4, compute_canonical_order(k4))
    assert emit_svg(d) == emit_svg(d)


def test_svg_mono():
    g = wheel(5)
    d = draw(g, compute_canonical_order(g))
    strokes = set(re.findall(r'<line [^>]*stroke="([^"]+)"', _svg(d, colored=False)))
    assert strokes == {"#111111"}
    assert len(set(re.findall(r'<line [^>]*stroke="([^"]+)"', _svg(d)))) > 1
