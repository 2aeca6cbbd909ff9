"""JSON formats for graphs, canonical orders, drawings, traces and reports, plus SVG output.

Serialisers emit canonical JSON (sorted keys, no whitespace) followed by a
newline so files round-trip byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .canonical_order import CanonicalOrder
from .layout import ALGORITHMS, BLACK, BLUE, GREEN, RED, GridDrawing
from .plane_graph import PlaneGraph, validate_embedding
from .report import VerificationReport


class FormatError(ValueError):
    pass


class JsonSyntaxError(FormatError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"invalid JSON at byte {offset}: {message}")
        self.offset = offset


class SchemaError(FormatError):
    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path or '.'}: {message}")
        self.path = path


def dumps(obj: Any) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


def loads(data: bytes | str) -> Any:
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise JsonSyntaxError("not UTF-8", e.start) from None
    else:
        text = data
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise JsonSyntaxError(e.msg, len(text[: e.pos].encode("utf-8"))) from None


# ---------------------------------------------------------------------------
# Schema helpers
# ---------------------------------------------------------------------------


def _obj(x: Any, path: str, keys: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(x, dict):
        raise SchemaError(path, "expected an object")
    missing = keys - x.keys()
    if missing:
        raise SchemaError(f"{path}.{min(missing)}", "missing")
    extra = x.keys() - keys - optional
    if extra:
        raise SchemaError(f"{path}.{min(extra)}", "unexpected key")
    return x


def _int(x: Any, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(path, "expected an integer")
    return x


def _list(x: Any, path: str) -> list:
    if not isinstance(x, list):
        raise SchemaError(path, "expected an array")
    return x


def _int_list(x: Any, path: str) -> list[int]:
    return [_int(v, f"{path}[{i}]") for i, v in enumerate(_list(x, path))]


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------


def graph_to_obj(g: PlaneGraph) -> dict:
    return {"n": g.n, "rotations": [list(r) for r in g.rotations], "outer_face": list(g.outer_face)}


def serialize_graph(g: PlaneGraph) -> bytes:
    return dumps(graph_to_obj(g))


def graph_from_obj(x: Any, validate: bool = True) -> PlaneGraph:
    _obj(x, "", {"n", "rotations", "outer_face"})
    n = _int(x["n"], ".n")
    rot = [_int_list(r, f".rotations[{i}]") for i, r in enumerate(_list(x["rotations"], ".rotations"))]
    if len(rot) != n:
        raise SchemaError(".rotations", f"expected {n} entries, got {len(rot)}")
    outer = _int_list(x["outer_face"], ".outer_face")
    g = PlaneGraph(n, rot, outer)
    if validate:
        validate_embedding(g)
    return g


def parse_graph(data: bytes | str, validate: bool = True) -> PlaneGraph:
    return graph_from_obj(loads(data), validate)


# ---------------------------------------------------------------------------
# Canonical order
# ---------------------------------------------------------------------------


def serialize_order(pi: CanonicalOrder) -> bytes:
    return dumps({"paths": [list(p) for p in pi.paths], "v1": pi.v1, "v2": pi.v2, "vn": pi.vn})


def parse_order(data: bytes | str) -> CanonicalOrder:
    x = _obj(loads(data), "", {"paths", "v1", "v2", "vn"})
    paths = [tuple(_int_list(p, f".paths[{i}]")) for i, p in enumerate(_list(x["paths"], ".paths"))]
    return CanonicalOrder(tuple(paths), _int(x["v1"], ".v1"), _int(x["v2"], ".v2"), _int(x["vn"], ".vn"))


# ---------------------------------------------------------------------------
# Drawing and trace
# ---------------------------------------------------------------------------

_COLORS = (BLUE, GREEN, BLACK, RED)


def drawing_to_obj(d: GridDrawing) -> dict:
    return {
        "algo": d.algo,
        "coords": [[x, y] for x, y in d.coords],
        "colors": [[f"{u}-{v}", c] for (u, v), c in sorted(d.colors.items())],
        "width": d.width,
        "height": d.height,
        "f": d.f,
        "a": d.a,
    }


def serialize_drawing(d: GridDrawing) -> bytes:
    return dumps(drawing_to_obj(d))


def parse_drawing(data: bytes | str) -> GridDrawing:
    x = _obj(loads(data), "", {"algo", "coords", "colors", "width", "height", "f", "a"})
    algo = x["algo"]
    if algo not in ALGORITHMS:
        raise SchemaError(".algo", f"expected one of {', '.join(ALGORITHMS)}")
    coords = []
    for i, p in enumerate(_list(x["coords"], ".coords")):
        pair = _int_list(p, f".coords[{i}]")
        if len(pair) != 2:
            raise SchemaError(f".coords[{i}]", "expected [x, y]")
        coords.append((pair[0], pair[1]))
    n = len(coords)
    colors: dict[tuple[int, int], str] = {}
    for i, item in enumerate(_list(x["colors"], ".colors")):
        path = f".colors[{i}]"
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], str)):
            raise SchemaError(path, 'expected ["u-v", color]')
        try:
            u, v = (int(t) for t in item[0].split("-"))
        except ValueError:
            raise SchemaError(f"{path}[0]", "expected an edge name u-v") from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise SchemaError(f"{path}[0]", "edge endpoint out of range")
        if item[1] not in _COLORS:
            raise SchemaError(f"{path}[1]", f"unknown colour {item[1]!r}")
        colors[(min(u, v), max(u, v))] = item[1]
    d = GridDrawing(algo, coords, colors, n, _int(x["f"], ".f"))
    for key in ("width", "height", "a"):
        if _int(x[key], f".{key}") != getattr(d, key):
            raise SchemaError(f".{key}", f"does not match the coordinates ({getattr(d, key)})")
    return d


def serialize_trace(d: GridDrawing) -> bytes:
    return dumps({"algo": d.algo, "steps": d.trace or []})


def parse_trace(data: bytes | str) -> dict:
    x = _obj(loads(data), "", {"algo", "steps"})
    _list(x["steps"], ".steps")
    return x


def serialize_report(rep: VerificationReport, **extra: Any) -> bytes:
    obj = rep.to_dict()
    obj.update(extra)
    return dumps(obj)


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------


@dataclass
class SvgStyle:
    scale: int = 40
    stroke: float = 0.05
    colored: bool = True
    palette: dict[str, str] = field(
        default_factory=lambda: {BLUE: "#1f5fbf", GREEN: "#2a9d3a", BLACK: "#111111", RED: "#c62828"}
    )


def _num(v: float) -> str:
    return f"{v:.3f}".rstrip("0").rstrip(".")


def emit_svg(d: GridDrawing, style: SvgStyle | None = None) -> bytes:
    """Grid drawing with unit-diameter vertex disks and half a unit of margin per side."""
    st = style or SvgStyle()
    s = st.scale
    xs = [x for x, _ in d.coords]
    ys = [y for _, y in d.coords]
    x0, y1 = min(xs), max(ys)
    W, H = (d.width + 1) * s, (d.height + 1) * s

    def px(x: int) -> str:
        return _num((x - x0 + 0.5) * s)

    def py(y: int) -> str:
        return _num((y1 - y + 0.5) * s)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
        f'<g stroke-width="{_num(st.stroke * s)}" stroke-linecap="round">',
    ]
    for (u, v), c in sorted(d.colors.items()):
        color = st.palette[c] if st.colored else "#111111"
        (ux, uy), (vx, vy) = d.coords[u], d.coords[v]
        lines.append(f'<line x1="{px(ux)}" y1="{py(uy)}" x2="{px(vx)}" y2="{py(vy)}" stroke="{color}"/>')
    lines.append("</g>")
    lines.append(f'<g fill="#f2c94c" fill-opacity="0.35" stroke="#555555" stroke-width="{_num(st.stroke * s / 2)}">')
    for v, (x, y) in enumerate(d.coords):
        lines.append(f'<circle id="v{v}" cx="{px(x)}" cy="{py(y)}" r="{_num(0.5 * s)}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode()
