"""Exact checks of a grid drawing: planarity, convexity, resolution, slopes, face shapes.

Everything is integer or rational arithmetic.  Pairwise loops are
vectorised with numpy int64 when coordinates are small enough for products
of four coordinate differences to stay exact, and fall back to Python
integers otherwise.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .layout import BLACK, BLUE, GREEN, RED, GridDrawing, StepSnapshot, edge_key
from .plane_graph import FaceSet, PlaneGraph, validate_embedding
from .report import VerificationReport

# |coordinate| below this keeps cross products of differences far inside int64
_NUMPY_LIMIT = 1 << 20
_CHUNK = 1 << 22

Coords = Sequence[tuple[int, int]]


def _use_numpy(coords: Coords) -> bool:
    return all(abs(x) < _NUMPY_LIMIT and abs(y) < _NUMPY_LIMIT for x, y in coords)


# ---------------------------------------------------------------------------
# Planarity
# ---------------------------------------------------------------------------


def _orient(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _segments_touch(a, b, c, d):
    """Closed segments ab and cd share a point (vectorised over arrays of x/y)."""
    o1 = np.sign(_orient(*a, *b, *c))
    o2 = np.sign(_orient(*a, *b, *d))
    o3 = np.sign(_orient(*c, *d, *a))
    o4 = np.sign(_orient(*c, *d, *b))
    hit = (o1 * o2 < 0) & (o3 * o4 < 0)
    hit |= (o1 == 0) & _on_seg_np(a, b, c)
    hit |= (o2 == 0) & _on_seg_np(a, b, d)
    hit |= (o3 == 0) & _on_seg_np(c, d, a)
    hit |= (o4 == 0) & _on_seg_np(c, d, b)
    return hit


def _on_seg_np(a, b, p):
    (ax, ay), (bx, by), (px, py) = a, b, p
    return (
        (np.minimum(ax, bx) <= px)
        & (px <= np.maximum(ax, bx))
        & (np.minimum(ay, by) <= py)
        & (py <= np.maximum(ay, by))
    )


def _shared_overlap(o, b, d):
    """Segments o-b and o-d with common endpoint o overlap beyond o."""
    (ox, oy), (bx, by), (dx, dy) = o, b, d
    cross = (bx - ox) * (dy - oy) - (by - oy) * (dx - ox)
    dot = (bx - ox) * (dx - ox) + (by - oy) * (dy - oy)
    return (cross == 0) & (dot > 0)


def check_planar(edges: Sequence[tuple[int, int]], coords: Coords) -> tuple[bool, Any]:
    """No coincident vertices and no two edges sharing a point other than a common endpoint.

    Returns ``(ok, witness)`` where the witness names the first offending pair.
    """
    seen: dict[tuple[int, int], int] = {}
    for v, p in enumerate(coords):
        if p in seen:
            return False, {"coincident": [seen[p], v], "at": list(p)}
        seen[p] = v
    m = len(edges)
    if m < 2:
        return True, None
    if not _use_numpy(coords):
        return _check_planar_py(edges, coords)
    E = np.asarray(edges, dtype=np.int64)
    P = np.asarray(coords, dtype=np.int64)
    xs, ys = P[:, 0], P[:, 1]
    rows_per_chunk = max(1, _CHUNK // m)
    for r0 in range(0, m, rows_per_chunk):
        i = np.arange(r0, min(m, r0 + rows_per_chunk))
        I, J = np.meshgrid(i, np.arange(m), indexing="ij")
        keep = J > I
        I, J = I[keep], J[keep]
        u1, v1 = E[I, 0], E[I, 1]
        u2, v2 = E[J, 0], E[J, 1]
        bad = np.zeros(len(I), dtype=bool)
        disjoint = (u1 != u2) & (u1 != v2) & (v1 != u2) & (v1 != v2)
        a, b = (xs[u1], ys[u1]), (xs[v1], ys[v1])
        c, d = (xs[u2], ys[u2]), (xs[v2], ys[v2])
        bad |= disjoint & _segments_touch(a, b, c, d)
        # shared endpoint: bring it to the front of both segments
        for s1, t1, s2, t2 in ((u1, v1, u2, v2), (u1, v1, v2, u2), (v1, u1, u2, v2), (v1, u1, v2, u2)):
            same = s1 == s2
            o = (xs[s1], ys[s1])
            bad |= same & _shared_overlap(o, (xs[t1], ys[t1]), (xs[t2], ys[t2]))
        if bad.any():
            k = int(np.flatnonzero(bad)[0])
            e1, e2 = edges[int(I[k])], edges[int(J[k])]
            return False, {"edges": [list(e1), list(e2)]}
    return True, None


def _check_planar_py(edges, coords) -> tuple[bool, Any]:
    for i, (u1, v1) in enumerate(edges):
        for u2, v2 in edges[i + 1 :]:
            shared = {u1, v1} & {u2, v2}
            if not shared:
                a, b, c, d = coords[u1], coords[v1], coords[u2], coords[v2]
                if _touch_py(a, b, c, d):
                    return False, {"edges": [[u1, v1], [u2, v2]]}
            elif len(shared) == 1:
                o = shared.pop()
                t1 = v1 if u1 == o else u1
                t2 = v2 if u2 == o else u2
                (ox, oy), (bx, by), (dx, dy) = coords[o], coords[t1], coords[t2]
                cross = (bx - ox) * (dy - oy) - (by - oy) * (dx - ox)
                dot = (bx - ox) * (dx - ox) + (by - oy) * (dy - oy)
                if cross == 0 and dot > 0:
                    return False, {"edges": [[u1, v1], [u2, v2]]}
    return True, None


def _touch_py(a, b, c, d) -> bool:
    def sgn(x):
        return (x > 0) - (x < 0)

    def on(p, q, r):
        return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])

    o1, o2 = sgn(_orient(*a, *b, *c)), sgn(_orient(*a, *b, *d))
    o3, o4 = sgn(_orient(*c, *d, *a)), sgn(_orient(*c, *d, *b))
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and on(a, b, c))
        or (o2 == 0 and on(a, b, d))
        or (o3 == 0 and on(c, d, a))
        or (o4 == 0 and on(c, d, b))
    )


# ---------------------------------------------------------------------------
# Convexity
# ---------------------------------------------------------------------------


def polygon_convexity(walk: Sequence[int], coords: Coords) -> tuple[bool, Any]:
    """Counterclockwise walk bounds a convex polygon (collinear corners allowed).

    Every turn is a left turn or straight, no edge reverses the previous one,
    and the edge directions wind around exactly once.
    """
    L = len(walk)
    dirs = []
    for i in range(L):
        (x0, y0), (x1, y1) = coords[walk[i]], coords[walk[(i + 1) % L]]
        dirs.append((x1 - x0, y1 - y0))
    wraps = 0
    for i in range(L):
        (ax, ay), (bx, by) = dirs[i - 1], dirs[i]
        cross = ax * by - ay * bx
        if cross < 0 or (cross == 0 and ax * bx + ay * by <= 0):
            return False, {"vertex": walk[i], "position": i, "cross": cross}
        # upper half-plane including +x axis; a wrap is a move back into it
        up_a = ay > 0 or (ay == 0 and ax > 0)
        up_b = by > 0 or (by == 0 and bx > 0)
        if up_b and not up_a:
            wraps += 1
    if wraps != 1:
        return False, {"winding": wraps}
    return True, None


def check_convex(fs: FaceSet, coords: Coords) -> tuple[tuple[bool, Any], tuple[bool, Any]]:
    """(internal faces, outer boundary); each a ``(ok, witness)`` pair."""
    internal: tuple[bool, Any] = (True, None)
    for fid, walk in enumerate(fs.faces):
        if fid == 0:
            continue
        ok, w = polygon_convexity(walk, coords)
        if not ok:
            internal = (False, {"face": fid, "walk": list(walk), **w})
            break
    outer_walk = list(reversed(fs.outer))
    ok, w = polygon_convexity(outer_walk, coords)
    outer = (True, None) if ok else (False, {"walk": outer_walk, **w})
    return internal, outer


# ---------------------------------------------------------------------------
# Edge-vertex resolution
# ---------------------------------------------------------------------------


def point_segment_dist2(p, a, b) -> Fraction:
    """Exact squared distance from lattice point p to segment ab."""
    (px, py), (ax, ay), (bx, by) = p, a, b
    dx, dy = bx - ax, by - ay
    t = (px - ax) * dx + (py - ay) * dy
    L = dx * dx + dy * dy
    if t <= 0 or L == 0:
        return Fraction((px - ax) ** 2 + (py - ay) ** 2)
    if t >= L:
        return Fraction((px - bx) ** 2 + (py - by) ** 2)
    cross = (px - ax) * dy - (py - ay) * dx
    return Fraction(cross * cross, L)


def edge_vertex_resolution(
    edges: Sequence[tuple[int, int]], coords: Coords
) -> tuple[Fraction | None, tuple[int, tuple[int, int]] | None]:
    """Minimum squared distance over non-incident (vertex, edge) pairs and a pair attaining it."""
    n, m = len(coords), len(edges)
    if m == 0 or n < 3:
        return None, None
    if not _use_numpy(coords):
        return _resolution_py(edges, coords)
    E = np.asarray(edges, dtype=np.int64)
    P = np.asarray(coords, dtype=np.int64)
    ax, ay = P[E[:, 0], 0], P[E[:, 0], 1]
    bx, by = P[E[:, 1], 0], P[E[:, 1], 1]
    dx, dy = bx - ax, by - ay
    L = dx * dx + dy * dy
    best: Fraction | None = None
    arg = None
    rows = max(1, _CHUNK // m)
    for v0 in range(0, n, rows):
        vs = np.arange(v0, min(n, v0 + rows))
        px, py = P[vs, 0][:, None], P[vs, 1][:, None]
        t = (px - ax) * dx + (py - ay) * dy
        cross = (px - ax) * dy - (py - ay) * dx
        da = (px - ax) ** 2 + (py - ay) ** 2
        db = (px - bx) ** 2 + (py - by) ** 2
        num = np.where(t <= 0, da, np.where(t >= L, db, cross * cross))
        den = np.where((t <= 0) | (t >= L), 1, L)
        incident = (E[:, 0][None, :] == vs[:, None]) | (E[:, 1][None, :] == vs[:, None])
        # the float only shortlists candidates; the minimum is decided exactly
        approx = np.where(incident, np.inf, num / den)
        lo = approx.min()
        if not np.isfinite(lo):
            continue
        rr, cc = np.nonzero(approx <= lo * (1 + 1e-9) + 1e-12)
        for r, c in zip(rr.tolist(), cc.tolist()):
            val = Fraction(int(num[r, c]), int(den[r, c]))
            key = (int(vs[r]), c)
            if best is None or val < best or (val == best and key < arg):
                best, arg = val, key
    if arg is None:
        return None, None
    return best, (arg[0], tuple(edges[arg[1]]))


def _resolution_py(edges, coords):
    best = None
    arg = None
    for v, p in enumerate(coords):
        for a, b in edges:
            if v in (a, b):
                continue
            d = point_segment_dist2(p, coords[a], coords[b])
            if best is None or d < best:
                best, arg = d, (v, (a, b))
    return best, arg


def resolution_ok(d2: Fraction | None) -> bool:
    # squared distance at least 1/4; touching an open disk is allowed
    return d2 is None or 4 * d2.numerator >= d2.denominator


# ---------------------------------------------------------------------------
# Bounds, slopes, face shapes
# ---------------------------------------------------------------------------


def grid_bound(n: int, f: int, algo: str) -> int:
    a = min(f, n - 3)
    return n - 2 + (a if algo == "disklink" else 0)


def check_grid_bound(width: int, height: int, n: int, f: int, algo: str) -> tuple[bool, Any]:
    b = grid_bound(n, f, algo)
    ok = width <= b and height <= b
    return ok, None if ok else {"width": width, "height": height, "bound": b}


def slope_class_ok(color: str, dx: int, dy: int) -> bool:
    """Slope of the segment with displacement (dx, dy) lies in its colour's range."""
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    if dx == 0:
        # vertical: +inf for blue, -inf for red
        return color in (BLUE, RED) and dy != 0
    if color == BLUE:
        return dy > 0
    if color == BLACK:
        return dy == 0
    if color == GREEN:
        return dy < 0 and -dy <= dx
    if color == RED:
        return -dy > dx
    return False


def check_slope_classes(coords: Coords, colors: Mapping[tuple[int, int], str]) -> tuple[bool, Any]:
    for (u, v), c in sorted(colors.items()):
        (xu, yu), (xv, yv) = coords[u], coords[v]
        if not slope_class_ok(c, xv - xu, yv - yu):
            return False, {"edge": [u, v], "color": c, "dx": xv - xu, "dy": yv - yu}
    return True, None


_FACE_RE = re.compile(r"g*k?b*[GR]K*[BS]")


def _face_tokens(walk: Sequence[int], coords: Coords, colors) -> str:
    """One letter per counterclockwise boundary edge.

    g/G: green going right/left; k/K: black right/left; b: blue rising;
    B: blue falling; R: red rising; S: red falling.
    """
    out = []
    L = len(walk)
    for i in range(L):
        u, v = walk[i], walk[(i + 1) % L]
        (xu, yu), (xv, yv) = coords[u], coords[v]
        c = colors.get(edge_key(u, v))
        dx, dy = xv - xu, yv - yu
        if c == GREEN:
            out.append("g" if dx > 0 else "G")
        elif c == BLACK:
            out.append("k" if dx > 0 else "K")
        elif c == BLUE:
            out.append("b" if dy > 0 else "B")
        elif c == RED:
            out.append("R" if dy > 0 else "S")
        else:
            out.append("?")
    return "".join(out)


def face_decomposition(walk: Sequence[int], coords: Coords, colors) -> dict[str, Any] | None:
    """Split a counterclockwise face walk into the six boundary parts.

    Returns the rotation start and the part boundaries, or None if no
    rotation matches.  Among matching rotations the one starting at the
    leftmost-bottommost vertex is preferred.
    """
    tokens = _face_tokens(walk, coords, colors)
    L = len(walk)
    order = sorted(range(L), key=lambda i: (coords[walk[i]][0], coords[walk[i]][1], i))
    for s in order:
        t = tokens[s:] + tokens[:s]
        m = _FACE_RE.fullmatch(t)
        if m is None:
            continue
        g_end = len(t) - len(t.lstrip("g"))
        k_end = g_end + (1 if t[g_end : g_end + 1] == "k" else 0)
        b_end = k_end
        while b_end < L and t[b_end] == "b":
            b_end += 1
        rotated = list(walk[s:]) + list(walk[:s])
        return {
            "start": rotated[0],
            "walk": rotated,
            "tokens": t,
            # edge index ranges [lo, hi) of each part in the rotated walk
            "lower": (0, b_end),
            "black_lower": (g_end, k_end),
            "right": b_end,
            "top": (b_end + 1, L - 1),
            "left": L - 1,
        }
    return None


def check_face_shape(fs: FaceSet, coords: Coords, colors) -> tuple[bool, Any]:
    for fid, walk in enumerate(fs.faces):
        if fid == 0:
            continue
        dec = face_decomposition(walk, coords, colors)
        if dec is None:
            return False, {"face": fid, "walk": list(walk), "tokens": _face_tokens(walk, coords, colors)}
        t = dec["tokens"]
        upper = t[dec["right"] :]
        if "K" in upper and ("R" in upper or "S" in upper):
            return False, {"face": fid, "walk": dec["walk"], "tokens": t, "reason": "black and red on upper envelope"}
    return True, None


def red_forest(colors: Mapping[tuple[int, int], str], n: int) -> tuple[bool, Any]:
    """Red edges form a forest with at most n - 3 edges."""
    red = sorted(e for e, c in colors.items() if c == RED)
    if len(red) > n - 3:
        return False, {"red_edges": len(red), "limit": n - 3}
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in red:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False, {"cycle_edge": [u, v]}
        parent[ru] = rv
    return True, None


# ---------------------------------------------------------------------------
# Full report
# ---------------------------------------------------------------------------


def drawing_embedding(n: int, edges: Iterable[tuple[int, int]], coords: Coords) -> PlaneGraph:
    """Rotation system read off a planar drawing; outer face from the lowest-leftmost vertex."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    rot = []
    for v in range(n):
        x0, y0 = coords[v]
        rot.append(sorted(adj[v], key=lambda u: _angle_key(coords[u][0] - x0, coords[u][1] - y0)))
    # outer walk: start at the lowest, then leftmost vertex; its clockwise successor
    # is the first neighbour met clockwise from straight down
    s = min(range(n), key=lambda v: (coords[v][1], coords[v][0]))
    walk = [s]
    # everything lies at angles in [0, pi); the largest angle is met first clockwise from -x
    nxt = max(rot[s], key=lambda u: _angle_key(coords[u][0] - coords[s][0], coords[u][1] - coords[s][1]))
    prev, cur = s, nxt
    while cur != s:
        walk.append(cur)
        r = rot[cur]
        i = r.index(prev)
        prev, cur = cur, r[(i - 1) % len(r)]
        if len(walk) > 2 * len(rot) + 2:
            break
    return PlaneGraph(n, rot, walk)


def _angle_key(dx: int, dy: int) -> tuple[int, Fraction]:
    """Exact sort key for the direction (dx, dy) by counterclockwise angle from +x."""
    if dy == 0 and dx > 0:
        return (0, Fraction(0))
    if dy > 0:
        return (1, Fraction(-dx, dy))
    if dy == 0:
        return (2, Fraction(0))
    return (3, Fraction(dx, -dy))


def verify_drawing(
    g: PlaneGraph | None,
    drawing: GridDrawing,
    fs: FaceSet | None = None,
    checks: Sequence[str] | None = None,
) -> VerificationReport:
    """Run every check (or the named subset) on a drawing.

    Without ``g`` the embedding is rebuilt from the drawing itself, which is
    only meaningful once planarity holds.
    """
    coords = drawing.coords
    edges = sorted(drawing.colors) if g is None else g.edges()
    rep = VerificationReport()
    want = set(checks) if checks else None

    def on(name: str) -> bool:
        return want is None or name in want

    planar_ok = True
    if on("planar"):
        planar_ok, w = check_planar(edges, coords)
        rep.add("planar", planar_ok, w)
    if g is None and planar_ok:
        g = drawing_embedding(drawing.n, edges, coords)
    if fs is None and g is not None and planar_ok:
        fs = validate_embedding(g)
    if on("convex_internal") or on("convex_outer"):
        if fs is None:
            rep.skip("convex_internal")
            rep.skip("convex_outer")
        else:
            (ok_i, w_i), (ok_o, w_o) = check_convex(fs, coords)
            if on("convex_internal"):
                rep.add("convex_internal", ok_i, w_i)
            if on("convex_outer"):
                rep.add("convex_outer", ok_o, w_o)
    if on("resolution"):
        d2, pair = edge_vertex_resolution(edges, coords)
        ok = resolution_ok(d2)
        w = None
        if pair is not None:
            w = {"vertex": pair[0], "edge": list(pair[1]), "dist2": [d2.numerator, d2.denominator]}
        rep.add("resolution", ok, w)
    if on("grid_bound"):
        ok, w = check_grid_bound(drawing.width, drawing.height, drawing.n, drawing.f, drawing.algo)
        rep.add("grid_bound", ok, w)
    if on("slope_classes"):
        ok, w = check_slope_classes(coords, drawing.colors)
        rep.add("slope_classes", ok, w)
    if on("face_shape"):
        if fs is None:
            rep.skip("face_shape")
        else:
            ok, w = check_face_shape(fs, coords, drawing.colors)
            rep.add("face_shape", ok, w)
    if on("red_forest"):
        ok, w = red_forest(drawing.colors, drawing.n)
        rep.add("red_forest", ok, w)
    return rep


# ---------------------------------------------------------------------------
# Step-level lemmas over eager-mode snapshots
# ---------------------------------------------------------------------------


def faces_of_partial(fs: FaceSet, rank: Sequence[int], k: int) -> list[int]:
    """Ids of internal faces of G whose vertices all belong to G_k."""
    return [fid for fid in range(1, len(fs.faces)) if all(rank[v] <= k for v in fs.faces[fid])]


def lemma_same_y(fs: FaceSet, fids: Iterable[int], coords: Mapping[int, tuple[int, int]], colors) -> Any:
    """First violation of the same-y lemma over the given faces, or None."""
    for fid in fids:
        walk = fs.faces[fid]
        L = len(walk)
        ymin = min(coords[v][1] for v in walk)
        bottom_x = [coords[v][0] for v in walk if coords[v][1] == ymin]
        # black runs along the boundary connect their vertices
        run_id = list(range(L))
        black = [colors.get(edge_key(walk[i], walk[(i + 1) % L])) == BLACK for i in range(L)]
        if not all(black):
            s0 = next(i for i in range(L) if not black[i - 1])
            for j in range(s0, s0 + L - 1):
                if black[j % L]:
                    run_id[(j + 1) % L] = run_id[j % L]
        for i in range(L):
            for j in range(L):
                u, v = walk[i], walk[j]
                (xu, yu), (xv, yv) = coords[u], coords[v]
                if i == j or yu != yv or xu >= xv:
                    continue
                if run_id[i] == run_id[j]:
                    continue
                if not any(xu < bx <= xv for bx in bottom_x):
                    return {"face": fid, "u": u, "v": v}
    return None


def lemma_black_edge(
    fs: FaceSet, fids: Iterable[int], before: Mapping[int, tuple[int, int]], shifted: Mapping[int, tuple[int, int]], colors
) -> Any:
    """First violation of the black-edge lemma for one step, or None.

    For every partially shifted face whose lower envelope has a black edge
    (u, v), u stays put and v moves iff the edge ends the lower envelope.
    """
    for fid in fids:
        walk = fs.faces[fid]
        moved = {v: shifted[v][0] != before[v][0] for v in walk}
        if all(moved.values()) or not any(moved.values()):
            continue
        dec = face_decomposition(walk, before, colors)
        if dec is None:
            return {"face": fid, "reason": "no decomposition"}
        lo, hi = dec["black_lower"]
        if hi == lo:
            continue
        rw = dec["walk"]
        u, v = rw[lo], rw[lo + 1]
        rightmost = hi == dec["lower"][1]
        if moved[u] or moved[v] != rightmost:
            return {"face": fid, "edge": [u, v], "u_moved": moved[u], "v_moved": moved[v], "rightmost": rightmost}
    return None


def check_snapshots(g: PlaneGraph, fs: FaceSet, rank: Sequence[int], snaps: Sequence[StepSnapshot], colors) -> dict[str, Any]:
    """Run both lemmas over every step: first witness and number of violating steps per lemma."""
    out: dict[str, Any] = {"same_y": None, "black_edge": None, "same_y_steps": 0, "black_edge_steps": 0}
    for s in snaps:
        prev_faces = faces_of_partial(fs, rank, s.k - 1)
        cur_faces = faces_of_partial(fs, rank, s.k)
        w = lemma_same_y(fs, cur_faces, s.coords_after, colors) or lemma_same_y(fs, prev_faces, s.coords_shifted, colors)
        if w is not None:
            out["same_y_steps"] += 1
            out["same_y"] = out["same_y"] or {"k": s.k, **w}
        w = lemma_black_edge(fs, prev_faces, s.coords_before, s.coords_shifted, colors)
        if w is not None:
            out["black_edge_steps"] += 1
            out["black_edge"] = out["black_edge"] or {"k": s.k, **w}
    return out
