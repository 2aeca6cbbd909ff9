"""Incremental shift-method layout: Chrobak-Kant and its disk-link variant.

Both algorithms insert the paths of a canonical order one at a time on top
of the current contour.  The contour is a doubly linked list.  Two
interchangeable representations of x-coordinates are provided:

``forest``
    every contour vertex stores its x-offset from its left contour
    neighbour, and every vertex that leaves the contour is hung below the
    root of the shift-set that absorbs it with a fixed offset.  A shift of
    everything from contour vertex ``w`` onwards is one addition.  Absolute
    coordinates are materialised once at the end.
``eager``
    absolute coordinates plus explicit shift-set member lists; each shift
    touches every moved vertex.  Quadratic, kept as a reference.

y-coordinates are always absolute.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .canonical_order import CanonicalOrder
from .plane_graph import PlaneGraph

BLUE, GREEN, BLACK, RED = "blue", "green", "black", "red"
ALGORITHMS = ("ck", "disklink")
MODES = ("forest", "eager")


class LayoutError(AssertionError):
    """An internal well-formedness assertion failed (always a bug)."""

    def __init__(self, k: int, message: str) -> None:
        super().__init__(f"step {k}: {message}")
        self.k = k


class ContractViolation(LayoutError):
    pass


class NonGridPoint(LayoutError):
    pass


class BelowContour(LayoutError):
    pass


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


# ---------------------------------------------------------------------------
# Pure step helpers.  ``colors[i]`` is the colour of contour edge
# (W[i], W[i+1]) and ``is_nb[i]`` tells whether W[i] neighbours the new path;
# W runs from w_l (index 0) to w_r (last index).
# ---------------------------------------------------------------------------


def find_critical(colors: Sequence[str], is_nb: Sequence[bool]) -> tuple[int, int]:
    """Indices (l', r') of the left- and right-critical vertices inside W."""
    r = len(is_nb) - 1
    lc = next(i for i in range(1, r + 1) if is_nb[i] or (i < r and colors[i] in (BLUE, BLACK)))
    rc = next(i for i in range(r - 1, -1, -1) if is_nb[i] or (i > 0 and colors[i - 1] in (GREEN, BLACK)))
    if not (0 < lc <= r and 0 <= rc < r):
        raise ContractViolation(-1, f"critical indices out of range: l'={lc}, r'={rc}, r={r}")
    return lc, rc


def find_pivots(colors: Sequence[str], is_nb: Sequence[bool]) -> list[int]:
    """Pivot indices x'_1 .. x'_rho followed by r (a single r when rho = 0)."""
    r = len(is_nb) - 1
    nbs = [i for i in range(r + 1) if is_nb[i]]
    pivots = []
    for prev, cur in zip(nbs, nbs[1:-1]):
        pivots.append(next(i for i in range(prev + 1, cur + 1) if is_nb[i] or colors[i] in (BLUE, BLACK)))
    pivots.append(r)
    return pivots


def place_path(
    wl: tuple[int, int], wr: tuple[int, int], q: int, wl_saturated: bool, k: int = -1
) -> list[tuple[int, int]]:
    """Positions of z_1 .. z_q: on the slope -1 line through w_r, one row, z_1 at or just right of w_l."""
    (xl, yl), (xr, yr) = wl, wr
    x1 = xl + (0 if wl_saturated else 1)
    xq = x1 + q - 1
    yq = yr + xr - xq
    if xq >= xr:
        raise NonGridPoint(k, f"z_q would not lie left of w_r (x={xq}, w_r at x={xr})")
    if yq <= yl or yq <= yr:
        raise BelowContour(k, f"path at y={yq} not above w_l (y={yl}) and w_r (y={yr})")
    return [(x1 + j, yq) for j in range(q)]


def new_edge_colors(path: Sequence[int], w_l: int, w_r: int, inner: Sequence[int]) -> dict[tuple[int, int], str]:
    """Colours of the edges introduced with ``path``.

    ``inner`` holds the neighbours strictly between w_l and w_r (singletons only).
    """
    out = {edge_key(w_l, path[0]): BLUE, edge_key(path[-1], w_r): GREEN}
    for a, b in zip(path, path[1:]):
        out[edge_key(a, b)] = BLACK
    for u in inner:
        out[edge_key(path[0], u)] = RED
    return out


# ---------------------------------------------------------------------------
# Drawing result
# ---------------------------------------------------------------------------


@dataclass
class GridDrawing:
    algo: str
    coords: list[tuple[int, int]]
    colors: dict[tuple[int, int], str]
    n: int
    f: int
    trace: list[dict[str, Any]] | None = field(default=None, repr=False)
    # unit refinements charged to singletons (disk-link only)
    extra_shifts: int = 0
    # extra tail units needed to keep a blue edge at slope >= 1
    repairs: int = 0

    @property
    def width(self) -> int:
        xs = [x for x, _ in self.coords]
        return max(xs) - min(xs)

    @property
    def height(self) -> int:
        ys = [y for _, y in self.coords]
        return max(ys) - min(ys)

    @property
    def a(self) -> int:
        return min(self.f, self.n - 3)

    @property
    def bound(self) -> int:
        """Side length guaranteed for this algorithm."""
        return self.n - 2 + (self.a if self.algo == "disklink" else 0)

    def red_edges(self) -> list[tuple[int, int]]:
        return sorted(e for e, c in self.colors.items() if c == RED)


@dataclass
class StepSnapshot:
    """Absolute state around one insertion (eager mode with ``snapshots``)."""

    k: int
    contour_before: list[int]
    coords_before: dict[int, tuple[int, int]]
    coords_shifted: dict[int, tuple[int, int]]
    coords_after: dict[int, tuple[int, int]]
    contour_after: list[int]
    shift_sets: dict[int, list[int]]


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------


class LayoutState:
    """Mutable drawing state for one run."""

    def __init__(self, g: PlaneGraph, pi: CanonicalOrder, algo: str = "disklink", mode: str = "forest") -> None:
        if algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {algo!r}")
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.g = g
        self.pi = pi
        self.algo = algo
        self.mode = mode
        n = g.n
        self.rank = pi.step_of()
        rank = self.rank
        self.last = [max(rank[u] for u in r) for r in g.rotations]
        self.k = 0
        self.nxt = [-1] * n
        self.prv = [-1] * n
        self.y = [0] * n
        self.colors: dict[tuple[int, int], str] = {}
        # colour of the contour edge leaving each contour vertex to the right
        self.right_color: list[str | None] = [None] * n
        # forest mode
        self.delta = [0] * n
        self.parent = [-1] * n
        self.offset = [0] * n
        self.absorbed: list[int] = []
        # eager mode
        self.x = [0] * n
        self.members: list[list[int]] = [[] for _ in range(n)]
        self.trace: list[dict[str, Any]] = []
        self.extra_shifts = 0
        self.repairs = 0
        self._nb_stamp = [-1] * n
        self.init_drawing()

    # -- primitives ----------------------------------------------------------

    def init_drawing(self) -> None:
        v1, v2 = self.pi.v1, self.pi.v2
        self.nxt[v1], self.prv[v2] = v2, v1
        self.delta[v2] = 1
        self.x[v1], self.x[v2] = 0, 1
        self.members[v1], self.members[v2] = [v1], [v2]
        self.colors[edge_key(v1, v2)] = BLACK
        self.right_color[v1] = BLACK

    def contour(self) -> list[int]:
        out = [self.pi.v1]
        while out[-1] != self.pi.v2:
            out.append(self.nxt[out[-1]])
        return out

    def shift(self, w: int, c: int) -> None:
        """Move every shift-set from contour vertex ``w`` to v2 by ``c`` units."""
        if c < 1:
            raise ContractViolation(self.k, f"shift amount {c} < 1")
        if self.mode == "forest":
            self.delta[w] += c
            return
        u = w
        while u != -1:
            for v in self.members[u]:
                self.x[v] += c
            u = self.nxt[u]

    def absolute_x(self, v: int) -> int:
        """x of a vertex at the current step (walks the structure; for checks only)."""
        if self.mode == "eager":
            return self.x[v]
        path = []
        while self.parent[v] != -1:
            path.append(self.offset[v])
            v = self.parent[v]
        x = 0
        u = self.pi.v1
        while u != v:
            u = self.nxt[u]
            if u == -1:
                raise LayoutError(self.k, f"vertex {v} is neither placed nor on the contour")
            x += self.delta[u]
        return x + sum(path)

    def attachments(self, path: Sequence[int]) -> tuple[list[int], list[bool]]:
        """Contour stretch W = w_l .. w_r under ``path`` and which of it neighbours the path."""
        k = self.k
        rank = self.rank
        rot = self.g.rotations
        if len(path) == 1:
            z = path[0]
            r = rot[z]
            L = len(r)
            early = [rank[u] < k for u in r]
            if all(early):
                s = r.index(self.pi.v1)
            else:
                s = next(i for i in range(L) if early[i] and not early[i - 1])
            block = []
            i = s
            while early[i % L] and len(block) < L:
                block.append(r[i % L])
                i += 1
        else:
            w_l = [u for u in rot[path[0]] if rank[u] < k]
            w_r = [u for u in rot[path[-1]] if rank[u] < k]
            if len(w_l) != 1 or len(w_r) != 1:
                raise ContractViolation(k, "chain ends must have exactly one earlier neighbour")
            block = [w_l[0], w_r[0]]
        stamp = self._nb_stamp
        for u in block:
            stamp[u] = k
        W = [block[0]]
        while W[-1] != block[-1]:
            nx = self.nxt[W[-1]]
            if nx == -1:
                raise ContractViolation(k, f"w_r={block[-1]} not found right of w_l={block[0]} on the contour")
            W.append(nx)
        is_nb = [stamp[u] == k for u in W]
        if [u for u, b in zip(W, is_nb) if b] != block:
            raise ContractViolation(k, "neighbours of the path are not in contour order")
        return W, is_nb

    # -- one step ------------------------------------------------------------

    def insert(self, path: Sequence[int], record: bool = False) -> None:
        self.k += 1
        k = self.k
        q = len(path)
        W, is_nb = self.attachments(path)
        cols = [self.right_color[u] for u in W[:-1]]
        lc, rc = find_critical(cols, is_nb)
        if lc > rc + 1:
            raise ContractViolation(k, f"critical vertices overlap: l'={lc}, r'={rc}")

        if self.algo == "disklink" and q == 1:
            pivots = find_pivots(cols, is_nb)
            inner_shifts = [(i, 1) for i in pivots[:-1]]
            tail_amount = 1
            self.extra_shifts += len(pivots) - 1
        else:
            pivots = []
            inner_shifts = []
            tail_amount = q
        w_l, w_r = W[0], W[-1]
        if self.mode == "forest":
            tail_amount = self._step_forest(path, W, lc, rc, inner_shifts, tail_amount)
        else:
            tail_amount = self._step_eager(path, W, lc, rc, inner_shifts, tail_amount)
        # the tail shift moves the updated S(w_r), i.e. everything from W[rc+1] on
        shifts = inner_shifts + [(rc + 1, tail_amount)]

        inner = [u for u, b in zip(W[1:-1], is_nb[1:-1]) if b]
        self.colors.update(new_edge_colors(path, w_l, w_r, inner))
        self.right_color[w_l] = BLUE
        for z in path[:-1]:
            self.right_color[z] = BLACK
        self.right_color[path[-1]] = GREEN
        prev = w_l
        for z in path:
            self.nxt[prev], self.prv[z] = z, prev
            prev = z
        self.nxt[prev], self.prv[w_r] = w_r, prev

        if record:
            self.trace.append(
                {
                    "k": k,
                    "path": list(path),
                    "wl": w_l,
                    "wr": w_r,
                    "wl_crit": W[lc],
                    "wr_crit": W[rc],
                    "pivots": [W[i] for i in pivots],
                    "shifts": [[W[i], c] for i, c in shifts],
                    "saturated": self.last[w_l] <= k,
                    "y": self.y[path[0]],
                }
            )

    def _tail(self, base: int, w_l: int, w_r: int, dx_r: int) -> int:
        """Tail shift amount; ``dx_r`` is x(w_r) - x(w_l) before the tail shift.

        An unsaturated w_l whose stretch to w_r is all green (x + y constant)
        would get a horizontal blue edge; one extra unit keeps its slope at 1.
        """
        if self.last[w_l] > self.k and dx_r + self.y[w_r] - self.y[w_l] == 0:
            self.repairs += 1
            return base + 1
        return base

    def _placement(self, k: int, path: Sequence[int], w_l: int, w_r: int, dx_r: int) -> int:
        """Offset of z_1 from w_l; sets y of the path. ``dx_r`` is x(w_r) - x(w_l)."""
        pts = place_path((0, self.y[w_l]), (dx_r, self.y[w_r]), len(path), self.last[w_l] <= k, k)
        for z, (_, yz) in zip(path, pts):
            self.y[z] = yz
        return pts[0][0]

    def _step_forest(self, path, W, lc, rc, inner_shifts, tail_amount) -> int:
        k = self.k
        delta = self.delta
        for i, c in inner_shifts:
            self.shift(W[i], c)
        X = [0] * len(W)
        for i in range(1, len(W)):
            X[i] = X[i - 1] + delta[W[i]]
        r = len(W) - 1
        tail_amount = self._tail(tail_amount, W[0], W[-1], X[r])
        self.shift(W[rc + 1], tail_amount)
        for i in range(rc + 1, r + 1):
            X[i] += tail_amount
        dz = self._placement(k, path, W[0], W[-1], X[r])
        z1 = path[0]
        for i in range(1, lc):
            self._hang(W[i], W[0], X[i])
        for i in range(lc, rc + 1):
            self._hang(W[i], z1, X[i] - dz)
        for i in range(rc + 1, r):
            self._hang(W[i], W[-1], X[i] - X[r])
        delta[z1] = dz
        for z in path[1:]:
            delta[z] = 1
        delta[W[-1]] = X[r] - dz - (len(path) - 1)
        return tail_amount

    def _hang(self, v: int, root: int, off: int) -> None:
        self.parent[v] = root
        self.offset[v] = off
        self.absorbed.append(v)

    def _step_eager(self, path, W, lc, rc, inner_shifts, tail_amount) -> int:
        k = self.k
        r = len(W) - 1
        w_l, w_r = W[0], W[-1]
        for i, c in inner_shifts:
            self.shift(W[i], c)
        tail_amount = self._tail(tail_amount, w_l, w_r, self.x[w_r] - self.x[w_l])
        z1 = path[0]
        mem = self.members
        mem[z1] = [z1] + [v for i in range(lc, rc + 1) for v in mem[W[i]]]
        for z in path[1:]:
            mem[z] = [z]
        mem[w_l] = [v for i in range(0, lc) for v in mem[W[i]]]
        mem[w_r] = [v for i in range(rc + 1, r + 1) for v in mem[W[i]]]
        self.shift(w_r, tail_amount)
        dz = self._placement(k, path, w_l, w_r, self.x[w_r] - self.x[w_l])
        for j, z in enumerate(path):
            self.x[z] = self.x[w_l] + dz + j
        return tail_amount

    # -- results -------------------------------------------------------------

    def materialize(self) -> list[tuple[int, int]]:
        n = self.g.n
        if self.mode == "eager":
            return [(self.x[v], self.y[v]) for v in range(n)]
        x = [0] * n
        u = self.pi.v1
        acc = 0
        while u != -1:
            acc += self.delta[u] if u != self.pi.v1 else 0
            x[u] = acc
            u = self.nxt[u]
        for v in reversed(self.absorbed):
            x[v] = x[self.parent[v]] + self.offset[v]
        return [(x[v], self.y[v]) for v in range(n)]

    def current_coords(self) -> dict[int, tuple[int, int]]:
        """Absolute coordinates of every placed vertex (linear walk; for checks)."""
        placed = [v for v in range(self.g.n) if self.rank[v] <= self.k]
        if self.mode == "eager":
            return {v: (self.x[v], self.y[v]) for v in placed}
        x: dict[int, int] = {}
        u, acc = self.pi.v1, 0
        while u != -1:
            if u != self.pi.v1:
                acc += self.delta[u]
            x[u] = acc
            u = self.nxt[u]
        for v in reversed(self.absorbed):
            x[v] = x[self.parent[v]] + self.offset[v]
        return {v: (x[v], self.y[v]) for v in placed}


def contour_condition_violation(contour: Sequence[int], coords, colors) -> dict[str, Any] | None:
    """First contour edge breaking the slope rule (0, -1 or in [1, +inf]), if any."""
    for u, v in zip(contour, contour[1:]):
        (xu, yu), (xv, yv) = coords[u], coords[v]
        dx, dy = xv - xu, yv - yu
        c = colors.get(edge_key(u, v))
        if c == BLACK:
            ok = dy == 0 and dx > 0
        elif c == GREEN:
            ok = dx > 0 and dy == -dx
        elif c == BLUE:
            ok = dy > 0 and dy >= dx >= 0
        else:
            ok = False
        if not ok:
            return {"edge": [u, v], "color": c, "dx": dx, "dy": dy}
    return None


def draw(
    g: PlaneGraph,
    pi: CanonicalOrder,
    algo: str = "disklink",
    mode: str = "forest",
    f: int | None = None,
    trace: bool = False,
    check_steps: bool = False,
    snapshots: list[StepSnapshot] | None = None,
) -> GridDrawing:
    """Run one algorithm over the canonical order and materialise the drawing.

    ``check_steps`` verifies the contour condition after every insertion
    (linear per step).  Passing a list as ``snapshots`` (eager mode only)
    collects absolute coordinates before, during and after every insertion.
    """
    if snapshots is not None and mode != "eager":
        raise ValueError("snapshots need mode='eager'")
    st = LayoutState(g, pi, algo, mode)
    for path in pi.paths[1:]:
        if snapshots is not None:
            _insert_with_snapshot(st, path, trace, snapshots)
        else:
            st.insert(path, record=trace)
        if check_steps:
            contour = st.contour()
            bad = contour_condition_violation(contour, st.current_coords(), st.colors)
            if bad is not None:
                raise LayoutError(st.k, f"contour condition violated: {bad}")
    if f is None:
        f = g.edge_count - g.n + 1
    return GridDrawing(
        algo, st.materialize(), st.colors, g.n, f, st.trace if trace else None, st.extra_shifts, st.repairs
    )


def _insert_with_snapshot(st: LayoutState, path, trace: bool, out: list[StepSnapshot]) -> None:
    before_contour = st.contour()
    before = st.current_coords()
    shifted: dict[int, tuple[int, int]] = {}
    orig_place = st._placement

    def spy(k, path_, w_l, w_r, dx_r):
        shifted.update(st.current_coords())
        return orig_place(k, path_, w_l, w_r, dx_r)

    st._placement = spy  # type: ignore[method-assign]
    try:
        st.insert(path, record=trace)
    finally:
        del st._placement
    out.append(
        StepSnapshot(
            k=st.k,
            contour_before=before_contour,
            coords_before=before,
            coords_shifted=shifted,
            coords_after=st.current_coords(),
            contour_after=st.contour(),
            shift_sets={v: list(st.members[v]) for v in st.contour()},
        )
    )
