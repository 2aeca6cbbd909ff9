"""Canonical orders of 3-connected plane graphs.

The order is built back to front by peeling the outer cycle.  Each step
removes either a single contour vertex or the contour chain of one internal
face, always picking the removable candidate holding the smallest vertex id.
Bookkeeping follows the usual face counters: for every live internal face we
track how many of its vertices (``outv``) and edges (``oute``) lie on the
current outer cycle.

* a face is *blocking* when it touches the outer cycle in anything but a
  single vertex or a single outer edge; a vertex lying on a blocking face
  cannot be removed on its own;
* a face whose outer part is one path with at least one inner vertex
  (``outv == oute + 1 >= 3``) offers that inner path as a chain.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .plane_graph import FaceSet, PlaneGraph, is_biconnected, is_three_connected, validate_embedding
from .report import VerificationReport


class NotThreeConnected(ValueError):
    pass


class VertexNotOnContour(ValueError):
    pass


@dataclass(frozen=True)
class CanonicalOrder:
    paths: tuple[tuple[int, ...], ...]
    v1: int
    v2: int
    vn: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "paths", tuple(tuple(p) for p in self.paths))

    @property
    def m(self) -> int:
        return len(self.paths) - 1

    def step_of(self) -> list[int]:
        """``step_of()[v]`` is the index k of the path holding v."""
        n = sum(len(p) for p in self.paths)
        rank = [-1] * n
        for k, p in enumerate(self.paths):
            for v in p:
                rank[v] = k
        return rank


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


class _Peeler:
    def __init__(self, g: PlaneGraph, fs: FaceSet) -> None:
        self.g = g
        self.rot = g.rotations
        self.v1, self.v2, self.vn = g.v1, g.v2, g.vn
        n = g.n
        self.faces = fs.faces
        self.fhe = fs.face_halfedges
        he = fs.halfedges
        self.src, self.dst = he.src, he.dst
        # half-edge -> face on the other side
        self.across = [fs.face_of[t] for t in he.twin]
        nf = len(self.faces)

        self.vfaces: list[list[int]] = [[] for _ in range(n)]
        for fid in range(1, nf):
            for v in self.faces[fid]:
                self.vfaces[v].append(fid)

        self.live = [True] * nf
        self.live[0] = False
        self.live_count = nf - 1
        self.removed = [False] * n
        self.remaining = n
        self.outer = [False] * n
        for v in self.faces[0]:
            self.outer[v] = True
        self.deg = [len(r) for r in self.rot]
        self.visited = [0] * n

        self.outv = [0] * nf
        self.oute = [0] * nf
        for fid in range(1, nf):
            walk = self.faces[fid]
            self.outv[fid] = sum(1 for v in walk if self.outer[v])
            self.oute[fid] = sum(1 for h in self.fhe[fid] if not self.live[self.across[h]])
        self.blocking = [False] * nf
        self.sepf = [0] * n
        for fid in range(1, nf):
            if self._is_blocking(fid):
                self.blocking[fid] = True
                for v in self.faces[fid]:
                    self.sepf[v] += 1

        self.heap: list[tuple[int, int, int]] = []

    # -- candidate tests -----------------------------------------------------

    def _is_blocking(self, fid: int) -> bool:
        ov, oe = self.outv[fid], self.oute[fid]
        return ov >= 2 and not (ov == 2 and oe == 1)

    def _vertex_ok(self, v: int) -> bool:
        return (
            not self.removed[v]
            and self.outer[v]
            and v != self.v1
            and v != self.v2
            and self.sepf[v] == 0
            and self.visited[v] > 0
            and self.deg[v] >= 3
        )

    def _chain(self, fid: int) -> list[int] | None:
        """Inner vertices of the face's outer path, left to right, if it is a chain candidate."""
        if not self.live[fid]:
            return None
        ov, oe = self.outv[fid], self.oute[fid]
        if ov != oe + 1 or oe < 2:
            return None
        walk = self.faces[fid]
        L = len(walk)
        on = [not self.live[self.across[h]] for h in self.fhe[fid]]
        start = next(i for i in range(L) if on[i] and not on[i - 1])
        inner = [walk[(start + j) % L] for j in range(1, oe)]
        if self.v1 in inner or self.v2 in inner:
            return None
        # the face runs counterclockwise, so its top path is met right to left
        inner.reverse()
        return inner

    def _push_vertex(self, v: int) -> None:
        if self._vertex_ok(v):
            heapq.heappush(self.heap, (v, 0, v))

    def _push_face(self, fid: int) -> None:
        chain = self._chain(fid)
        if chain is not None:
            heapq.heappush(self.heap, (min(chain), 1, fid))

    # -- removal -------------------------------------------------------------

    def remove(self, path: Sequence[int]) -> None:
        for v in path:
            self.removed[v] = True
        self.remaining -= len(path)
        dying = []
        for v in path:
            for fid in self.vfaces[v]:
                if self.live[fid]:
                    self.live[fid] = False
                    self.live_count -= 1
                    if self.blocking[fid]:
                        self.blocking[fid] = False
                        for u in self.faces[fid]:
                            self.sepf[u] -= 1
                    dying.append(fid)
        touched_v: set[int] = set()
        touched_f: set[int] = set()
        for v in path:
            for u in self.rot[v]:
                if not self.removed[u]:
                    self.deg[u] -= 1
                    self.visited[u] += 1
                    touched_v.add(u)
        for fid in dying:
            walk = self.faces[fid]
            for u in walk:
                if not self.removed[u] and not self.outer[u]:
                    self.outer[u] = True
                    touched_v.add(u)
                    for h in self.vfaces[u]:
                        if self.live[h]:
                            self.outv[h] += 1
                            touched_f.add(h)
            for e in self.fhe[fid]:
                if self.removed[self.src[e]] or self.removed[self.dst[e]]:
                    continue
                h = self.across[e]
                if self.live[h]:
                    self.oute[h] += 1
                    touched_f.add(h)
        for h in touched_f:
            now = self._is_blocking(h)
            if now != self.blocking[h]:
                self.blocking[h] = now
                step = 1 if now else -1
                for u in self.faces[h]:
                    self.sepf[u] += step
                    touched_v.add(u)
            self._push_face(h)
        for u in touched_v:
            self._push_vertex(u)

    def next_path(self) -> list[int]:
        if self.live_count == 1:
            # G_1 is a cycle through v1 and v2; its contour is the last chain
            fid = next(i for i in range(1, len(self.faces)) if self.live[i])
            walk = list(self.faces[fid])
            i = walk.index(self.v1)
            walk = walk[i:] + walk[:i]
            if walk[1] != self.v2 or len(walk) != self.remaining:
                raise NotThreeConnected("remaining graph is not a cycle through v1, v2")
            return walk[:1:-1]
        while self.heap:
            key, kind, ident = heapq.heappop(self.heap)
            if kind == 0:
                if self._vertex_ok(ident):
                    return [ident]
            else:
                chain = self._chain(ident)
                if chain is None:
                    continue
                if min(chain) != key:
                    heapq.heappush(self.heap, (min(chain), 1, ident))
                    continue
                return chain
        raise NotThreeConnected(f"peeling stuck with {self.remaining} vertices left")

    def run(self) -> CanonicalOrder:
        for v in self.faces[0]:
            self._push_vertex(v)
        for fid in range(1, len(self.faces)):
            self._push_face(fid)
        rev = [(self.vn,)]
        self.remove([self.vn])
        while self.remaining > 2:
            path = self.next_path()
            rev.append(tuple(path))
            self.remove(path)
        rev.append((self.v1, self.v2))
        rev.reverse()
        return CanonicalOrder(tuple(rev), self.v1, self.v2, self.vn)


def compute_canonical_order(g: PlaneGraph, fs: FaceSet | None = None) -> CanonicalOrder:
    """Canonical order with v1, vn, v2 taken from the outer face.

    ``outer_face[0]`` is v1, its clockwise successor ``outer_face[1]`` is vn
    and its counterclockwise successor ``outer_face[-1]`` is v2.
    """
    if fs is None:
        fs = validate_embedding(g)
    if len(fs.outer) < 3:
        raise NotThreeConnected("outer face has fewer than 3 vertices")
    if g.degree(g.v1) < 3 or g.degree(g.v2) < 3 or g.degree(g.vn) < 3:
        raise NotThreeConnected("a vertex of degree < 3 on the outer face")
    return _Peeler(g, fs).run()


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

BRUTE_FORCE_LIMIT = 30


def _induced(rot: Sequence[Sequence[int]], keep: Sequence[bool]) -> tuple[list[int], list[list[int]]]:
    ids = [v for v in range(len(rot)) if keep[v]]
    idx = {v: i for i, v in enumerate(ids)}
    adj = [[idx[u] for u in rot[v] if keep[u]] for v in ids]
    return ids, adj


def _cw_successor(rot_b: Sequence[int], a: int, keep: Sequence[bool]) -> int:
    """Neighbour following ``a`` clockwise around b, ignoring vertices not kept."""
    i = rot_b.index(a)
    L = len(rot_b)
    for step in range(1, L + 1):
        u = rot_b[(i - step) % L]
        if keep[u]:
            return u
    raise AssertionError("isolated vertex")


def contours(g: PlaneGraph, pi: CanonicalOrder) -> list[list[int]]:
    """C_0 .. C_m computed from the rotations by walking the outer face of each G_k."""
    keep = [False] * g.n
    out = []
    for k, p in enumerate(pi.paths):
        for v in p:
            keep[v] = True
        if k == 0:
            out.append([pi.v1, pi.v2])
            continue
        walk = [pi.v1]
        prev, cur = pi.v2, pi.v1
        while cur != pi.v2:
            nxt = _cw_successor(g.rotations[cur], prev, keep)
            prev, cur = cur, nxt
            walk.append(cur)
            if len(walk) > g.n + 1:
                raise AssertionError("outer walk of G_k does not return to v2")
        out.append(walk)
    return out


def validate_canonical_order(g: PlaneGraph, pi: CanonicalOrder) -> VerificationReport:
    """Check P.1 to P.4; each failing property names the first offending step k."""
    rep = VerificationReport()
    n = g.n
    flat = [v for p in pi.paths for v in p]
    if sorted(flat) != list(range(n)):
        rep.add("partition", False, {"paths": [list(p) for p in pi.paths]})
        return rep
    rep.add("partition", True)

    adj = [set(r) for r in g.rotations]
    outer_edges = {frozenset(e) for e in zip(g.outer_face, g.outer_face[1:] + g.outer_face[:1])}
    ends_ok = (
        pi.paths[0] == (pi.v1, pi.v2)
        and pi.paths[-1] == (pi.vn,)
        and frozenset((pi.v1, pi.v2)) in outer_edges
        and frozenset((pi.v1, pi.vn)) in outer_edges
    )
    rep.add("endpoints", ends_ok, {"P0": list(pi.paths[0]), "Pm": list(pi.paths[-1])})
    if not ends_ok:
        return rep

    rank = pi.step_of()
    m = pi.m
    cs = contours(g, pi)

    p1 = p2 = p3 = p4 = None
    keep = [False] * n
    for v in pi.paths[0]:
        keep[v] = True
    for k in range(1, m + 1):
        path = pi.paths[k]
        prev_contour = set(cs[k - 1])
        for v in path:
            keep[v] = True
        if k == m:
            break
        if p2 is None:
            for v in path:
                bad = [u for u in g.rotations[v] if rank[u] < k and u not in prev_contour]
                if bad:
                    p2 = {"k": k, "vertex": v, "neighbour": bad[0]}
                    break
        if p3 is None and len(path) > 1:
            for i, v in enumerate(path):
                deg_k = sum(1 for u in g.rotations[v] if rank[u] <= k)
                chained = (i == 0 or path[i - 1] in adj[v]) and (i == len(path) - 1 or path[i + 1] in adj[v])
                if deg_k != 2 or not chained:
                    p3 = {"k": k, "vertex": v, "degree_in_Gk": deg_k}
                    break
        if p4 is None:
            for v in path:
                if not any(rank[u] > k for u in g.rotations[v]):
                    p4 = {"k": k, "vertex": v}
                    break
        if p1 is None:
            # ear condition: the path attaches to at least two distinct contour vertices
            attach = {u for v in path for u in g.rotations[v] if rank[u] < k}
            if len(attach) < 2:
                p1 = {"k": k, "reason": "path attaches to fewer than two vertices"}
            elif n <= BRUTE_FORCE_LIMIT:
                ids, sub = _induced(g.rotations, keep)
                if not is_biconnected(sub):
                    p1 = {"k": k, "reason": "G_k not biconnected"}
                else:
                    idx = {v: i for i, v in enumerate(ids)}
                    hub = len(sub)
                    aug = [list(a) for a in sub] + [[idx[v] for v in cs[k]]]
                    for v in cs[k]:
                        aug[idx[v]].append(hub)
                    if not is_three_connected(aug):
                        p1 = {"k": k, "reason": "G_k not internally 3-connected"}
    if p4 is None:
        for v in pi.paths[0]:
            if not any(rank[u] > 0 for u in g.rotations[v]):
                p4 = {"k": 0, "vertex": v}
    rep.add("P1", p1 is None, p1)
    rep.add("P2", p2 is None, p2)
    rep.add("P3", p3 is None, p3)
    rep.add("P4", p4 is None, p4)
    return rep


def saturated(v: int, k: int, g: PlaneGraph, pi: CanonicalOrder) -> bool:
    """True iff contour vertex v of G_k has no neighbour in a later path."""
    cs = contours(g, pi)
    if v not in cs[k]:
        raise VertexNotOnContour(f"vertex {v} is not on C_{k}")
    rank = pi.step_of()
    return all(rank[u] <= k for u in g.rotations[v])
