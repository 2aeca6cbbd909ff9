"""Plane graphs stored as rotation systems with a designated outer face.

Rotations list each vertex's neighbours in counterclockwise order.  Faces are
traced with the rule "arrive at v from u, leave towards the neighbour that
follows u in clockwise order", so internal faces come out counterclockwise
and the outer face clockwise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import chain
from typing import Sequence

import numpy as np


class EmbeddingError(ValueError):
    """Base class for malformed plane graphs."""


class GraphTooSmall(EmbeddingError):
    pass


class VertexOutOfRange(EmbeddingError):
    pass


class NonSimple(EmbeddingError):
    pass


class AsymmetricAdjacency(EmbeddingError):
    pass


class Disconnected(EmbeddingError):
    pass


class EulerViolation(EmbeddingError):
    pass


class OuterFaceNotAFace(EmbeddingError):
    pass


@dataclass(frozen=True)
class FaceSet:
    """All facial walks of an embedding.

    ``faces[0]`` is the outer face (the clockwise walk given as
    ``PlaneGraph.outer_face``); the internal faces follow, ordered by their
    smallest vertex id and each rotated to start at that vertex.
    """

    faces: tuple[tuple[int, ...], ...]
    internal_count: int
    halfedges: HalfEdges = field(repr=False, compare=False)
    # face id -> half-edge ids along its walk (same start as ``faces``)
    face_halfedges: tuple[list[int], ...] = field(repr=False, compare=False)
    # half-edge id -> face id
    face_of: list[int] = field(repr=False, compare=False)

    @property
    def outer(self) -> tuple[int, ...]:
        return self.faces[0]

    @property
    def internal(self) -> tuple[tuple[int, ...], ...]:
        return self.faces[1:]

    @cached_property
    def edge_face(self) -> dict[tuple[int, int], int]:
        """Directed edge ``(u, v)`` -> id of the face on its left."""
        he = self.halfedges
        return {(he.src[h], he.dst[h]): f for h, f in enumerate(self.face_of)}


@dataclass(frozen=True)
class PlaneGraph:
    n: int
    rotations: tuple[tuple[int, ...], ...]
    outer_face: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotations", tuple(tuple(r) for r in self.rotations))
        object.__setattr__(self, "outer_face", tuple(self.outer_face))

    @property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as ``(u, v)`` with ``u < v``, sorted."""
        return sorted((u, v) for u, rot in enumerate(self.rotations) for v in rot if u < v)

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    @property
    def v1(self) -> int:
        return self.outer_face[0]

    @property
    def v2(self) -> int:
        # counterclockwise successor of v1 on the outer cycle
        return self.outer_face[-1]

    @property
    def vn(self) -> int:
        return self.outer_face[1]

    def relabel(self, perm: Sequence[int]) -> PlaneGraph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        rot: list[tuple[int, ...]] = [()] * self.n
        for v, r in enumerate(self.rotations):
            rot[perm[v]] = tuple(perm[u] for u in r)
        return PlaneGraph(self.n, tuple(rot), tuple(perm[v] for v in self.outer_face))


def _check_structure(g: PlaneGraph) -> None:
    if g.n < 4:
        raise GraphTooSmall(f"need at least 4 vertices, got n={g.n}")
    if len(g.rotations) != g.n:
        raise EmbeddingError(f"expected {g.n} rotations, got {len(g.rotations)}")
    for v, rot in enumerate(g.rotations):
        for u in rot:
            if not 0 <= u < g.n:
                raise VertexOutOfRange(f"vertex {v} lists neighbour {u} outside [0, {g.n})")
            if u == v:
                raise NonSimple(f"loop at vertex {v}")
        if len(set(rot)) != len(rot):
            dup = next(u for u in rot if rot.count(u) > 1)
            raise NonSimple(f"multi-edge ({v}, {dup})")
    for v in g.outer_face:
        if not 0 <= v < g.n:
            raise VertexOutOfRange(f"outer face vertex {v} outside [0, {g.n})")
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u in g.rotations[v]:
            if not seen[u]:
                seen[u] = True
                queue.append(u)
    if not all(seen):
        raise Disconnected(f"vertex {seen.index(False)} is unreachable from 0")


@dataclass(frozen=True)
class HalfEdges:
    """Half-edge arrays of a rotation system.

    Half-edge ``off[v] + i`` runs from v to ``rotations[v][i]``.
    """

    off: list[int]
    src: list[int]
    dst: list[int]
    twin: list[int]
    # next half-edge along the same face
    nxt: list[int]


def build_halfedges(rotations: Sequence[Sequence[int]]) -> HalfEdges:
    n = len(rotations)
    deg = np.fromiter((len(r) for r in rotations), dtype=np.int64, count=n)
    off = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=off[1:])
    total = int(off[-1])
    src = np.repeat(np.arange(n, dtype=np.int64), deg)
    dst = np.fromiter((u for r in rotations for u in r), dtype=np.int64, count=total)
    key = src * n + dst
    order = np.argsort(key, kind="stable")
    rkey = dst * n + src
    loc = np.minimum(np.searchsorted(key[order], rkey), max(total - 1, 0))
    twin = order[loc]
    if total and not np.array_equal(key[twin], rkey):
        bad = int(np.flatnonzero(key[twin] != rkey)[0])
        u, v = int(src[bad]), int(dst[bad])
        raise AsymmetricAdjacency(f"{u} lists {v} but {v} does not list {u}")
    # arriving at v over rotation slot j of the twin, leave by slot j - 1
    j = twin - off[dst]
    nxt = off[dst] + (j - 1) % deg[dst]
    return HalfEdges(off.tolist(), src.tolist(), dst.tolist(), twin.tolist(), nxt.tolist())


def trace_faces(he: HalfEdges) -> tuple[list[list[int]], list[int]]:
    """Facial walks as half-edge id lists, plus the face id of every half-edge."""
    nxt = he.nxt
    face_of = [-1] * len(nxt)
    walks: list[list[int]] = []
    for h0 in range(len(nxt)):
        if face_of[h0] != -1:
            continue
        fid = len(walks)
        walk = []
        h = h0
        while face_of[h] == -1:
            face_of[h] = fid
            walk.append(h)
            h = nxt[h]
        walks.append(walk)
    return walks, face_of


def validate_embedding(g: PlaneGraph) -> FaceSet:
    """Check a plane graph and return its faces.

    Raises one of the :class:`EmbeddingError` subclasses naming the offending
    vertex, edge or face.
    """
    _check_structure(g)
    he = build_halfedges(g.rotations)
    walks, face_of = trace_faces(he)
    v, e, f = g.n, g.edge_count, len(walks)
    if v - e + f != 2:
        raise EulerViolation(f"V - E + F = {v} - {e} + {f} = {v - e + f}, expected 2")
    src = he.src
    outer = list(g.outer_face)
    outer_id = None
    if len(outer) >= 2 and outer[1] in g.rotations[outer[0]]:
        h = he.off[outer[0]] + g.rotations[outer[0]].index(outer[1])
        cand = walks[face_of[h]]
        i = cand.index(h)
        rotated = cand[i:] + cand[:i]
        if [src[x] for x in rotated] == outer:
            outer_id = face_of[h]
            walks[outer_id] = rotated
    if outer_id is None:
        raise OuterFaceNotAFace(f"outer_face {outer} is not a facial walk")

    # order internal faces by (smallest vertex, vertex after it)
    lengths = np.fromiter((len(w) for w in walks), dtype=np.int64, count=len(walks))
    starts = np.zeros(len(walks), dtype=np.int64)
    np.cumsum(lengths[:-1], out=starts[1:])
    flat = np.fromiter(chain.from_iterable(walks), dtype=np.int64, count=int(lengths.sum()))
    src_np = np.asarray(he.src, dtype=np.int64)
    dst_np = np.asarray(he.dst, dtype=np.int64)
    verts = src_np[flat]
    fidx = np.repeat(np.arange(len(walks)), lengths)
    minv = np.minimum.reduceat(verts, starts)
    at_min = np.flatnonzero(verts == minv[fidx])
    # among occurrences of the minimum, the one followed by the smallest vertex
    occ = np.lexsort((dst_np[flat[at_min]], fidx[at_min]))
    _, first = np.unique(fidx[at_min][occ], return_index=True)
    best = at_min[occ][first]
    follow = dst_np[flat[best]]
    shift = (best - starts).tolist()
    internal = [i for i in np.lexsort((follow, minv)).tolist() if i != outer_id]

    remap = [0] * len(walks)
    face_walks = [walks[outer_id]]
    for new, old in enumerate(internal, start=1):
        remap[old] = new
        w = walks[old]
        j = shift[old]
        face_walks.append(w[j:] + w[:j])
    return FaceSet(
        faces=tuple(tuple(src[h] for h in w) for w in face_walks),
        internal_count=len(internal),
        halfedges=he,
        face_halfedges=tuple(face_walks),
        face_of=[remap[x] for x in face_of],
    )


def faces(g: PlaneGraph) -> FaceSet:
    return validate_embedding(g)


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------


def _is_biconnected_without(adj: Sequence[Sequence[int]], removed: int) -> bool:
    """True iff the graph minus ``removed`` is connected and has no cut vertex."""
    n = len(adj)
    alive = [v for v in range(n) if v != removed]
    if len(alive) < 3:
        return len(alive) >= 1
    root = alive[0]
    disc = [-1] * n
    low = [0] * n
    disc[root] = 0
    timer = 1
    root_children = 0
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if w == removed or w == parent:
                continue
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, iter(adj[w])))
                advanced = True
                break
            low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            low[p] = min(low[p], low[v])
            if p != root and low[v] >= disc[p]:
                return False
    if timer != len(alive):
        return False
    return root_children <= 1


def is_biconnected(adj: Sequence[Sequence[int]]) -> bool:
    return _is_biconnected_without(adj, -1)


def is_three_connected(adj: Sequence[Sequence[int]]) -> bool:
    """No separating vertex pair: every single-vertex deletion stays biconnected."""
    n = len(adj)
    if n < 4:
        return False
    if not is_biconnected(adj):
        return False
    return all(_is_biconnected_without(adj, v) for v in range(n))


def check_three_connected(g: PlaneGraph) -> bool:
    return is_three_connected(g.rotations)
