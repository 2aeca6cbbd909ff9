"""Deterministic generators of 3-connected plane graphs.

Every family fixes its embedding by construction.  Wheels, prisms and
antiprisms are laid out on concentric circles and their rotations read off
by angle; stacked triangulations grow combinatorially from K4 by inserting
a vertex into a uniformly random internal face (``random.Random(seed)``,
i.e. Mersenne Twister).

Outer faces are emitted as clockwise walks whose first entry is the vertex
used as v1 by the canonical order.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator

from .plane_graph import PlaneGraph

FAMILIES = ("wheel", "prism", "antiprism", "stacked", "cube")

_MIN_SIZE = {"wheel": 3, "prism": 3, "antiprism": 3, "stacked": 4, "cube": 0}


class SizeTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    family: str
    size: int
    seed: int = 0

    @property
    def name(self) -> str:
        if self.family == "stacked":
            return f"stacked-n{self.size}-s{self.seed}"
        if self.family == "cube":
            return "cube"
        return f"{self.family}-{self.size}"


def _rotations_from_layout(adj: list[set[int]], pos: list[tuple[float, float]]) -> list[list[int]]:
    rot = []
    for v, nbrs in enumerate(adj):
        x, y = pos[v]
        rot.append(sorted(nbrs, key=lambda u: math.atan2(pos[u][1] - y, pos[u][0] - x)))
    return rot


def _ring(count: int, radius: float, phase: float = 0.0) -> list[tuple[float, float]]:
    return [
        (radius * math.cos(phase + 2 * math.pi * i / count), radius * math.sin(phase + 2 * math.pi * i / count))
        for i in range(count)
    ]


def _clockwise_ring(ids: list[int]) -> list[int]:
    # ids are laid out counterclockwise; the outer walk runs the other way
    return [ids[0]] + ids[:0:-1]


def wheel(rim: int) -> PlaneGraph:
    """Hub ``rim`` inside the cycle ``0 .. rim-1``."""
    if rim < 3:
        raise SizeTooSmall(f"wheel needs at least 3 rim vertices, got {rim}")
    hub = rim
    adj: list[set[int]] = [set() for _ in range(rim + 1)]
    for i in range(rim):
        j = (i + 1) % rim
        adj[i] |= {j, hub}
        adj[j].add(i)
        adj[hub].add(i)
    pos = _ring(rim, 1.0) + [(0.0, 0.0)]
    rot = _rotations_from_layout(adj, pos)
    return PlaneGraph(rim + 1, rot, _clockwise_ring(list(range(rim))))


def prism(size: int) -> PlaneGraph:
    """Outer cycle ``0 .. size-1``, inner cycle ``size .. 2*size-1``, spokes ``i -- size+i``."""
    if size < 3:
        raise SizeTooSmall(f"prism needs size >= 3, got {size}")
    n = 2 * size
    adj: list[set[int]] = [set() for _ in range(n)]
    for i in range(size):
        j = (i + 1) % size
        for a, b in ((i, j), (size + i, size + j), (i, size + i)):
            adj[a].add(b)
            adj[b].add(a)
    pos = _ring(size, 2.0) + _ring(size, 1.0)
    return PlaneGraph(n, _rotations_from_layout(adj, pos), _clockwise_ring(list(range(size))))


def antiprism(size: int) -> PlaneGraph:
    """Two ``size``-cycles; inner ``size+i`` joins outer ``i`` and ``i+1``."""
    if size < 3:
        raise SizeTooSmall(f"antiprism needs size >= 3, got {size}")
    n = 2 * size
    adj: list[set[int]] = [set() for _ in range(n)]
    for i in range(size):
        j = (i + 1) % size
        for a, b in ((i, j), (size + i, size + j), (i, size + i), (j, size + i)):
            adj[a].add(b)
            adj[b].add(a)
    # inner radius below cos(pi/size) keeps size 3 off the outer edges
    pos = _ring(size, 2.0) + _ring(size, 0.8, math.pi / size)
    return PlaneGraph(n, _rotations_from_layout(adj, pos), _clockwise_ring(list(range(size))))


def cube() -> PlaneGraph:
    return prism(4)


def stacked(n: int, seed: int = 0) -> PlaneGraph:
    """Random stacked triangulation on ``n`` vertices.

    Starts from K4 (outer triangle 0, 1, 2 counterclockwise with 3 inside)
    and inserts vertices into uniformly chosen internal faces.
    """
    if n < 4:
        raise SizeTooSmall(f"stacked triangulation needs n >= 4, got {n}")
    rng = random.Random(seed)
    rot: list[list[int]] = [[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 1, 2]]
    # internal faces as counterclockwise triples
    tri: list[tuple[int, int, int]] = [(0, 1, 3), (1, 2, 3), (2, 0, 3)]
    for v in range(4, n):
        i = rng.randrange(len(tri))
        a, b, c = tri[i]
        # at each corner, insert v just before the previous corner's vertex
        for corner, prev in ((a, c), (b, a), (c, b)):
            r = rot[corner]
            r.insert(r.index(prev), v)
        rot.append([a, b, c])
        tri[i] = (a, b, v)
        tri.append((b, c, v))
        tri.append((c, a, v))
    return PlaneGraph(n, rot, (0, 2, 1))


def generate(spec: GenSpec) -> PlaneGraph:
    if spec.family not in FAMILIES:
        raise ValueError(f"unknown family {spec.family!r}; choose from {', '.join(FAMILIES)}")
    if spec.family != "cube" and spec.size < _MIN_SIZE[spec.family]:
        raise SizeTooSmall(f"{spec.family} needs size >= {_MIN_SIZE[spec.family]}, got {spec.size}")
    if spec.family == "wheel":
        return wheel(spec.size)
    if spec.family == "prism":
        return prism(spec.size)
    if spec.family == "antiprism":
        return antiprism(spec.size)
    if spec.family == "cube":
        return cube()
    return stacked(spec.size, spec.seed)


PERF_SIZE = 100_000


def corpus_specs(profile: str = "smoke", include_perf: bool = False) -> list[GenSpec]:
    """Fixed-seed corpus.  ``include_perf`` adds the 10^5-vertex instance to ``full``."""
    if profile == "smoke":
        specs = [GenSpec("wheel", s) for s in range(3, 13)]
        specs += [GenSpec("prism", s) for s in range(3, 13)]
        specs += [GenSpec("stacked", 5 + (25 * i) // 19, seed=i) for i in range(20)]
        return specs
    if profile == "full":
        specs = [GenSpec("wheel", s) for s in range(3, 151)]
        specs += [GenSpec("prism", s) for s in range(3, 151)]
        specs += [GenSpec("stacked", 4 + (146 * i) // 199, seed=1000 + i) for i in range(200)]
        if include_perf:
            specs.append(GenSpec("stacked", PERF_SIZE, seed=7))
        return specs
    raise ValueError(f"unknown profile {profile!r}")


def corpus(profile: str = "smoke", include_perf: bool = False) -> Iterator[tuple[GenSpec, PlaneGraph]]:
    for spec in corpus_specs(profile, include_perf):
        yield spec, generate(spec)
