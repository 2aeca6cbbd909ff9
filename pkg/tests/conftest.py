from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import pytest

from disklink.canonical_order import CanonicalOrder, compute_canonical_order
from disklink.graph_gen import GenSpec, corpus
from disklink.io_formats import parse_graph
from disklink.layout import GridDrawing, draw
from disklink.plane_graph import FaceSet, PlaneGraph, validate_embedding

FIXTURES = Path(__file__).parent / "fixtures"


@dataclass
class Instance:
    name: str
    spec: GenSpec
    g: PlaneGraph
    fs: FaceSet
    pi: CanonicalOrder
    ck: GridDrawing
    dl: GridDrawing


def _instance(spec: GenSpec, g: PlaneGraph) -> Instance:
    fs = validate_embedding(g)
    pi = compute_canonical_order(g, fs)
    ck = draw(g, pi, "ck", f=fs.internal_count)
    dl = draw(g, pi, "disklink", f=fs.internal_count)
    return Instance(spec.name, spec, g, fs, pi, ck, dl)


@lru_cache(maxsize=None)
def smoke_instances() -> tuple[Instance, ...]:
    manifest = json.loads((FIXTURES / "manifest.json").read_text())
    out = []
    for entry in manifest["instances"]:
        spec = GenSpec(entry["family"], entry["size"], entry["seed"])
        g = parse_graph((FIXTURES / entry["file"]).read_bytes())
        out.append(_instance(spec, g))
    return tuple(out)


@lru_cache(maxsize=None)
def full_instances() -> tuple[Instance, ...]:
    return tuple(_instance(spec, g) for spec, g in corpus("full"))


@pytest.fixture(scope="session")
def smoke() -> tuple[Instance, ...]:
    return smoke_instances()


@pytest.fixture(scope="session")
def full() -> tuple[Instance, ...]:
    return full_instances()


@pytest.fixture
def k4() -> PlaneGraph:
    return parse_graph((FIXTURES / "k4.json").read_bytes())


def pytest_terminal_summary(terminalreporter) -> None:
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines):
        terminalreporter.write_line(lines[key])
