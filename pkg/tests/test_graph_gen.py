from __future__ import annotations

import json
from pathlib import Path

import pytest

from disklink.graph_gen import (
    FAMILIES,
    GenSpec,
    SizeTooSmall,
    antiprism,
    corpus,
    corpus_specs,
    cube,
    generate,
    prism,
    stacked,
    wheel,
)
from disklink.io_formats import serialize_graph
from disklink.plane_graph import check_three_connected, faces, validate_embedding

FIXTURES = Path(__file__).parent / "fixtures"


def test_wheel5():
    g = wheel(5)
    assert g.n == 6
    assert faces(g).internal_count == 5


def test_stacked_is_maximal():
    g = stacked(10, 1)
    assert g.edge_count == 3 * g.n - 6
    assert faces(g).internal_count == 2 * g.n - 5


def test_prism3():
    g = prism(3)
    assert (g.n, g.edge_count, faces(g).internal_count) == (6, 9, 4)
    assert all(len(r) == 3 for r in g.rotations)


def test_cube_and_antiprism():
    g = cube()
    assert (g.n, g.edge_count) == (8, 12)
    for size in range(3, 9):
        h = antiprism(size)
        assert all(len(r) == 4 for r in h.rotations)
        validate_embedding(h)
        assert check_three_connected(h)


def test_too_small():
    with pytest.raises(SizeTooSmall):
        wheel(2)
    with pytest.raises(SizeTooSmall):
        stacked(3)
    with pytest.raises(SizeTooSmall):
        generate(GenSpec("prism", 2))
    with pytest.raises(ValueError):
        generate(GenSpec("tree", 5))


def test_same_seed_same_graph():
    assert serialize_graph(stacked(80, 5)) == serialize_graph(stacked(80, 5))
    assert serialize_graph(stacked(80, 5)) != serialize_graph(stacked(80, 6))


def test_smoke_corpus_matches_fixtures():
    manifest = json.loads((FIXTURES / "manifest.json").read_text())
    specs = corpus_specs("smoke")
    assert [GenSpec(e["family"], e["size"], e["seed"]) for e in manifest["instances"]] == specs
    for entry, (spec, g) in zip(manifest["instances"], corpus("smoke")):
        assert (FIXTURES / entry["file"]).read_bytes() == serialize_graph(g), spec.name


def test_smoke_corpus_size_and_validity():
    specs = corpus_specs("smoke")
    assert 40 <= len(specs) <= 60
    assert len({s.name for s in specs}) == len(specs)
    for spec, g in corpus("smoke"):
        validate_embedding(g)
        assert check_three_connected(g), spec.name


def test_full_corpus_valid():
    specs = corpus_specs("full")
    assert len({s.name for s in specs}) == len(specs)
    for spec, g in corpus("full"):
        validate_embedding(g)
        if g.n <= 60:
            assert check_three_connected(g), spec.name


def test_perf_instance_listed():
    specs = corpus_specs("full", include_perf=True)
    assert specs[-1] == GenSpec("stacked", 100_000, 7)


def test_every_family_generates():
    for fam in FAMILIES:
        g = generate(GenSpec(fam, 5, 1))
        validate_embedding(g)
