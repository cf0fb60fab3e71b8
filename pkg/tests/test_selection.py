"""Selection growth: ranking oracle, threshold monotonicity, expansion fixed point."""
import random

import pytest

from conftest import CORPUS, random_svg
from vst.features import structural_features
from vst.graph import build_graph
from vst.matching import UnknownElementIdError
from vst.selection import (
    EmptySelectionError,
    expand_selection,
    step_tau,
    threshold_selection,
)
from vst.similarity import SimilarityWeights, element_similarity
from vst.svgmodel.parser import parse_svg


def oracle_scores(graph, selected):
    """Best-similarity-to-selection, recomputed with an independent loop."""
    doc = graph.document
    feats = structural_features(graph)
    index = {e.id: e for e in doc.elements}
    out = {}
    for el in doc.elements:
        if el.id in selected:
            continue
        out[el.id] = max(
            element_similarity(el, index[sid], feats[el.id], feats[sid]).combined
            for sid in selected
        )
    return out


def pooled_graphs(count, seed, elements=(5, 14)):
    rng = random.Random(seed)
    graphs = []
    for _ in range(count):
        doc = parse_svg(random_svg(rng, rng.randrange(*elements)))
        graphs.append(build_graph(doc))
    return graphs


def test_empty_selection_rejected():
    graph = build_graph(parse_svg(b'<svg><rect width="5" height="5"/></svg>'))
    with pytest.raises(EmptySelectionError):
        expand_selection(graph, set())
    with pytest.raises(EmptySelectionError):
        threshold_selection(graph, set(), 0.5)


def test_unknown_seed_rejected():
    graph = build_graph(parse_svg(b'<svg><rect width="5" height="5"/></svg>'))
    with pytest.raises(UnknownElementIdError):
        expand_selection(graph, {"ghost"})


def test_expand_adds_top_scorers():
    doc = parse_svg(
        b'<svg><rect id="seed" x="0" y="0" width="10" height="10" fill="#ff0000"/>'
        b'<rect id="twin" x="30" y="0" width="10" height="10" fill="#ff0000"/>'
        b'<circle id="far" cx="80" cy="80" r="3" fill="#0000ff"/></svg>'
    )
    graph = build_graph(doc)
    grown = expand_selection(graph, {"seed"})
    assert grown == {"seed", "twin"}


def test_expand_adds_whole_tie_set():
    doc = parse_svg(
        b'<svg><rect id="seed" x="0" y="0" width="10" height="10" fill="#ff0000"/>'
        b'<rect id="twin1" x="30" y="0" width="10" height="10" fill="#ff0000"/>'
        b'<rect id="twin2" x="60" y="0" width="10" height="10" fill="#ff0000"/></svg>'
    )
    graph = build_graph(doc)
    scores = oracle_scores(graph, {"seed"})
    assert scores["twin1"] == pytest.approx(scores["twin2"], abs=1e-12)
    assert expand_selection(graph, {"seed"}) == {"seed", "twin1", "twin2"}


def test_expand_full_selection_is_noop():
    doc = parse_svg(random_svg(random.Random(1), 6))
    graph = build_graph(doc)
    everything = set(doc.ids)
    assert expand_selection(graph, everything) == everything


def test_threshold_extremes():
    doc = parse_svg(random_svg(random.Random(2), 10))
    graph = build_graph(doc)
    seed = {doc.ids[0]}
    assert threshold_selection(graph, seed, 0.0) == set(doc.ids)
    assert threshold_selection(graph, seed, 1.0 + 1e-9) == seed


def test_threshold_matches_oracle_cutoff():
    graphs = pooled_graphs(10, 500)
    rng = random.Random(501)
    for graph in graphs:
        ids = graph.document.ids
        seed = {rng.choice(ids)}
        tau = rng.random()
        expected = set(seed) | {
            eid for eid, s in oracle_scores(graph, seed).items() if s >= tau
        }
        assert threshold_selection(graph, seed, tau) == expected


def test_threshold_monotone_in_tau_bulk():
    """Lowering tau never removes elements (full 10,000-case suite lives in
    the acceptance tests; this is a fast regression slice)."""
    graphs = pooled_graphs(40, 600)
    rng = random.Random(601)
    for case in range(2000):
        graph = graphs[case % len(graphs)]
        ids = graph.document.ids
        seed = set(rng.sample(ids, rng.randrange(1, min(3, len(ids)) + 1)))
        hi = rng.random()
        lo = hi - rng.random() * hi
        high_sel = threshold_selection(graph, seed, hi)
        low_sel = threshold_selection(graph, seed, lo)
        assert high_sel <= low_sel, (case, hi, lo)


def test_expand_reaches_fixed_point_bulk():
    """Iterated expansion hits a fixed point within n steps (fast slice; the
    acceptance suite runs the full 10,000 cases)."""
    graphs = pooled_graphs(40, 700)
    rng = random.Random(701)
    for case in range(2000):
        graph = graphs[case % len(graphs)]
        ids = graph.document.ids
        current = {rng.choice(ids)}
        for _ in range(len(ids) + 1):
            grown = expand_selection(graph, current)
            assert current <= grown
            if grown == current:
                break
            current = grown
        else:
            pytest.fail(f"no fixed point reached in case {case}")
        assert expand_selection(graph, current) == current


def test_expansion_growth_bounded_by_document():
    doc = parse_svg((CORPUS / "17-dashboard.svg").read_bytes())
    graph = build_graph(doc)
    current = {doc.ids[0]}
    seen = [set(current)]
    while True:
        grown = expand_selection(graph, current)
        if grown == current:
            break
        seen.append(set(grown))
        current = grown
    assert current <= set(doc.ids)
    assert all(a < b for a, b in zip(seen, seen[1:]))


def test_weights_change_ranking():
    doc = parse_svg(
        b'<svg><text id="seed" x="0" y="10" font-family="Lato" font-size="10" '
        b'fill="#ff0000">a</text>'
        b'<text id="peer" x="0" y="40" font-family="Lato" font-size="10" '
        b'fill="#00ff00">b</text>'
        b'<rect id="block" x="50" y="0" width="6" height="10" fill="#ff0000"/></svg>'
    )
    graph = build_graph(doc)
    text_heavy = SimilarityWeights(color=0.01, shape=0.01, size=0.01, text=5, structure=0.01)
    color_heavy = SimilarityWeights(color=5, shape=0.01, size=0.01, text=0.01, structure=0.01)
    assert "peer" in expand_selection(graph, {"seed"}, text_heavy)
    assert "block" in expand_selection(graph, {"seed"}, color_heavy)


def test_step_tau_clamps():
    assert step_tau(0.5, +1) == pytest.approx(0.55)
    assert step_tau(0.5, -1) == pytest.approx(0.45)
    assert step_tau(0.98, +1) == 1.0
    assert step_tau(0.02, -1) == 0.0
    assert step_tau(1.0, +1) == 1.0
    assert step_tau(0.0, -1) == 0.0
