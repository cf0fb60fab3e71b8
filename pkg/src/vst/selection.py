"""Similarity-driven selection growth within one document.

Both operations rank unselected elements by their best combined similarity to
any currently selected element, using the same formula as cross-design
matching. Expansion adds the whole top-scoring tie set; thresholding adds
every element at or above a cutoff.
"""
from __future__ import annotations

from .features import structural_features
from .graph import DesignGraph
from .matching import UnknownElementIdError
from .similarity import SimilarityWeights, element_similarity

_TIE_TOL = 1e-9

TAU_STEP = 0.05


class EmptySelectionError(ValueError):
    pass


def _selection_scores(
    graph: DesignGraph, selected: set[str], weights: SimilarityWeights | None
) -> dict[str, float]:
    """Best similarity to the selection, for every unselected element."""
    doc = graph.document
    if not selected:
        raise EmptySelectionError("selection is empty")
    index = doc.index()
    unknown = selected - index.keys()
    if unknown:
        raise UnknownElementIdError(sorted(unknown)[0])

    w = weights or SimilarityWeights()
    features = structural_features(graph)
    scores: dict[str, float] = {}
    for element in doc.elements:
        if element.id in selected:
            continue
        best = 0.0
        for sid in selected:
            seed = index[sid]
            score = element_similarity(
                element, seed, features[element.id], features[sid], w
            ).combined
            if score > best:
                best = score
        scores[element.id] = best
    return scores


def expand_selection(
    graph: DesignGraph, current: set[str], weights: SimilarityWeights | None = None
) -> set[str]:
    """Add the highest-scoring unselected elements (whole tie set)."""
    scores = _selection_scores(graph, current, weights)
    if not scores:
        return set(current)
    top = max(scores.values())
    return set(current) | {eid for eid, s in scores.items() if s >= top - _TIE_TOL}


def threshold_selection(
    graph: DesignGraph,
    seed: set[str],
    tau: float,
    weights: SimilarityWeights | None = None,
) -> set[str]:
    """Seed plus every element whose best similarity to the seed is >= tau."""
    scores = _selection_scores(graph, seed, weights)
    return set(seed) | {eid for eid, s in scores.items() if s >= tau}


def step_tau(tau: float, direction: int) -> float:
    """One [-/+] control step of 0.05, clamped to [0, 1]."""
    return max(0.0, min(1.0, tau + direction * TAU_STEP))
