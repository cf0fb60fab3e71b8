"""Structural features from iterative neighborhood relabeling.

Each element gets a deterministic 64-bit label per iteration: iteration 0
encodes the element's own kind, size bucket, and fill bucket; iteration k+1
hashes the iteration-k label together with the sorted multiset of
(edge kind, neighbor iteration-k label) pairs. A sparse histogram counts
(iteration, edge kind, neighbor label) triples over iterations 0..2, and those
histograms feed the structure similarity dimension.

Byte encoding of hashed tuples: UTF-8 text fields and decimal integers joined
by ``|``, lists joined by ``;``. Text avoids endianness concerns and keeps the
scheme easy to re-implement for cross-checks.
"""
from __future__ import annotations

import math

from .graph import DesignGraph, EdgeKind
from .hashing import fnv1a64
from .svgmodel.model import Element

ITERATIONS = 2

# Histogram key: (iteration, edge kind, neighbor label at that iteration).
FeatureHistogram = dict[tuple[int, EdgeKind, int], int]


def size_bucket(bbox_area: float, view_box_area: float) -> int:
    """floor(log2(areaRatio * 2^16)) clamped to [0, 16]."""
    if bbox_area <= 0 or view_box_area <= 0:
        return 0
    scaled = bbox_area / view_box_area * 65536.0
    if scaled <= 1.0:
        return 0
    return min(16, int(math.floor(math.log2(scaled))))


def fill_bucket(element: Element) -> tuple[int, int, int]:
    """Each RGB channel quantized to 4 levels; (-1,-1,-1) marks no fill."""
    fill = element.style.fill
    if fill is None:
        return (-1, -1, -1)
    return (fill.r * 4 // 256, fill.g * 4 // 256, fill.b * 4 // 256)


def initial_label(element: Element, view_box_area: float) -> int:
    fb = fill_bucket(element)
    encoded = "|".join(
        (
            element.kind.value,
            str(size_bucket(element.bbox.area, view_box_area)),
            str(fb[0]), str(fb[1]), str(fb[2]),
        )
    )
    return fnv1a64(encoded.encode("utf-8"))


def refine_label(label: int, neighborhood: list[tuple[EdgeKind, int]]) -> int:
    parts = [str(label)]
    for kind, neighbor_label in sorted(
        neighborhood, key=lambda p: (p[0].value, p[1])
    ):
        parts.append(f"{kind.value}|{neighbor_label}")
    return fnv1a64(";".join(parts).encode("utf-8"))


def structural_features(graph: DesignGraph) -> dict[str, FeatureHistogram]:
    """Per-element sparse histograms over relabeling iterations 0..2.

    Cached on the graph: it is immutable, and matching and selection both
    call this repeatedly for the same graph.
    """
    cached = getattr(graph, "_features", None)
    if cached is not None:
        return cached
    computed = _compute_features(graph)
    object.__setattr__(graph, "_features", computed)
    return computed


def _compute_features(graph: DesignGraph) -> dict[str, FeatureHistogram]:
    doc = graph.document
    area = doc.view_box.area
    labels: dict[str, int] = {e.id: initial_label(e, area) for e in doc.elements}
    histograms: dict[str, FeatureHistogram] = {e.id: {} for e in doc.elements}

    for iteration in range(ITERATIONS + 1):
        for element in doc.elements:
            hist = histograms[element.id]
            for kind, neighbor in graph.adjacency[element.id]:
                key = (iteration, kind, labels[neighbor])
                hist[key] = hist.get(key, 0) + 1
        if iteration == ITERATIONS:
            break
        labels = {
            eid: refine_label(
                labels[eid],
                [(kind, labels[n]) for kind, n in graph.adjacency[eid]],
            )
            for eid in labels
        }
    return histograms


def cosine_similarity(a: FeatureHistogram, b: FeatureHistogram) -> float:
    """Cosine of sparse count vectors; 1 if both empty, 0 if exactly one is."""
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    dot = sum(count * b[key] for key, count in a.items() if key in b)
    norm_a = math.sqrt(sum(c * c for c in a.values()))
    norm_b = math.sqrt(sum(c * c for c in b.values()))
    return dot / (norm_a * norm_b)
