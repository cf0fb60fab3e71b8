"""Per-dimension element similarity and the weighted combination.

Five dimensions, each in [0, 1]: color (fill and stroke), shape (kind plus
aspect ratio), size (area ratio), text (font properties, only when both
elements are text), and structure (cosine over neighborhood-label histograms).
The combined score is the weighted mean over the dimensions applicable to the
pair.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .features import FeatureHistogram, cosine_similarity
from .svgmodel.color import Color
from .svgmodel.model import Element, ElementKind

_RGB_DIAGONAL = 255.0 * math.sqrt(3.0)

DIMENSIONS = ("color", "shape", "size", "text", "structure")


@dataclass(frozen=True)
class SimilarityWeights:
    color: float = 1.0
    shape: float = 1.0
    size: float = 1.0
    text: float = 1.0
    structure: float = 1.0

    def __post_init__(self) -> None:
        values = [self.color, self.shape, self.size, self.text, self.structure]
        if any(v < 0 for v in values):
            raise ValueError("similarity weights must be >= 0")
        if sum(values) <= 0:
            raise ValueError("at least one similarity weight must be positive")


@dataclass(frozen=True)
class DimensionScores:
    color: float
    shape: float
    size: float
    text: float | None
    structure: float
    combined: float

    def as_dict(self) -> dict[str, float | None]:
        return {
            "color": self.color,
            "shape": self.shape,
            "size": self.size,
            "text": self.text,
            "structure": self.structure,
            "combined": self.combined,
        }


def color_pair_similarity(c1: Color | None, c2: Color | None) -> float:
    if c1 is None and c2 is None:
        return 1.0
    if c1 is None or c2 is None:
        return 0.0
    dist = math.sqrt((c1.r - c2.r) ** 2 + (c1.g - c2.g) ** 2 + (c1.b - c2.b) ** 2)
    return (1.0 - dist / _RGB_DIAGONAL) * (1.0 - abs(c1.a - c2.a))


def color_similarity(a: Element, b: Element) -> float:
    fill = color_pair_similarity(a.style.fill, b.style.fill)
    stroke = color_pair_similarity(a.style.stroke, b.style.stroke)
    return (fill + stroke) / 2.0


def _ratio(x: float, y: float) -> float:
    """min/max ratio in [0,1]; 1 when both zero, 0 when exactly one is."""
    if x == y:
        return 1.0
    if x <= 0 or y <= 0:
        return 0.0
    if math.isinf(x) and math.isinf(y):
        return 1.0
    if math.isinf(x) or math.isinf(y):
        return 0.0
    return min(x, y) / max(x, y)


def shape_similarity(a: Element, b: Element) -> float:
    kind = 1.0 if a.kind == b.kind else 0.0
    aspect = _ratio(a.aspect_ratio, b.aspect_ratio)
    return (kind + aspect) / 2.0


def size_similarity(a: Element, b: Element) -> float:
    return _ratio(a.bbox.area, b.bbox.area)


def text_similarity(a: Element, b: Element) -> float | None:
    """Font-property similarity; None when the dimension is not applicable."""
    if a.kind is not ElementKind.TEXT or b.kind is not ElementKind.TEXT:
        return None
    sa, sb = a.style, b.style
    family = 1.0 if (sa.font_family == sb.font_family) else 0.0
    size = _ratio(sa.font_size or 0.0, sb.font_size or 0.0)
    weight_style = 1.0 if (
        sa.font_weight == sb.font_weight and sa.font_style == sb.font_style
    ) else 0.0
    return 0.5 * family + 0.25 * size + 0.25 * weight_style


def element_similarity(
    a: Element,
    b: Element,
    features_a: FeatureHistogram,
    features_b: FeatureHistogram,
    weights: SimilarityWeights | None = None,
) -> DimensionScores:
    w = weights or SimilarityWeights()
    scores: dict[str, float] = {
        "color": color_similarity(a, b),
        "shape": shape_similarity(a, b),
        "size": size_similarity(a, b),
        "structure": cosine_similarity(features_a, features_b),
    }
    text = text_similarity(a, b)
    if text is not None:
        scores["text"] = text

    total_weight = sum(getattr(w, dim) for dim in scores)
    if total_weight > 0:
        combined = sum(getattr(w, dim) * value for dim, value in scores.items()) / total_weight
    else:
        combined = 0.0
    return DimensionScores(
        color=scores["color"],
        shape=scores["shape"],
        size=scores["size"],
        text=text,
        structure=scores["structure"],
        combined=combined,
    )
