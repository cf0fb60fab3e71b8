"""Cross-design correspondence: total Target→Source assignment plus overrides.

Every target element is matched to the source element with the highest
combined similarity (ties go to the earlier source in paint order), so the
assignment is a one-to-many map from sources onto targets. User fixes are an
append-only override log applied last-writer-wins over the immutable base
assignment; the base is never recomputed.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace

from .features import FeatureHistogram, structural_features
from .graph import DesignGraph
from .similarity import DimensionScores, SimilarityWeights, element_similarity


class EmptySourceError(ValueError):
    pass


class EmptyTargetError(ValueError):
    pass


class UnknownElementIdError(KeyError):
    pass


@dataclass(frozen=True)
class Correspondence:
    source_hash: str
    target_hash: str
    source_ids: tuple[str, ...]
    target_ids: tuple[str, ...]
    match: dict[str, str]
    scores: dict[str, DimensionScores]
    overrides: tuple[tuple[str, str], ...] = ()

    def effective_match(self) -> dict[str, str]:
        effective = dict(self.match)
        for target, source in self.overrides:
            effective[target] = source
        return effective

    def effective_source(self, target_id: str) -> str:
        if target_id not in self.match:
            raise UnknownElementIdError(target_id)
        return self.effective_match()[target_id]


def compute_correspondence(
    source_graph: DesignGraph,
    target_graph: DesignGraph,
    weights: SimilarityWeights | None = None,
) -> Correspondence:
    """Argmax assignment of every target element to its most similar source."""
    w = weights or SimilarityWeights()
    src_doc = source_graph.document
    tgt_doc = target_graph.document
    if not src_doc.elements:
        raise EmptySourceError("source document has no elements")
    if not tgt_doc.elements:
        raise EmptyTargetError("target document has no elements")

    src_features = structural_features(source_graph)
    tgt_features = structural_features(target_graph)

    match: dict[str, str] = {}
    scores: dict[str, DimensionScores] = {}
    for target in tgt_doc.elements:
        best_score: DimensionScores | None = None
        best_id = ""
        for source in src_doc.elements:
            score = element_similarity(
                target, source, tgt_features[target.id], src_features[source.id], w
            )
            # strict > keeps the earliest source on ties
            if best_score is None or score.combined > best_score.combined:
                best_score = score
                best_id = source.id
        match[target.id] = best_id
        scores[target.id] = best_score  # type: ignore[assignment]

    return Correspondence(
        source_hash=src_doc.hash_hex,
        target_hash=tgt_doc.hash_hex,
        source_ids=tuple(src_doc.ids),
        target_ids=tuple(tgt_doc.ids),
        match=match,
        scores=scores,
    )


def retarget(
    correspondence: Correspondence, targets: set[str], source: str
) -> Correspondence:
    """Append overrides mapping each listed target to the given source."""
    if source not in correspondence.source_ids:
        raise UnknownElementIdError(source)
    unknown = targets - set(correspondence.target_ids)
    if unknown:
        raise UnknownElementIdError(sorted(unknown)[0])
    ordered = [t for t in correspondence.target_ids if t in targets]
    new_overrides = correspondence.overrides + tuple((t, source) for t in ordered)
    return replace(correspondence, overrides=new_overrides)


def clear_overrides(correspondence: Correspondence) -> Correspondence:
    return replace(correspondence, overrides=())


def matched_targets(correspondence: Correspondence, source: str) -> set[str]:
    """Preimage of one source element under the effective match."""
    if source not in correspondence.source_ids:
        raise UnknownElementIdError(source)
    effective = correspondence.effective_match()
    return {t for t, s in effective.items() if s == source}


def score_matrix_csv(
    source_graph: DesignGraph,
    target_graph: DesignGraph,
    weights: SimilarityWeights | None = None,
) -> str:
    """Full score matrix as CSV for debugging and inspection."""
    w = weights or SimilarityWeights()
    src_features = structural_features(source_graph)
    tgt_features = structural_features(target_graph)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["targetId", "sourceId", "color", "shape", "size", "text", "structure", "combined"]
    )
    for target in target_graph.document.elements:
        for source in source_graph.document.elements:
            s = element_similarity(
                target, source, tgt_features[target.id], src_features[source.id], w
            )
            writer.writerow(
                [
                    target.id,
                    source.id,
                    f"{s.color:.6f}",
                    f"{s.shape:.6f}",
                    f"{s.size:.6f}",
                    "" if s.text is None else f"{s.text:.6f}",
                    f"{s.structure:.6f}",
                    f"{s.combined:.6f}",
                ]
            )
    return buf.getvalue()
