"""Semantic multigraph over one document's elements.

Vertices are elements; typed edges capture pairwise relationships (same fill,
same font, containment, alignment, ...). Symmetric kinds are stored once with
ids in canonical order; Containment is directed container to contained.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .svgmodel.model import DesignDocument, Element, ElementKind


class EdgeKind(str, Enum):
    SAME_FILL = "SameFill"
    SAME_STROKE = "SameStroke"
    SAME_FONT_FAMILY = "SameFontFamily"
    SAME_FONT_SIZE = "SameFontSize"
    SAME_SHAPE_KIND = "SameShapeKind"
    CONTAINMENT = "Containment"
    ALIGN_LEFT = "AlignLeft"
    ALIGN_RIGHT = "AlignRight"
    ALIGN_TOP = "AlignTop"
    ALIGN_BOTTOM = "AlignBottom"
    ALIGN_CENTER_X = "AlignCenterX"
    ALIGN_CENTER_Y = "AlignCenterY"


SYMMETRIC_KINDS = frozenset(k for k in EdgeKind if k is not EdgeKind.CONTAINMENT)

_FONT_SIZE_TOL = 1e-6


@dataclass(frozen=True)
class GraphConfig:
    align_epsilon: float = 2.0
    contain_margin: float = 0.5
    enabled_kinds: frozenset[EdgeKind] = frozenset(EdgeKind)

    def __post_init__(self) -> None:
        if self.align_epsilon < 0 or self.contain_margin < 0:
            raise ValueError("graph tolerances must be >= 0")


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    kind: EdgeKind


@dataclass(frozen=True)
class DesignGraph:
    document: DesignDocument
    config: GraphConfig
    edges: tuple[Edge, ...]
    adjacency: dict[str, tuple[tuple[EdgeKind, str], ...]] = field(compare=False)

    @property
    def document_ref(self) -> str:
        return self.document.hash_hex


def _symmetric_kinds(a: Element, b: Element, cfg: GraphConfig) -> set[EdgeKind]:
    kinds: set[EdgeKind] = set()
    sa, sb = a.style, b.style
    if sa.fill is not None and sb.fill is not None and sa.fill == sb.fill:
        kinds.add(EdgeKind.SAME_FILL)
    if sa.stroke is not None and sb.stroke is not None and sa.stroke == sb.stroke:
        kinds.add(EdgeKind.SAME_STROKE)
    both_text = a.kind is ElementKind.TEXT and b.kind is ElementKind.TEXT
    if both_text:
        if sa.font_family is not None and sa.font_family == sb.font_family:
            kinds.add(EdgeKind.SAME_FONT_FAMILY)
        if (
            sa.font_size is not None
            and sb.font_size is not None
            and abs(sa.font_size - sb.font_size) <= _FONT_SIZE_TOL
        ):
            kinds.add(EdgeKind.SAME_FONT_SIZE)
    if a.kind == b.kind and a.kind in (ElementKind.SHAPE, ElementKind.PATH):
        kinds.add(EdgeKind.SAME_SHAPE_KIND)
    eps = cfg.align_epsilon
    ba, bb = a.bbox, b.bbox
    if abs(ba.x - bb.x) <= eps:
        kinds.add(EdgeKind.ALIGN_LEFT)
    if abs(ba.x2 - bb.x2) <= eps:
        kinds.add(EdgeKind.ALIGN_RIGHT)
    if abs(ba.y - bb.y) <= eps:
        kinds.add(EdgeKind.ALIGN_TOP)
    if abs(ba.y2 - bb.y2) <= eps:
        kinds.add(EdgeKind.ALIGN_BOTTOM)
    if abs(ba.cx - bb.cx) <= eps:
        kinds.add(EdgeKind.ALIGN_CENTER_X)
    if abs(ba.cy - bb.cy) <= eps:
        kinds.add(EdgeKind.ALIGN_CENTER_Y)
    return kinds


def _contains(container: Element, contained: Element, cfg: GraphConfig) -> bool:
    return (
        container.bbox.area > contained.bbox.area
        and container.bbox.contains(contained.bbox, margin=cfg.contain_margin)
    )


def edge_predicates(a: Element, b: Element, cfg: GraphConfig) -> set[EdgeKind]:
    """Kinds that hold for the ordered pair (a, b); Containment means a ⊇ b."""
    kinds = {k for k in _symmetric_kinds(a, b, cfg) if k in cfg.enabled_kinds}
    if EdgeKind.CONTAINMENT in cfg.enabled_kinds and _contains(a, b, cfg):
        kinds.add(EdgeKind.CONTAINMENT)
    return kinds


def build_graph(doc: DesignDocument, cfg: GraphConfig | None = None) -> DesignGraph:
    cfg = cfg or GraphConfig()
    edges: list[Edge] = []
    elements = doc.elements
    for i, a in enumerate(elements):
        for b in elements[i + 1 :]:
            for kind in sorted(_symmetric_kinds(a, b, cfg) & cfg.enabled_kinds, key=lambda k: k.value):
                edges.append(Edge(a.id, b.id, kind))
            if EdgeKind.CONTAINMENT in cfg.enabled_kinds:
                if _contains(a, b, cfg):
                    edges.append(Edge(a.id, b.id, EdgeKind.CONTAINMENT))
                elif _contains(b, a, cfg):
                    edges.append(Edge(b.id, a.id, EdgeKind.CONTAINMENT))

    adjacency: dict[str, list[tuple[EdgeKind, str]]] = {e.id: [] for e in elements}
    for edge in edges:
        adjacency[edge.a].append((edge.kind, edge.b))
        adjacency[edge.b].append((edge.kind, edge.a))
    frozen = {eid: tuple(sorted(pairs)) for eid, pairs in adjacency.items()}
    return DesignGraph(document=doc, config=cfg, edges=tuple(edges), adjacency=frozen)


def dump_edges(graph: DesignGraph) -> str:
    """Line-oriented debug dump: edgeKind<TAB>idA<TAB>idB, sorted."""
    lines = [f"{e.kind.value}\t{e.a}\t{e.b}" for e in graph.edges]
    return "\n".join(sorted(lines)) + ("\n" if lines else "")
