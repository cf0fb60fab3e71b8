"""Style transfer between SVG designs via editable element correspondence."""

from .graph import DesignGraph, EdgeKind, GraphConfig, build_graph, edge_predicates
from .matching import (
    Correspondence,
    clear_overrides,
    compute_correspondence,
    matched_targets,
    retarget,
)
from .selection import expand_selection, threshold_selection
from .similarity import SimilarityWeights, element_similarity
from .svgmodel.color import Color, format_color, normalize_color
from .svgmodel.model import DesignDocument, Element, ElementKind, StyleAttributes
from .svgmodel.parser import parse_svg
from .svgmodel.writer import serialize_svg
from .transfer import (
    COPIED,
    ORIGINAL,
    AttributeState,
    EditScript,
    TransferSession,
    apply,
    copy_all,
    copy_none,
    custom,
    group_attribute_values,
    set_state,
    transfer_source_style,
)
from .session_io import load_session, save_session

__all__ = [
    "AttributeState",
    "COPIED",
    "Color",
    "Correspondence",
    "DesignDocument",
    "DesignGraph",
    "EdgeKind",
    "EditScript",
    "Element",
    "ElementKind",
    "GraphConfig",
    "ORIGINAL",
    "SimilarityWeights",
    "StyleAttributes",
    "TransferSession",
    "apply",
    "build_graph",
    "clear_overrides",
    "compute_correspondence",
    "copy_all",
    "copy_none",
    "custom",
    "edge_predicates",
    "element_similarity",
    "expand_selection",
    "format_color",
    "group_attribute_values",
    "load_session",
    "matched_targets",
    "normalize_color",
    "parse_svg",
    "retarget",
    "save_session",
    "serialize_svg",
    "set_state",
    "threshold_selection",
    "transfer_source_style",
]
