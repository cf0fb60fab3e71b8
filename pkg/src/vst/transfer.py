"""Edit script state and its resolution into the Output document.

Each (target element, attribute) pair carries one of three states: Copied
(read the value from the matched source element), Original (keep the target's
own value), or Custom (a user-supplied value). Resolution walks the target in
paint order and rewrites styles only; geometry, ids, and order are never
touched.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .graph import GraphConfig
from .matching import Correspondence, UnknownElementIdError, retarget
from .similarity import SimilarityWeights
from .svgmodel.model import (
    ALL_ATTRIBUTES,
    DesignDocument,
    Element,
    ElementKind,
    InvalidAttributeValueError,
    ParseReport,
    applicable_attributes,
    check_attribute_value,
    get_attribute,
    set_attribute,
)

# Attributes where None means "not specified" rather than a real value.
_ABSENT_WHEN_NONE = frozenset(
    {"text", "fontFamily", "fontStyle", "fontWeight", "textAlign"}
)


class InapplicableAttributeError(ValueError):
    pass


@dataclass(frozen=True)
class AttributeState:
    """Copied, Original, or Custom(value)."""

    kind: str
    value: object = None

    def __post_init__(self) -> None:
        if self.kind not in ("copied", "original", "custom"):
            raise ValueError(f"unknown state kind {self.kind!r}")
        if self.kind != "custom" and self.value is not None:
            raise ValueError(f"{self.kind} state carries no value")


COPIED = AttributeState("copied")
ORIGINAL = AttributeState("original")


def custom(value) -> AttributeState:
    return AttributeState("custom", value)


@dataclass(frozen=True)
class EditScript:
    """Sparse map (targetElementId, attributeName) -> AttributeState.

    Absent keys mean Original; Original entries are stored explicitly only
    when a user resets a previously copied attribute, which keeps the script
    an honest record of deliberate choices.
    """

    states: dict[tuple[str, str], AttributeState] = field(default_factory=dict)

    def state(self, element_id: str, attribute: str) -> AttributeState:
        return self.states.get((element_id, attribute), ORIGINAL)

    def is_modified(self, element_id: str, attribute: str) -> bool:
        return self.state(element_id, attribute).kind != "original"

    def with_state(
        self, keys: list[tuple[str, str]], state: AttributeState
    ) -> "EditScript":
        updated = dict(self.states)
        for key in keys:
            updated[key] = state
        return EditScript(updated)


@dataclass(frozen=True)
class TransferSession:
    source: DesignDocument
    target: DesignDocument
    correspondence: Correspondence
    script: EditScript = field(default_factory=EditScript)
    weights: SimilarityWeights = field(default_factory=SimilarityWeights)
    graph_config: GraphConfig = field(default_factory=GraphConfig)
    source_path: str = ""
    target_path: str = ""

    def __post_init__(self) -> None:
        c = self.correspondence
        if c.source_hash != self.source.hash_hex or c.target_hash != self.target.hash_hex:
            raise ValueError("correspondence does not reference these documents")


def source_has_value(source: Element, attribute: str) -> bool:
    """Whether the attribute carries a real value on the source element."""
    if attribute not in applicable_attributes(source.kind):
        return False
    if attribute in _ABSENT_WHEN_NONE:
        return get_attribute(source.style, attribute) is not None
    return True


def copy_all(session: TransferSession) -> TransferSession:
    """Set every applicable, source-present attribute to Copied.

    Text content is deliberately left Original: restyling keeps the target's
    words. The whole script is rebuilt, discarding prior states.
    """
    effective = session.correspondence.effective_match()
    index = session.source.index()
    states: dict[tuple[str, str], AttributeState] = {}
    for element in session.target.elements:
        source = index[effective[element.id]]
        for attribute in applicable_attributes(element.kind):
            if attribute == "text":
                continue
            if source_has_value(source, attribute):
                states[(element.id, attribute)] = COPIED
    return replace(session, script=EditScript(states))


def copy_none(session: TransferSession) -> TransferSession:
    """Clear the script; resolution then yields the unmodified target."""
    return replace(session, script=EditScript())


def set_state(
    session: TransferSession,
    targets: set[str],
    attribute: str,
    state: AttributeState,
) -> TransferSession:
    if attribute not in ALL_ATTRIBUTES:
        raise InapplicableAttributeError(f"unknown attribute {attribute!r}")
    index = session.target.index()
    for element_id in sorted(targets):
        element = index.get(element_id)
        if element is None:
            raise UnknownElementIdError(element_id)
        if attribute not in applicable_attributes(element.kind):
            raise InapplicableAttributeError(
                f"{attribute} does not apply to {element.kind.value} element {element_id}"
            )
    if state.kind == "custom":
        try:
            check_attribute_value(attribute, state.value)
        except InvalidAttributeValueError:
            raise
    keys = [(t, attribute) for t in session.target.ids if t in targets]
    return replace(session, script=session.script.with_state(keys, state))


def apply(session: TransferSession) -> DesignDocument:
    """Resolve the script against the effective match into the Output document."""
    effective = session.correspondence.effective_match()
    source_index = session.source.index()
    report = ParseReport()
    elements: list[Element] = []
    for element in session.target.elements:
        style = element.style
        source = source_index[effective[element.id]]
        for attribute in applicable_attributes(element.kind):
            state = session.script.state(element.id, attribute)
            if state.kind == "original":
                continue
            if state.kind == "custom":
                style = set_attribute(style, attribute, state.value)
                continue
            if source_has_value(source, attribute):
                style = set_attribute(style, attribute, get_attribute(source.style, attribute))
            else:
                report.warn(element.id, "copied-attribute-missing-on-source")
        elements.append(replace(element, style=style))
    return DesignDocument(
        elements=tuple(elements),
        view_box=session.target.view_box,
        source_hash=session.target.source_hash,
        passthrough_nodes=session.target.passthrough_nodes,
        report=report,
    )


def transfer_source_style(
    session: TransferSession, targets: set[str], source: str
) -> TransferSession:
    """Retarget the elements to one source and mark their styles Copied."""
    correspondence = retarget(session.correspondence, targets, source)
    session = replace(session, correspondence=correspondence)
    source_element = session.source.element(source)
    states = dict(session.script.states)
    for element in session.target.elements:
        if element.id not in targets:
            continue
        for attribute in applicable_attributes(element.kind):
            if attribute == "text":
                continue
            if source_has_value(source_element, attribute):
                states[(element.id, attribute)] = COPIED
    return replace(session, script=EditScript(states))


def format_attribute_value(attribute: str, value) -> str:
    """Canonical display string for grouping and structured output."""
    from .svgmodel.color import format_color
    from .svgmodel.numbers import fmt_number

    if attribute in ("fill", "stroke", "textBackgroundColor"):
        return format_color(value)
    if value is None:
        return "unset"
    if attribute in ("strokeWidth", "opacity", "fontSize", "lineHeight", "padding"):
        return fmt_number(float(value))
    return str(value)


@dataclass(frozen=True)
class AttributeGroup:
    attribute: str
    value: str
    element_ids: tuple[str, ...]
    state_summary: str


def group_attribute_values(
    session: TransferSession,
    scope: set[str] | None = None,
    modified_only: bool = False,
) -> list[AttributeGroup]:
    """Bucket resolved output values by (attribute, value) over the scope."""
    output = apply(session)
    index = session.target.index()
    if scope is None:
        ids = list(session.target.ids)
    else:
        unknown = scope - index.keys()
        if unknown:
            raise UnknownElementIdError(sorted(unknown)[0])
        ids = [i for i in session.target.ids if i in scope]

    buckets: dict[tuple[str, str], list[str]] = {}
    for element_id in ids:
        element = output.element(element_id)
        for attribute in applicable_attributes(element.kind):
            value = format_attribute_value(attribute, get_attribute(element.style, attribute))
            buckets.setdefault((attribute, value), []).append(element_id)

    groups: list[AttributeGroup] = []
    for (attribute, value), members in sorted(buckets.items()):
        kinds = {session.script.state(m, attribute).kind for m in members}
        if modified_only and kinds == {"original"}:
            continue
        summary = kinds.pop() if len(kinds) == 1 else "mixed"
        groups.append(AttributeGroup(attribute, value, tuple(members), summary))
    return groups
