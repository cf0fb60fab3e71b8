"""Flat element model for one vector design.

A document is an ordered list of primitive elements (paint order), each with a
root-space bounding box, a style record limited to the transferable attribute
set, and enough geometry to serialize back to SVG.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Union

from .color import Color
from .geometry import Affine, BBox, PathCommand


class ElementKind(str, Enum):
    SHAPE = "shape"
    PATH = "path"
    TEXT = "text"
    IMAGE = "image"


# --- geometry variants (local coordinates; element.transform maps to root space)


@dataclass(frozen=True)
class RectGeom:
    x: float
    y: float
    width: float
    height: float
    rx: float = 0.0
    ry: float = 0.0


@dataclass(frozen=True)
class CircleGeom:
    cx: float
    cy: float
    r: float


@dataclass(frozen=True)
class EllipseGeom:
    cx: float
    cy: float
    rx: float
    ry: float


@dataclass(frozen=True)
class LineGeom:
    x1: float
    y1: float
    x2: float
    y2: float


@dataclass(frozen=True)
class PolyGeom:
    points: tuple[tuple[float, float], ...]
    closed: bool


@dataclass(frozen=True)
class PathGeom:
    commands: tuple[PathCommand, ...]


@dataclass(frozen=True)
class TextGeom:
    x: float
    y: float


@dataclass(frozen=True)
class ImageGeom:
    x: float
    y: float
    width: float
    height: float
    href: str


Geometry = Union[RectGeom, CircleGeom, EllipseGeom, LineGeom, PolyGeom, PathGeom, TextGeom, ImageGeom]


# --- style attributes

# Canonical attribute names, in canonical order.
COLOR_ATTRIBUTES = ("fill", "stroke", "strokeWidth", "textBackgroundColor")
TEXT_ATTRIBUTES = ("lineHeight", "textAlign", "text")
FONT_ATTRIBUTES = ("fontSize", "fontFamily", "fontStyle", "fontWeight")
GENERAL_ATTRIBUTES = ("opacity", "padding")
ALL_ATTRIBUTES = COLOR_ATTRIBUTES + TEXT_ATTRIBUTES + FONT_ATTRIBUTES + GENERAL_ATTRIBUTES

# Attributes that only exist on text elements.
TEXT_ONLY_ATTRIBUTES = frozenset(
    {"textBackgroundColor", "lineHeight", "textAlign", "text",
     "fontSize", "fontFamily", "fontStyle", "fontWeight", "padding"}
)

FONT_STYLES = ("normal", "italic", "oblique")
TEXT_ALIGNS = ("left", "center", "right", "justify")

DEFAULT_FONT_SIZE = 16.0
DEFAULT_LINE_HEIGHT = 1.2


@dataclass(frozen=True)
class StyleAttributes:
    """The transferable style attribute set.

    Color fields use None for the "none" paint. Text-only fields are None on
    non-text elements (absent); on text elements, fontFamily/fontStyle/
    fontWeight/textAlign may also be None meaning unspecified.
    """

    fill: Color | None = Color(0, 0, 0)
    stroke: Color | None = None
    stroke_width: float = 1.0
    opacity: float = 1.0
    text: str | None = None
    font_size: float | None = None
    font_family: str | None = None
    font_style: str | None = None
    font_weight: str | int | None = None
    text_align: str | None = None
    line_height: float | None = None
    text_background_color: Color | None = None
    padding: float | None = None


_ATTR_FIELDS = {
    "fill": "fill",
    "stroke": "stroke",
    "strokeWidth": "stroke_width",
    "textBackgroundColor": "text_background_color",
    "lineHeight": "line_height",
    "textAlign": "text_align",
    "text": "text",
    "fontSize": "font_size",
    "fontFamily": "font_family",
    "fontStyle": "font_style",
    "fontWeight": "font_weight",
    "opacity": "opacity",
    "padding": "padding",
}


def applicable_attributes(kind: ElementKind) -> tuple[str, ...]:
    """Attribute names that exist on elements of the given kind."""
    if kind is ElementKind.TEXT:
        return ALL_ATTRIBUTES
    return tuple(a for a in ALL_ATTRIBUTES if a not in TEXT_ONLY_ATTRIBUTES)


def get_attribute(style: StyleAttributes, name: str):
    return getattr(style, _ATTR_FIELDS[name])


def set_attribute(style: StyleAttributes, name: str, value) -> StyleAttributes:
    return replace(style, **{_ATTR_FIELDS[name]: value})


class InvalidAttributeValueError(ValueError):
    pass


def check_attribute_value(name: str, value) -> None:
    """Type-check a value against an attribute's declared type."""
    if name in ("fill", "stroke", "textBackgroundColor"):
        if value is not None and not isinstance(value, Color):
            raise InvalidAttributeValueError(f"{name} expects a Color or none")
    elif name in ("strokeWidth", "padding"):
        if not isinstance(value, (int, float)) or value < 0:
            raise InvalidAttributeValueError(f"{name} expects a number >= 0")
    elif name == "opacity":
        if not isinstance(value, (int, float)) or not 0.0 <= value <= 1.0:
            raise InvalidAttributeValueError("opacity expects a number in 0-1")
    elif name in ("fontSize", "lineHeight"):
        if not isinstance(value, (int, float)) or value <= 0:
            raise InvalidAttributeValueError(f"{name} expects a number > 0")
    elif name == "fontStyle":
        if value is not None and value not in FONT_STYLES:
            raise InvalidAttributeValueError(f"fontStyle expects one of {FONT_STYLES}")
    elif name == "textAlign":
        if value is not None and value not in TEXT_ALIGNS:
            raise InvalidAttributeValueError(f"textAlign expects one of {TEXT_ALIGNS}")
    elif name == "fontWeight":
        ok = value is None or value in ("normal", "bold") or (
            isinstance(value, int) and 100 <= value <= 900
        )
        if not ok:
            raise InvalidAttributeValueError("fontWeight expects normal/bold or 100-900")
    elif name in ("text", "fontFamily"):
        if value is not None and not isinstance(value, str):
            raise InvalidAttributeValueError(f"{name} expects a string")
    else:
        raise InvalidAttributeValueError(f"unknown attribute {name!r}")


# --- elements and documents


@dataclass(frozen=True)
class Element:
    id: str
    kind: ElementKind
    geometry: Geometry
    transform: Affine
    bbox: BBox
    style: StyleAttributes
    passthrough: tuple[tuple[str, str], ...] = ()

    @property
    def shape_signature(self) -> str:
        """Opaque geometry descriptor: path op sequence, or primitive + aspect."""
        if isinstance(self.geometry, PathGeom):
            return "path:" + "".join(c.op for c in self.geometry.commands)
        name = type(self.geometry).__name__.removesuffix("Geom").lower()
        if self.bbox.height > 0:
            aspect = self.bbox.width / self.bbox.height
        else:
            aspect = 0.0 if self.bbox.width == 0 else float("inf")
        return f"{name}:{aspect:.4f}"

    @property
    def aspect_ratio(self) -> float:
        if self.bbox.height > 0:
            return self.bbox.width / self.bbox.height
        return 0.0 if self.bbox.width == 0 else float("inf")


@dataclass(frozen=True)
class ParseWarning:
    locator: str
    code: str


@dataclass
class ParseReport:
    warnings: list[ParseWarning] = field(default_factory=list)

    def warn(self, locator: str, code: str) -> None:
        self.warnings.append(ParseWarning(locator, code))


@dataclass(frozen=True)
class DesignDocument:
    elements: tuple[Element, ...]
    view_box: BBox
    source_hash: int
    passthrough_nodes: tuple[str, ...] = ()
    report: ParseReport = field(default_factory=ParseReport, compare=False)

    def __post_init__(self) -> None:
        ids = [e.id for e in self.elements]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate element ids in document")

    def element(self, element_id: str) -> Element:
        e = self.index().get(element_id)
        if e is None:
            raise KeyError(element_id)
        return e

    def index(self) -> dict[str, Element]:
        cached = getattr(self, "_index", None)
        if cached is None:
            cached = {e.id: e for e in self.elements}
            object.__setattr__(self, "_index", cached)
        return cached

    @property
    def ids(self) -> list[str]:
        return [e.id for e in self.elements]

    @property
    def hash_hex(self) -> str:
        return f"{self.source_hash:016x}"
