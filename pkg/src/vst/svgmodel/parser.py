"""SVG parsing into the flat element model.

Supported leaves: rect, circle, ellipse, line, polyline, polygon, path, text,
image. Group containers are dissolved; their transforms compose into each
leaf's single affine, and inheritable presentation attributes are resolved onto
leaves. Unsupported structural nodes (defs, gradients, filters, clip paths,
...) are kept verbatim for round-trip and flagged in the parse report.
"""
from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from xml.sax.saxutils import escape, quoteattr

from ..hashing import fnv1a64
from .color import UnknownColorError, parse_color
from .geometry import (
    Affine,
    BBox,
    ellipse_bounds,
    parse_path,
    parse_transform,
    points_bounds,
    path_bounds,
)
from .model import (
    CircleGeom,
    DesignDocument,
    Element,
    ElementKind,
    EllipseGeom,
    ImageGeom,
    LineGeom,
    ParseReport,
    PathGeom,
    PolyGeom,
    RectGeom,
    StyleAttributes,
    TextGeom,
)
from .numbers import parse_length

SVG_NS = "http://www.w3.org/2000/svg"
XLINK_NS = "http://www.w3.org/1999/xlink"
VST_NS = "urn:vst:style"


class MalformedXmlError(ValueError):
    pass


class UnsupportedRootError(ValueError):
    pass


class EmptyDocumentError(ValueError):
    def __init__(self, message: str, report: ParseReport | None = None) -> None:
        super().__init__(message)
        self.report = report or ParseReport()


_LEAF_TAGS = {
    "rect", "circle", "ellipse", "line", "polyline", "polygon", "path", "text", "image",
}
_CONTAINER_TAGS = {"g", "svg", "a"}
# Structural nodes preserved verbatim; they are never styled.
_PASSTHROUGH_TAGS = {
    "defs", "linearGradient", "radialGradient", "pattern", "filter", "clipPath",
    "mask", "marker", "symbol", "style", "use", "title", "desc", "metadata",
}

# Presentation attributes that inherit from group containers.
_INHERITED = (
    "fill", "stroke", "stroke-width", "font-family", "font-size",
    "font-style", "font-weight", "text-anchor", "fill-opacity", "stroke-opacity",
)

_TEXT_ANCHOR_TO_ALIGN = {"start": "left", "middle": "center", "end": "right"}

# Geometry and style attribute names consumed by the model, per tag.
_CONSUMED_COMMON = {
    "id", "transform", "style", "fill", "stroke", "stroke-width", "opacity",
    "fill-opacity", "stroke-opacity",
}
_CONSUMED_BY_TAG = {
    "rect": {"x", "y", "width", "height", "rx", "ry"},
    "circle": {"cx", "cy", "r"},
    "ellipse": {"cx", "cy", "rx", "ry"},
    "line": {"x1", "y1", "x2", "y2"},
    "polyline": {"points"},
    "polygon": {"points"},
    "path": {"d"},
    "text": {
        "x", "y", "font-family", "font-size", "font-style", "font-weight",
        "text-anchor", f"{{{VST_NS}}}padding", f"{{{VST_NS}}}text-background-color",
        f"{{{VST_NS}}}line-height", f"{{{VST_NS}}}text-align",
    },
    "image": {"x", "y", "width", "height", "href", f"{{{XLINK_NS}}}href"},
}

_WARN_ATTRS = {"filter": "filter-ignored", "clip-path": "clip-path-ignored", "mask": "mask-ignored"}


def _local(tag) -> str:
    if isinstance(tag, str) and tag.startswith("{"):
        return tag.rsplit("}", 1)[1]
    return tag if isinstance(tag, str) else ""


def _split_inline_css(style_text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for chunk in style_text.split(";"):
        if ":" not in chunk:
            continue
        key, value = chunk.split(":", 1)
        out[key.strip()] = value.strip()
    return out


def _own_props(node: ET.Element) -> dict[str, str]:
    """Presentation properties on one node; inline CSS wins over attributes."""
    props = {k: v for k, v in node.attrib.items() if not k.startswith("{")}
    css = _split_inline_css(node.get("style", ""))
    props.update(css)
    return props


def _parse_paint(value: str, locator: str, report: ParseReport):
    if value.startswith("url("):
        report.warn(locator, "paint-server-ignored")
        return None
    try:
        return parse_color(value)
    except UnknownColorError:
        report.warn(locator, "unparsed-color")
        return None


def _parse_font_weight(value: str):
    v = value.strip()
    if v in ("normal", "bold"):
        return v
    try:
        n = int(float(v))
    except ValueError:
        return None
    return n if 100 <= n <= 900 else None


class _DocumentBuilder:
    def __init__(self) -> None:
        self.report = ParseReport()
        self.elements: list[Element] = []
        self.passthrough_nodes: list[str] = []
        self.taken_ids: set[str] = set()

    # -- id assignment: reuse explicit ids, else e<index> in paint order

    def assign_id(self, explicit: str | None, locator: str) -> str:
        candidate = explicit
        if candidate is None:
            candidate = f"e{len(self.elements)}"
        if candidate in self.taken_ids:
            if explicit is not None:
                self.report.warn(locator, "duplicate-id")
            while candidate in self.taken_ids:
                candidate += "x"
        self.taken_ids.add(candidate)
        return candidate

    # -- tree walk

    @staticmethod
    def container_inherited(node: ET.Element, inherited: dict[str, str]) -> dict[str, str]:
        props = _own_props(node)
        child_inherited = dict(inherited)
        for name in _INHERITED:
            if name in props:
                child_inherited[name] = props[name]
        # group opacity composes multiplicatively onto leaves
        if "opacity" in props:
            prev = float(child_inherited.get("__group_opacity", "1"))
            child_inherited["__group_opacity"] = str(prev * float(props["opacity"]))
        return child_inherited

    def walk(self, node: ET.Element, transform: Affine, inherited: dict[str, str], path: str) -> None:
        for i, child in enumerate(node):
            tag = _local(child.tag)
            locator = f"{path}/{tag}[{i}]"
            if tag in _CONTAINER_TAGS:
                child_transform = transform.then(parse_transform(child.get("transform")))
                self.walk(child, child_transform, self.container_inherited(child, inherited), locator)
            elif tag in _LEAF_TAGS:
                self.leaf(child, tag, transform, inherited, locator)
            elif tag in _PASSTHROUGH_TAGS:
                self.passthrough_nodes.append(normalize_node(child))
                self.report.warn(locator, "unsupported-node-passthrough")
            else:
                self.passthrough_nodes.append(normalize_node(child))
                self.report.warn(locator, "unknown-node-passthrough")

    def leaf(self, node: ET.Element, tag: str, transform: Affine, inherited: dict[str, str], locator: str) -> None:
        own_transform = parse_transform(node.get("transform"))
        composed = transform.then(own_transform)
        props = dict(inherited)
        props.update(_own_props(node))

        try:
            geometry, kind = self._geometry(node, tag)
        except (ValueError, KeyError):
            self.report.warn(locator, "malformed-geometry-skipped")
            return

        style = self._style(node, tag, props, locator)
        if kind is ElementKind.TEXT:
            content = "".join(node.itertext())
            if len(node) > 0:
                self.report.warn(locator, "nested-text-flattened")
            style = style.__class__(**{**style.__dict__, "text": content})

        bbox = compute_bbox(geometry, style, composed)
        passthrough = self._passthrough(node, tag, locator)
        element_id = self.assign_id(node.get("id"), locator)
        self.elements.append(
            Element(
                id=element_id,
                kind=kind,
                geometry=geometry,
                transform=composed,
                bbox=bbox,
                style=style,
                passthrough=passthrough,
            )
        )

    def _geometry(self, node: ET.Element, tag: str):
        g = node.get
        if tag == "rect":
            return (
                RectGeom(
                    parse_length(g("x", "0")), parse_length(g("y", "0")),
                    parse_length(g("width", "0")), parse_length(g("height", "0")),
                    parse_length(g("rx", "0")), parse_length(g("ry", g("rx", "0"))),
                ),
                ElementKind.SHAPE,
            )
        if tag == "circle":
            return (
                CircleGeom(parse_length(g("cx", "0")), parse_length(g("cy", "0")), parse_length(g("r", "0"))),
                ElementKind.SHAPE,
            )
        if tag == "ellipse":
            return (
                EllipseGeom(
                    parse_length(g("cx", "0")), parse_length(g("cy", "0")),
                    parse_length(g("rx", "0")), parse_length(g("ry", "0")),
                ),
                ElementKind.SHAPE,
            )
        if tag == "line":
            return (
                LineGeom(
                    parse_length(g("x1", "0")), parse_length(g("y1", "0")),
                    parse_length(g("x2", "0")), parse_length(g("y2", "0")),
                ),
                ElementKind.SHAPE,
            )
        if tag in ("polyline", "polygon"):
            nums = [float(v) for v in re.findall(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?", g("points", ""))]
            pts = tuple((nums[k], nums[k + 1]) for k in range(0, len(nums) - 1, 2))
            if not pts:
                raise ValueError("empty points")
            return PolyGeom(pts, closed=(tag == "polygon")), ElementKind.SHAPE
        if tag == "path":
            commands = tuple(parse_path(g("d", "")))
            if not commands:
                raise ValueError("empty path")
            return PathGeom(commands), ElementKind.PATH
        if tag == "text":
            return TextGeom(parse_length(g("x", "0")), parse_length(g("y", "0"))), ElementKind.TEXT
        if tag == "image":
            href = g("href") or g(f"{{{XLINK_NS}}}href") or ""
            return (
                ImageGeom(
                    parse_length(g("x", "0")), parse_length(g("y", "0")),
                    parse_length(g("width", "0")), parse_length(g("height", "0")),
                    href,
                ),
                ElementKind.IMAGE,
            )
        raise KeyError(tag)

    def _style(self, node: ET.Element, tag: str, props: dict[str, str], locator: str) -> StyleAttributes:
        fill = parse_color("#000000")
        if "fill" in props:
            fill = _parse_paint(props["fill"], locator, self.report)
        stroke = None
        if "stroke" in props:
            stroke = _parse_paint(props["stroke"], locator, self.report)

        fill_opacity = float(props.get("fill-opacity", "1"))
        if fill is not None and fill_opacity < 1.0:
            fill = fill.__class__(fill.r, fill.g, fill.b, round(fill.a * fill_opacity, 6))
        stroke_opacity = float(props.get("stroke-opacity", "1"))
        if stroke is not None and stroke_opacity < 1.0:
            stroke = stroke.__class__(stroke.r, stroke.g, stroke.b, round(stroke.a * stroke_opacity, 6))

        opacity = float(props.get("opacity", "1")) * float(props.get("__group_opacity", "1"))
        opacity = max(0.0, min(1.0, opacity))
        stroke_width = parse_length(props.get("stroke-width", "1"))

        kwargs = dict(
            fill=fill, stroke=stroke, stroke_width=max(0.0, stroke_width), opacity=opacity,
        )
        if tag == "text":
            kwargs["font_size"] = max(parse_length(props.get("font-size", "16")), 1e-6)
            kwargs["font_family"] = props.get("font-family")
            fs = props.get("font-style")
            kwargs["font_style"] = fs if fs in ("normal", "italic", "oblique") else None
            fw = props.get("font-weight")
            kwargs["font_weight"] = _parse_font_weight(fw) if fw else None
            vst_align = node.get(f"{{{VST_NS}}}text-align")
            if vst_align in ("left", "center", "right", "justify"):
                kwargs["text_align"] = vst_align
            else:
                kwargs["text_align"] = _TEXT_ANCHOR_TO_ALIGN.get(props.get("text-anchor", ""))
            lh = node.get(f"{{{VST_NS}}}line-height")
            kwargs["line_height"] = float(lh) if lh else 1.2
            tbc = node.get(f"{{{VST_NS}}}text-background-color")
            if tbc:
                try:
                    kwargs["text_background_color"] = parse_color(tbc)
                except UnknownColorError:
                    self.report.warn(locator, "unparsed-color")
            pad = node.get(f"{{{VST_NS}}}padding")
            kwargs["padding"] = max(0.0, float(pad)) if pad else 0.0
        return StyleAttributes(**kwargs)

    def _passthrough(self, node: ET.Element, tag: str, locator: str) -> tuple[tuple[str, str], ...]:
        consumed = _CONSUMED_COMMON | _CONSUMED_BY_TAG.get(tag, set())
        extra: list[tuple[str, str]] = []
        for key, value in node.attrib.items():
            if key in consumed:
                continue
            local = _local(key)
            if key.startswith("{") and not key.startswith(f"{{{XLINK_NS}}}"):
                # foreign-namespace attributes are dropped with a warning;
                # re-emitting them would need prefix bookkeeping
                if not key.startswith(f"{{{VST_NS}}}"):
                    self.report.warn(locator, "foreign-attribute-dropped")
                continue
            if local in _WARN_ATTRS:
                self.report.warn(locator, _WARN_ATTRS[local])
            extra.append((local, value))
        # unmodeled inline-CSS declarations ride along in a style attribute
        leftover = {
            k: v for k, v in _split_inline_css(node.get("style", "")).items()
            if k not in consumed and k not in ("text-anchor",)
        }
        if leftover:
            css = ";".join(f"{k}:{leftover[k]}" for k in sorted(leftover))
            extra.append(("style", css))
        return tuple(sorted(extra))


def estimate_text_extent(content: str, font_size: float) -> tuple[float, float, float]:
    """(advance width, ascent, descent) heuristic for single-line text.

    Canvas-accurate metrics would need real font tables; 0.6em average advance
    and an 0.8/0.2 em ascent/descent split are a stated approximation.
    """
    width = 0.6 * font_size * len(content)
    return width, 0.8 * font_size, 0.2 * font_size


def compute_bbox(geometry, style: StyleAttributes, transform: Affine) -> BBox:
    if isinstance(geometry, RectGeom):
        pts = [
            (geometry.x, geometry.y),
            (geometry.x + geometry.width, geometry.y),
            (geometry.x, geometry.y + geometry.height),
            (geometry.x + geometry.width, geometry.y + geometry.height),
        ]
        return points_bounds(pts, transform)
    if isinstance(geometry, CircleGeom):
        return ellipse_bounds(geometry.cx, geometry.cy, geometry.r, geometry.r, transform)
    if isinstance(geometry, EllipseGeom):
        return ellipse_bounds(geometry.cx, geometry.cy, geometry.rx, geometry.ry, transform)
    if isinstance(geometry, LineGeom):
        return points_bounds([(geometry.x1, geometry.y1), (geometry.x2, geometry.y2)], transform)
    if isinstance(geometry, PolyGeom):
        return points_bounds(list(geometry.points), transform)
    if isinstance(geometry, PathGeom):
        return path_bounds(list(geometry.commands), transform)
    if isinstance(geometry, TextGeom):
        content = style.text or ""
        font_size = style.font_size or 16.0
        width, ascent, descent = estimate_text_extent(content, font_size)
        x = geometry.x
        if style.text_align == "center":
            x -= width / 2.0
        elif style.text_align == "right":
            x -= width
        pts = [
            (x, geometry.y - ascent),
            (x + width, geometry.y - ascent),
            (x, geometry.y + descent),
            (x + width, geometry.y + descent),
        ]
        return points_bounds(pts, transform)
    if isinstance(geometry, ImageGeom):
        pts = [
            (geometry.x, geometry.y),
            (geometry.x + geometry.width, geometry.y),
            (geometry.x, geometry.y + geometry.height),
            (geometry.x + geometry.width, geometry.y + geometry.height),
        ]
        return points_bounds(pts, transform)
    raise TypeError(f"unknown geometry {type(geometry).__name__}")


def normalize_node(node: ET.Element) -> str:
    """Canonical re-serialization of a preserved subtree.

    Attribute order is sorted, entities canonically escaped; running a parse
    and normalize again reproduces the same string.
    """
    tag = _local(node.tag)
    attrs = []
    for key in sorted(node.attrib, key=lambda k: (_local(k), k)):
        local = _local(key)
        name = f"xlink:{local}" if key.startswith(f"{{{XLINK_NS}}}") else local
        attrs.append(f" {name}={quoteattr(node.attrib[key])}")
    open_tag = f"<{tag}{''.join(attrs)}"
    children = "".join(normalize_node(child) for child in node)
    text = escape(node.text or "")
    if not children and not text:
        return open_tag + "/>"
    return f"{open_tag}>{text}{children}</{tag}>"


def _view_box(root: ET.Element, elements: list[Element]) -> BBox:
    vb = root.get("viewBox")
    if vb:
        nums = [float(v) for v in re.split(r"[\s,]+", vb.strip()) if v]
        if len(nums) == 4 and nums[2] >= 0 and nums[3] >= 0:
            return BBox(*nums)
    width, height = root.get("width"), root.get("height")
    if width and height:
        try:
            return BBox(0.0, 0.0, parse_length(width), parse_length(height))
        except ValueError:
            pass
    if elements:
        x0 = min(e.bbox.x for e in elements)
        y0 = min(e.bbox.y for e in elements)
        x1 = max(e.bbox.x2 for e in elements)
        y1 = max(e.bbox.y2 for e in elements)
        if x1 > x0 or y1 > y0:
            return BBox(x0, y0, x1 - x0, y1 - y0)
    return BBox(0.0, 0.0, 300.0, 150.0)


def parse_svg(data: bytes) -> DesignDocument:
    """Parse SVG bytes into a flat DesignDocument.

    Raises MalformedXmlError, UnsupportedRootError, or EmptyDocumentError.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXmlError(str(exc)) from exc
    if _local(root.tag) != "svg":
        raise UnsupportedRootError(f"root element is <{_local(root.tag)}>, expected <svg>")

    builder = _DocumentBuilder()
    root_inherited = _DocumentBuilder.container_inherited(root, {})
    builder.walk(root, parse_transform(root.get("transform")), root_inherited, "svg")
    if not builder.elements:
        raise EmptyDocumentError("no paintable leaf elements", builder.report)

    return DesignDocument(
        elements=tuple(builder.elements),
        view_box=_view_box(root, builder.elements),
        source_hash=fnv1a64(bytes(data)),
        passthrough_nodes=tuple(builder.passthrough_nodes),
        report=builder.report,
    )
