"""Canonical SVG serialization.

Output is byte-deterministic: fixed attribute order, numbers trimmed to at
most six decimals, defaults elided. Serializing a parsed document and parsing
it again reproduces the same ids, kinds, styles, and bounding boxes.
"""
from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .color import format_color
from .geometry import format_path, format_transform
from .model import (
    CircleGeom,
    DesignDocument,
    Element,
    EllipseGeom,
    ImageGeom,
    LineGeom,
    PathGeom,
    PolyGeom,
    RectGeom,
    StyleAttributes,
    TextGeom,
)
from .numbers import fmt_number
from .parser import SVG_NS, VST_NS, XLINK_NS

_DEFAULT_STYLE = StyleAttributes()


def _num(value: float) -> str:
    return fmt_number(value)


def _geometry_attrs(element: Element) -> tuple[str, list[tuple[str, str]]]:
    g = element.geometry
    if isinstance(g, RectGeom):
        attrs = [("x", _num(g.x)), ("y", _num(g.y)), ("width", _num(g.width)), ("height", _num(g.height))]
        if g.rx:
            attrs.append(("rx", _num(g.rx)))
        if g.ry and g.ry != g.rx:
            attrs.append(("ry", _num(g.ry)))
        return "rect", attrs
    if isinstance(g, CircleGeom):
        return "circle", [("cx", _num(g.cx)), ("cy", _num(g.cy)), ("r", _num(g.r))]
    if isinstance(g, EllipseGeom):
        return "ellipse", [("cx", _num(g.cx)), ("cy", _num(g.cy)), ("rx", _num(g.rx)), ("ry", _num(g.ry))]
    if isinstance(g, LineGeom):
        return "line", [("x1", _num(g.x1)), ("y1", _num(g.y1)), ("x2", _num(g.x2)), ("y2", _num(g.y2))]
    if isinstance(g, PolyGeom):
        points = " ".join(f"{_num(x)},{_num(y)}" for x, y in g.points)
        return ("polygon" if g.closed else "polyline"), [("points", points)]
    if isinstance(g, PathGeom):
        return "path", [("d", format_path(list(g.commands)))]
    if isinstance(g, TextGeom):
        return "text", [("x", _num(g.x)), ("y", _num(g.y))]
    if isinstance(g, ImageGeom):
        attrs = [("x", _num(g.x)), ("y", _num(g.y)), ("width", _num(g.width)), ("height", _num(g.height))]
        if g.href:
            attrs.append(("href", g.href))
        return "image", attrs
    raise TypeError(f"unknown geometry {type(g).__name__}")


_ALIGN_TO_ANCHOR = {"left": "start", "center": "middle", "right": "end"}


def _style_attrs(element: Element) -> list[tuple[str, str]]:
    s = element.style
    attrs: list[tuple[str, str]] = []
    if s.fill != _DEFAULT_STYLE.fill:
        attrs.append(("fill", format_color(s.fill)))
    if s.stroke is not None:
        attrs.append(("stroke", format_color(s.stroke)))
    if s.stroke_width != 1.0:
        attrs.append(("stroke-width", _num(s.stroke_width)))
    if s.opacity != 1.0:
        attrs.append(("opacity", _num(s.opacity)))
    if isinstance(element.geometry, TextGeom):
        if s.font_family is not None:
            attrs.append(("font-family", s.font_family))
        if s.font_size is not None and s.font_size != 16.0:
            attrs.append(("font-size", _num(s.font_size)))
        if s.font_style is not None and s.font_style != "normal":
            attrs.append(("font-style", s.font_style))
        if s.font_weight is not None and s.font_weight != "normal":
            attrs.append(("font-weight", str(s.font_weight)))
        if s.text_align is not None:
            if s.text_align == "justify":
                attrs.append(("vst:text-align", "justify"))
            else:
                attrs.append(("text-anchor", _ALIGN_TO_ANCHOR[s.text_align]))
        if s.line_height is not None and s.line_height != 1.2:
            attrs.append(("vst:line-height", _num(s.line_height)))
        if s.text_background_color is not None:
            attrs.append(("vst:text-background-color", format_color(s.text_background_color)))
        if s.padding:
            attrs.append(("vst:padding", _num(s.padding)))
    return attrs


def serialize_element(element: Element) -> str:
    tag, attrs = _geometry_attrs(element)
    parts = [("id", element.id)] + attrs
    if not element.transform.is_identity:
        parts.append(("transform", format_transform(element.transform)))
    parts.extend(_style_attrs(element))
    parts.extend(element.passthrough)
    body = "".join(f" {name}={quoteattr(value)}" for name, value in parts)
    if tag == "text":
        return f"<{tag}{body}>{escape(element.style.text or '')}</{tag}>"
    return f"<{tag}{body}/>"


def serialize_svg(document: DesignDocument) -> bytes:
    vb = document.view_box
    view_box = f"{_num(vb.x)} {_num(vb.y)} {_num(vb.width)} {_num(vb.height)}"
    needs_vst = any("vst:" in serialize_element(e) for e in document.elements)
    ns = [f'xmlns="{SVG_NS}"', f'xmlns:xlink="{XLINK_NS}"']
    if needs_vst:
        ns.append(f'xmlns:vst="{VST_NS}"')
    lines = [f'<svg {" ".join(ns)} viewBox="{view_box}">']
    for node in document.passthrough_nodes:
        lines.append(f"  {node}")
    for element in document.elements:
        lines.append(f"  {serialize_element(element)}")
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
