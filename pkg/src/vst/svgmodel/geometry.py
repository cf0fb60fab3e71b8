"""Affine transforms, path data, and axis-aligned bounds.

All geometry lives in the root coordinate system: group transforms are composed
into a single affine per leaf during parsing, and bounding boxes are the exact
bounds of the transformed outline (arcs are converted to cubic Beziers first,
so "exact" means exact for the modeled curve).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass


@dataclass(frozen=True)
class BBox:
    x: float
    y: float
    width: float
    height: float

    def __post_init__(self) -> None:
        if self.width < 0 or self.height < 0:
            raise ValueError("bbox width/height must be non-negative")

    @property
    def x2(self) -> float:
        return self.x + self.width

    @property
    def y2(self) -> float:
        return self.y + self.height

    @property
    def cx(self) -> float:
        return self.x + self.width / 2.0

    @property
    def cy(self) -> float:
        return self.y + self.height / 2.0

    @property
    def area(self) -> float:
        return self.width * self.height

    def contains(self, other: "BBox", margin: float = 0.0) -> bool:
        return (
            other.x >= self.x - margin
            and other.y >= self.y - margin
            and other.x2 <= self.x2 + margin
            and other.y2 <= self.y2 + margin
        )

    @staticmethod
    def from_points(points: list[tuple[float, float]]) -> "BBox":
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        return BBox(x0, y0, x1 - x0, y1 - y0)


@dataclass(frozen=True)
class Affine:
    """2D affine map with SVG matrix layout: x' = a*x + c*y + e, y' = b*x + d*y + f."""

    a: float = 1.0
    b: float = 0.0
    c: float = 0.0
    d: float = 1.0
    e: float = 0.0
    f: float = 0.0

    def apply(self, x: float, y: float) -> tuple[float, float]:
        return (self.a * x + self.c * y + self.e, self.b * x + self.d * y + self.f)

    def then(self, inner: "Affine") -> "Affine":
        """Compose so the returned map applies `inner` first, then self."""
        return Affine(
            a=self.a * inner.a + self.c * inner.b,
            b=self.b * inner.a + self.d * inner.b,
            c=self.a * inner.c + self.c * inner.d,
            d=self.b * inner.c + self.d * inner.d,
            e=self.a * inner.e + self.c * inner.f + self.e,
            f=self.b * inner.e + self.d * inner.f + self.f,
        )

    @property
    def is_identity(self) -> bool:
        return self == Affine()

    @property
    def is_translation(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1.0, 0.0, 0.0, 1.0)

    @staticmethod
    def identity() -> "Affine":
        return Affine()

    @staticmethod
    def translate(tx: float, ty: float = 0.0) -> "Affine":
        return Affine(e=tx, f=ty)

    @staticmethod
    def scale(sx: float, sy: float | None = None) -> "Affine":
        return Affine(a=sx, d=sx if sy is None else sy)

    @staticmethod
    def rotate(deg: float, cx: float = 0.0, cy: float = 0.0) -> "Affine":
        rad = math.radians(deg)
        ca, sa = math.cos(rad), math.sin(rad)
        rot = Affine(a=ca, b=sa, c=-sa, d=ca)
        if cx or cy:
            return Affine.translate(cx, cy).then(rot).then(Affine.translate(-cx, -cy))
        return rot


_TRANSFORM_RE = re.compile(r"(matrix|translate|scale|rotate|skewX|skewY)\s*\(([^)]*)\)")
_NUM_RE = re.compile(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")


def parse_transform(text: str | None) -> Affine:
    """Parse an SVG transform list into one composed affine.

    Functions apply left to right, matching SVG semantics.
    """
    result = Affine()
    if not text:
        return result
    for m in _TRANSFORM_RE.finditer(text):
        op = m.group(1)
        args = [float(v) for v in _NUM_RE.findall(m.group(2))]
        if op == "matrix" and len(args) == 6:
            step = Affine(*args)
        elif op == "translate" and len(args) in (1, 2):
            step = Affine.translate(args[0], args[1] if len(args) == 2 else 0.0)
        elif op == "scale" and len(args) in (1, 2):
            step = Affine.scale(args[0], args[1] if len(args) == 2 else None)
        elif op == "rotate" and len(args) in (1, 3):
            step = Affine.rotate(*args)
        elif op == "skewX" and len(args) == 1:
            step = Affine(c=math.tan(math.radians(args[0])))
        elif op == "skewY" and len(args) == 1:
            step = Affine(b=math.tan(math.radians(args[0])))
        else:
            raise ValueError(f"malformed transform function: {m.group(0)!r}")
        result = result.then(step)
    return result


def format_transform(t: Affine) -> str:
    from .numbers import fmt_number

    parts = " ".join(fmt_number(v) for v in (t.a, t.b, t.c, t.d, t.e, t.f))
    return f"matrix({parts})"


# ---------------------------------------------------------------------------
# Path data


@dataclass(frozen=True)
class PathCommand:
    """One absolute-form path command: op in M/L/C/Q/Z plus coordinates.

    Parsing reduces the full SVG command alphabet (relative forms, H/V,
    smooth S/T shortcuts, arcs) to this minimal set.
    """

    op: str
    args: tuple[float, ...]


def _arc_to_cubics(
    x1: float, y1: float, rx: float, ry: float, phi_deg: float,
    large_arc: bool, sweep: bool, x2: float, y2: float,
) -> list[tuple[float, ...]]:
    """Convert an elliptical-arc segment to cubic Bezier control points.

    Standard endpoint-to-center conversion, then one cubic per <= 90 degrees.
    Returns tuples (c1x, c1y, c2x, c2y, x, y).
    """
    if rx == 0 or ry == 0 or (x1 == x2 and y1 == y2):
        return [(x1, y1, x2, y2, x2, y2)] if (x1, y1) != (x2, y2) else []
    rx, ry = abs(rx), abs(ry)
    phi = math.radians(phi_deg % 360.0)
    cos_phi, sin_phi = math.cos(phi), math.sin(phi)

    dx2, dy2 = (x1 - x2) / 2.0, (y1 - y2) / 2.0
    x1p = cos_phi * dx2 + sin_phi * dy2
    y1p = -sin_phi * dx2 + cos_phi * dy2

    lam = (x1p / rx) ** 2 + (y1p / ry) ** 2
    if lam > 1:
        s = math.sqrt(lam)
        rx *= s
        ry *= s

    num = rx * rx * ry * ry - rx * rx * y1p * y1p - ry * ry * x1p * x1p
    den = rx * rx * y1p * y1p + ry * ry * x1p * x1p
    coef = math.sqrt(max(num / den, 0.0))
    if large_arc == sweep:
        coef = -coef
    cxp = coef * rx * y1p / ry
    cyp = -coef * ry * x1p / rx
    cx = cos_phi * cxp - sin_phi * cyp + (x1 + x2) / 2.0
    cy = sin_phi * cxp + cos_phi * cyp + (y1 + y2) / 2.0

    def angle(ux: float, uy: float, vx: float, vy: float) -> float:
        dot = ux * vx + uy * vy
        norm = math.hypot(ux, uy) * math.hypot(vx, vy)
        ang = math.acos(max(-1.0, min(1.0, dot / norm)))
        if ux * vy - uy * vx < 0:
            ang = -ang
        return ang

    theta1 = angle(1, 0, (x1p - cxp) / rx, (y1p - cyp) / ry)
    dtheta = angle((x1p - cxp) / rx, (y1p - cyp) / ry, (-x1p - cxp) / rx, (-y1p - cyp) / ry)
    if not sweep and dtheta > 0:
        dtheta -= 2 * math.pi
    elif sweep and dtheta < 0:
        dtheta += 2 * math.pi

    n_segs = max(1, math.ceil(abs(dtheta) / (math.pi / 2)))
    delta = dtheta / n_segs
    t = 4.0 / 3.0 * math.tan(delta / 4.0)

    def point(theta: float) -> tuple[float, float]:
        px = cx + rx * math.cos(theta) * cos_phi - ry * math.sin(theta) * sin_phi
        py = cy + rx * math.cos(theta) * sin_phi + ry * math.sin(theta) * cos_phi
        return px, py

    def derivative(theta: float) -> tuple[float, float]:
        dxv = -rx * math.sin(theta) * cos_phi - ry * math.cos(theta) * sin_phi
        dyv = -rx * math.sin(theta) * sin_phi + ry * math.cos(theta) * cos_phi
        return dxv, dyv

    cubics = []
    theta = theta1
    px, py = point(theta)
    for _ in range(n_segs):
        theta_next = theta + delta
        d1 = derivative(theta)
        d2 = derivative(theta_next)
        nx, ny = point(theta_next)
        cubics.append((px + t * d1[0], py + t * d1[1], nx - t * d2[0], ny - t * d2[1], nx, ny))
        theta, px, py = theta_next, nx, ny
    return cubics


def parse_path(d: str) -> list[PathCommand]:
    """Parse SVG path data into absolute M/L/C/Q/Z commands."""
    tokens = re.findall(r"[MmLlHhVvCcSsQqTtAaZz]|" + _NUM_RE.pattern, d)
    commands: list[PathCommand] = []
    cx = cy = 0.0  # current point
    sx = sy = 0.0  # subpath start
    prev_cubic_ctrl: tuple[float, float] | None = None
    prev_quad_ctrl: tuple[float, float] | None = None
    i = 0
    op = ""

    def take(n: int) -> list[float]:
        nonlocal i
        if i + n > len(tokens):
            raise ValueError(f"path data ends mid-command near {op!r}")
        vals = [float(t) for t in tokens[i : i + n]]
        i += n
        return vals

    while i < len(tokens):
        tok = tokens[i]
        if tok.isalpha():
            op = tok
            i += 1
            if op in "Zz":
                commands.append(PathCommand("Z", ()))
                cx, cy = sx, sy
                prev_cubic_ctrl = prev_quad_ctrl = None
                continue
        # implicit repetition keeps the previous op; M/m repeats as L/l
        rel = op.islower()
        u = op.upper()
        if u == "M":
            x, y = take(2)
            if rel:
                x, y = cx + x, cy + y
            commands.append(PathCommand("M", (x, y)))
            cx, cy, sx, sy = x, y, x, y
            op = "l" if rel else "L"
            prev_cubic_ctrl = prev_quad_ctrl = None
        elif u == "L":
            x, y = take(2)
            if rel:
                x, y = cx + x, cy + y
            commands.append(PathCommand("L", (x, y)))
            cx, cy = x, y
            prev_cubic_ctrl = prev_quad_ctrl = None
        elif u == "H":
            (x,) = take(1)
            if rel:
                x = cx + x
            commands.append(PathCommand("L", (x, cy)))
            cx = x
            prev_cubic_ctrl = prev_quad_ctrl = None
        elif u == "V":
            (y,) = take(1)
            if rel:
                y = cy + y
            commands.append(PathCommand("L", (cx, y)))
            cy = y
            prev_cubic_ctrl = prev_quad_ctrl = None
        elif u in ("C", "S"):
            if u == "C":
                x1, y1, x2, y2, x, y = take(6)
                if rel:
                    x1, y1, x2, y2, x, y = cx + x1, cy + y1, cx + x2, cy + y2, cx + x, cy + y
            else:
                x2, y2, x, y = take(4)
                if rel:
                    x2, y2, x, y = cx + x2, cy + y2, cx + x, cy + y
                if prev_cubic_ctrl is not None:
                    x1, y1 = 2 * cx - prev_cubic_ctrl[0], 2 * cy - prev_cubic_ctrl[1]
                else:
                    x1, y1 = cx, cy
            commands.append(PathCommand("C", (x1, y1, x2, y2, x, y)))
            prev_cubic_ctrl = (x2, y2)
            prev_quad_ctrl = None
            cx, cy = x, y
        elif u in ("Q", "T"):
            if u == "Q":
                x1, y1, x, y = take(4)
                if rel:
                    x1, y1, x, y = cx + x1, cy + y1, cx + x, cy + y
            else:
                x, y = take(2)
                if rel:
                    x, y = cx + x, cy + y
                if prev_quad_ctrl is not None:
                    x1, y1 = 2 * cx - prev_quad_ctrl[0], 2 * cy - prev_quad_ctrl[1]
                else:
                    x1, y1 = cx, cy
            commands.append(PathCommand("Q", (x1, y1, x, y)))
            prev_quad_ctrl = (x1, y1)
            prev_cubic_ctrl = None
            cx, cy = x, y
        elif u == "A":
            rx, ry, rot, laf, swf, x, y = take(7)
            if rel:
                x, y = cx + x, cy + y
            for c1x, c1y, c2x, c2y, ex, ey in _arc_to_cubics(
                cx, cy, rx, ry, rot, bool(laf), bool(swf), x, y
            ):
                commands.append(PathCommand("C", (c1x, c1y, c2x, c2y, ex, ey)))
            cx, cy = x, y
            prev_cubic_ctrl = prev_quad_ctrl = None
        else:
            raise ValueError(f"unexpected path token {tok!r}")
    return commands


def format_path(commands: list[PathCommand]) -> str:
    from .numbers import fmt_number

    parts = []
    for cmd in commands:
        if cmd.op == "Z":
            parts.append("Z")
        else:
            parts.append(cmd.op + " ".join(fmt_number(v) for v in cmd.args))
    return " ".join(parts)


def _cubic_axis_extrema(p0: float, p1: float, p2: float, p3: float) -> list[float]:
    """Interior parameter values where a cubic's axis coordinate is extremal."""
    # derivative: 3[(p1-p0) + 2t(p2-2p1+p0) + t^2(p3-3p2+3p1-p0)]
    a = p3 - 3 * p2 + 3 * p1 - p0
    b = 2 * (p2 - 2 * p1 + p0)
    c = p1 - p0
    roots = []
    if abs(a) < 1e-12:
        if abs(b) > 1e-12:
            roots.append(-c / b)
    else:
        disc = b * b - 4 * a * c
        if disc >= 0:
            sq = math.sqrt(disc)
            roots.append((-b + sq) / (2 * a))
            roots.append((-b - sq) / (2 * a))
    return [t for t in roots if 0.0 < t < 1.0]


def _cubic_point(t: float, p0, p1, p2, p3):
    mt = 1 - t
    x = mt**3 * p0[0] + 3 * mt**2 * t * p1[0] + 3 * mt * t**2 * p2[0] + t**3 * p3[0]
    y = mt**3 * p0[1] + 3 * mt**2 * t * p1[1] + 3 * mt * t**2 * p2[1] + t**3 * p3[1]
    return x, y


def path_bounds(commands: list[PathCommand], transform: Affine) -> BBox:
    """Exact bounds of transformed path geometry.

    Control points are transformed first (affine images of Beziers are the
    Beziers of the images), then per-segment extrema are solved analytically.
    """
    pts: list[tuple[float, float]] = []
    cur: tuple[float, float] | None = None
    for cmd in commands:
        if cmd.op == "Z":
            continue
        coords = [transform.apply(cmd.args[k], cmd.args[k + 1]) for k in range(0, len(cmd.args), 2)]
        if cmd.op == "M" or cmd.op == "L":
            pts.append(coords[0])
            cur = coords[0]
        elif cmd.op == "C":
            if cur is None:
                cur = coords[2]
            p0, p1, p2, p3 = cur, coords[0], coords[1], coords[2]
            pts.append(p0)
            pts.append(p3)
            for axis in (0, 1):
                for t in _cubic_axis_extrema(p0[axis], p1[axis], p2[axis], p3[axis]):
                    pts.append(_cubic_point(t, p0, p1, p2, p3))
            cur = p3
        elif cmd.op == "Q":
            if cur is None:
                cur = coords[1]
            p0, pq, p2 = cur, coords[0], coords[1]
            # elevate to cubic and reuse the cubic machinery
            c1 = (p0[0] + 2 / 3 * (pq[0] - p0[0]), p0[1] + 2 / 3 * (pq[1] - p0[1]))
            c2 = (p2[0] + 2 / 3 * (pq[0] - p2[0]), p2[1] + 2 / 3 * (pq[1] - p2[1]))
            pts.append(p0)
            pts.append(p2)
            for axis in (0, 1):
                for t in _cubic_axis_extrema(p0[axis], c1[axis], c2[axis], p2[axis]):
                    pts.append(_cubic_point(t, p0, c1, c2, p2))
            cur = p2
    if not pts:
        return BBox(0.0, 0.0, 0.0, 0.0)
    return BBox.from_points(pts)


def ellipse_bounds(cx: float, cy: float, rx: float, ry: float, transform: Affine) -> BBox:
    """Exact bounds of an affine-transformed ellipse."""
    tcx, tcy = transform.apply(cx, cy)
    half_w = math.hypot(transform.a * rx, transform.c * ry)
    half_h = math.hypot(transform.b * rx, transform.d * ry)
    return BBox(tcx - half_w, tcy - half_h, 2 * half_w, 2 * half_h)


def points_bounds(points: list[tuple[float, float]], transform: Affine) -> BBox:
    return BBox.from_points([transform.apply(x, y) for x, y in points])
