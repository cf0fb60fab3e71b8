"""Deterministic numeric formatting for canonical SVG output.

Numbers are printed with at most six decimal places and no exponent, so
identical values always produce identical bytes and a parse of the output
re-reads the same value to within 5e-7.
"""
from __future__ import annotations


def fmt_number(value: float) -> str:
    """Render a float with <= 6 decimal places, trailing zeros stripped."""
    if value != value:  # NaN guard; never expected in documents
        raise ValueError("cannot format NaN")
    text = f"{value:.6f}"
    text = text.rstrip("0").rstrip(".")
    if text in ("", "-0"):
        return "0"
    return text


# CSS absolute units to user units (1 user unit == 1px).
_UNIT_FACTORS = {
    "px": 1.0,
    "pt": 96.0 / 72.0,
    "pc": 16.0,
    "mm": 96.0 / 25.4,
    "cm": 96.0 / 2.54,
    "in": 96.0,
    # Relative units are taken at face value; resolving them needs a context
    # (font size, viewport) this flat model does not carry.
    "em": 1.0,
    "ex": 1.0,
    "%": 1.0,
}


def parse_length(text: str) -> float:
    """Read an SVG length, converting absolute unit suffixes to user units."""
    m = text.strip()
    for suffix, factor in _UNIT_FACTORS.items():
        if m.endswith(suffix):
            return float(m[: -len(suffix)]) * factor
    return float(m)
