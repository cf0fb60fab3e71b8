"""Shared fixtures: corpus paths, random document generators, result summary."""
from __future__ import annotations

import random
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"
SCENARIO = FIXTURES / "scenario"
GOLDEN = FIXTURES / "golden"

_PALETTE = [
    "#1A2B3C", "#DC143C", "#4682B4", "#FFD700", "#2E8B57",
    "#8A2BE2", "#FF7F50", "#00CED1", "#F5F5F5", "#333333",
]
_FONTS = ["Lato", "Georgia", "Helvetica", "Courier New"]


def corpus_files() -> list[Path]:
    return sorted(CORPUS.glob("*.svg"))


def random_svg(
    rng: random.Random,
    element_count: int,
    view: float = 200.0,
    distinct: bool = False,
) -> bytes:
    """A random flat document covering every element kind.

    With distinct=True every element gets a unique fill/size combination so
    no two elements are interchangeable under combined similarity.
    """
    body = []
    for i in range(element_count):
        if distinct:
            fill = f"#{(i * 37) % 256:02X}{(i * 89 + 40) % 256:02X}{(i * 151 + 90) % 256:02X}"
            w = 8.0 + 7.0 * i
            h = 6.0 + 5.0 * i
        else:
            fill = rng.choice(_PALETTE)
            w = rng.uniform(5, 60)
            h = rng.uniform(5, 60)
        x = rng.uniform(0, view - 60)
        y = rng.uniform(0, view - 60)
        kind = rng.randrange(5)
        if kind == 0:
            body.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{h:.2f}" fill="{fill}"/>'
            )
        elif kind == 1:
            body.append(
                f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{max(w, 1) / 2:.2f}" fill="{fill}"/>'
            )
        elif kind == 2:
            body.append(
                f'<ellipse cx="{x:.2f}" cy="{y:.2f}" rx="{max(w, 1) / 2:.2f}" '
                f'ry="{max(h, 1) / 2:.2f}" fill="{fill}"/>'
            )
        elif kind == 3:
            font = _FONTS[i % len(_FONTS)] if distinct else rng.choice(_FONTS)
            size = 8 + (i % 9) if distinct else rng.randrange(8, 25)
            body.append(
                f'<text x="{x:.2f}" y="{y:.2f}" font-family="{font}" '
                f'font-size="{size}" fill="{fill}">t{i}</text>'
            )
        else:
            body.append(
                f'<path d="M{x:.2f} {y:.2f} L{x + w:.2f} {y:.2f} '
                f'L{x + w / 2:.2f} {y + h:.2f} Z" fill="{fill}"/>'
            )
    content = "\n  ".join(body)
    return f'<svg viewBox="0 0 {view:g} {view:g}">\n  {content}\n</svg>'.encode()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    entries = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            if report.when == "call" or outcome == "error":
                name = nodeid.split("::")[-1]
                entries[name] = "PASS" if outcome == "passed" else "FAIL"
    if entries:
        terminalreporter.section("acceptance criteria")
        for name in sorted(entries):
            terminalreporter.write_line(f"[ACCEPTANCE] {name}: {entries[name]}")
