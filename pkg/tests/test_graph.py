"""Multigraph construction vs an independent brute-force predicate oracle."""
import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from conftest import CORPUS, random_svg
from vst.graph import EdgeKind, GraphConfig, build_graph, dump_edges, edge_predicates
from vst.svgmodel.parser import parse_svg


def oracle_pair_edges(a, b, align_eps, margin):
    """All edges between two elements, recomputed from raw fields.

    Written directly from the predicate definitions, sharing no code with the
    graph module. Returns (kind, idA, idB) with symmetric edges normalized to
    paint order (a before b) and containment directed container->contained.
    """
    out = []
    sa, sb = a.style, b.style

    if sa.fill is not None and sb.fill is not None:
        if (sa.fill.r, sa.fill.g, sa.fill.b, sa.fill.a) == (sb.fill.r, sb.fill.g, sb.fill.b, sb.fill.a):
            out.append(("SameFill", a.id, b.id))
    if sa.stroke is not None and sb.stroke is not None:
        if (sa.stroke.r, sa.stroke.g, sa.stroke.b, sa.stroke.a) == (
            sb.stroke.r, sb.stroke.g, sb.stroke.b, sb.stroke.a,
        ):
            out.append(("SameStroke", a.id, b.id))
    if a.kind.value == "text" and b.kind.value == "text":
        if sa.font_family is not None and sa.font_family == sb.font_family:
            out.append(("SameFontFamily", a.id, b.id))
        if sa.font_size is not None and sb.font_size is not None:
            if abs(sa.font_size - sb.font_size) <= 1e-6:
                out.append(("SameFontSize", a.id, b.id))
    if a.kind == b.kind and a.kind.value in ("shape", "path"):
        out.append(("SameShapeKind", a.id, b.id))

    ax0, ay0 = a.bbox.x, a.bbox.y
    ax1, ay1 = a.bbox.x + a.bbox.width, a.bbox.y + a.bbox.height
    bx0, by0 = b.bbox.x, b.bbox.y
    bx1, by1 = b.bbox.x + b.bbox.width, b.bbox.y + b.bbox.height
    if abs(ax0 - bx0) <= align_eps:
        out.append(("AlignLeft", a.id, b.id))
    if abs(ax1 - bx1) <= align_eps:
        out.append(("AlignRight", a.id, b.id))
    if abs(ay0 - by0) <= align_eps:
        out.append(("AlignTop", a.id, b.id))
    if abs(ay1 - by1) <= align_eps:
        out.append(("AlignBottom", a.id, b.id))
    if abs((ax0 + ax1) / 2 - (bx0 + bx1) / 2) <= align_eps:
        out.append(("AlignCenterX", a.id, b.id))
    if abs((ay0 + ay1) / 2 - (by0 + by1) / 2) <= align_eps:
        out.append(("AlignCenterY", a.id, b.id))

    area_a = a.bbox.width * a.bbox.height
    area_b = b.bbox.width * b.bbox.height
    if (
        area_a > area_b
        and bx0 >= ax0 - margin and by0 >= ay0 - margin
        and bx1 <= ax1 + margin and by1 <= ay1 + margin
    ):
        out.append(("Containment", a.id, b.id))
    if (
        area_b > area_a
        and ax0 >= bx0 - margin and ay0 >= by0 - margin
        and ax1 <= bx1 + margin and ay1 <= by1 + margin
    ):
        out.append(("Containment", b.id, a.id))
    return out


def oracle_edge_multiset(doc, align_eps=2.0, margin=0.5):
    edges = Counter()
    for i, a in enumerate(doc.elements):
        for b in doc.elements[i + 1 :]:
            for kind, ia, ib in oracle_pair_edges(a, b, align_eps, margin):
                edges[(kind, ia, ib)] += 1
    return edges


def built_edge_multiset(graph):
    return Counter((e.kind.value, e.a, e.b) for e in graph.edges)


def test_same_fill_pair():
    doc = parse_svg(
        b'<svg><rect x="0" y="0" width="5" height="50" fill="#112233"/>'
        b'<rect x="20" y="0" width="9" height="30" fill="#112233"/></svg>'
    )
    graph = build_graph(doc)
    fills = [e for e in graph.edges if e.kind is EdgeKind.SAME_FILL]
    assert len(fills) == 1
    assert (fills[0].a, fills[0].b) == ("e0", "e1")


def test_containment_directed():
    doc = parse_svg(
        b'<svg><rect id="A" x="0" y="0" width="10" height="10"/>'
        b'<rect id="B" x="2" y="2" width="3" height="3"/></svg>'
    )
    graph = build_graph(doc)
    contain = [e for e in graph.edges if e.kind is EdgeKind.CONTAINMENT]
    assert len(contain) == 1
    assert (contain[0].a, contain[0].b) == ("A", "B")


def test_identical_x_extent_alignment():
    doc = parse_svg(
        b'<svg><rect x="0" y="0" width="5" height="5"/>'
        b'<rect x="0" y="7" width="5" height="5"/></svg>'
    )
    a, b = doc.elements
    kinds = edge_predicates(a, b, GraphConfig())
    assert {EdgeKind.ALIGN_LEFT, EdgeKind.ALIGN_RIGHT, EdgeKind.ALIGN_CENTER_X,
            EdgeKind.SAME_SHAPE_KIND} <= kinds
    assert EdgeKind.ALIGN_TOP not in kinds


def test_font_edges():
    doc = parse_svg(
        b'<svg><text x="0" y="0" font-family="Lato" font-size="12">a</text>'
        b'<text x="50" y="0" font-family="Lato" font-size="14">b</text></svg>'
    )
    a, b = doc.elements
    kinds = edge_predicates(a, b, GraphConfig())
    assert EdgeKind.SAME_FONT_FAMILY in kinds
    assert EdgeKind.SAME_FONT_SIZE not in kinds


def test_dashboard_fixture_matches_oracle():
    doc = parse_svg((CORPUS / "17-dashboard.svg").read_bytes())
    assert len(doc.elements) >= 25
    graph = build_graph(doc)
    assert built_edge_multiset(graph) == oracle_edge_multiset(doc)


@pytest.mark.parametrize("seed", range(8))
def test_random_documents_match_oracle(seed):
    rng = random.Random(2000 + seed)
    doc = parse_svg(random_svg(rng, rng.randrange(5, 25)))
    graph = build_graph(doc)
    assert built_edge_multiset(graph) == oracle_edge_multiset(doc)


def test_randomized_pairs_agree_with_oracle_predicates():
    """10,000 random pairs: edge_predicates equals the oracle's pair edges."""
    rng = random.Random(77)
    cfg = GraphConfig()
    checked = 0
    while checked < 10000:
        doc = parse_svg(random_svg(rng, 12))
        for i, a in enumerate(doc.elements):
            for b in doc.elements[i + 1 :]:
                got = set()
                for kind in edge_predicates(a, b, cfg):
                    if kind is EdgeKind.CONTAINMENT:
                        got.add((kind.value, a.id, b.id))
                    else:
                        got.add((kind.value, a.id, b.id))
                for kind in edge_predicates(b, a, cfg):
                    if kind is EdgeKind.CONTAINMENT:
                        got.add((kind.value, b.id, a.id))
                    else:
                        got.add((kind.value, a.id, b.id))
                expected = set(oracle_pair_edges(a, b, cfg.align_epsilon, cfg.contain_margin))
                assert got == expected, (a.id, b.id)
                checked += 1


def test_symmetry_of_symmetric_kinds():
    rng = random.Random(5)
    doc = parse_svg(random_svg(rng, 15))
    cfg = GraphConfig()
    for i, a in enumerate(doc.elements):
        for b in doc.elements[i + 1 :]:
            ab = {k for k in edge_predicates(a, b, cfg) if k is not EdgeKind.CONTAINMENT}
            ba = {k for k in edge_predicates(b, a, cfg) if k is not EdgeKind.CONTAINMENT}
            assert ab == ba


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 5), st.floats(0, 10))
def test_alignment_monotone_in_epsilon(eps_small, extra):
    doc = parse_svg(random_svg(random.Random(11), 10))
    small = build_graph(doc, GraphConfig(align_epsilon=eps_small))
    large = build_graph(doc, GraphConfig(align_epsilon=eps_small + extra))
    align_kinds = {
        EdgeKind.ALIGN_LEFT, EdgeKind.ALIGN_RIGHT, EdgeKind.ALIGN_TOP,
        EdgeKind.ALIGN_BOTTOM, EdgeKind.ALIGN_CENTER_X, EdgeKind.ALIGN_CENTER_Y,
    }
    small_edges = {(e.kind, e.a, e.b) for e in small.edges if e.kind in align_kinds}
    large_edges = {(e.kind, e.a, e.b) for e in large.edges if e.kind in align_kinds}
    assert small_edges <= large_edges


def test_determinism():
    doc = parse_svg(random_svg(random.Random(13), 20))
    g1 = build_graph(doc)
    g2 = build_graph(doc)
    assert g1.edges == g2.edges
    assert dump_edges(g1) == dump_edges(g2)


def test_disabled_kinds_respected():
    doc = parse_svg(random_svg(random.Random(17), 15))
    cfg = GraphConfig(enabled_kinds=frozenset({EdgeKind.SAME_FILL}))
    graph = build_graph(doc, cfg)
    assert all(e.kind is EdgeKind.SAME_FILL for e in graph.edges)


def test_no_self_edges():
    doc = parse_svg(random_svg(random.Random(19), 20))
    assert all(e.a != e.b for e in build_graph(doc).edges)


def test_dump_format():
    doc = parse_svg(
        b'<svg><rect id="p" x="0" y="0" width="9" height="9" fill="#112233"/>'
        b'<rect id="q" x="1" y="1" width="2" height="2" fill="#112233"/></svg>'
    )
    lines = dump_edges(build_graph(doc)).splitlines()
    assert lines == sorted(lines)
    assert "SameFill\tp\tq" in lines
    assert "Containment\tp\tq" in lines
