"""Acceptance gate: one test per shipping criterion.

Each test here is a criterion for the package as a whole; the terminal summary
prints one PASS/FAIL line per test. Module-level suites cover the same ground
in finer grain for debugging.
"""
import json
import random
import subprocess
import sys
import time

import pytest

from conftest import CORPUS, GOLDEN, SCENARIO, corpus_files, random_svg
from vst.graph import build_graph
from vst.matching import compute_correspondence
from vst.selection import expand_selection, threshold_selection
from vst.session_io import load_session, save_session, session_to_bytes
from vst.similarity import SimilarityWeights, element_similarity
from vst.svgmodel.model import applicable_attributes, get_attribute
from vst.svgmodel.parser import parse_svg
from vst.svgmodel.writer import serialize_svg
from vst.transfer import (
    COPIED,
    ORIGINAL,
    TransferSession,
    apply,
    copy_all,
    copy_none,
    custom,
    set_state,
)
from vst.features import structural_features


def test_matching_speed_small():
    """10 pairs with <=20 total elements each match in under 1 s apiece."""
    rng = random.Random(101)
    for _ in range(10):
        left = rng.randrange(4, 17)
        right = rng.randrange(3, 21 - left)
        source = parse_svg(random_svg(rng, left))
        target = parse_svg(random_svg(rng, right))
        started = time.perf_counter()
        compute_correspondence(build_graph(source), build_graph(target))
        elapsed = time.perf_counter() - started
        assert elapsed < 1.0, f"{left}+{right} elements took {elapsed:.3f}s"


def test_matching_speed_large():
    """A synthesized 185-element pair completes within 100 s."""
    rng = random.Random(185)
    source = parse_svg(random_svg(rng, 92, view=600))
    target = parse_svg(random_svg(rng, 93, view=600))
    assert len(source.elements) + len(target.elements) == 185
    started = time.perf_counter()
    corr = compute_correspondence(build_graph(source), build_graph(target))
    elapsed = time.perf_counter() - started
    assert len(corr.match) == 93
    assert elapsed <= 100.0, f"took {elapsed:.1f}s"


def test_self_match_identity():
    """25 documents with pairwise-distinct elements self-match identically."""
    rng = random.Random(2501)
    for i in range(25):
        doc = parse_svg(random_svg(rng, rng.randrange(5, 21), distinct=True))
        graph = build_graph(doc)
        corr = compute_correspondence(graph, graph)
        assert corr.match == {eid: eid for eid in doc.ids}, f"document {i}"


def _brute_force_match(src_doc, tgt_doc):
    """Independent argmax: reverse scan with >= so the earliest tie wins."""
    src_feats = structural_features(build_graph(src_doc))
    tgt_feats = structural_features(build_graph(tgt_doc))
    result = {}
    for target in tgt_doc.elements:
        best = None
        best_id = None
        for source in reversed(src_doc.elements):
            score = element_similarity(
                target, source, tgt_feats[target.id], src_feats[source.id]
            ).combined
            if best is None or score >= best:
                best = score
                best_id = source.id
        result[target.id] = best_id
    return result


def test_oracle_equivalence():
    """50 random pairs (<=12 per side) equal the brute-force argmax exactly."""
    rng = random.Random(5050)
    for i in range(50):
        source = parse_svg(random_svg(rng, rng.randrange(2, 13)))
        target = parse_svg(random_svg(rng, rng.randrange(2, 13)))
        corr = compute_correspondence(build_graph(source), build_graph(target))
        assert corr.match == _brute_force_match(source, target), f"pair {i}"


def _random_state(rng, attribute):
    from vst.svgmodel.color import Color
    from vst.svgmodel.model import FONT_STYLES, TEXT_ALIGNS

    pick = rng.random()
    if pick < 0.4:
        return COPIED
    if pick < 0.6:
        return ORIGINAL
    if attribute in ("fill", "stroke", "textBackgroundColor"):
        return custom(Color(rng.randrange(256), rng.randrange(256), rng.randrange(256)))
    if attribute in ("strokeWidth", "padding"):
        return custom(round(rng.uniform(0, 8), 2))
    if attribute == "opacity":
        return custom(round(rng.random(), 2))
    if attribute in ("fontSize", "lineHeight"):
        return custom(round(rng.uniform(1, 40), 2))
    if attribute == "fontFamily":
        return custom(rng.choice(["Lato", "Georgia"]))
    if attribute == "fontStyle":
        return custom(rng.choice(FONT_STYLES))
    if attribute == "fontWeight":
        return custom(rng.choice(["normal", "bold", 700]))
    if attribute == "textAlign":
        return custom(rng.choice(TEXT_ALIGNS))
    return custom("replaced")


def test_copy_algebra():
    """1,000 random edit sequences: copy_none restores the target exactly,
    and copy_all on self-match pairs reproduces the source styles."""
    rng = random.Random(1001)
    pool = []
    for i in range(20):
        self_match = bool(i % 2)
        if self_match:
            # Pairwise-distinct elements force the identity assignment.
            src_bytes = random_svg(rng, rng.randrange(4, 10), distinct=True)
            tgt_bytes = src_bytes
        else:
            src_bytes = random_svg(rng, rng.randrange(4, 10))
            tgt_bytes = random_svg(rng, rng.randrange(4, 10))
        source = parse_svg(src_bytes)
        target = parse_svg(tgt_bytes)
        corr = compute_correspondence(build_graph(source), build_graph(target))
        session = TransferSession(source=source, target=target, correspondence=corr)
        if self_match:
            assert corr.match == {eid: eid for eid in target.ids}
        pool.append((session, serialize_svg(target), self_match))

    from vst.svgmodel.model import ALL_ATTRIBUTES

    for case in range(1000):
        session, target_bytes, self_match = pool[case % len(pool)]
        for _ in range(rng.randrange(1, 6)):
            roll = rng.random()
            if roll < 0.2:
                session = copy_all(session)
            elif roll < 0.3:
                session = copy_none(session)
            else:
                attribute = rng.choice(ALL_ATTRIBUTES)
                eligible = [
                    e.id
                    for e in session.target.elements
                    if attribute in applicable_attributes(e.kind)
                ]
                if not eligible:
                    continue
                chosen = set(rng.sample(eligible, rng.randrange(1, len(eligible) + 1)))
                session = set_state(
                    session, chosen, attribute, _random_state(rng, attribute)
                )

        restored = copy_none(session)
        assert serialize_svg(apply(restored)) == target_bytes, f"case {case}"

        if self_match:
            copied = copy_all(session)
            assert serialize_svg(apply(copied)) == serialize_svg(
                session.source
            ), f"case {case}"


def test_selection_property_suites():
    """Threshold monotonicity and expansion fixed point over 10,000 cases each."""
    rng = random.Random(10001)
    graphs = []
    for _ in range(40):
        doc = parse_svg(random_svg(rng, rng.randrange(5, 14)))
        graphs.append(build_graph(doc))

    for case in range(10000):
        graph = graphs[case % len(graphs)]
        ids = graph.document.ids
        seed = set(rng.sample(ids, rng.randrange(1, min(3, len(ids)) + 1)))
        hi = rng.random()
        lo = hi * rng.random()
        assert threshold_selection(graph, seed, hi) <= threshold_selection(
            graph, seed, lo
        ), f"monotonicity case {case}"

    for case in range(10000):
        graph = graphs[(case * 7) % len(graphs)]
        ids = graph.document.ids
        current = {rng.choice(ids)}
        for _ in range(len(ids) + 1):
            grown = expand_selection(graph, current)
            assert current <= grown
            if grown == current:
                break
            current = grown
        else:
            pytest.fail(f"expansion case {case}: no fixed point")
        assert expand_selection(graph, current) == current, f"expansion case {case}"


def test_corpus_round_trip():
    """All 20 corpus files reach a parse/serialize fixed point."""
    files = corpus_files()
    assert len(files) == 20
    for path in files:
        first = parse_svg(path.read_bytes())
        bytes_one = serialize_svg(first)
        second = parse_svg(bytes_one)
        bytes_two = serialize_svg(second)
        assert bytes_one == bytes_two, path.name
        third = parse_svg(bytes_two)
        assert second.ids == third.ids, path.name
        for a, b in zip(second.elements, third.elements):
            assert a.kind == b.kind, path.name
            assert a.style == b.style, path.name
            for field in ("x", "y", "width", "height"):
                assert abs(getattr(a.bbox, field) - getattr(b.bbox, field)) <= 1e-6
        # Identity and style survive the first cycle as well.
        assert first.ids == second.ids, path.name
        assert [e.kind for e in first.elements] == [e.kind for e in second.elements]


def test_session_round_trip(tmp_path):
    """save -> load -> save is byte-identical and load performs no matching."""
    source_bytes = (CORPUS / "18-poster-source.svg").read_bytes()
    target_bytes = (CORPUS / "19-poster-target.svg").read_bytes()
    source = parse_svg(source_bytes)
    target = parse_svg(target_bytes)
    corr = compute_correspondence(build_graph(source), build_graph(target))
    session = TransferSession(
        source=source, target=target, correspondence=corr,
        source_path="source.svg", target_path="target.svg",
    )
    session = copy_all(session)
    session = set_state(session, {"title"}, "fontSize", custom(44.0))

    first = tmp_path / "first.json"
    save_session(session, first)
    loaded = load_session(first, source_bytes, target_bytes)
    assert session_to_bytes(loaded) == first.read_bytes()
    assert loaded.correspondence.scores == {}

    import vst.matching as matching_module

    original = matching_module.compute_correspondence

    def forbidden(*args, **kwargs):
        raise AssertionError("load must not match")

    matching_module.compute_correspondence = forbidden
    try:
        started = time.perf_counter()
        load_session(first, source_bytes, target_bytes)
        elapsed = time.perf_counter() - started
    finally:
        matching_module.compute_correspondence = original
    assert elapsed < 0.05, f"load took {elapsed * 1000:.1f} ms"


def test_end_to_end_replication(tmp_path):
    """The scripted CLI transcript reproduces the committed golden output."""
    import shutil

    shutil.copy(SCENARIO / "source.svg", tmp_path / "source.svg")
    shutil.copy(SCENARIO / "target.svg", tmp_path / "target.svg")
    transcript = [
        [
            sys.executable, "-m", "vst.cli",
            "match", "source.svg", "target.svg", "session.json",
        ],
        [
            sys.executable, "-m", "vst.cli",
            "transfer", "session.json", "output.svg",
            "--copy-all",
            "--retarget", "promoTitle,promoDates", "headline",
            "--set", "promoDates", "fontSize", "original",
        ],
    ]
    for command in transcript:
        proc = subprocess.run(command, cwd=tmp_path, capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "output.svg").read_bytes() == (
        GOLDEN / "scenario-output.svg"
    ).read_bytes()
    # The updated session records the overrides in target paint order.
    data = json.loads((tmp_path / "session.json").read_text())
    assert data["overrides"] == [
        {"target": "promoTitle", "source": "headline"},
        {"target": "promoDates", "source": "headline"},
    ]


def test_user_study_exclusion():
    """Human-subject outcomes (satisfaction, replication timings) are excluded
    by design; the property suites in this module substitute for them."""
    substitutes = {
        "test_matching_speed_small",
        "test_matching_speed_large",
        "test_self_match_identity",
        "test_oracle_equivalence",
        "test_copy_algebra",
        "test_selection_property_suites",
        "test_corpus_round_trip",
        "test_session_round_trip",
        "test_end_to_end_replication",
    }
    present = {name for name in globals() if name.startswith("test_")}
    assert substitutes <= present
