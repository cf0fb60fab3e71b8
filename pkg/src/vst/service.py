"""HTTP API for interactive style-transfer sessions.

Sessions live in an in-memory registry. Matching runs on a background thread
so uploads return immediately with status "matching"; clients poll until the
status is "ready". All mutations on one session are serialized through a
per-session lock, and every mutation response embeds the fully re-resolved
view so clients read their own writes.
"""
from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field, replace

from fastapi import FastAPI, File, Form, HTTPException, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from .graph import EdgeKind, GraphConfig, build_graph
from .matching import UnknownElementIdError, compute_correspondence
from .selection import (
    EmptySelectionError,
    expand_selection,
    threshold_selection,
)
from .session_io import (
    HashMismatchError,
    SchemaError,
    VersionUnsupportedError,
    session_from_bytes,
    session_to_bytes,
)
from .similarity import SimilarityWeights
from .svgmodel.color import UnknownColorError, normalize_color
from .svgmodel.model import (
    InvalidAttributeValueError,
    applicable_attributes,
    get_attribute,
)
from .svgmodel.parser import (
    EmptyDocumentError,
    MalformedXmlError,
    UnsupportedRootError,
    parse_svg,
)
from .svgmodel.writer import serialize_element, serialize_svg
from .transfer import (
    COPIED,
    ORIGINAL,
    InapplicableAttributeError,
    TransferSession,
    apply as apply_script,
    copy_all,
    copy_none,
    custom,
    format_attribute_value,
    group_attribute_values,
    set_state,
    transfer_source_style,
)

_NUMBER_ATTRS = ("strokeWidth", "opacity", "fontSize", "lineHeight", "padding")


@dataclass
class _Slot:
    status: str = "matching"
    progress: float = 0.0
    session: TransferSession | None = None
    error: str = ""
    lock: threading.Lock = field(default_factory=threading.Lock)


def _decode_request_value(attribute: str, raw):
    if attribute in ("fill", "stroke", "textBackgroundColor"):
        return normalize_color(str(raw))
    if attribute in _NUMBER_ATTRS:
        return float(raw)
    if attribute == "fontWeight":
        if isinstance(raw, int):
            return raw
        return int(raw) if str(raw).isdigit() else str(raw)
    return str(raw)


def _bbox_view(bbox) -> dict:
    return {"x": bbox.x, "y": bbox.y, "width": bbox.width, "height": bbox.height}


def _element_view(element) -> dict:
    style = {
        name: format_attribute_value(name, get_attribute(element.style, name))
        for name in applicable_attributes(element.kind)
    }
    return {
        "id": element.id,
        "kind": element.kind.value,
        "bbox": _bbox_view(element.bbox),
        "style": style,
        "markup": serialize_element(element),
    }


def _document_view(doc) -> dict:
    return {
        "viewBox": _bbox_view(doc.view_box),
        "elements": [_element_view(e) for e in doc.elements],
    }


def _session_view(session_id: str, slot: _Slot) -> dict:
    view: dict = {
        "sessionId": session_id,
        "status": slot.status,
        "progress": slot.progress,
    }
    if slot.status == "failed":
        view["error"] = slot.error
    session = slot.session
    if slot.status != "ready" or session is None:
        return view
    c = session.correspondence
    output = apply_script(session)
    script_entries = []
    for (target_id, attribute), state in sorted(session.script.states.items()):
        entry = {"target": target_id, "attribute": attribute, "state": state.kind}
        if state.kind == "custom":
            entry["value"] = format_attribute_value(attribute, state.value)
        script_entries.append(entry)
    view.update(
        {
            "source": _document_view(session.source),
            "target": _document_view(session.target),
            "output": _document_view(output),
            "match": c.effective_match(),
            "baseMatch": dict(c.match),
            "overrides": [[t, s] for t, s in c.overrides],
            "scores": {
                t: {k: v for k, v in s.as_dict().items() if v is not None}
                for t, s in c.scores.items()
            },
            "script": script_entries,
            "groups": [
                {
                    "attribute": g.attribute,
                    "value": g.value,
                    "elementIds": list(g.element_ids),
                    "stateSummary": g.state_summary,
                }
                for g in group_attribute_values(session)
            ],
            "warnings": [
                {"locator": w.locator, "code": w.code} for w in output.report.warnings
            ],
        }
    )
    return view


def create_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="SVG style transfer service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    registry: dict[str, _Slot] = {}

    def get_slot(session_id: str) -> _Slot:
        slot = registry.get(session_id)
        if slot is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return slot

    def get_ready_slot(session_id: str) -> _Slot:
        slot = get_slot(session_id)
        if slot.status != "ready":
            raise HTTPException(
                status_code=409, detail=f"session status is {slot.status}"
            )
        return slot

    def parse_or_400(name: str, data: bytes):
        try:
            return parse_svg(data)
        except (MalformedXmlError, UnsupportedRootError, EmptyDocumentError) as exc:
            code = type(exc).__name__.removesuffix("Error")
            report = getattr(exc, "report", None)
            raise HTTPException(
                status_code=400,
                detail={
                    "error": code,
                    "file": name,
                    "message": str(exc),
                    "warnings": [
                        {"locator": w.locator, "code": w.code}
                        for w in (report.warnings if report else [])
                    ],
                },
            )

    @app.post("/sessions", status_code=202)
    async def create_session(
        source: UploadFile = File(...),
        target: UploadFile = File(...),
        weights: str | None = Form(None),
        config: str | None = Form(None),
    ):
        source_bytes = await source.read()
        target_bytes = await target.read()
        source_doc = parse_or_400("source", source_bytes)
        target_doc = parse_or_400("target", target_bytes)
        try:
            w = _parse_weights_json(weights)
            cfg = _parse_config_json(config)
        except (ValueError, KeyError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))

        session_id = uuid.uuid4().hex[:12]
        slot = _Slot()
        registry[session_id] = slot

        def run_matching() -> None:
            try:
                correspondence = compute_correspondence(
                    build_graph(source_doc, cfg), build_graph(target_doc, cfg), w
                )
                slot.session = TransferSession(
                    source=source_doc,
                    target=target_doc,
                    correspondence=correspondence,
                    weights=w,
                    graph_config=cfg,
                    source_path=source.filename or "source.svg",
                    target_path=target.filename or "target.svg",
                )
                slot.progress = 1.0
                slot.status = "ready"
            except Exception as exc:  # failure surfaces via status polling
                slot.error = str(exc)
                slot.status = "failed"

        threading.Thread(target=run_matching, daemon=True).start()
        return {"sessionId": session_id, "status": slot.status, "progress": slot.progress}

    @app.post("/sessions/open", status_code=201)
    async def open_session(
        session: UploadFile = File(...),
        source: UploadFile = File(...),
        target: UploadFile = File(...),
    ):
        session_bytes = await session.read()
        source_bytes = await source.read()
        target_bytes = await target.read()
        try:
            loaded = session_from_bytes(session_bytes, source_bytes, target_bytes)
        except HashMismatchError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except (SchemaError, VersionUnsupportedError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except (MalformedXmlError, UnsupportedRootError, EmptyDocumentError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        session_id = uuid.uuid4().hex[:12]
        slot = _Slot(status="ready", progress=1.0, session=loaded)
        registry[session_id] = slot
        return _session_view(session_id, slot)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        slot = get_slot(session_id)
        with slot.lock:
            return _session_view(session_id, slot)

    def mutate(session_id: str, fn) -> dict:
        slot = get_ready_slot(session_id)
        with slot.lock:
            try:
                slot.session = fn(slot.session)
            except UnknownElementIdError as exc:
                raise HTTPException(status_code=422, detail=f"unknown element id {exc}")
            except (
                InapplicableAttributeError,
                InvalidAttributeValueError,
                UnknownColorError,
                EmptySelectionError,
                ValueError,
            ) as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            return _session_view(session_id, slot)

    @app.post("/sessions/{session_id}/retarget")
    def retarget_endpoint(session_id: str, body: dict):
        targets = set(body.get("targets", []))
        source = body.get("source")
        if not targets or not isinstance(source, str):
            raise HTTPException(status_code=422, detail="body needs targets and source")
        return mutate(
            session_id, lambda s: transfer_source_style(s, targets, source)
        )

    @app.post("/sessions/{session_id}/selection/expand")
    def expand_endpoint(session_id: str, body: dict):
        current = set(body.get("current", []))
        slot = get_ready_slot(session_id)
        with slot.lock:
            session = slot.session
            try:
                grown = expand_selection(
                    build_graph(session.target, session.graph_config),
                    current,
                    session.weights,
                )
            except (UnknownElementIdError, EmptySelectionError) as exc:
                raise HTTPException(status_code=422, detail=str(exc))
        return {"selection": sorted(grown)}

    @app.post("/sessions/{session_id}/selection/threshold")
    def threshold_endpoint(session_id: str, body: dict):
        seed = set(body.get("seed", []))
        tau = body.get("tau")
        if not isinstance(tau, (int, float)):
            raise HTTPException(status_code=422, detail="body needs numeric tau")
        slot = get_ready_slot(session_id)
        with slot.lock:
            session = slot.session
            try:
                selected = threshold_selection(
                    build_graph(session.target, session.graph_config),
                    seed,
                    float(tau),
                    session.weights,
                )
            except (UnknownElementIdError, EmptySelectionError) as exc:
                raise HTTPException(status_code=422, detail=str(exc))
        return {"selection": sorted(selected)}

    @app.post("/sessions/{session_id}/script")
    def script_endpoint(session_id: str, body: dict):
        ops = body.get("ops")
        if not isinstance(ops, list):
            raise HTTPException(status_code=422, detail="body needs an ops array")

        def run(session: TransferSession) -> TransferSession:
            for op in ops:
                name = op.get("op") if isinstance(op, dict) else None
                if name == "copy_all":
                    session = copy_all(session)
                elif name == "copy_none":
                    session = copy_none(session)
                elif name == "set_state":
                    state_kind = op.get("state")
                    attribute = str(op.get("attribute"))
                    targets = set(op.get("targets", []))
                    if state_kind == "custom":
                        state = custom(_decode_request_value(attribute, op.get("value")))
                    elif state_kind == "copied":
                        state = COPIED
                    elif state_kind == "original":
                        state = ORIGINAL
                    else:
                        raise ValueError(f"unknown state {state_kind!r}")
                    session = set_state(session, targets, attribute, state)
                else:
                    raise ValueError(f"unknown op {name!r}")
            return session

        return mutate(session_id, run)

    @app.get("/sessions/{session_id}/output.svg")
    def output_svg(session_id: str):
        slot = get_ready_slot(session_id)
        with slot.lock:
            data = serialize_svg(apply_script(slot.session))
        return Response(content=data, media_type="image/svg+xml")

    @app.get("/sessions/{session_id}/session.json")
    def session_file(session_id: str):
        slot = get_ready_slot(session_id)
        with slot.lock:
            data = session_to_bytes(slot.session)
        return Response(content=data, media_type="application/json")

    @app.get("/sessions/{session_id}/matched_targets")
    def matched_targets_endpoint(session_id: str, source: str):
        slot = get_ready_slot(session_id)
        with slot.lock:
            session = slot.session
            if source not in session.correspondence.source_ids:
                raise HTTPException(status_code=422, detail=f"unknown element id {source!r}")
            effective = session.correspondence.effective_match()
        return {"targets": sorted(t for t, s in effective.items() if s == source)}

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app


def _parse_weights_json(raw: str | None) -> SimilarityWeights:
    if not raw:
        return SimilarityWeights()
    data = json.loads(raw)
    base = {"color": 1.0, "shape": 1.0, "size": 1.0, "text": 1.0, "structure": 1.0}
    for key, value in data.items():
        if key not in base:
            raise ValueError(f"unknown similarity dimension {key!r}")
        base[key] = float(value)
    return SimilarityWeights(**base)


def _parse_config_json(raw: str | None) -> GraphConfig:
    if not raw:
        return GraphConfig()
    data = json.loads(raw)
    kinds = data.get("enabledKinds")
    return GraphConfig(
        align_epsilon=float(data.get("alignEpsilon", 2.0)),
        contain_margin=float(data.get("containMargin", 0.5)),
        enabled_kinds=(
            frozenset(EdgeKind(v) for v in kinds) if kinds is not None else frozenset(EdgeKind)
        ),
    )
