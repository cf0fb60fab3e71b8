"""Session persistence: documents by path and hash, plus match and script.

The file is canonical JSON (UTF-8, sorted keys, two-space indent, trailing
newline); identical sessions always produce identical bytes. Documents are
referenced, never embedded, and the stored hashes must match the supplied
bytes on load. Loading reconstructs the correspondence from the stored
assignment without any recomputation.
"""
from __future__ import annotations

import json
from pathlib import Path

from .graph import EdgeKind, GraphConfig
from .matching import Correspondence
from .similarity import SimilarityWeights
from .svgmodel.color import UnknownColorError, format_color, normalize_color
from .svgmodel.model import (
    ALL_ATTRIBUTES,
    InvalidAttributeValueError,
    check_attribute_value,
)
from .svgmodel.parser import parse_svg
from .transfer import (
    AttributeState,
    EditScript,
    TransferSession,
    custom,
    COPIED,
    ORIGINAL,
)

FORMAT_VERSION = 1

_COLOR_ATTRS = ("fill", "stroke", "textBackgroundColor")
_NUMBER_ATTRS = ("strokeWidth", "opacity", "fontSize", "lineHeight", "padding")


class HashMismatchError(ValueError):
    pass


class VersionUnsupportedError(ValueError):
    pass


class SchemaError(ValueError):
    pass


def _encode_value(attribute: str, value):
    if attribute in _COLOR_ATTRS:
        return format_color(value)
    if attribute in _NUMBER_ATTRS:
        return float(value)
    return value


def _decode_value(attribute: str, raw):
    try:
        if attribute in _COLOR_ATTRS:
            if not isinstance(raw, str):
                raise SchemaError(f"{attribute} value must be a color string")
            return normalize_color(raw)
        if attribute in _NUMBER_ATTRS:
            if not isinstance(raw, (int, float)) or isinstance(raw, bool):
                raise SchemaError(f"{attribute} value must be a number")
            return float(raw)
        if attribute == "fontWeight":
            if isinstance(raw, bool) or not isinstance(raw, (int, str)):
                raise SchemaError("fontWeight value must be a string or integer")
            return raw
        if not isinstance(raw, str):
            raise SchemaError(f"{attribute} value must be a string")
        return raw
    except UnknownColorError as exc:
        raise SchemaError(str(exc)) from exc


def session_to_dict(session: TransferSession) -> dict:
    c = session.correspondence
    script_entries = []
    states = session.script.states
    for target_id in c.target_ids:
        for attribute in ALL_ATTRIBUTES:
            state = states.get((target_id, attribute))
            if state is None:
                continue
            entry = {"target": target_id, "attribute": attribute, "state": state.kind}
            if state.kind == "custom":
                entry["value"] = _encode_value(attribute, state.value)
            script_entries.append(entry)
    cfg = session.graph_config
    w = session.weights
    return {
        "formatVersion": FORMAT_VERSION,
        "sourcePath": session.source_path,
        "targetPath": session.target_path,
        "sourceHash": c.source_hash,
        "targetHash": c.target_hash,
        "baseMatch": [{"target": t, "source": c.match[t]} for t in c.target_ids],
        "overrides": [{"target": t, "source": s} for t, s in c.overrides],
        "script": script_entries,
        "weights": {
            "color": w.color,
            "shape": w.shape,
            "size": w.size,
            "text": w.text,
            "structure": w.structure,
        },
        "graphConfig": {
            "alignEpsilon": cfg.align_epsilon,
            "containMargin": cfg.contain_margin,
            "enabledKinds": sorted(k.value for k in cfg.enabled_kinds),
        },
    }


def session_to_bytes(session: TransferSession) -> bytes:
    text = json.dumps(session_to_dict(session), sort_keys=True, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def save_session(session: TransferSession, path: str | Path) -> None:
    Path(path).write_bytes(session_to_bytes(session))


def _require(data: dict, key: str):
    if key not in data:
        raise SchemaError(f"missing key {key!r}")
    return data[key]


def _pair_list(raw, key: str) -> list[tuple[str, str]]:
    if not isinstance(raw, list):
        raise SchemaError(f"{key} must be an array")
    pairs = []
    for item in raw:
        if not isinstance(item, dict) or "target" not in item or "source" not in item:
            raise SchemaError(f"{key} entries need target and source")
        pairs.append((str(item["target"]), str(item["source"])))
    return pairs


def session_from_bytes(
    data: bytes, source_bytes: bytes, target_bytes: bytes
) -> TransferSession:
    try:
        raw = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"unreadable session file: {exc}") from exc
    if not isinstance(raw, dict):
        raise SchemaError("session file must hold an object")

    version = _require(raw, "formatVersion")
    if version != FORMAT_VERSION:
        raise VersionUnsupportedError(f"unsupported formatVersion {version!r}")

    source = parse_svg(source_bytes)
    target = parse_svg(target_bytes)
    if source.hash_hex != _require(raw, "sourceHash"):
        raise HashMismatchError("source bytes do not match stored sourceHash")
    if target.hash_hex != _require(raw, "targetHash"):
        raise HashMismatchError("target bytes do not match stored targetHash")

    base_pairs = _pair_list(_require(raw, "baseMatch"), "baseMatch")
    match = dict(base_pairs)
    if set(match) != set(target.ids) or len(base_pairs) != len(target.elements):
        raise SchemaError("baseMatch must cover every target element exactly once")
    source_ids = set(source.ids)
    if not set(match.values()) <= source_ids:
        raise SchemaError("baseMatch references unknown source elements")

    overrides = _pair_list(_require(raw, "overrides"), "overrides")
    for t, s in overrides:
        if t not in match or s not in source_ids:
            raise SchemaError("override references unknown elements")

    states: dict[tuple[str, str], AttributeState] = {}
    script_raw = _require(raw, "script")
    if not isinstance(script_raw, list):
        raise SchemaError("script must be an array")
    for item in script_raw:
        if not isinstance(item, dict):
            raise SchemaError("script entries must be objects")
        target_id = str(_require(item, "target"))
        attribute = str(_require(item, "attribute"))
        state_kind = _require(item, "state")
        if target_id not in match:
            raise SchemaError(f"script references unknown element {target_id!r}")
        if attribute not in ALL_ATTRIBUTES:
            raise SchemaError(f"script references unknown attribute {attribute!r}")
        if state_kind == "custom":
            if "value" not in item:
                raise SchemaError("custom state requires a value")
            value = _decode_value(attribute, item["value"])
            try:
                check_attribute_value(attribute, value)
            except InvalidAttributeValueError as exc:
                raise SchemaError(str(exc)) from exc
            states[(target_id, attribute)] = custom(value)
        elif state_kind in ("copied", "original"):
            if "value" in item:
                raise SchemaError(f"{state_kind} state must not carry a value")
            states[(target_id, attribute)] = COPIED if state_kind == "copied" else ORIGINAL
        else:
            raise SchemaError(f"unknown script state {state_kind!r}")

    weights_raw = _require(raw, "weights")
    try:
        weights = SimilarityWeights(
            color=float(weights_raw["color"]),
            shape=float(weights_raw["shape"]),
            size=float(weights_raw["size"]),
            text=float(weights_raw["text"]),
            structure=float(weights_raw["structure"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad weights: {exc}") from exc

    config_raw = _require(raw, "graphConfig")
    try:
        kinds = frozenset(EdgeKind(v) for v in config_raw["enabledKinds"])
        config = GraphConfig(
            align_epsilon=float(config_raw["alignEpsilon"]),
            contain_margin=float(config_raw["containMargin"]),
            enabled_kinds=kinds,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad graphConfig: {exc}") from exc

    correspondence = Correspondence(
        source_hash=source.hash_hex,
        target_hash=target.hash_hex,
        source_ids=tuple(source.ids),
        target_ids=tuple(target.ids),
        match=match,
        scores={},
        overrides=tuple(overrides),
    )
    return TransferSession(
        source=source,
        target=target,
        correspondence=correspondence,
        script=EditScript(states),
        weights=weights,
        graph_config=config,
        source_path=str(_require(raw, "sourcePath")),
        target_path=str(_require(raw, "targetPath")),
    )


def load_session(
    path: str | Path, source_bytes: bytes, target_bytes: bytes
) -> TransferSession:
    return session_from_bytes(Path(path).read_bytes(), source_bytes, target_bytes)
