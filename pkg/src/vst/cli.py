"""Command-line front door: match designs, apply transfers, run the service.

Exit codes: 0 success, 1 parse or load failure, 2 empty document,
3 session/document hash mismatch, 4 invalid --set specification,
5 service bind failure.
"""
from __future__ import annotations

import argparse
import json
import socket
import sys
import time
from pathlib import Path

from .graph import EdgeKind, GraphConfig, build_graph
from .matching import UnknownElementIdError, compute_correspondence
from .selection import EmptySelectionError
from .session_io import (
    HashMismatchError,
    SchemaError,
    VersionUnsupportedError,
    load_session,
    save_session,
)
from .similarity import DIMENSIONS, SimilarityWeights
from .svgmodel.color import UnknownColorError, normalize_color
from .svgmodel.model import (
    ALL_ATTRIBUTES,
    InvalidAttributeValueError,
)
from .svgmodel.parser import (
    EmptyDocumentError,
    MalformedXmlError,
    UnsupportedRootError,
    parse_svg,
)
from .svgmodel.writer import serialize_svg
from .transfer import (
    COPIED,
    ORIGINAL,
    InapplicableAttributeError,
    TransferSession,
    apply as apply_script,
    copy_all,
    copy_none,
    custom,
    set_state,
    transfer_source_style,
)

EXIT_PARSE = 1
EXIT_EMPTY = 2
EXIT_HASH = 3
EXIT_SET = 4
EXIT_BIND = 5

_NUMBER_ATTRS = ("strokeWidth", "opacity", "fontSize", "lineHeight", "padding")


class _OrderedFlag(argparse.Action):
    """Appends (flag, values) to args.mutations, preserving flag order."""

    def __call__(self, parser, namespace, values, option_string=None):
        namespace.mutations.append((self.dest, values))


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _read_svg(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise MalformedXmlError(f"{path}: {exc}") from exc
    try:
        return data, parse_svg(data)
    except (MalformedXmlError, UnsupportedRootError) as exc:
        raise MalformedXmlError(f"{path}: {exc}") from exc
    except EmptyDocumentError as exc:
        raise EmptyDocumentError(f"{path}: {exc}") from exc


def _parse_weights(specs: list[str]) -> SimilarityWeights:
    values = {dim: 1.0 for dim in DIMENSIONS}
    for spec in specs:
        for part in spec.split(","):
            if "=" not in part:
                raise ValueError(f"weight spec {part!r} is not name=value")
            name, _, raw = part.partition("=")
            name = name.strip()
            if name not in values:
                raise ValueError(f"unknown similarity dimension {name!r}")
            values[name] = float(raw)
    return SimilarityWeights(**values)


def _parse_kinds(spec: str | None) -> frozenset[EdgeKind]:
    if spec is None:
        return frozenset(EdgeKind)
    kinds = set()
    for name in spec.split(","):
        name = name.strip()
        try:
            kinds.add(EdgeKind(name))
        except ValueError:
            raise ValueError(f"unknown edge kind {name!r}") from None
    return frozenset(kinds)


def _summary(args, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
        return
    for key, value in payload.items():
        print(f"{key}: {value}")


def cmd_match(args) -> int:
    try:
        weights = _parse_weights(args.weights)
        config = GraphConfig(
            align_epsilon=args.align_epsilon,
            contain_margin=args.contain_margin,
            enabled_kinds=_parse_kinds(args.kinds),
        )
    except ValueError as exc:
        return _fail(str(exc), EXIT_PARSE)

    try:
        _, source = _read_svg(args.source)
        _, target = _read_svg(args.target)
    except EmptyDocumentError as exc:
        return _fail(str(exc), EXIT_EMPTY)
    except MalformedXmlError as exc:
        return _fail(str(exc), EXIT_PARSE)

    started = time.perf_counter()
    correspondence = compute_correspondence(
        build_graph(source, config), build_graph(target, config), weights
    )
    elapsed = time.perf_counter() - started

    session = TransferSession(
        source=source,
        target=target,
        correspondence=correspondence,
        weights=weights,
        graph_config=config,
        source_path=args.source,
        target_path=args.target,
    )
    try:
        save_session(session, args.session)
    except OSError as exc:
        return _fail(f"cannot write session: {exc}", EXIT_PARSE)

    combined = [s.combined for s in correspondence.scores.values()]
    _summary(
        args,
        {
            "sourceElements": len(source.elements),
            "targetElements": len(target.elements),
            "matchSeconds": round(elapsed, 4),
            "meanScore": round(sum(combined) / len(combined), 4),
            "minScore": round(min(combined), 4),
            "session": args.session,
        },
    )
    return 0


def _parse_set_value(attribute: str, raw: str):
    if attribute in ("fill", "stroke", "textBackgroundColor"):
        return normalize_color(raw)
    if attribute in _NUMBER_ATTRS:
        return float(raw)
    if attribute == "fontWeight":
        return int(raw) if raw.isdigit() else raw
    return raw


def _apply_mutation(session: TransferSession, flag: str, values) -> TransferSession:
    if flag == "copy_all":
        return copy_all(session)
    if flag == "copy_none":
        return copy_none(session)
    if flag == "retarget":
        targets = set(values[0].split(","))
        return transfer_source_style(session, targets, values[1])
    # --set TARGETS ATTR STATE[,VALUE]
    targets = set(values[0].split(","))
    attribute = values[1]
    state_spec = values[2]
    kind, _, raw_value = state_spec.partition(",")
    if kind == "copied":
        state = COPIED
    elif kind == "original":
        state = ORIGINAL
    elif kind == "custom":
        if not raw_value:
            raise ValueError("custom state needs a value: custom,VALUE")
        state = custom(_parse_set_value(attribute, raw_value))
    else:
        raise ValueError(f"unknown state {kind!r} (copied|original|custom,VALUE)")
    return set_state(session, targets, attribute, state)


def _resolve_doc_path(session_path: str, doc_path: str) -> Path:
    p = Path(doc_path)
    if p.is_absolute():
        return p
    return Path(session_path).parent / p


def cmd_transfer(args) -> int:
    try:
        source_path, target_path = _session_paths(args.session)
        source_bytes = _resolve_doc_path(args.session, source_path).read_bytes()
        target_bytes = _resolve_doc_path(args.session, target_path).read_bytes()
        session = load_session(args.session, source_bytes, target_bytes)
    except HashMismatchError as exc:
        return _fail(str(exc), EXIT_HASH)
    except (OSError, json.JSONDecodeError, KeyError, SchemaError, VersionUnsupportedError) as exc:
        return _fail(f"cannot load session: {exc}", EXIT_PARSE)
    except (MalformedXmlError, UnsupportedRootError, EmptyDocumentError) as exc:
        return _fail(str(exc), EXIT_PARSE)

    for flag, values in args.mutations:
        try:
            session = _apply_mutation(session, flag, values)
        except (
            ValueError,
            UnknownElementIdError,
            InapplicableAttributeError,
            InvalidAttributeValueError,
            UnknownColorError,
            EmptySelectionError,
        ) as exc:
            return _fail(f"--{flag.replace('_', '-')}: {exc}", EXIT_SET)

    output = apply_script(session)
    try:
        Path(args.output).write_bytes(serialize_svg(output))
        save_session(session, args.session)
    except OSError as exc:
        return _fail(f"cannot write output: {exc}", EXIT_PARSE)

    _summary(
        args,
        {
            "elements": len(output.elements),
            "mutations": len(args.mutations),
            "warnings": len(output.report.warnings),
            "output": args.output,
        },
    )
    return 0


def _session_paths(session_path: str) -> tuple[str, str]:
    raw = json.loads(Path(session_path).read_text(encoding="utf-8"))
    return str(raw["sourcePath"]), str(raw["targetPath"])


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((args.host, args.port))
    except OSError as exc:
        probe.close()
        return _fail(f"cannot bind {args.host}:{args.port}: {exc}", EXIT_BIND)
    probe.close()

    app = create_app(static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vst",
        description="Transfer visual styles between SVG designs via element correspondence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_match = sub.add_parser("match", help="compute a correspondence and write a session file")
    p_match.add_argument("source", help="source SVG path (styles are read from here)")
    p_match.add_argument("target", help="target SVG path (structure is kept)")
    p_match.add_argument("session", help="output session file path")
    p_match.add_argument(
        "--weights",
        action="append",
        default=[],
        metavar="NAME=VALUE[,NAME=VALUE...]",
        help="override similarity weights (color, shape, size, text, structure)",
    )
    p_match.add_argument("--align-epsilon", type=float, default=2.0, metavar="UNITS")
    p_match.add_argument("--contain-margin", type=float, default=0.5, metavar="UNITS")
    p_match.add_argument(
        "--kinds", default=None, metavar="KIND[,KIND...]", help="restrict edge kinds"
    )
    p_match.add_argument("--json", action="store_true", help="one-line JSON summary")
    p_match.set_defaults(func=cmd_match)

    p_transfer = sub.add_parser(
        "transfer", help="mutate a session's edit script and write the output SVG"
    )
    p_transfer.add_argument("session", help="session file path (updated in place)")
    p_transfer.add_argument("output", help="output SVG path")
    p_transfer.add_argument(
        "--copy-all", dest="copy_all", action=_OrderedFlag, nargs=0,
        help="copy every matched style (text content stays original)",
    )
    p_transfer.add_argument(
        "--copy-none", dest="copy_none", action=_OrderedFlag, nargs=0,
        help="clear the edit script",
    )
    p_transfer.add_argument(
        "--set", dest="set", action=_OrderedFlag, nargs=3,
        metavar=("TARGETS", "ATTR", "STATE"),
        help="set state for comma-separated targets; STATE is copied|original|custom,VALUE",
    )
    p_transfer.add_argument(
        "--retarget", dest="retarget", action=_OrderedFlag, nargs=2,
        metavar=("TARGETS", "SOURCE"),
        help="rematch comma-separated targets to SOURCE and copy its style",
    )
    p_transfer.add_argument("--json", action="store_true", help="one-line JSON summary")
    p_transfer.set_defaults(func=cmd_transfer, mutations=[])

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8765)
    p_serve.add_argument("--static-dir", default=None, help="directory for UI assets")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
