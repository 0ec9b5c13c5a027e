"""Command line interface: build, inspect, query, and serve index bundles.

All command output on stdout is JSON (diagnostics go to stderr) so scripts
and tests can diff it directly against API responses. Exit codes: 0 success,
1 domain error, 2 I/O or bundle error, 64 usage.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from .bundle import IndexBundle
from .errors import (
    BundleError,
    DuplicateIdError,
    EmptyQueryError,
    InvalidPathError,
    LcsxError,
    MalformedRecordError,
    NotFoundError,
    ParseError,
    SchemaError,
    UnsupportedEncodingError,
)
from .hierarchy import PruneParams, build_graph, prune
from .ingest import (
    parse_auth_jsonl,
    parse_bib_jsonl,
    parse_iso2709,
    serialize_auth_jsonl,
    serialize_bib_jsonl,
)
from .search import build_index
from . import service

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2
EXIT_USAGE = 64

_INPUT_ERRORS = (
    ParseError,
    SchemaError,
    DuplicateIdError,
    MalformedRecordError,
    UnsupportedEncodingError,
)
_DOMAIN_ERRORS = (NotFoundError, EmptyQueryError, InvalidPathError)


class _Parser(argparse.ArgumentParser):
    """argparse, but usage problems exit with the conventional code 64."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def _built_at() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    when = (
        datetime.fromtimestamp(int(epoch), tz=timezone.utc)
        if epoch
        else datetime.now(tz=timezone.utc)
    )
    return when.strftime("%Y-%m-%dT%H:%M:%SZ")


def _load_bundle(path: str) -> IndexBundle:
    return IndexBundle.load(path)


def cmd_build(args: argparse.Namespace) -> int:
    bib_bytes = Path(args.bib).read_bytes()
    auth_bytes = Path(args.auth).read_bytes()
    if args.marc:
        bibs = parse_iso2709(bib_bytes, "bib")
        auths = parse_iso2709(auth_bytes, "authority")
    else:
        bibs = parse_bib_jsonl(io.BytesIO(bib_bytes))
        auths = parse_auth_jsonl(io.BytesIO(auth_bytes))

    graph, report = build_graph(auths, bibs)
    params = PruneParams(threshold=args.prune_threshold, collapse_chains=not args.no_collapse)
    pruned, prune_report = prune(graph, params)
    index = build_index(bibs, pruned)

    bundle = IndexBundle(
        graph=pruned,
        index=index,
        bibs=bibs,
        auths=auths,
        prune_params=params,
        meta={
            "built_at": _built_at(),
            "sources": {
                "bib": {"path": args.bib, "sha256": hashlib.sha256(bib_bytes).hexdigest()},
                "auth": {"path": args.auth, "sha256": hashlib.sha256(auth_bytes).hexdigest()},
            },
        },
    )
    bundle.save(args.out)
    _emit(
        {
            **report.as_dict(),
            "pruned": {
                "removed_by_threshold": len(prune_report.removed_by_threshold),
                "collapsed": len(prune_report.collapsed),
            },
            "stats": service.stats_view(bundle),
            "digest": bundle.content_digest(),
            "out": args.out,
        }
    )
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    bundle = _load_bundle(args.bundle)
    _emit(
        service.search_view(
            bundle,
            query=args.query or None,
            topic=args.topic,
            descendants=args.descendants,
            limit=args.top,
            offset=args.offset,
        )
    )
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    _emit(service.stats_view(_load_bundle(args.bundle)))
    return EXIT_OK


def cmd_locate(args: argparse.Namespace) -> int:
    bundle = _load_bundle(args.bundle)
    anchor = service.parse_path_param(args.anchor) if args.anchor else None
    _emit(service.locate_view(bundle, args.topic, anchor))
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    bundle = _load_bundle(args.bundle)
    Path(args.bib_out).write_text(serialize_bib_jsonl(bundle.bibs), encoding="utf-8")
    Path(args.auth_out).write_text(serialize_auth_jsonl(bundle.auths), encoding="utf-8")
    _emit(
        {
            "bib": args.bib_out,
            "auth": args.auth_out,
            "records": len(bundle.bibs),
            "authorities": len(bundle.auths),
        }
    )
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    bundle_path = args.bundle or os.environ.get("LCSX_BUNDLE")
    if not bundle_path:
        raise BundleError("no bundle: pass BUNDLE or set LCSX_BUNDLE")
    app = service.create_app(
        bundle=_load_bundle(bundle_path),
        cors_origin=args.cors_origin or os.environ.get("LCSX_CORS_ORIGIN"),
    )
    port = args.port or int(os.environ.get("LCSX_PORT", "8000"))
    uvicorn.run(app, host=args.host, port=port)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="lcsx", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="parse sources, build the graph and index, write a bundle")
    p.add_argument("--bib", required=True, help="bib records (JSONL, or ISO 2709 with --marc)")
    p.add_argument("--auth", required=True, help="authority records (JSONL, or ISO 2709 with --marc)")
    p.add_argument("--marc", action="store_true", help="inputs are ISO 2709 binary")
    p.add_argument("--out", required=True, help="bundle output path")
    p.add_argument("--prune-threshold", type=int, default=1, metavar="N")
    p.add_argument("--no-collapse", action="store_true", help="keep empty single-child chain topics")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("search", help="ranked keyword search against a bundle")
    p.add_argument("bundle")
    p.add_argument("query", help="query terms (may be empty when --topic is given)")
    p.add_argument("--topic", type=int, default=None, help="restrict to a topic id")
    p.add_argument("--descendants", action="store_true", help="topic filter includes descendants")
    p.add_argument("--top", type=int, default=10, metavar="N", help="page size (max 100)")
    p.add_argument("--offset", type=int, default=0, metavar="N")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("stats", help="tree statistics of a bundle")
    p.add_argument("bundle")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("locate", help="nearest copy of a topic in the unfolded tree")
    p.add_argument("bundle")
    p.add_argument("--topic", type=int, required=True)
    p.add_argument("--anchor", help="comma-separated path of the last selected topic")
    p.set_defaults(func=cmd_locate)

    p = sub.add_parser("export", help="re-serialize a bundle's records to canonical JSONL")
    p.add_argument("bundle")
    p.add_argument("--bib-out", required=True)
    p.add_argument("--auth-out", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the HTTP JSON API")
    p.add_argument("bundle", nargs="?", help="bundle path (or LCSX_BUNDLE)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None, help="port (or LCSX_PORT, default 8000)")
    p.add_argument("--cors-origin", default=None, help="allowed UI origin (or LCSX_CORS_ORIGIN)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "build" and args.prune_threshold < 1:
        parser.error(f"--prune-threshold must be >= 1, got {args.prune_threshold}")
    if args.command == "search" and not 1 <= args.top <= 100:
        parser.error(f"--top must be between 1 and 100, got {args.top}")
    if args.command == "search" and args.offset < 0:
        parser.error(f"--offset must be >= 0, got {args.offset}")

    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"lcsx: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except _DOMAIN_ERRORS as exc:
        print(f"lcsx: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except BundleError as exc:
        print(f"lcsx: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"lcsx: {exc}", file=sys.stderr)
        return EXIT_IO
    except LcsxError as exc:
        print(f"lcsx: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
