"""Command line front end.

``sewkit list`` prints the garment registry, ``sewkit eval`` evaluates
one garment against a body file and a design file and writes pattern
JSON (optionally SVG) into an output directory, and ``sewkit serve``
starts the HTTP service.  Failures are reported as one structured JSON
object per line on stderr so callers can parse them.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import garments
from .errors import SewkitError, UnknownGarmentError
from .flattening import FlatPattern, pattern_to_json, serialize
from .params import (
    BodyParams,
    load_body,
    load_design,
    merge_design,
    resolve_design,
    sample_design,
)
from .svg import render

# pattern-space placements are relative to a world origin at the body center
BODY_CENTER = (0.0, 0.0, 0.0)


def evaluate_pattern(
    garment: str, body: BodyParams, design_doc: dict | None = None
) -> tuple[FlatPattern, list[str]]:
    """Build one garment and flatten it; shared by the CLI and the service.

    ``design_doc`` is overlaid on the garment's template, so partial
    documents inherit defaults.  Returns the serialized pattern together
    with any clamp warnings raised while resolving the design.
    """
    spec = garments.get(garment)
    resolved = resolve_design(merge_design(spec.design_template(), design_doc), body)
    component = spec.build(body, resolved)
    return serialize(component, BODY_CENTER), list(resolved.warnings)


def _report(exc: SewkitError, garment: str | None) -> dict:
    rep = exc.report()
    if garment is not None:
        rep.setdefault("path", garment)
    return rep


def _fail(exc: SewkitError, garment: str | None, stream) -> int:
    print(json.dumps(_report(exc, garment), sort_keys=True), file=stream)
    return 2 if isinstance(exc, UnknownGarmentError) else 1


def _write_outputs(out: Path, stem: str, pattern: FlatPattern, svg: bool) -> None:
    (out / f"{stem}.json").write_text(pattern_to_json(pattern), encoding="utf-8")
    if svg:
        (out / f"{stem}.svg").write_text(render(pattern) + "\n", encoding="utf-8")


def _cmd_eval(args, stream) -> int:
    try:
        body = load_body(args.body)
        design = load_design(args.design) if args.design else None
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)

        if args.samples is None:
            pattern, warnings = evaluate_pattern(args.garment, body, design)
            _write_outputs(out, "pattern", pattern, args.svg)
            for w in warnings:
                print(f"warning: {w}", file=stream)
        else:
            spec = garments.get(args.garment)
            resolved = resolve_design(merge_design(spec.design_template(), design), body)
            for k in range(args.samples):
                doc = sample_design(resolved, body, seed=args.seed + k)
                pattern, _ = evaluate_pattern(args.garment, body, doc)
                _write_outputs(out, f"pattern_{k}", pattern, args.svg)
                (out / f"design_{k}.json").write_text(
                    json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
                )
    except OSError as exc:
        print(json.dumps({"code": "io", "message": str(exc)}), file=stream)
        return 1
    except SewkitError as exc:
        return _fail(exc, args.garment, stream)
    return 0


def _cmd_list(args, stream) -> int:
    for name in sorted(garments.names()):
        tags = ", ".join(sorted(garments.get(name).tags))
        print(f"{name}\t{tags}" if tags else name)
    return 0


def _cmd_serve(args, stream) -> int:
    import uvicorn

    from .service import app

    port = args.port if args.port is not None else int(os.environ.get("PORT", "8000"))
    uvicorn.run(app, host=args.host, port=port)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sewkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a garment to pattern JSON")
    ev.add_argument("--garment", required=True, help="registered garment name")
    ev.add_argument("--body", required=True, help="body measurement JSON file")
    ev.add_argument("--design", help="design JSON file (defaults to the garment template)")
    ev.add_argument("--out", required=True, help="output directory")
    ev.add_argument("--svg", action="store_true", help="also write SVG renders")
    ev.add_argument("--seed", type=int, default=0, help="base seed for sampling")
    ev.add_argument("--samples", type=int, help="sample K designs instead of evaluating one")
    ev.set_defaults(func=_cmd_eval)

    ls = sub.add_parser("list", help="print registered garments")
    ls.set_defaults(func=_cmd_list)

    sv = sub.add_parser("serve", help="run the HTTP service")
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, help="defaults to $PORT or 8000")
    sv.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args, sys.stderr)


if __name__ == "__main__":
    raise SystemExit(main())
