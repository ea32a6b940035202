"""Command-line front end: ``iccode analyze|encode|certify FILE...``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, List, Optional, Sequence, Tuple

from .errors import InputError
from .io import load_instance, parse_override
from .pipeline import EXIT_INTERNAL, EXIT_INVALID, run_command
from .verify import DEFAULT_MAX_EXACT


def _run_one(job: Tuple[str, str, dict]) -> Tuple[dict, int]:
    command, path, kwargs = job
    try:
        ifile = load_instance(path)
    except InputError as exc:
        return {"command": command, "instance": path, "status": "input-error",
                "error": {"kind": "input-error", "message": str(exc)}}, EXIT_INVALID
    return run_command(command, ifile, **kwargs)


def to_json(report: Any) -> str:
    return json.dumps(report, indent=2)


def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return json.dumps(v) if isinstance(v, (dict, list)) else str(v)


def to_text(report: dict) -> str:
    """Two-column key/value table; nested objects are flattened with dots."""
    rows: List[Tuple[str, str]] = []

    def walk(prefix: str, v: Any) -> None:
        if isinstance(v, dict) and v:
            for k, x in v.items():
                walk(f"{prefix}.{k}" if prefix else k, x)
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v) and prefix != "code.rows":
            for i, x in enumerate(v):
                walk(f"{prefix}[{i}]", x)
        elif prefix == "code.rows":
            for i, x in enumerate(v):
                rows.append((f"row {i}", "+".join(f"x{s}" for s in x["support"]) + f"  ({x['provenance']})"))
        else:
            rows.append((prefix, _scalar(v)))

    walk("", report)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iccode", description="Index codes for IC structures with interlocked outer cycles.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("files", nargs="+", help="instance JSON files")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--jobs", type=int, default=1, help="process files in parallel")
    sub.add_parser("analyze", parents=[common], help="structural report")
    for name, help_text in (("encode", "emit the index code"), ("certify", "encode, verify and certify optimality")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--override-partition", metavar="A/B", help='inner bipartition, e.g. "1,2,5,7/3,4,6,8"')
        if name == "certify":
            p.add_argument("--mais", choices=("exact", "witness", "auto"), default="auto")
            p.add_argument("--max-vertices-exact", type=int, default=DEFAULT_MAX_EXACT)
            p.add_argument("--identity", action="store_true", help="certify the uncoded identity code instead")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    kwargs: dict = {}
    try:
        if getattr(args, "override_partition", None):
            kwargs["override"] = parse_override(args.override_partition)
    except InputError as exc:
        print(f"iccode: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.command == "certify":
        kwargs.update(mais_mode=args.mais, max_exact=args.max_vertices_exact, identity=args.identity)
    jobs = [(args.command, path, kwargs) for path in args.files]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]

    reports = [r for r, _ in results]
    if args.format == "json":
        print(to_json(reports[0] if len(reports) == 1 else reports))
    else:
        print("\n\n".join(to_text(r) for r in reports))
    codes = [c for _, c in results]
    # An internal failure outranks everything; otherwise report the worst code.
    return EXIT_INTERNAL if EXIT_INTERNAL in codes else max(codes)


if __name__ == "__main__":
    sys.exit(main())
