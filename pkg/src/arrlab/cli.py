"""Command line front end: ``arrlab analyze | batch | catalog``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import catalog
from .arrangement import to_document
from .conjectures import CONSISTENT, INCONCLUSIVE, VIOLATION, LatticeCertificate, conjecture12_check
from .errors import ArrlabError, InternalError, NotEssentialError
from .pipeline import analyze, error_report, load_source, render, to_report

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_NOT_ESSENTIAL = 3
EXIT_INTERNAL = 4

# batch exit status is the most severe code seen, in this order
_SEVERITY = [EXIT_OK, EXIT_NOT_ESSENTIAL, EXIT_INPUT, EXIT_VIOLATION, EXIT_INTERNAL]


def exit_code_for(exc: ArrlabError) -> int:
    if isinstance(exc, NotEssentialError):
        return EXIT_NOT_ESSENTIAL
    if isinstance(exc, InternalError):
        return EXIT_INTERNAL
    # parse, construction, non-reduced and not-stabilized (non-reduced polynomial) inputs
    return EXIT_INPUT


def most_severe(codes: Sequence[int]) -> int:
    return max(codes, key=_SEVERITY.index, default=EXIT_OK)


def run_one(source: str, h1: int | None = None, rational: bool = False, skip_spectrum: bool = False,
            timings: bool = False) -> tuple[dict, int, dict | None]:
    """Analyze one source; returns (report, exit code, group-check record or None)."""
    try:
        arr = load_source(source)
        result = analyze(arr, h1=h1, rational=rational, skip_spectrum=skip_spectrum)
    except ArrlabError as exc:
        return error_report(source, exc), exit_code_for(exc), None
    except ValueError as exc:
        return {"input": source, "error": {"code": "PARSE_ERROR", "message": str(exc)}}, EXIT_INPUT, None
    report = to_report(result, timings=timings)
    code = EXIT_VIOLATION if result.has_violation() else EXIT_OK
    record = None
    if result.certificate is not None:
        record = {
            "name": source,
            "certificate": result.certificate.encoding,
            "d": result.d,
            "nu": result.nu,
            "splitting_type": list(result.splitting_type),
        }
    return report, code, record


class _GroupItem:
    def __init__(self, rec: dict):
        self.name = rec["name"]
        self.certificate = LatticeCertificate(rec["d"], rec["certificate"])
        self.nu = rec["nu"]
        self.splitting_type = tuple(rec["splitting_type"])


def _run_one_star(args):
    return run_one(*args)


def batch(directory: str, jobs: int = 1, h1: int | None = None, out=sys.stdout) -> int:
    root = Path(directory)
    if not root.is_dir():
        print(json.dumps({"error": {"code": "PARSE_ERROR", "message": f"{directory} is not a directory"}}), file=out)
        return EXIT_INPUT
    sources = sorted(str(p) for p in root.iterdir() if p.is_file() and p.suffix == ".json")
    tasks = [(s, h1) for s in sources]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one_star, tasks))
    else:
        results = [run_one(*t) for t in tasks]

    counts = {CONSISTENT: 0, INCONCLUSIVE: 0, VIOLATION: 0}
    codes = []
    records = []
    errors = 0
    for report, code, record in results:
        print(render(report, compact=True), file=out)
        codes.append(code)
        if "error" in report:
            errors += 1
        for v in report.get("verdicts", []):
            counts[v["status"]] += 1
        if record is not None:
            records.append(_GroupItem(record))

    group = conjecture12_check(records)
    counts[group.status] += 1
    if group.status == VIOLATION:
        codes.append(EXIT_VIOLATION)
    aggregate = {
        "aggregate": {
            "files": len(sources),
            "errors": errors,
            "verdicts": counts,
            "conjecture12": {"status": group.status, "details": group.details},
        }
    }
    print(render(_stringify(aggregate), compact=True), file=out)
    return most_severe(codes)


def _stringify(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_stringify(v) for v in obj]
    return obj


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arrlab", description="Freeness defect and Walther bound of line arrangements.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one arrangement (file path or catalog:family:params)")
    p.add_argument("source")
    p.add_argument("--h1", type=int, default=None, help="dim H^1(F)_{-1}, used for even d")
    p.add_argument("--rational", action="store_true", help="all components of a bare polynomial are rational")
    p.add_argument("--skip-spectrum", action="store_true")
    p.add_argument("--json", action="store_true", help="compact single-line JSON")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identity)")

    b = sub.add_parser("batch", help="analyze every *.json file in a directory")
    b.add_argument("directory")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--h1", type=int, default=None)

    c = sub.add_parser("catalog", help="emit the input JSON of a catalog arrangement")
    c.add_argument("spec")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        report, code, _ = run_one(args.source, args.h1, args.rational, args.skip_spectrum, args.timings)
        print(render(report, compact=args.json))
        return code
    if args.command == "batch":
        return batch(args.directory, jobs=max(1, args.jobs), h1=args.h1)
    try:
        arr = catalog.build(args.spec if args.spec.startswith("catalog:") else f"catalog:{args.spec}")
    except ArrlabError as exc:
        print(render(error_report(args.spec, exc)))
        return exit_code_for(exc)
    print(json.dumps(to_document(arr), indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
