# app/cli.py
"""
Command-line entry point: `dimforce <command>` or `python -m app <command>`.

Commands:
 - compute       parameters of one graph (edge-list / graph6 / JSON file or --family) as JSON
 - sweep         registered checks over a family or corpus file; JSON + CSV reports
 - verify-paper  the fixed regression suite (alias: verify)
 - generate      write a family as edge lists, graph6 or JSON
 - schema        JSON schemas of the report models
 - serve         the HTTP surface (uvicorn)

Exit status: 0 ok, 1 a theorem check failed, 2 bad input or configuration.
Conjecture counterexamples are reported but never change the exit status.
"""
import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from app.config import Caps, get_settings, parse_caps
from app.lab.checks import resolve_checks
from app.lab.families import FAMILY_FORMS, generate, parse_family, single_graph
from app.lab.report import METHODS, compute_report
from app.lab.suite import verify_paper_suite
from app.lab.sweeps import SweepItem, family_items, family_sweep, run_sweep
from app.models.schemas import ParameterReport, SuiteResult, SweepResult
from app.storage.graph_files import FORMATS, format_graphs, read_graphs
from app.storage.reports_store import dump_json, save_report_json, save_summary_csv
from app.utils.errors import ConfigError, DimforceError, ParseError
from app.utils.logging import configure_logging

logger = logging.getLogger("dimforce.cli")


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=None, help="debug|info|warning|error (default: DIMFORCE_LOG_LEVEL)")
    common.add_argument("--quiet", action="store_true", help="warnings only, no progress bars")
    common.add_argument("--cap", type=int, default=None, help="brute-force and path-cover cap")
    common.add_argument("--caps", default=None, help="cap override string, e.g. 6 or brute=14,path_cover=10")
    common.add_argument("--workers", type=int, default=None, help="process workers (default: DIMFORCE_WORKERS)")
    return common


def _labeled_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--labeled", action="store_true", help="labeled enumeration instead of isomorphism classes")
    p.add_argument("--dedup", action="store_true", help="with --labeled: keep one graph per isomorphism class")
    p.add_argument("--big", action="store_true", help="allow the larger all_connected enumeration cap")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="dimforce", description="Metric dimension, zero forcing and path cover toolkit."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="parameters of one graph as JSON")
    p.add_argument("input", nargs="?", type=Path, help="edge-list, graph6 (.g6) or JSON graph file")
    p.add_argument("--family", help="a single-graph family spec, e.g. c4_bouquet:2")
    p.add_argument("--format", choices=FORMATS, default=None, help="input format (default: by file extension)")
    p.add_argument("--method", choices=METHODS, default="bruteforce", help="dim by brute force, tree formula, or both")
    p.add_argument("--path-cover", action="store_true", help="also compute P(G)")
    p.add_argument("--no-timing", action="store_true", help="omit timings (byte-stable output)")
    p.add_argument("--out", type=Path, default=None, help="write JSON here instead of stdout")
    p.set_defaults(handler=cmd_compute)

    p = sub.add_parser("sweep", parents=[common], help="run checks over a family or corpus")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--family", help=f"one of: {', '.join(FAMILY_FORMS)}")
    source.add_argument("--corpus", type=Path, help="edge-list, graph6 or JSON file of graphs")
    p.add_argument("--check", default="", help="comma-separated check names (default: all)")
    _labeled_flags(p)
    p.add_argument("--even-cycles", action="store_true", help="record even cycle rank where dim > Z")
    p.add_argument("--no-timing", action="store_true", help="omit timings (byte-stable output)")
    p.add_argument("--out", type=Path, default=None, help="report directory (default: DIMFORCE_REPORTS_DIR)")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("verify-paper", aliases=["verify"], parents=[common], help="run the regression suite")
    p.add_argument("--no-timing", action="store_true", help="omit timings (byte-stable output)")
    p.add_argument("--out", type=Path, default=None, help="report directory (default: DIMFORCE_REPORTS_DIR)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("generate", parents=[common], help="write the graphs of a family")
    p.add_argument("spec", help=f"one of: {', '.join(FAMILY_FORMS)}")
    p.add_argument("--format", choices=FORMATS, default="edgelist")
    _labeled_flags(p)
    p.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("schema", parents=[common], help="print the JSON schemas of the report models")
    p.set_defaults(handler=cmd_schema)

    p = sub.add_parser("serve", parents=[common], help="serve the HTTP API with uvicorn")
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)
    p.set_defaults(handler=cmd_serve)
    return parser


def effective_caps(args: argparse.Namespace) -> Caps:
    """Configured caps with --caps (or --cap) applied on top; the environment is left alone."""
    override = args.caps if args.caps is not None else (str(args.cap) if args.cap is not None else None)
    return parse_caps(override, get_settings().caps())


def effective_workers(args: argparse.Namespace) -> int:
    workers = args.workers if args.workers is not None else get_settings().WORKERS
    if workers < 1:
        raise ConfigError(f"--workers must be at least 1 (got {workers})")
    return workers


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info("wrote %s", out)


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", text).strip("_") or "corpus"


def _progress(args: argparse.Namespace) -> bool:
    return not args.quiet and sys.stderr.isatty()


def _require_labeled(args: argparse.Namespace) -> None:
    if args.dedup and not args.labeled:
        raise ParseError("--dedup only applies to --labeled enumeration", "--dedup")


# ---------------------------------------------------------------------------
# commands


def cmd_compute(args: argparse.Namespace, caps: Caps, workers: int) -> int:
    if (args.input is None) == (args.family is None):
        raise ParseError("give exactly one of an input file or --family", "compute")
    graphs = [single_graph(args.family)] if args.family else read_graphs(args.input, args.format)
    if not graphs:
        raise ParseError("no graph found", str(args.input))
    reports = [
        compute_report(
            g, method=args.method, path_cover=args.path_cover, caps=caps, timing=not args.no_timing, workers=workers
        )
        for g in graphs
    ]
    if len(reports) == 1:
        text = dump_json(reports[0])
    else:
        text = json.dumps([r.model_dump(mode="json") for r in reports], sort_keys=True, indent=2) + "\n"
    _emit(text, args.out)
    failed = sum(1 for r in reports for v in r.verdicts if v.kind == "theorem" and v.status == "fail")
    return 1 if failed else 0


def format_summary(result: SweepResult) -> str:
    rows = [("check", "kind", "passed", "failed", "n/a")]
    for name in sorted(result.tallies):
        t = result.tallies[name]
        rows.append((name, t.kind, str(t.passed), str(t.failed), str(t.not_applicable)))
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    lines = [f"corpus: {result.corpus} ({result.graphs_checked} graphs)"]
    for row in rows:
        cells = [cell.ljust(w) if i < 2 else cell.rjust(w) for i, (cell, w) in enumerate(zip(row, widths))]
        lines.append("  ".join(cells))
    for v in result.violations:
        tag = "THEOREM VIOLATION" if v.kind == "theorem" else "possible counterexample"
        lines.append(f"{tag}: {v.check} on n={v.graph.n} edges={v.graph.edges}: {v.detail}")
    for tag, count in result.example_counts.items():
        lines.append(f"examples {tag}: {count}")
    return "\n".join(lines) + "\n"


def _corpus_items(path: Path) -> List[SweepItem]:
    graphs = read_graphs(path)
    usable = [g for g in graphs if g.n >= 2 and g.is_connected]
    if len(usable) < len(graphs):
        logger.warning("skipping %d disconnected or single-vertex graph(s) in %s", len(graphs) - len(usable), path)
    return [SweepItem(g) for g in usable]


def cmd_sweep(args: argparse.Namespace, caps: Caps, workers: int) -> int:
    _require_labeled(args)
    progress = _progress(args)
    if args.family:
        result = family_sweep(
            args.family,
            args.check,
            labeled=args.labeled,
            big=args.big,
            caps=caps,
            workers=workers,
            progress=progress,
            even_cycles=args.even_cycles,
            dedup=args.dedup,
        )
    else:
        checks = resolve_checks(args.check)
        result = run_sweep(
            _corpus_items(args.corpus),
            checks,
            args.corpus.name,
            caps,
            workers,
            progress=progress,
            even_cycles=args.even_cycles,
        )
    if args.no_timing:
        result.timing_seconds = None
    out_dir = args.out or Path(get_settings().REPORTS_DIR)
    stem = f"sweep_{_slug(result.corpus)}"
    save_report_json(out_dir / f"{stem}.json", result)
    save_summary_csv(out_dir / f"{stem}.csv", result)
    sys.stdout.write(format_summary(result))
    return 1 if result.theorem_failures else 0


def format_suite(result: SuiteResult) -> str:
    lines = []
    for f in result.fixtures:
        suffix = f" ({f.detail})" if f.detail else ""
        lines.append(f"[{f.status:>7}] {f.name}: {f.statement}{suffix}")
    for name, sweep in result.sweeps.items():
        lines.append(f"sweep {name} ({sweep.corpus}, {sweep.graphs_checked} graphs)")
        for check in sorted(sweep.tallies):
            t = sweep.tallies[check]
            lines.append(f"  {check:<24} {t.kind:<10} passed={t.passed} failed={t.failed} n/a={t.not_applicable}")
    lines.append("ALL PASS" if result.passed else "FAILURES")
    return "\n".join(lines) + "\n"


def cmd_verify(args: argparse.Namespace, caps: Caps, workers: int) -> int:
    result = verify_paper_suite(caps, workers=workers, progress=_progress(args))
    if args.no_timing:
        result.timing_seconds = None
        for sweep in result.sweeps.values():
            sweep.timing_seconds = None
    save_report_json((args.out or Path(get_settings().REPORTS_DIR)) / "verify_suite.json", result)
    sys.stdout.write(format_suite(result))
    return 0 if result.passed else 1


def cmd_generate(args: argparse.Namespace, caps: Caps, workers: int) -> int:
    _require_labeled(args)
    spec = parse_family(args.spec)
    if args.dedup:
        graphs = [item.g for item in family_items(spec, labeled=True, big=args.big, caps=caps, dedup=True)]
    else:
        graphs = list(generate(spec, labeled=args.labeled, big=args.big, caps=caps))
    logger.info("generated %d graph(s) for %s", len(graphs), spec)
    _emit(format_graphs(graphs, args.format), args.out)
    return 0


def cmd_schema(args: argparse.Namespace, caps: Caps, workers: int) -> int:
    schemas = {model.__name__: model.model_json_schema() for model in (ParameterReport, SweepResult, SuiteResult)}
    sys.stdout.write(json.dumps(schemas, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_serve(args: argparse.Namespace, caps: Caps, workers: int) -> int:
    import uvicorn

    settings = get_settings()
    if args.cap is not None or args.caps is not None:
        logger.warning("--cap/--caps do not reach the server process; set DIMFORCE_CAPS instead")
    uvicorn.run(
        "app.main:app",
        host=args.host or settings.API_HOST,
        port=args.port or settings.API_PORT,
        reload=settings.ENV == "dev",
        log_level=settings.LOG_LEVEL.lower(),
    )
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = get_settings()
        level = "warning" if args.quiet else (args.log_level or settings.LOG_LEVEL)
        configure_logging(level)
        return args.handler(args, effective_caps(args), effective_workers(args))
    except DimforceError as exc:
        logger.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
