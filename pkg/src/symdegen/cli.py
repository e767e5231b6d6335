"""Command-line front end.

    symdegen clone-report --m 3
    symdegen sparse-report --m 4 --r 2
    symdegen verify <suite> --degen {generic,clone,sparse,general} --m M [--r R] [--map ...]
    symdegen list-suites
    symdegen replay report.json

Exit status: 0 when every check passes, 1 on a failed check or internal
error, 2 on a usage error.  Reports go to --output, else to
$SYMDEGEN_OUTPUT_DIR/<name>.<format>, else to stdout.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .report import Report, RunConfig, strip_timing, validate
from .sampling import DEFAULT_SEED, DEFAULT_TRIALS
from .suites import CLONE_REPORT, SPARSE_REPORT, SUITES, UsageError, degeneration, run_suites

OUTPUT_ENV = "SYMDEGEN_OUTPUT_DIR"


def _add_common(p: argparse.ArgumentParser, degen: bool = True) -> None:
    p.add_argument("--m", type=int, required=True, help="matrix size")
    p.add_argument("--r", type=int, default=None, help="sparsing parameter")
    if degen:
        p.add_argument("--degen", choices=["generic", "clone", "sparse", "general"], default="clone")
        p.add_argument("--map", default=None, help="general degeneration, e.g. '(2,3)->(1,1), (3,3)->0'")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-degree", type=int, default=None, help="cap for graded-piece initials (default m)")
    p.add_argument("--allow-slow", action="store_true", help="lift the default size caps")
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--output", default=None, help="report path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symdegen", description="Verify identities for degenerations of the generic symmetric matrix.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("clone-report", help="all clone suites"), degen=False)
    _add_common(sub.add_parser("sparse-report", help="all sparse suites"), degen=False)
    v = sub.add_parser("verify", help="run one suite")
    v.add_argument("suite", choices=sorted(SUITES))
    _add_common(v)
    sub.add_parser("list-suites", help="print the available suites")
    rp = sub.add_parser("replay", help="re-run a JSON report from its embedded config and compare")
    rp.add_argument("report")
    rp.add_argument("--output", default=None)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    degen = {"clone-report": "clone", "sparse-report": "sparse"}.get(args.command) or args.degen
    cfg = RunConfig(
        command=args.command,
        suite=getattr(args, "suite", None),
        m=args.m,
        degen=degen,
        r=args.r,
        map=getattr(args, "map", None),
        trials=args.trials,
        seed=args.seed,
        max_degree=args.max_degree,
        allow_slow=args.allow_slow,
        format=args.format,
    )
    if cfg.suite != "gorenstein":
        degeneration(cfg)
    return cfg


def execute(cfg: RunConfig) -> Report:
    if cfg.command == "clone-report":
        names = CLONE_REPORT
    elif cfg.command == "sparse-report":
        names = SPARSE_REPORT
    else:
        names = (cfg.suite,)
    return Report(cfg, run_suites(cfg, names))


def _default_name(cfg: RunConfig) -> str:
    parts = [cfg.command] + ([cfg.suite] if cfg.suite else []) + [cfg.degen, f"m{cfg.m}"]
    if cfg.r is not None:
        parts.append(f"r{cfg.r}")
    return "-".join(parts) + f".{cfg.format}"


def emit(text: str, cfg: RunConfig, output: Optional[str]) -> None:
    if output is None and os.environ.get(OUTPUT_ENV):
        output = str(Path(os.environ[OUTPUT_ENV]) / _default_name(cfg))
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _replay(path: str, output: Optional[str]) -> int:
    old = json.loads(Path(path).read_text())
    validate(old)
    cfg = RunConfig.from_dict(old["config"])
    cfg.format = "json"
    report = execute(cfg)
    new = report.to_dict()
    validate(new)
    same = strip_timing(new) == strip_timing(old)
    emit(report.to_json(), cfg, output)
    sys.stderr.write("replay matches\n" if same else "replay differs from the stored report\n")
    return 0 if same and report.status == "pass" else 1


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "list-suites":
        w = max(len(k) for k in SUITES)
        for name, (_, desc) in SUITES.items():
            print(f"{name.ljust(w)}  {desc}")
        return 0
    try:
        if args.command == "replay":
            return _replay(args.report, args.output)
        cfg = config_from_args(args)
        report = execute(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"symdegen: error: {exc}\n")
        return 2
    except Exception as exc:  # noqa: BLE001
        sys.stderr.write(f"symdegen: internal failure: {type(exc).__name__}: {exc}\n")
        return 1
    if cfg.format == "json":
        validate(report.to_dict())
    emit(report.render(cfg.format), cfg, args.output)
    return 0 if report.status == "pass" else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
