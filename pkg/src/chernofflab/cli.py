"""Command line: ``chernofflab <task> --config <path> [--out <dir>] [--seed <u64>]``.

Exit status: 0 on success, 1 on a numerical or domain error, 2 on an
invalid configuration, 3 when a task's own checks fail.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .config import TASKS, ConfigError, RunConfig, load
from .output import write_csv, write_json
from .tasks import TASK_FUNCS


def _u64(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser():
    ap = argparse.ArgumentParser(prog="chernofflab", description="Quasi-analyticity laboratory "
                                 "for rank-one symmetric spaces.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("task", choices=TASKS)
    ap.add_argument("--config", required=True, help="JSON run configuration")
    ap.add_argument("--out", default=None, help="output directory (default: out/<task>)")
    ap.add_argument("--seed", type=_u64, default=None, help="overrides params.seed")
    return ap


def run(cfg: RunConfig, out_dir) -> int:
    """Execute a validated config and write all outputs; returns the exit status."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    result = TASK_FUNCS[cfg.task](cfg.params, cfg.io)
    files = []
    for tab in result.tables:
        name = f"{tab.name}.csv"
        write_csv(out / name, tab.header, tab.rows)
        files.append(name)
    for plot in result.plots:
        name = f"{plot.name}.csv"
        write_csv(out / name, [plot.xlabel, plot.ylabel], list(zip(plot.x, plot.y)))
        files.append(name)
        if cfg.io.get("plots", True):
            from .plotting import line_plot

            png = f"{plot.name}.png"
            line_plot(out / png, plot.x, {plot.ylabel: plot.y}, plot.xlabel, plot.ylabel,
                      title=cfg.task, logx=plot.logx, logy=plot.logy)
            files.append(png)
    report = {"library": "chernofflab", "version": __version__, "config": cfg.echo(),
              "results": result.results, "files": files, "ok": result.ok}
    write_json(out / "report.json", report)
    return 0 if result.ok else 3


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load(args.task, args.config, args.seed)
    except ConfigError as exc:
        print(f"chernofflab: {exc.diagnostic()}", file=sys.stderr)
        return 2
    out = args.out or str(Path("out") / args.task)
    try:
        return run(cfg, out)
    except (ValueError, ArithmeticError) as exc:
        print(f"chernofflab: error in task {args.task}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
