"""Command-line entry point: synth, track, compare, eval."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import config as cfgmod
from .errors import ConfigError, SpecError, TrackingError, WriteError
from .evaluation import comparison_table, format_csv, format_text, metrics_from_cc, sequence_metrics
from .imaging import Window
from .overlay import render_overlay
from .sequence_io import load_sequence, read_records, read_truth, write_records, write_sequence, write_truth
from .synthetic import SyntheticSpec, generate_synthetic
from .trackers import VARIANTS, canonical_variant, track_sequence

log = logging.getLogger("dmst")

TRUTH_FILE = "groundtruth.csv"


def _flag(key: str) -> str:
    return "--" + key.replace("_", "-")


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help=f"JSON config file (falls back to ${cfgmod.ENV_VAR})")
    g = p.add_argument_group("parameters (override the config file)")
    for key, (default, text) in cfgmod.DEFAULTS.items():
        g.add_argument(_flag(key), dest=f"cfg_{key}", metavar="V", help=f"{text} (default {default})")


def _settings(args) -> dict:
    overrides = {k[4:]: v for k, v in vars(args).items() if k.startswith("cfg_") and v is not None}
    return cfgmod.resolve(args.config, overrides)


def parse_box(text: str) -> Window:
    try:
        x, y, w, h = (float(p) for p in text.split(","))
    except ValueError:
        raise ConfigError(f"--init expects x,y,w,h, got {text!r}") from None
    if w <= 0 or h <= 0:
        raise ConfigError(f"--init width and height must be positive, got {text!r}")
    return Window.from_box(x, y, w, h)


def _initial_window(args, seqdir: Path) -> Window:
    if getattr(args, "init", None):
        return parse_box(args.init)
    truth = seqdir / TRUTH_FILE
    if truth.is_file():
        rows = read_truth(truth)
        if rows:
            return rows[0]
    raise ConfigError(f"no --init given and {truth} not found")


def _mkdir(path: Path) -> Path:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise WriteError(f"{path}: {exc}") from exc
    return path


def _write_text(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise WriteError(f"{path}: {exc}") from exc


def cmd_synth(args) -> int:
    try:
        spec = SyntheticSpec.from_dict(json.loads(Path(args.spec).read_text(encoding="utf-8")))
    except (OSError, json.JSONDecodeError, TypeError) as exc:
        raise SpecError(f"{args.spec}: {exc}") from exc
    frames, truth = generate_synthetic(spec)
    out = _mkdir(Path(args.outdir))
    write_sequence(frames, out, fmt=args.format)
    write_truth(truth, out / TRUTH_FILE)
    print(f"wrote {len(frames)} frames to {out}")
    return 0


def cmd_track(args) -> int:
    settings = _settings(args)
    seqdir, out = Path(args.seqdir), Path(args.outdir)
    tcfg = cfgmod.tracker_config(settings, args.variant)
    frames = load_sequence(seqdir)
    init = _initial_window(args, seqdir)
    records = track_sequence(frames, tcfg, init)
    _mkdir(out)
    write_records(records, out / "records.csv", tcfg.localization.min_dist)
    m = sequence_metrics(records, tcfg.localization.min_dist)
    summary = format_text(comparison_table([(seqdir.name, tcfg.variant, m)]))
    _write_text(out / "summary.txt", summary)
    if args.overlays:
        od = _mkdir(out / "overlays")
        for f, r in zip(frames, records):
            render_overlay(f, r.window, od / f"overlay_{r.frame:05d}.png")
    sys.stdout.write(summary)
    return 0


def cmd_compare(args) -> int:
    settings = _settings(args)
    *seqdirs, outdir = (Path(p) for p in args.paths)
    if not seqdirs:
        raise ConfigError("compare needs at least one sequence directory and an output directory")
    variants = [canonical_variant(v) for v in args.variants.split(",") if v.strip()]
    out = _mkdir(outdir)
    entries = []
    for seqdir in seqdirs:
        frames = load_sequence(seqdir)
        init = _initial_window(args, seqdir)
        for v in variants:
            tcfg = cfgmod.tracker_config(settings, v)
            records = track_sequence(frames, tcfg, init)
            write_records(records, out / f"{seqdir.name}_{v}.csv", tcfg.localization.min_dist)
            entries.append((seqdir.name, v, sequence_metrics(records, tcfg.localization.min_dist)))
    rows = comparison_table(entries)
    _write_text(out / "comparison.csv", format_csv(rows))
    text = format_text(rows)
    _write_text(out / "comparison.txt", text)
    sys.stdout.write(text)
    return 0


def cmd_eval(args) -> int:
    rows = read_records(args.records)
    m = metrics_from_cc([r.cc for r in rows], [r.iterations for r in rows], [r.lost for r in rows])
    if args.json:
        print(json.dumps({"mcc": m.mcc, "nv": m.nv, "iteration": m.mean_iterations, "loss": m.loss_rate, "frames": m.frames}))
    else:
        print(f"frames     {m.frames}")
        print(f"MCC        {m.mcc!r}")
        print(f"NV         {m.nv!r}")
        print(f"ITERATION  {m.mean_iterations!r}")
        print(f"LOSS       {m.loss_rate!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dmst", description="Mean-shift tracker toolkit")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="generate a synthetic sequence with ground truth")
    s.add_argument("spec", help="JSON synthetic spec")
    s.add_argument("outdir")
    s.add_argument("--format", choices=("png", "ppm"), default="png")
    s.set_defaults(func=cmd_synth)

    t = sub.add_parser("track", help="track one variant over a frame directory")
    t.add_argument("--variant", default="DMST", help=f"one of {', '.join(VARIANTS)}")
    t.add_argument("--init", help=f"initial box x,y,w,h (default: first row of {TRUTH_FILE})")
    t.add_argument("--overlays", action="store_true", help="write PNG overlays")
    _add_config_flags(t)
    t.add_argument("seqdir")
    t.add_argument("outdir")
    t.set_defaults(func=cmd_track)

    c = sub.add_parser("compare", help="run several variants and tabulate MCC, NV, iterations")
    c.add_argument("--variants", default=",".join(VARIANTS))
    c.add_argument("--init", help="initial box x,y,w,h applied to every sequence")
    _add_config_flags(c)
    c.add_argument("paths", nargs="+", metavar="SEQDIR... OUTDIR")
    c.set_defaults(func=cmd_compare)

    e = sub.add_parser("eval", help="recompute MCC and NV from a records CSV")
    e.add_argument("records")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        return args.func(args)
    except (TrackingError, ValueError) as exc:
        print(f"dmst: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
