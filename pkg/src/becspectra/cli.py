"""Command-line front end.

    becspectra presets [--json]
    becspectra spectrum --model two_mode --preset II.star --N 360
    becspectra dos --preset I.tri --preset I.sq --preset I.dot --N 1000 --svg dos.svg
    becspectra spacings --model three_mode --preset III.star --sectors 400 --out run/

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict, fields

import numpy as np

from . import experiments, presets, stats, svg
from .errors import BracketingFailure, DomainError, FitFailure
from .presets import MODELS, NONINTEGRABLE, THREE_MODE, TWO_MODE
from .three_mode import ThreeModeCouplings
from .two_mode import TwoModeCouplings

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

TWO_FIELDS = [f.name for f in fields(TwoModeCouplings)]
THREE_FIELDS = [f.name for f in fields(ThreeModeCouplings)]
MODEL_ALIASES = {"nonintegrable": NONINTEGRABLE}

DEFAULT_SECTORS = {
    TWO_MODE: "360:400:4",
    THREE_MODE: "400",
    NONINTEGRABLE: "50:100:10",
}


class ConfigError(Exception):
    pass


def fmt(x: float) -> str:
    return f"{x:.17g}"


def read_config(path):
    """key=value per line; '#' starts a comment."""
    cfg = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (t.strip() for t in line.split("=", 1))
            cfg[key.replace("-", "_")] = value
    return cfg


def _setting(args, cfg, name, default=None, cast=str):
    v = getattr(args, name, None)
    if v is not None:
        return v
    if name in cfg:
        try:
            return cast(cfg[name])
        except ValueError:
            raise ConfigError(f"bad value for {name}: {cfg[name]!r}") from None
    return default


def resolve_runs(args, cfg):
    """List of (name, model, couplings) after applying preset < config < flags."""
    preset_names = args.preset or ([cfg["preset"]] if "preset" in cfg else [])
    model = _setting(args, cfg, "model")
    if model is not None:
        model = MODEL_ALIASES.get(model, model)
        if model not in MODELS:
            raise ConfigError(f"unknown model {model!r}; valid: {', '.join(MODELS)}")

    chosen = []
    for name in preset_names:
        try:
            chosen.append(presets.get(name))
        except KeyError as exc:
            raise ConfigError(exc.args[0]) from None

    if model is None:
        model = chosen[0].models[0] if chosen else TWO_MODE
    names = TWO_FIELDS if model == TWO_MODE else THREE_FIELDS

    def overrides():
        out = {}
        for f in names:
            v = _setting(args, cfg, f, cast=float)
            if v is not None:
                out[f] = v
        if model == TWO_MODE:
            om = _setting(args, cfg, "omega", cast=float)
            if om is not None and "ej" not in out:
                out["ej"] = om
        return out

    extra = overrides()
    cls = TwoModeCouplings if model == TWO_MODE else ThreeModeCouplings
    runs = []
    for p in chosen:
        if model not in p.models:
            raise ConfigError(f"preset {p.name} does not apply to model {model}")
        runs.append((p.name, model, cls(**{**asdict(p.couplings), **extra})))
    if not runs:
        runs.append(("custom", model, cls(**extra)))
    return runs


def resolve_sectors(args, cfg, model, default=None):
    n = _setting(args, cfg, "N", cast=int)
    text = _setting(args, cfg, "sectors")
    if n is not None and text is not None:
        raise ConfigError("give either --N or --sectors, not both")
    if n is not None:
        text = str(n)
    if text is None:
        text = default or DEFAULT_SECTORS[model]
    try:
        return experiments.parse_sectors(str(text))
    except DomainError as exc:
        raise ConfigError(str(exc)) from None


def _ascii(name: str) -> str:
    table, sym = name.split(".", 1) if "." in name else ("", name)
    sym = presets.SYMBOL_ALIASES.get(sym, (sym,))[0]
    return f"{table}.{sym}" if table else sym


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _write_csv(fh, header, rows):
    w = csv.writer(fh, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)


def _json_dump(obj, fh):
    json.dump(obj, fh, indent=2, sort_keys=True, ensure_ascii=False)
    fh.write("\n")


# ---------------------------------------------------------------- commands


def cmd_presets(args, cfg):
    items = [p.as_dict() for p in presets.ALL]
    if args.json:
        _json_dump(items, sys.stdout)
        return 0
    for p in presets.ALL:
        values = ", ".join(f"{k}={v:g}" for k, v in asdict(p.couplings).items())
        aliases = ",".join(f"{p.table}.{a}" for a in presets.SYMBOL_ALIASES[p.symbol])
        print(f"{p.name:7s} {'/'.join(p.models):35s} {values}  [{aliases}]")
    return 0


def cmd_spectrum(args, cfg):
    runs = resolve_runs(args, cfg)
    if len(runs) != 1:
        raise ConfigError("spectrum takes a single preset")
    name, model, couplings = runs[0]
    sectors = resolve_sectors(args, cfg, model)
    h1 = _setting(args, cfg, "h1_strength", 1.0, float)
    coll = experiments.collect(model, couplings, sectors, h1_strength=h1, jobs=args.jobs)
    fmt_ = _setting(args, cfg, "format", "csv")
    fh, close = _open_out(_setting(args, cfg, "out"))
    try:
        if fmt_ == "json":
            _json_dump(
                {
                    "model": model,
                    "preset": name,
                    "couplings": asdict(couplings),
                    "sectors": [{"label": lab, "energies": [float(x) for x in e]} for lab, e in coll.sectors],
                },
                fh,
            )
        else:
            rows = [(lab, i, fmt(x)) for lab, e in coll.sectors for i, x in enumerate(e)]
            _write_csv(fh, ["sector_label", "index", "energy"], rows)
    finally:
        if close:
            fh.close()
    return 0


def cmd_dos(args, cfg):
    runs = resolve_runs(args, cfg)
    bins = _setting(args, cfg, "bins", experiments.DOS_BINS, int)
    rows, series, meta = [], [], []
    for name, model, couplings in runs:
        sectors = resolve_sectors(args, cfg, model, default=str(experiments.DOS_N))
        coll = experiments.collect(model, couplings, sectors, jobs=args.jobs)
        prof = experiments.dos_profile(coll.merged(), bins)
        rows += [(name, fmt(c), int(n)) for c, n in zip(prof.dos.centers, prof.dos.counts)]
        series.append((name, prof.dos.centers, prof.dos.counts, "steps"))
        meta.append(
            {
                "preset": name,
                "model": model,
                "levels": coll.n_levels,
                "central_cv": prof.central_cv,
                "low_energy_deviation": prof.low_energy_deviation,
            }
        )
    fmt_ = _setting(args, cfg, "format", "csv")
    fh, close = _open_out(_setting(args, cfg, "out"))
    try:
        if fmt_ == "json":
            _json_dump({"profiles": meta, "bins": [dict(zip(("preset", "bin_center", "count"), r)) for r in rows]}, fh)
        else:
            _write_csv(fh, ["preset", "bin_center", "count"], rows)
    finally:
        if close:
            fh.close()
    path = _setting(args, cfg, "svg")
    if path:
        svg.write(path, series, title="Density of states", xlabel="E", ylabel="levels per bin")
    return 0


def _read_spectrum_csv(path):
    sectors, order = {}, []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"sector_label", "index", "energy"} <= set(reader.fieldnames):
            raise ConfigError(f"{path}: expected columns sector_label,index,energy")
        for row in reader:
            lab = row["sector_label"]
            if lab not in sectors:
                sectors[lab] = []
                order.append(lab)
            sectors[lab].append(float(row["energy"]))
    return stats.SpectrumCollection([(lab, np.array(sectors[lab])) for lab in order])


def _spacing_outputs(report, outdir, svg_path, name):
    h, r = report.histogram, report.rescaled
    hist_rows = [
        (fmt(a), fmt(b), fmt(c), int(n), fmt(d))
        for a, b, c, n, d in zip(h.bin_edges[:-1], h.bin_edges[1:], h.centers, h.counts, h.densities)
    ]
    s = r.centers
    resc_rows = [
        (fmt(x), fmt(d), fmt(p), fmt(w))
        for x, d, p, w in zip(s, r.densities, stats.reference_poisson(s), stats.reference_wigner(s))
    ]
    if outdir:
        os.makedirs(outdir, exist_ok=True)
        with open(os.path.join(outdir, "histogram.csv"), "w", encoding="utf-8", newline="") as fh:
            _write_csv(fh, ["bin_left", "bin_right", "bin_center", "count", "density"], hist_rows)
        with open(os.path.join(outdir, "rescaled.csv"), "w", encoding="utf-8", newline="") as fh:
            _write_csv(fh, ["s", "density", "poisson", "wigner"], resc_rows)
        with open(os.path.join(outdir, "report.json"), "w", encoding="utf-8") as fh:
            _json_dump({"preset": name, **report.summary()}, fh)
    if svg_path:
        grid = np.linspace(0.0, max(float(s.max()), 1e-12), 200)
        svg.write(
            svg_path,
            [
                (name, s, r.densities, "points"),
                ("exp(-s)", grid, stats.reference_poisson(grid), "dashed"),
                ("Wigner", grid, stats.reference_wigner(grid), "line"),
            ],
            title=f"Level spacings, {name}",
            xlabel="s",
            ylabel="P(s)",
        )


def cmd_spacings(args, cfg):
    bins = _setting(args, cfg, "bins", 45, int)
    discard = _setting(args, cfg, "discard_factor", 100.0, float)
    cross = not args.per_sector_spacings
    h1 = _setting(args, cfg, "h1_strength", 1.0, float)
    outdir = _setting(args, cfg, "out")
    svg_path = _setting(args, cfg, "svg")

    if args.input:
        jobs = [("input", None, _read_spectrum_csv(args.input))]
    else:
        jobs = []
        for name, model, couplings in resolve_runs(args, cfg):
            sectors = resolve_sectors(args, cfg, model)
            coll = experiments.collect(model, couplings, sectors, h1_strength=h1, jobs=args.jobs)
            jobs.append((name, model, coll))

    summaries = []
    status = 0
    for name, model, coll in jobs:
        sub = outdir if (outdir is None or len(jobs) == 1) else os.path.join(outdir, _ascii(name))
        sub_svg = svg_path
        if svg_path and len(jobs) > 1:
            root, ext = os.path.splitext(svg_path)
            sub_svg = f"{root}_{_ascii(name)}{ext or '.svg'}"
        try:
            report = experiments.spacing_analysis(coll, bins=bins, discard_factor=discard, cross_sector=cross)
        except FitFailure as exc:
            fb = exc.fallback
            summaries.append(
                {
                    "preset": name,
                    "error": str(exc),
                    "fallback": None if fb is None else {"gamma": fb.gamma, "beta": fb.beta, "residual_rms": fb.residual_rms},
                }
            )
            status = EXIT_NUMERICAL
            continue
        _spacing_outputs(report, sub, sub_svg, name)
        summaries.append({"preset": name, "model": model, **report.summary()})
    _json_dump(summaries if len(summaries) > 1 else summaries[0], sys.stdout)
    return status


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="becspectra", description="Level statistics of coupled condensate models.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=list(MODELS) + list(MODEL_ALIASES))
    common.add_argument("--preset", action="append", help="preset name, e.g. II.star (repeatable)")
    common.add_argument("--N", type=int, help="single sector")
    common.add_argument("--sectors", help="start:end:step, end inclusive")
    common.add_argument("--config", help="file of key=value lines")
    common.add_argument("--out", help="output file (directory for spacings)")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--svg", help="write an SVG plot here")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for independent sectors")
    common.add_argument("--h1-strength", dest="h1_strength", type=float)
    for f in dict.fromkeys(TWO_FIELDS + THREE_FIELDS):
        common.add_argument(f"--{f}", type=float)

    sub.add_parser("spectrum", parents=[common], help="per-sector eigenvalues")
    p = sub.add_parser("dos", parents=[common], help="density of states")
    p.add_argument("--bins", type=int)
    p = sub.add_parser("spacings", parents=[common], help="level-spacing statistics")
    p.add_argument("--bins", type=int)
    p.add_argument("--discard-factor", dest="discard_factor", type=float)
    p.add_argument("--input", help="spectrum CSV written by the spectrum command")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--cross-sector-spacings", action="store_true", help="merge sectors before taking gaps (default)")
    grp.add_argument("--per-sector-spacings", action="store_true", help="take gaps inside each sector, then pool")
    p = sub.add_parser("presets", help="list coupling presets")
    p.add_argument("--json", action="store_true")
    return parser


COMMANDS = {"presets": cmd_presets, "spectrum": cmd_spectrum, "dos": cmd_dos, "spacings": cmd_spacings}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = read_config(args.config) if getattr(args, "config", None) else {}
        return COMMANDS[args.command](args, cfg)
    except (ConfigError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FitFailure, BracketingFailure, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
