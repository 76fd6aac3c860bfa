"""Command-line front end: slope/word translation, batch verification
suites, and representation diagnostics with CSV/JSON reports.

Exit codes: 0 all checks passed, 1 verification failure, 2 usage or IO
error.  Reports are byte-deterministic for a fixed configuration and seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import geometry, lattice, redundancy, words
from .farey import FareyError, Rational, cf_expand
from .verify import RunConfig, SUITES, _threads_from_env
from .words import WordError, word_str


def _write_reports(config: RunConfig, name: str, rows: list[dict],
                   summary: dict) -> list[str]:
    os.makedirs(config.out, exist_ok=True)
    written = []
    if config.fmt in ("json", "both"):
        path = os.path.join(config.out, f"{name}.json")
        payload = {"summary": summary, "rows": rows}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True, indent=1)
            fh.write("\n")
        written.append(path)
    if config.fmt in ("csv", "both"):
        path = os.path.join(config.out, f"{name}.csv")
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
        written.append(path)
    return written


def _parse_config_file(path: str) -> dict:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


_CONFIG_KEYS = {
    "max_pq": ("max_pq", int),
    "max-pq": ("max_pq", int),
    "levels": ("levels", str),
    "seed": ("seed", int),
    "samples": ("samples", int),
    "segment_samples": ("segment_samples", int),
    "eps": ("eps", float),
    "K": ("k_bound", float),
    "N": ("stable_n", int),
    "out": ("out", str),
    "format": ("fmt", str),
}


def _build_config(args) -> RunConfig:
    values: dict = {}
    tol = {}
    if getattr(args, "config", None):
        for key, raw in _parse_config_file(args.config).items():
            if key.startswith("tol."):
                tol[key[4:]] = float(raw)
                continue
            if key not in _CONFIG_KEYS:
                raise ValueError(f"unknown config key {key!r}")
            field, conv = _CONFIG_KEYS[key]
            values[field] = conv(raw)
    for field, flag in (
        ("max_pq", "max_pq"), ("levels", "levels"), ("seed", "seed"),
        ("samples", "samples"), ("segment_samples", "segment_samples"),
        ("eps", "eps"), ("k_bound", "K"), ("stable_n", "N"),
        ("out", "out"), ("fmt", "format"),
    ):
        arg = getattr(args, flag, None)
        if arg is not None:
            values[field] = arg
    for item in getattr(args, "tol", None) or []:
        name, _, raw = item.partition("=")
        if not raw:
            raise ValueError(f"bad tolerance override {item!r}")
        tol[name.strip()] = float(raw)
    values["tolerances"] = tol
    values["threads"] = _threads_from_env()
    return RunConfig(**values)


# ---------------------------------------------------------------------------
# word / slope commands


def cmd_word(args) -> int:
    try:
        slope = Rational.parse(args.slope)
    except (ValueError, FareyError) as exc:
        print(f"error: bad slope {args.slope!r}: {exc}", file=sys.stderr)
        return 2
    curve = words.curve_for_slope(slope)
    print(f"slope {curve.slope}")
    print(f"cf {curve.cf}")
    print(f"word {word_str(curve.word)}")
    print(f"norm_length {curve.norm_length}")
    if not slope.is_infinite and slope.num >= 0:
        sl = words.special_lengths(curve.cf)
        print("l  " + ",".join(map(str, sl.l)))
        print("l' " + ",".join(map(str, sl.lp)))
    print(f"permutation {curve.regime_permutation}")
    return 0


def cmd_slope(args) -> int:
    try:
        w = words.parse_word(args.word)
    except WordError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    slope, reason = words.simplicity_verdict(w)
    if slope is None:
        print(f"word {word_str(w)}")
        print(f"not simple: {reason}")
        return 0
    print(f"word {word_str(w)}")
    print(f"slope {slope}")
    print(f"cf {cf_expand(slope)}")
    print("simple: yes")
    return 0


# ---------------------------------------------------------------------------
# verify command


def cmd_verify(args) -> int:
    try:
        config = _build_config(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    suite = SUITES[args.suite]
    ok, rows, summary = suite(config)
    summary["seed"] = config.seed
    summary["max_pq"] = config.max_pq
    paths = _write_reports(config, f"verify-{args.suite}", rows, summary)
    for p in paths:
        print(f"wrote {p}")
    status = "PASS" if ok else "FAIL"
    print(f"{args.suite}: {status} ({summary})")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# rep command


def _parse_matrix(name: str, data) -> geometry.Mat2C:
    try:
        rows = [[complex(entry[0], entry[1]) for entry in row] for row in data]
        a, b = rows[0]
        c, d = rows[1]
    except (TypeError, ValueError, IndexError) as exc:
        raise ValueError(f"matrix {name}: bad entry layout ({exc})")
    det = a * d - b * c
    if abs(det - 1) > 1e-6:
        raise ValueError(f"matrix {name}: determinant {det} is far from 1")
    return geometry.Mat2C.of(a, b, c, d, normalize=False)


def load_rep(path: str) -> geometry.Rep:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    mats = {}
    for name in ("A", "B", "C"):
        if name not in data:
            raise ValueError(f"rep file is missing matrix {name}")
        mats[name] = _parse_matrix(name, data[name])
    return geometry.Rep(mats["A"], mats["B"], mats["C"])


def cmd_rep(args) -> int:
    try:
        config = _build_config(args)
        rep = load_rep(args.rep_file)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.mode == "profile":
        rows = [r.as_record() for r in geometry.bowditch_profile(rep, config.max_pq)]
        ratio, slope = geometry.min_ratio(
            geometry.bowditch_profile(rep, config.max_pq))
        summary = {"mode": "profile", "min_ratio": ratio,
                   "argmin_slope": str(slope)}
    elif args.mode == "bq":
        report = geometry.bq_check(rep, config.max_pq, config.k_bound)
        rows = []
        for r in report.rows:
            rec = r.as_record()
            rec["bq1_violation"] = r in report.bq1_violations
            rec["trace_below_K"] = r in report.small_trace
            rows.append(rec)
        summary = {
            "mode": "bq", "K": config.k_bound,
            "bq1_violations": len(report.bq1_violations),
            "small_trace_curves": len(report.small_trace),
        }
    else:  # excursions
        rows = []
        skipped = 0
        for slope in geometry.slopes_all_regimes(config.max_pq):
            curve = words.curve_for_slope(slope)
            m = geometry.evaluate(rep, curve.word)
            if geometry.classify(m) != "loxodromic":
                skipped += 1
                rows.append({
                    "slope": str(slope), "norm_len": curve.norm_length,
                    "skipped": geometry.classify(m), "excursions": 0,
                    "max_level": "", "longest": "", "quasi_loops": 0,
                })
                continue
            prof = geometry.orbit_profile(rep, curve)
            excs = geometry.profile_excursions(prof)
            loops = geometry.find_quasi_loops(rep, curve, config.eps)
            rows.append({
                "slope": str(slope), "norm_len": curve.norm_length,
                "skipped": "", "excursions": len(excs),
                "max_level": max((e.level for e in excs), default=0.0),
                "longest": max((e.length for e in excs), default=0.0),
                "quasi_loops": len(loops),
            })
        summary = {"mode": "excursions", "eps": config.eps,
                   "skipped": skipped}
    paths = _write_reports(config, f"rep-{args.mode}", rows, summary)
    for p in paths:
        print(f"wrote {p}")
    print(f"rep {args.mode}: {summary}")
    return 0


# ---------------------------------------------------------------------------


def _add_config_flags(sub):
    sub.add_argument("--max-pq", dest="max_pq", type=int)
    sub.add_argument("--levels")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--samples", type=int)
    sub.add_argument("--segment-samples", dest="segment_samples", type=int)
    sub.add_argument("--eps", type=float)
    sub.add_argument("--K", dest="K", type=float)
    sub.add_argument("--N", dest="N", type=int)
    sub.add_argument("--out")
    sub.add_argument("--format", choices=("csv", "json", "both"))
    sub.add_argument("--tol", action="append",
                     help="tolerance override name=value")
    sub.add_argument("--config", help="flat key = value configuration file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scclab",
        description="Simple closed curves on the four-punctured sphere: "
                    "exact word combinatorics and representation diagnostics",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_word = subs.add_parser("word", help="canonical word of a slope")
    p_word.add_argument("slope", help="p/q, an integer, or 'inf'")
    p_word.set_defaults(func=cmd_word)

    p_slope = subs.add_parser("slope", help="slope and simplicity of a word")
    p_slope.add_argument("word", help="letters aAbBcC, uppercase = inverse")
    p_slope.set_defaults(func=cmd_slope)

    p_verify = subs.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=sorted(SUITES))
    _add_config_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_rep = subs.add_parser("rep", help="representation diagnostics")
    p_rep.add_argument("mode", choices=("profile", "bq", "excursions"))
    p_rep.add_argument("rep_file", help="JSON file with matrices A, B, C")
    _add_config_flags(p_rep)
    p_rep.set_defaults(func=cmd_rep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:  # pragma: no cover
        return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
