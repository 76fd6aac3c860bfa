"""Batch verification suites behind the command-line `verify` command.

Each suite runs a module's property checks at a configurable scale and
returns (ok, rows, summary); rows are flat dicts ready for CSV/JSON
serialization, deterministic for a fixed configuration and seed.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from . import farey, geometry, lattice, plfun, redundancy, words
from .farey import Rational, cf_expand, cf_value, convergents, enumerate_slopes


@dataclass
class RunConfig:
    max_pq: int = 40
    levels: str = "all-valid"
    seed: int = 20240
    samples: int = 10000
    segment_samples: int = 1000
    eps: float = 0.05
    k_bound: float = 2.0 + 1e-6
    stable_n: int = 64
    out: str = "scclab-reports"
    fmt: str = "csv"
    threads: int = 1
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.max_pq < 2:
            raise ValueError("max_pq must be >= 2")
        if any(v <= 0 for v in self.tolerances.values()):
            raise ValueError("tolerances must be positive")

    def tol(self, name: str, default: float) -> float:
        return float(self.tolerances.get(name, default))

    def level_range(self, depth: int) -> list[int]:
        if self.levels == "all-valid":
            return list(range(1, depth))
        lo, _, hi = self.levels.partition(":")
        lo_i = int(lo) if lo else 1
        hi_i = int(hi) if hi else depth - 1
        return [i for i in range(lo_i, hi_i + 1) if 1 <= i < depth]


def _threads_from_env() -> int:
    try:
        return max(1, int(os.environ.get("SCC_LAB_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn: Callable, items: list, threads: int) -> list:
    if threads <= 1 or len(items) < 4:
        return [fn(it) for it in items]
    import multiprocessing

    with multiprocessing.Pool(threads) as pool:
        return pool.map(fn, items)


def _frame_levels(config: RunConfig):
    for s in enumerate_slopes(config.max_pq):
        if s.is_infinite or s.num == 0:
            continue
        cf = cf_expand(s)
        for i in config.level_range(cf.depth):
            if i == 1 and cf.terms[0] == 0:
                continue
            yield s, i


# ---------------------------------------------------------------------------


def suite_farey(config: RunConfig):
    rows = []
    failures = 0

    def record(check: str, cases: int, fails: list):
        nonlocal failures
        failures += len(fails)
        rows.append({
            "check": check, "cases": cases, "failures": len(fails),
            "witness": "; ".join(map(str, fails[:3])),
        })

    slopes = enumerate_slopes(config.max_pq)

    bad = [s for s in slopes if cf_value(cf_expand(s).terms) != s]
    record("cf-roundtrip", len(slopes), bad)

    bad = []
    count = 0
    for s in slopes:
        conv = cf_expand(s).convergents()
        for r1, r2 in zip(conv, conv[1:]):
            count += 1
            if not farey.are_neighbors(r1, r2):
                bad.append((r1, r2))
            else:
                med = farey.farey_sum(r1, r2)
                if not (farey.are_neighbors(r1, med)
                        and farey.are_neighbors(r2, med)):
                    bad.append((r1, r2))
    record("neighbor-closure", count, bad)

    bad = []
    count = 0
    for s in slopes:
        terms = cf_expand(s).terms
        conv = convergents(terms)
        for i in range(1, len(terms)):
            count += 1
            plus = farey.farey_sum(conv[i], conv[i - 1])
            minus = farey.farey_diff(conv[i], conv[i - 1])
            if plus != cf_value(tuple(terms[:i - 1]) + (terms[i - 1] + 1,)):
                bad.append((s, i, "truncation-sum"))
                continue
            lo, hi = sorted((plus, minus))
            if not (lo <= s <= hi) or plus == s:
                bad.append((s, i, "ordering"))
    record("sandwich", count, bad)

    brute = [
        (p, q)
        for q in range(1, config.max_pq + 1)
        for p in range(0, config.max_pq - q + 1)
        if math.gcd(p, q) == 1
    ]
    ok = len(slopes) == len(brute) + 1
    record("enumeration-count", 1, [] if ok else [len(slopes)])
    return failures == 0, rows, {"suite": "farey", "failures": failures}


def suite_words(config: RunConfig):
    rows = []
    failures = 0

    def record(check, cases, fails):
        nonlocal failures
        failures += len(fails)
        rows.append({
            "check": check, "cases": cases, "failures": len(fails),
            "witness": "; ".join(map(str, fails[:3])),
        })

    slopes = enumerate_slopes(config.max_pq)
    bad_rt, bad_law, bad_sq = [], [], []
    for s in slopes:
        c = words.curve_for_slope(s)
        p, q = (1, 0) if s.is_infinite else (s.num, s.den)
        if words.letter_counts(c.word) != (p, q, p + q) \
                or len(c.word) != 2 * (p + q):
            bad_law.append(s)
        if words.word_to_slope(c.word) != s:
            bad_rt.append(s)
        dbl = c.word + c.word
        if any(dbl[k] == dbl[k + 1] for k in range(len(c.word))):
            bad_sq.append(s)
    record("roundtrip", len(slopes), bad_rt)
    record("length-law", len(slopes), bad_law)
    record("no-repeated-letter", len(slopes), bad_sq)

    bad = []
    count = 0
    for s in slopes:
        if s.is_infinite:
            continue
        cf = cf_expand(s)
        sl = words.special_lengths(cf)
        for i in range(cf.depth + 1):
            count += 1
            trunc = cf.truncation(i)
            w = words.curve_for_slope(cf_value(trunc)).word
            up = tuple(trunc[:-1]) + (trunc[-1] + 1,) if i else (1,)
            wp = words.curve_for_slope(cf_value(up)).word
            if len(w) != 2 * sl.l[i] or len(wp) != 2 * sl.lp[i]:
                bad.append((s, i))
    record("special-lengths", count, bad)

    bad = []
    count = 0
    for s in slopes:
        c = words.curve_for_slope(s)
        if c.alternating != words.C:
            continue
        count += 1
        img = words.project_f2(c.word, words.C)
        na, nb = img.count(0), img.count(2)
        ratio = Rational(na, nb) if (na, nb) != (0, 0) else None
        if 2 * len(img) != len(c.word) or ratio != s:
            bad.append(s)
    record("f2-projection", count, bad)
    return failures == 0, rows, {"suite": "words", "failures": failures}


def _check_frame(args):
    s_txt, i, samples, seg_samples, seed = args
    s = Rational.parse(s_txt)
    fr = lattice.build_frame(s, i)
    sl = fr.lengths
    li, lpi = sl.l[i], sl.lp[i]
    rng = random.Random(seed)
    problems = []

    y = Fraction(1, 97)
    x_start = Fraction(1, 89)
    period = lattice.read_period(fr, y, x_start)
    if words.canonical_form(period) != words.curve_for_slope(s).word:
        problems.append("period-word")

    crossings = lattice.line_crossings(fr, y, x_start, x_start + fr.period_length)
    cs = [x for x, letter in crossings if letter >> 1 == words.C]
    if any(b - a != Fraction(2, lpi) for a, b in zip(cs, cs[1:])):
        problems.append("c-spacing")

    # witness segments for the word-length/interval-length comparison
    positions = [x for x, _ in crossings]
    letters = bytes(letter for _, letter in crossings)
    n = len(positions)
    ext = positions + [x + fr.period_length for x in positions]
    bad_span = 0
    for _ in range(seg_samples):
        k = rng.randrange(n)
        m = rng.randrange(1, n + 1)
        span = ext[k + m - 1] - ext[k]
        wlen = m
        if not (wlen - 3 <= span * lpi <= wlen + 1):
            bad_span += 1
    if bad_span:
        problems.append(f"interval-bounds:{bad_span}")

    # tile-word length bounds, standard and derived bases
    anchors = list(fr.lattice_points_in_box(0, 2, 0, 2))
    dfr = fr.derived()
    bad_tile = 0
    for _ in range(seg_samples):
        a = anchors[rng.randrange(len(anchors))]
        kind = "S" if rng.random() < 0.7 else "R"
        star = "right" if rng.random() < 0.5 else "left"
        derived = rng.random() < 0.3
        frame = dfr if derived else fr
        tile = lattice.Tile(kind, a, star=star)
        lo, hi = lattice.tile_heights(frame, tile)
        h = Fraction(rng.randrange(1, 996), 997) * (hi - lo)
        try:
            w = lattice.tile_word(frame, tile, h)
        except words.LatticeCrossingError:
            continue
        bound = lpi + li if derived else lpi
        if kind == "S":
            ok = bound - 1 <= len(w) <= bound + 1
        else:
            ok = len(w) <= bound + 1
        if not ok:
            bad_tile += 1
    if bad_tile:
        problems.append(f"tile-bounds:{bad_tile}")

    # inverses identity on a lattice-free height
    t_anchor = (0, 0)
    o_anchor = (fr.u_pre[0] + fr.v_pre[0], fr.u_pre[1] + fr.v_pre[1])
    for _ in range(8):
        h = Fraction(rng.randrange(1, 996), 997)
        try:
            w1 = lattice.tile_word(fr, lattice.Tile("S", o_anchor), h)
            w2 = lattice.tile_word(fr, lattice.Tile("S", t_anchor), 1 - h)
        except words.LatticeCrossingError:
            continue
        if w1 != words.inverse_word(w2):
            problems.append("inverses")
        break

    # concatenation reconstruction across a multi-period segment
    t = fr.type_of(1, 0)
    recon = 0
    for _ in range(6):
        yy = Fraction(rng.randrange(1, 996), 997)
        x0 = Fraction(rng.randrange(1, 996), 991)
        x1 = x0 + 2 * fr.period_length
        try:
            direct = lattice.read_word(fr, yy, x0, x1, True, False)
            pieces = lattice.decompose_segment(fr, yy, x0, x1, t)
        except (words.LatticeCrossingError, lattice.AmbiguousHeightError):
            continue
        got = b"".join(
            lattice.read_word(fr, yy, p.x_from, p.x_to, True, False)
            for p in pieces
        )
        if got != direct:
            problems.append("concat")
        kinds = [p.tile.kind for p in pieces]
        if any(a == b == "R" for a, b in zip(kinds, kinds[1:])):
            problems.append("R-R")
        tys = [fr.type_of(*p.tile.anchor).cls for p in pieces]
        if any(a == b for a, b in zip(tys, tys[1:])):
            problems.append("type-alternation")
        recon += 1
        break
    if not recon:
        problems.append("no-reconstruction-sample")

    rep = lattice.check_tilings(fr, samples, seed=seed)
    if not rep.ok:
        problems.append("tilings")
    drep = lattice.check_tilings(dfr, max(1, samples // 4), seed=seed + 1)
    if not drep.ok:
        problems.append("tilings-derived")

    return {
        "slope": s_txt, "level": i, "l_i": li, "lp_i": lpi,
        "regime": fr.regime, "derived_regime": dfr.regime,
        "problems": ";".join(problems), "pass": not problems,
    }


def suite_tilings(config: RunConfig):
    tasks = [
        (str(s), i, config.samples, config.segment_samples,
         config.seed + 7 * i)
        for s, i in _frame_levels(config)
    ]
    rows = _pmap(_check_frame, tasks, config.threads)
    failures = sum(1 for r in rows if not r["pass"])
    return failures == 0, rows, {
        "suite": "tilings", "frames": len(rows), "failures": failures,
    }


def _check_redundancy(args):
    s_txt, i, sample_w, seed = args
    s = Rational.parse(s_txt)
    curve = words.curve_for_slope(s)
    rep = redundancy.verify_special_lengths(curve, i)
    rows = []
    base = {
        "slope": rep.slope, "i": rep.level, "l_i": rep.l_i, "lp_i": rep.lp_i,
        "norm_len": rep.norm_length,
    }
    if rep.skipped is not None:
        rows.append({**base, "window": -1, "source": "-",
                     "coverage": "-", "coverage_dec": "-",
                     "pass": True, "note": rep.skipped})
        return rows
    full = redundancy.verify_special_lengths(curve, i, keep_windows=True)
    for w in full.windows:
        rows.append({
            **base, "window": w.window_index, "source": w.source,
            "coverage": str(w.coverage), "coverage_dec": float(w.coverage),
            "pass": w.coverage >= redundancy.ALPHA, "note": "",
        })
    # a few shorter admissible pattern hosts, beyond the full word
    for k, sub in enumerate(
        redundancy.sample_admissible_subwords(curve, i, sample_w, seed)
    ):
        m = full.l_i - 5
        dbl = curve.word + curve.word
        cov = redundancy.decompose_cover(sub, dbl[:m]).coverage
        rows.append({
            **base, "window": 0, "source": f"sampled-host-{k}",
            "coverage": str(cov), "coverage_dec": float(cov),
            "pass": cov >= redundancy.ALPHA, "note": f"|W|={len(sub)}",
        })
    return rows


def suite_redundancy(config: RunConfig):
    tasks = []
    for s in enumerate_slopes(config.max_pq):
        if s.is_infinite:
            continue
        curve = words.curve_for_slope(s)
        for i in redundancy.admissible_levels(curve):
            tasks.append((str(s), i, 2, config.seed + i))
    nested = _pmap(_check_redundancy, tasks, config.threads)
    rows = [r for chunk in nested for r in chunk]
    failures = sum(1 for r in rows if not r["pass"])
    return failures == 0, rows, {
        "suite": "redundancy",
        "instances": len(tasks),
        "window_rows": len(rows),
        "failures": failures,
        "alpha": str(redundancy.ALPHA),
    }


def suite_repgeom(config: RunConfig):
    rng = random.Random(config.seed)
    rows = []
    failures = 0

    def record(check, cases, fails):
        nonlocal failures
        failures += len(fails)
        rows.append({
            "check": check, "cases": cases, "failures": len(fails),
            "witness": "; ".join(map(str, fails[:3])),
        })

    def rand_mat():
        while True:
            vals = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
                    for _ in range(4)]
            try:
                return geometry.Mat2C.of(*vals)
            except geometry.GeometryError:
                continue

    def rand_pt():
        return geometry.H3Point(
            complex(rng.uniform(-3, 3), rng.uniform(-3, 3)),
            math.exp(rng.uniform(-2, 2)),
        )

    tol = config.tol("dist", 1e-9)
    bad = []
    for _ in range(1000):
        m = rand_mat()
        d1 = geometry.dist_o_mo(m)
        d2 = geometry.h3_distance(
            geometry.BASEPOINT, geometry.apply_isometry(m, geometry.BASEPOINT))
        if abs(d1 - d2) > tol:
            bad.append(m)
    record("closed-form-vs-quaternion", 1000, bad)

    bad = []
    for _ in range(10000):
        p, q, r = rand_pt(), rand_pt(), rand_pt()
        if geometry.h3_distance(p, r) > \
                geometry.h3_distance(p, q) + geometry.h3_distance(q, r) + tol:
            bad.append((p, q, r))
    record("triangle-inequality", 10000, bad)

    bad = []
    for _ in range(2000):
        m, p, q = rand_mat(), rand_pt(), rand_pt()
        d1 = geometry.h3_distance(p, q)
        d2 = geometry.h3_distance(
            geometry.apply_isometry(m, p), geometry.apply_isometry(m, q))
        if abs(d1 - d2) > tol:
            bad.append(m)
    record("isometry-invariance", 2000, bad)

    tol_pow = config.tol("power", 1e-6)
    bad = []
    cases = 0
    while cases < 200:
        m = rand_mat()
        if geometry.classify(m) != "loxodromic":
            continue
        l1 = geometry.translation_length(m)
        if l1 * 10 > 40:
            continue
        cases += 1
        acc = geometry.Mat2C.identity()
        for n in range(1, 11):
            acc = acc @ m
            if abs(geometry.translation_length(acc) - n * l1) > tol_pow:
                bad.append((m, n))
                break
    record("power-law", cases, bad)

    bad = []
    for trial in range(1000):
        xs = sorted(rng.sample(range(0, 200), rng.randint(3, 10)))
        f = plfun.PLFunction(
            tuple(Fraction(x, 2) for x in xs),
            tuple(Fraction(rng.randint(-30, 30), 3) for _ in xs),
        )
        ys = list(f.ys)
        floor = min(ys) - 1
        ys[0] = ys[-1] = floor
        f = plfun.PLFunction(f.xs, tuple(max(y, floor) for y in ys))
        exc = plfun.Excursion(f, f.lo, f.hi, floor)
        sub = plfun.halve_excursion(exc)
        okc = (exc.length / 2 <= sub.length < exc.length
               and sub.level >= floor
               and f(sub.u) == sub.level and f(sub.v) == sub.level)
        if not okc:
            bad.append(trial)
    record("excursion-halving", 1000, bad)

    bad = []
    done = 0
    while done < 1000:
        xs = sorted(rng.sample(range(0, 200), rng.randint(3, 10)))
        eps = Fraction(rng.randint(1, 8), 4)
        f = plfun.PLFunction(
            tuple(Fraction(x, 2) for x in xs),
            tuple(Fraction(rng.randint(-30, 30), 3) for _ in xs),
        )
        span = f.hi - f.lo
        if abs(f(f.hi) - f(f.lo)) > eps * span:
            continue
        a = Fraction(rng.randrange(1, int(span * 2)), 2)
        if not 0 < a < span:
            continue
        done += 1
        x1, y1 = plfun.eps_slope_subinterval(f, eps, a)
        if not (a / 2 <= y1 - x1 < a
                and abs(f(y1) - f(x1)) <= eps * (y1 - x1)):
            bad.append((xs, eps, a))
    record("eps-slope-window", 1000, bad)

    return failures == 0, rows, {"suite": "repgeom", "failures": failures}


SUITES = {
    "farey": suite_farey,
    "words": suite_words,
    "tilings": suite_tilings,
    "redundancy": suite_redundancy,
    "repgeom": suite_repgeom,
}
