"""Cover decompositions: how much of a simple word is occupied by
non-overlapping copies of a fixed subword and its inverse.

The headline check: for a simple word W of slope [n1..nr], a level i with
l_i >= 10 and |W| >= 3(l'_i + l_i + 1), and any cyclic window w of length
l_i - 5, the selected occurrences of w and w^-1 cover at least 1/30 of W.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .words import (
    SimpleCurve,
    inverse_word,
    special_lengths,
)

ALPHA = Fraction(1, 30)


def occurrences(big: bytes, w: bytes) -> list[tuple[int, str]]:
    """All start indices of w and of w^-1 in big, labelled 'w' / 'winv'.

    Overlapping occurrences are reported; the result is sorted by index.
    """
    if len(w) < 1:
        raise ValueError("pattern must be non-empty")
    out = []
    for pat, tag in ((w, "w"), (inverse_word(w), "winv")):
        k = big.find(pat)
        while k != -1:
            out.append((k, tag))
            k = big.find(pat, k + 1)
    out.sort()
    return out


@dataclass(frozen=True)
class CoverDecomposition:
    pieces: tuple[bytes, ...]
    marked: tuple[int, ...]      # indices into pieces (0-based)
    coverage: Fraction

    def reconstructs(self, big: bytes) -> bool:
        return b"".join(self.pieces) == big


def _select_max_cover(starts: Sequence[int], m: int) -> list[int]:
    """Maximum-cardinality set of pairwise disjoint length-m intervals.

    Weighted interval scheduling with equal weights; ties resolved toward
    the lexicographically earliest start set.
    """
    n = len(starts)
    if n == 0:
        return []
    # best[k] = max count using occurrences k..n-1
    best = [0] * (n + 1)
    nxt = [0] * n
    for k in range(n - 1, -1, -1):
        j = bisect.bisect_left(starts, starts[k] + m, k)
        nxt[k] = j
        best[k] = max(best[k + 1], 1 + best[j])
    chosen = []
    k = 0
    while k < n:
        if best[k] == 1 + best[nxt[k]]:
            chosen.append(starts[k])
            k = nxt[k]
        else:
            k += 1
    return chosen


def decompose_cover(big: bytes, w: bytes) -> CoverDecomposition:
    """Split big into pieces so that marked pieces are exact copies of w or
    w^-1, maximizing the total marked length."""
    if len(w) < 1:
        raise ValueError("pattern must be non-empty")
    if len(big) < len(w):
        raise ValueError("word shorter than the pattern")
    occ = occurrences(big, w)
    starts = [k for k, _ in occ]
    chosen = _select_max_cover(sorted(set(starts)), len(w))
    pieces = []
    marked = []
    pos = 0
    for s in chosen:
        if s > pos:
            pieces.append(big[pos:s])
        marked.append(len(pieces))
        pieces.append(big[s:s + len(w)])
        pos = s + len(w)
    if pos < len(big):
        pieces.append(big[pos:])
    cov = Fraction(len(chosen) * len(w), len(big))
    return CoverDecomposition(tuple(pieces), tuple(marked), cov)


@dataclass(frozen=True)
class WindowResult:
    window_index: int
    source: str          # 'word' or 'inverse'
    coverage: Fraction


@dataclass(frozen=True)
class RedundancyReport:
    slope: str
    level: int
    l_i: int
    lp_i: int
    norm_length: int
    skipped: Optional[str]
    min_coverage: Optional[Fraction]
    mean_coverage: Optional[Fraction]
    violations: tuple[WindowResult, ...]
    windows: tuple[WindowResult, ...] = ()

    @property
    def passed(self) -> bool:
        return self.skipped is not None or not self.violations


def admissible_levels(curve: SimpleCurve) -> list[int]:
    """Levels i with l_i >= 10 and |W| >= 3(l'_i + l_i + 1) for W the word."""
    sl = special_lengths(curve.cf)
    n = len(curve.word)
    return [
        i
        for i in range(len(sl.l))
        if sl.l[i] >= 10 and n >= 3 * (sl.lp[i] + sl.l[i] + 1)
    ]


def verify_special_lengths(
    curve: SimpleCurve,
    i: int,
    threshold: Fraction = ALPHA,
    keep_windows: bool = False,
) -> RedundancyReport:
    """Slide every cyclic window of length l_i - 5 over the curve word and
    its inverse and record the cover ratio of each window in the word."""
    sl = special_lengths(curve.cf)
    word = curve.word
    n = len(word)
    common = dict(
        slope=str(curve.slope), level=i,
        l_i=sl.l[i] if i < len(sl.l) else -1,
        lp_i=sl.lp[i] if i < len(sl.lp) else -1,
        norm_length=n,
    )
    if i >= len(sl.l):
        return RedundancyReport(
            **common, skipped=f"level {i} exceeds depth {len(sl.l) - 1}",
            min_coverage=None, mean_coverage=None, violations=())
    if sl.l[i] < 10:
        return RedundancyReport(
            **common, skipped=f"l_{i} = {sl.l[i]} < 10",
            min_coverage=None, mean_coverage=None, violations=())
    if n < 3 * (sl.lp[i] + sl.l[i] + 1):
        return RedundancyReport(
            **common,
            skipped=(
                f"|W| = {n} < 3(l'_{i} + l_{i} + 1)"
                f" = {3 * (sl.lp[i] + sl.l[i] + 1)}"
            ),
            min_coverage=None, mean_coverage=None, violations=())

    m = sl.l[i] - 5
    results = []
    for source, base in (("word", word), ("inverse", inverse_word(word))):
        dbl = base + base
        for k in range(n):
            cov = decompose_cover(word, dbl[k:k + m]).coverage
            results.append(WindowResult(k, source, cov))
    violations = tuple(r for r in results if r.coverage < threshold)
    total = sum(r.coverage for r in results)
    return RedundancyReport(
        **common, skipped=None,
        min_coverage=min(r.coverage for r in results),
        mean_coverage=total / len(results),
        violations=violations,
        windows=tuple(results) if keep_windows else (),
    )


def sample_admissible_subwords(
    curve: SimpleCurve, i: int, count: int, seed: int
) -> list[bytes]:
    """Deterministic sample of shorter admissible W (cyclic subwords of the
    curve with |W| >= 3(l'_i + l_i + 1)), for spot checks beyond W = word."""
    import random

    sl = special_lengths(curve.cf)
    lo = 3 * (sl.lp[i] + sl.l[i] + 1)
    n = len(curve.word)
    if lo >= n or count <= 0:
        return []
    rng = random.Random(seed)
    dbl = curve.word + curve.word
    out = []
    for _ in range(count):
        length = rng.randint(lo, n - 1)
        start = rng.randrange(n)
        out.append(dbl[start:start + length])
    return out
