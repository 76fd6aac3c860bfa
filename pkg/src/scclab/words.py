"""Words in the rank-3 free group <a,b,c> and the slope <-> simple-word
correspondence on the four-punctured sphere.

A word is a ``bytes`` object over the values 0..5 encoding
a, a^-1, b, b^-1, c, c^-1; the inverse of a letter is ``letter ^ 1`` and
byte order realizes the letter order a < a^-1 < b < b^-1 < c < c^-1.
The text form uses lowercase for positive letters and uppercase for
inverses ("caCAb" = c a c^-1 a^-1 b).

Simple words are generated by following a straight segment of rational
slope in the plane model (the square [0,2]^2 with sides glued and the
central symmetry applied) and recording crossings with the three families
of lines
    L_A = {y = 2k},  L_B = {x = 2k},  L_C = {x + y = 2k}.
Crossing signs come from transverse orientations that alternate on the
unit sub-segments of each line; concretely the sign of a crossing is
sigma_F * (-1)**floor(xi) * dir_F where xi is the x-coordinate of the
crossing point (y-coordinate for L_B), dir_F the sign of the motion across
the family, and (sigma_A, sigma_B, sigma_C) = (+1, -1, +1).  This pins the
convention so that integer slopes n produce the classes of
(ca)^(n/2) c (ca)^(-n/2) b for n even and (ca)^((n+1)/2) c^-1 (ca)^((1-n)/2) b
for n odd, and slope 0 produces the class of cb.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .farey import ContinuedFraction, FareyError, Rational, cf_expand, cf_value

A, B, C = 0, 1, 2  # letter bases

_CHARS = "aAbBcC"
_TO_CHARS = bytes.maketrans(bytes(range(6)), _CHARS.encode("ascii"))
_FROM_CHARS = {ch: i for i, ch in enumerate(_CHARS)}
_INV_TABLE = bytes.maketrans(bytes(range(6)), bytes([1, 0, 3, 2, 5, 4]))

_SIGMA = {A: 1, B: -1, C: 1}


class WordError(ValueError):
    pass


class LatticeCrossingError(WordError):
    """A reading segment met a lattice point or an ambiguous double crossing."""


def parse_word(text: str) -> bytes:
    out = bytearray()
    for pos, ch in enumerate(text):
        code = _FROM_CHARS.get(ch)
        if code is None:
            raise WordError(f"invalid letter {ch!r} at position {pos}")
        out.append(code)
    return bytes(out)


def word_str(w: bytes) -> str:
    return w.translate(_TO_CHARS).decode("ascii")


def inverse_word(w: bytes) -> bytes:
    return w.translate(_INV_TABLE)[::-1]


def reduce_word(w: bytes) -> bytes:
    stack = bytearray()
    for letter in w:
        if stack and stack[-1] == letter ^ 1:
            stack.pop()
        else:
            stack.append(letter)
    return bytes(stack)


def cyclic_reduce(w: bytes) -> bytes:
    r = reduce_word(w)
    i, j = 0, len(r)
    while j - i >= 2 and r[i] == r[j - 1] ^ 1:
        i += 1
        j -= 1
    return r[i:j]


def is_reduced(w: bytes) -> bool:
    return all(w[k] != w[k + 1] ^ 1 for k in range(len(w) - 1))


def is_cyclically_reduced(w: bytes) -> bool:
    return is_reduced(w) and (len(w) < 2 or w[0] != w[-1] ^ 1)


def _least_rotation(s: bytes) -> bytes:
    # Booth's algorithm, O(n)
    n = len(s)
    if n == 0:
        return s
    s2 = s + s
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s2[j]
        i = f[j - k - 1]
        while i != -1 and sj != s2[k + i + 1]:
            if sj < s2[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s2[k + i + 1]:
            if sj < s2[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return s2[k:k + n]


def canonical_form(w: bytes) -> bytes:
    """Least representative over all cyclic rotations of w and of w^-1."""
    cr = cyclic_reduce(w)
    if not cr:
        return b""
    return min(_least_rotation(cr), _least_rotation(inverse_word(cr)))


def letter_counts(w: bytes) -> tuple[int, int, int]:
    """(#a, #b, #c) counting a letter and its inverse together."""
    return (
        w.count(0) + w.count(1),
        w.count(2) + w.count(3),
        w.count(4) + w.count(5),
    )


def alternating_letter(w: bytes) -> Optional[int]:
    """The base letter occupying every other position of w, if any.

    When both parity classes qualify (length-2 words), the c family wins,
    matching the non-negative slope regime.
    """
    fams = [l >> 1 for l in w]
    candidates = []
    for par in (0, 1):
        cls = set(fams[par::2])
        if len(cls) == 1 and not cls & set(fams[1 - par::2]):
            candidates.append(next(iter(cls)))
    if not candidates:
        return None
    return max(candidates)


# ---------------------------------------------------------------------------
# exact line reading


def _crossing_family(k_lo, k_hi, t_of_k, dir_sign, base, sigma, par_num_of, par_den):
    """Crossings of one line family, ordered by increasing parameter t."""
    ks = range(k_lo, k_hi + 1)
    if dir_sign < 0:
        ks = reversed(ks)
    out = []
    for k in ks:
        tn, td = t_of_k(k)
        pn = par_num_of(tn, td)
        pd = par_den * td
        m = pn // pd
        if pn % pd == 0:
            raise LatticeCrossingError("segment meets a lattice point")
        sign = sigma * dir_sign * (1 if m % 2 == 0 else -1)
        out.append((Fraction(tn, td), 2 * base + (0 if sign > 0 else 1)))
    return out


def _line_crossings_raw(
    x0: Fraction, y0: Fraction, x1: Fraction, y1: Fraction
) -> list[tuple[Fraction, int]]:
    """(parameter t in [0, 1], letter) for every line crossing along the
    segment, sorted by t.  Raises LatticeCrossingError when the segment
    meets a lattice point."""
    s = math.lcm(
        x0.denominator, y0.denominator, x1.denominator, y1.denominator
    )
    X0, Y0 = int(x0 * s), int(y0 * s)
    X1, Y1 = int(x1 * s), int(y1 * s)
    dx, dy = X1 - X0, Y1 - Y0
    step = 2 * s

    def _k_range(lo, hi):
        return -(-lo // step), hi // step

    # t-numerators below are normalized to a positive denominator, so the
    # crossing coordinate numerator is plain X0*td + dx*tn (no sign fixup)
    crossings: list[tuple[Fraction, int]] = []
    if dy != 0:
        k_lo, k_hi = _k_range(min(Y0, Y1), max(Y0, Y1))
        td = abs(dy)
        sg = 1 if dy > 0 else -1
        crossings += _crossing_family(
            k_lo, k_hi,
            lambda k, sg=sg, td=td: ((k * step - Y0) * sg, td),
            sg, A, _SIGMA[A],
            lambda tn, td_: X0 * td_ + dx * tn, s,
        )
    if dx != 0:
        k_lo, k_hi = _k_range(min(X0, X1), max(X0, X1))
        td = abs(dx)
        sg = 1 if dx > 0 else -1
        crossings += _crossing_family(
            k_lo, k_hi,
            lambda k, sg=sg, td=td: ((k * step - X0) * sg, td),
            sg, B, _SIGMA[B],
            lambda tn, td_: Y0 * td_ + dy * tn, s,
        )
    ds = dx + dy
    if ds != 0:
        k_lo, k_hi = _k_range(min(X0 + Y0, X1 + Y1), max(X0 + Y0, X1 + Y1))
        td = abs(ds)
        sg = 1 if ds > 0 else -1
        crossings += _crossing_family(
            k_lo, k_hi,
            lambda k, sg=sg, td=td: ((k * step - X0 - Y0) * sg, td),
            sg, C, _SIGMA[C],
            lambda tn, td_: X0 * td_ + dx * tn, s,
        )

    crossings.sort(key=lambda c: c[0])
    return crossings


def read_segment(
    x0: Fraction,
    y0: Fraction,
    x1: Fraction,
    y1: Fraction,
    include_start: bool = True,
    include_end: bool = True,
) -> bytes:
    """Letters read along the straight segment from (x0,y0) to (x1,y1).

    Crossings exactly at an endpoint are kept or dropped according to the
    include flags.  Raises LatticeCrossingError when the segment meets a
    lattice point or two kept crossings coincide.
    """
    crossings = _line_crossings_raw(x0, y0, x1, y1)
    out = bytearray()
    prev_t = None
    for t, letter in crossings:
        if t == 0 and not include_start:
            continue
        if t == 1 and not include_end:
            continue
        if prev_t is not None and t == prev_t:
            raise LatticeCrossingError("two lines cross the segment at one point")
        prev_t = t
        out.append(letter)
    return bytes(out)


def reading_segment_for_slope(slope: Rational) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """One-period reading segment for a slope, from the canonical offset point.

    The offset denominator 4(|p|+q+1) is coprime to every crossing
    denominator, so the segment provably avoids the lattice and all ties.
    """
    p, q = slope.num, slope.den
    d = 4 * (abs(p) + q + 1)
    x0 = Fraction(1, d)
    y0 = Fraction(1, 2) + Fraction(1, d)
    return x0, y0, x0 + 2 * q, y0 + 2 * p


def _read_slope_word(slope: Rational) -> bytes:
    x0, y0, x1, y1 = reading_segment_for_slope(slope)
    return read_segment(x0, y0, x1, y1)


# ---------------------------------------------------------------------------
# curves

# letter renamings realizing the two basis permutations that move the
# negative slope regimes onto [0, inf]
REGIME_PERMUTATION = {
    A: "a->b, b->c, c->a",   # slopes in [-inf, -1]
    B: "a->c, b->a, c->b",   # slopes in [-1, 0]
    C: "identity",           # slopes in [0, inf]
}


@dataclass(frozen=True)
class SimpleCurve:
    """A simple closed curve: slope, expansion, canonical cyclic word."""

    slope: Rational
    cf: ContinuedFraction
    word: bytes

    @property
    def norm_length(self) -> int:
        return len(self.word)

    @property
    def alternating(self) -> int:
        """Base letter occupying every other position (A, B or C)."""
        alt = alternating_letter(self.word)
        if alt is None:
            raise WordError("no alternating letter (not a simple word?)")
        return alt

    @property
    def regime_permutation(self) -> str:
        return REGIME_PERMUTATION[self.alternating]

    def __str__(self) -> str:
        return f"{self.slope}:{word_str(self.word)}"


def slope_to_word(slope: Rational) -> SimpleCurve:
    """Canonical simple curve for a slope in [0, inf].

    Negative slopes are rejected; use curve_for_slope, which handles the
    other two sign regimes through the recorded basis permutations.
    """
    if slope.num < 0:
        raise WordError(
            f"slope {slope} is negative; use curve_for_slope for the "
            "permuted regimes"
        )
    return curve_for_slope(slope)


def curve_for_slope(slope: Rational) -> SimpleCurve:
    """Canonical simple curve for any slope in Q u {inf}."""
    raw = _read_slope_word(slope)
    expected = abs(slope.num) + slope.den + abs(slope.num + slope.den)
    if len(raw) != expected or not is_cyclically_reduced(raw):
        raise WordError(f"reading failure for slope {slope}")  # pragma: no cover
    return SimpleCurve(slope, cf_expand(slope), canonical_form(raw))


def simplicity_verdict(w: bytes) -> tuple[Optional[Rational], str]:
    """(slope, diagnostic) for a word; slope is None when w is not simple."""
    rw = cyclic_reduce(w)
    if not rw:
        return None, "reduces to the empty word"
    if len(rw) % 2 == 1:
        return None, f"cyclically reduced length {len(rw)} is odd"
    fams = [l >> 1 for l in rw]
    candidates = []
    for par in (0, 1):
        cls = set(fams[par::2])
        if len(cls) == 1 and not cls & set(fams[1 - par::2]):
            candidates.append(next(iter(cls)))
    if not candidates:
        return None, "letters do not alternate through a fixed generator"
    na, nb, _ = letter_counts(rw)
    canon = canonical_form(rw)
    for alt in sorted(set(candidates), reverse=True):  # try the c regime first
        if alt == C:
            if na == 0 and nb == 0:
                continue
            cand = Rational(na, nb)
        else:
            if na == 0:
                continue
            cand = Rational(-na, nb) if nb else None
            if cand is None:
                continue
        if curve_for_slope(cand).word == canon:
            return cand, "simple"
    return None, "canonical regeneration does not reproduce the word"


def word_to_slope(w: bytes) -> Optional[Rational]:
    return simplicity_verdict(w)[0]


def is_simple(w: bytes) -> bool:
    return word_to_slope(w) is not None


def project_f2(w: bytes, deleted: int) -> bytes:
    """Delete the alternating letter and forget signs of the remaining two.

    The image lives in the free group on the two remaining generators and
    has half the length of w.  For slopes in [0, inf] (deleted == C) the
    ratio #a : #b of the image equals the slope.
    """
    if deleted not in (A, B, C):
        raise WordError(f"invalid letter base {deleted}")
    if w and alternating_letter(w) != deleted:
        raise WordError(
            f"deleted letter {_CHARS[2 * deleted]} is not the alternating letter"
        )
    return bytes((l >> 1) << 1 for l in w if l >> 1 != deleted)


# ---------------------------------------------------------------------------
# special lengths


@dataclass(frozen=True)
class SpecialLengths:
    """Half cyclic lengths (l_0..l_r), (l'_0..l'_r) attached to an expansion."""

    l: tuple[int, ...]
    lp: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.l) - 1


def special_lengths(cf: ContinuedFraction) -> SpecialLengths:
    """Recurrence l_i = (n_i - 1) l_{i-1} + l'_{i-1}, l'_i = l_i + l_{i-1}."""
    terms = cf.terms
    if terms and terms[0] < 0:
        raise WordError("special lengths are defined for slopes in [0, inf]")
    l = [1]
    lp = [2]
    for i, n in enumerate(terms, start=1):
        li = (n - 1) * l[-1] + lp[-1]
        l.append(li)
        lp.append(li + l[-2])
    out = SpecialLengths(tuple(l), tuple(lp))
    _check_length_inequalities(out, terms)
    return out


def _check_length_inequalities(sl: SpecialLengths, terms: Sequence[int]) -> None:
    l, lp = sl.l, sl.lp
    r = len(l) - 1
    for i in range(r + 1):
        if not (l[i] <= lp[i] and i <= l[i]):
            raise WordError(f"length invariant broken at level {i}")
    for i in range(1, r + 1):
        ok = l[i - 1] <= l[i] and lp[i] <= 2 * l[i]
        if i >= 2 or (i == 1 and terms[0] >= 1):
            ok = ok and lp[i] + 1 <= 2 * l[i]
        if not ok:
            raise WordError(f"length invariant broken at level {i}")


# ---------------------------------------------------------------------------
# level structure: base word and connectors at each expansion level


@dataclass(frozen=True)
class LevelWords:
    """(gamma_i, delta_1, delta_2) with gamma_i^m d1 gamma_i^-m d2 structure."""

    gamma: bytes
    delta1: bytes
    delta2: bytes


def _rotations(w: bytes):
    dbl = w + w
    return {dbl[k:k + len(w)] for k in range(len(w))}


def _extension_word(trunc: Sequence[int], n: int) -> bytes:
    return curve_for_slope(cf_value(tuple(trunc) + (n,))).word


def _closed_form(gamma: bytes, d1: bytes, d2: bytes, n: int) -> bytes:
    gi = inverse_word(gamma)
    if n % 2 == 0:
        return gamma * (n // 2) + d1 + gi * (n // 2) + d2
    return gamma * ((n + 1) // 2) + inverse_word(d1) + gi * ((n - 1) // 2) + d2


def level_words(terms: Sequence[int], i: int) -> LevelWords:
    """Base curve of the level-i truncation plus its two connector words.

    The returned gamma is a cyclic rotation (possibly inverted) of the
    canonical truncation word, aligned so that for n in {2,3,4,5} the
    curve of slope [n_1..n_i, n] is exactly the closed-form concatenation.
    The connectors satisfy len(delta1) + len(delta2) = 2 l_{i-1}.
    """
    terms = tuple(terms)
    if not 0 <= i <= len(terms):
        raise WordError(f"level {i} out of range")
    trunc = terms[:i]
    base_value = cf_value(trunc)
    base = curve_for_slope(base_value).word
    lb = len(base)
    w2 = _extension_word(trunc, 2)
    resid = len(w2) - 2 * lb
    pos_rots = _rotations(base)
    base_rots = pos_rots | _rotations(inverse_word(base))
    checks = {n: canonical_form(_extension_word(trunc, n)) for n in (3, 4, 5)}

    # rank candidates: canonical base first, then plain rotations over
    # inverted ones, then scan order
    best = None
    for src, w in enumerate((w2, inverse_word(w2))):
        dbl = w + w
        for k in range(len(w2)):
            head = dbl[k:k + lb]
            if head not in base_rots:
                continue
            ihead = inverse_word(head)
            rest = dbl[k + lb:k + len(w2)]
            for j in range(resid + 1):
                if rest[j:j + lb] != ihead:
                    continue
                d1, d2 = rest[:j], rest[j + lb:]
                if not all(
                    canonical_form(_closed_form(head, d1, d2, n)) == checks[n]
                    for n in (3, 4, 5)
                ):
                    continue
                key = (head != base, head not in pos_rots, src, k, j)
                if best is None or key < best[0]:
                    best = (key, LevelWords(head, d1, d2))
    if best is None:
        raise WordError(f"no level split found for {terms} at level {i}")
    return best[1]


def simple_family(curve: SimpleCurve, n: int, triple: LevelWords | None = None) -> bytes:
    """gamma^n delta1 gamma^-n delta2; simple for every n >= 0."""
    if n < 0:
        raise WordError("n must be >= 0")
    if triple is None:
        triple = level_words(curve.cf.terms, curve.cf.depth)
    g, gi = triple.gamma, inverse_word(triple.gamma)
    return reduce_word(g * n + triple.delta1 + gi * n + triple.delta2)


@dataclass(frozen=True)
class Block:
    m1: int
    s1: int
    m2: int
    s2: int


def block_decompose(curve: SimpleCurve, i: int) -> list[Block]:
    """Write the curve as consecutive blocks gamma_i^m1 d1^s1 gamma_i^-m2 d2^s2.

    Every exponent lies in {floor(n_{i+1}/2), floor(n_{i+1}/2) + 1}; some
    cyclic rotation of the curve word (or of its inverse) equals the exact
    concatenation of the emitted blocks.
    """
    terms = curve.cf.terms
    if not 1 <= i < len(terms):
        raise WordError(f"level {i} not in [1, {len(terms) - 1}]")
    triple = level_words(terms, i)
    n_next = terms[i]
    allowed = (n_next // 2 + 1, n_next // 2)
    g, gi = triple.gamma, inverse_word(triple.gamma)
    lg = len(g)
    d1, d2 = triple.delta1, triple.delta2
    d1v = ((d1, 1),) if not d1 else ((d1, 1), (inverse_word(d1), -1))
    d2v = ((d2, 1),) if not d2 else ((d2, 1), (inverse_word(d2), -1))

    def run_length(w: bytes, pos: int, piece: bytes) -> int:
        cnt = 0
        while cnt < max(allowed) and w.startswith(piece, pos + cnt * lg):
            cnt += 1
        return cnt

    def parse(w: bytes) -> Optional[list[Block]]:
        dead: set[int] = set()

        def go(pos: int) -> Optional[list[Block]]:
            if pos == len(w):
                return []
            if pos in dead:
                return None
            c1 = run_length(w, pos, g)
            for m1 in allowed:
                if m1 > c1:
                    continue
                p1 = pos + m1 * lg
                for seg1, s1 in d1v:
                    if not w.startswith(seg1, p1):
                        continue
                    p2 = p1 + len(seg1)
                    c2 = run_length(w, p2, gi)
                    for m2 in allowed:
                        if m2 > c2:
                            continue
                        p3 = p2 + m2 * lg
                        for seg2, s2 in d2v:
                            if not w.startswith(seg2, p3):
                                continue
                            tail = go(p3 + len(seg2))
                            if tail is not None:
                                return [Block(m1, s1, m2, s2)] + tail
            dead.add(pos)
            return None

        return go(0)

    # prefer alignments with the fewest inverted connectors, then the
    # largest leading exponent (the closed forms for r = i + 1 come first)
    best = None
    for src, source in enumerate((curve.word, inverse_word(curve.word))):
        dbl = source + source
        for k in range(len(source)):
            blocks = parse(dbl[k:k + len(source)])
            if not blocks:
                continue
            negs = sum((b.s1 < 0) + (b.s2 < 0) for b in blocks)
            key = (negs, -blocks[0].m1, src, k)
            if best is None or key < best[0]:
                best = (key, blocks)
    if best is None:
        raise WordError(f"no block alignment found for {curve} at level {i}")
    return best[1]


def mcg_slope_action(m: Sequence[Sequence[int]], r: Rational) -> Rational:
    """Slope of M (q, p)^T for r = p/q; M integral with determinant +-1."""
    (m00, m01), (m10, m11) = m
    det = m00 * m11 - m01 * m10
    if abs(det) != 1:
        raise WordError(f"matrix determinant must be +-1, got {det}")
    q2 = m00 * r.den + m01 * r.num
    p2 = m10 * r.den + m11 * r.num
    return Rational(p2, q2)
