"""Upper-half-space model of hyperbolic 3-space behind SL(2, C), and the
representation diagnostics built on it: translation and stable lengths,
axes, orbit profiles with excursions, quasi-loops, trace profiling over
simple slopes, and local quasi-geodesic fits.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .farey import INFINITY, Rational, cf_expand
from .plfun import Excursion, PLFunction, find_excursions, halve_excursion
from .words import SimpleCurve, curve_for_slope, inverse_word, word_str

DET_TOL = 1e-9
BOUNDARY_TOL = 1e-9


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class Mat2C:
    """2x2 complex matrix with determinant normalized to 1."""

    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def of(cls, a, b, c, d, normalize: bool = True) -> "Mat2C":
        a, b, c, d = complex(a), complex(b), complex(c), complex(d)
        det = a * d - b * c
        if normalize:
            if det == 0:
                raise GeometryError("singular matrix")
            s = cmath.sqrt(det)
            a, b, c, d = a / s, b / s, c / s, d / s
            det = a * d - b * c
        # computing det of a large-entry matrix cancels catastrophically,
        # so the acceptance bound scales with the squared entry size
        scale = max(abs(a), abs(b), abs(c), abs(d)) ** 2
        if abs(det - 1) > 1e-9 * max(1.0, scale):
            raise GeometryError(f"determinant {det} too far from 1")
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> "Mat2C":
        return cls(1, 0, 0, 1)

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def trace(self) -> complex:
        return self.a + self.d

    def __matmul__(self, o: "Mat2C") -> "Mat2C":
        return Mat2C(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "Mat2C":
        # adjugate; exact for det == 1
        return Mat2C(self.d, -self.b, -self.c, self.a)

    def renormalized(self) -> "Mat2C":
        return Mat2C.of(self.a, self.b, self.c, self.d)

    def max_abs(self) -> float:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))


def trace(m: Mat2C) -> complex:
    return m.trace()


@dataclass(frozen=True)
class Rep:
    """Images of the three generators a, b, c; abc is the fourth boundary."""

    A: Mat2C
    B: Mat2C
    C: Mat2C

    @property
    def boundary(self) -> Mat2C:
        return self.A @ self.B @ self.C

    def generator(self, base: int, inverse: bool) -> Mat2C:
        g = (self.A, self.B, self.C)[base]
        return g.inverse() if inverse else g


def evaluate(rep: Rep, w: bytes) -> Mat2C:
    m = Mat2C.identity()
    for letter in w:
        m = m @ rep.generator(letter >> 1, bool(letter & 1))
    return m


# ---------------------------------------------------------------------------
# upper half space


@dataclass(frozen=True)
class H3Point:
    z: complex
    t: float

    def __post_init__(self):
        if not (self.t > 0 and math.isfinite(self.t) and
                math.isfinite(abs(self.z))):
            raise GeometryError(f"invalid point ({self.z}, {self.t})")


BASEPOINT = H3Point(0j, 1.0)


def h3_distance(p: H3Point, q: H3Point) -> float:
    num = abs(p.z - q.z) ** 2 + (p.t - q.t) ** 2
    return math.acosh(max(1.0, 1.0 + num / (2.0 * p.t * q.t)))


def _quat_mul(q1, q2):
    # quaternions written z + t j with z complex and t complex; j z = conj(z) j
    z1, t1 = q1
    z2, t2 = q2
    return (z1 * z2 - t1 * t2.conjugate(), z1 * t2 + t1 * z2.conjugate())


def _quat_inv(q):
    z, t = q
    n = abs(z) ** 2 + abs(t) ** 2
    if n == 0:
        raise GeometryError("zero quaternion")
    return (z.conjugate() / n, -t / n)


def apply_isometry(m: Mat2C, p: H3Point) -> H3Point:
    """Poincare extension: P = z + t j maps to (aP + b)(cP + d)^-1.

    Evaluates the quaternion product num * den^-1 with the det-1
    simplification of the j-part (t' = t / |den|^2); the raw expansion of
    the j-part cancels catastrophically for large entries.
    """
    num = (m.a * p.z + m.b, m.a * p.t)
    den = (m.c * p.z + m.d, m.c * p.t)
    norm = abs(den[0]) ** 2 + abs(den[1]) ** 2
    if norm == 0:
        raise GeometryError("point maps through the pole")  # pragma: no cover
    z = (num[0] * den[0].conjugate() + num[1] * den[1].conjugate()) / norm
    return H3Point(z, p.t / norm)


def dist_o_mo(m: Mat2C) -> float:
    """d(o, M o) for the basepoint o = (0, 1): cosh d = (sum |entries|^2)/2."""
    s = (abs(m.a) ** 2 + abs(m.b) ** 2 + abs(m.c) ** 2 + abs(m.d) ** 2) / 2.0
    return math.acosh(max(1.0, s))


def _dist_to_real_segment(z: complex, lo: float = -2.0, hi: float = 2.0) -> float:
    x = min(max(z.real, lo), hi)
    return abs(z - x)


def classify(m: Mat2C, tol: float = BOUNDARY_TOL) -> str:
    """'loxodromic', 'parabolic', 'elliptic', 'identity', or
    'boundary-ambiguous' when the trace sits within tol of [-2, 2] without
    lying exactly on it."""
    tr = m.trace()
    d = _dist_to_real_segment(tr)
    if d > tol:
        return "loxodromic"
    if tr.imag == 0.0 and -2.0 <= tr.real <= 2.0:
        if abs(tr.real) == 2.0:
            off = max(abs(m.b), abs(m.c), abs(m.a - m.d))
            return "identity" if off <= tol else "parabolic"
        return "elliptic"
    return "boundary-ambiguous"


def translation_length(m: Mat2C) -> float:
    """2 |Re arccosh(tr/2)|; zero for non-loxodromic classes."""
    return 2.0 * abs(cmath.acosh(m.trace() / 2.0).real)


def stable_length(rep: Rep, w: bytes, n: int = 64) -> float:
    """d(M^n o, o) / n; an upper bound decreasing to the stable length."""
    if n < 1:
        raise GeometryError("n must be >= 1")
    m = evaluate(rep, w)
    acc = Mat2C.identity()
    base = m
    k = n
    while k:
        if k & 1:
            acc = (acc @ base).renormalized()
        k >>= 1
        if k:
            base = (base @ base).renormalized()
        if max(acc.max_abs(), base.max_abs()) > 1e150:
            raise GeometryError(
                f"matrix power overflow at n = {n}; use a smaller n"
            )
    return dist_o_mo(acc) / n


def axis_endpoints(m: Mat2C) -> tuple[Optional[complex], Optional[complex]]:
    """(attracting, repelling) fixed points on the boundary; None encodes
    the point at infinity.  Requires a loxodromic matrix."""
    if classify(m) != "loxodromic":
        raise GeometryError("axis endpoints need a loxodromic isometry")
    if m.c == 0:
        finite = m.b / (m.d - m.a)  # d != a: loxodromic
        # derivative at infinity direction: |a|^2 vs 1
        if abs(m.a) > abs(m.d):
            return None, finite
        return finite, None
    disc = cmath.sqrt(m.trace() ** 2 - 4.0)
    z1 = (m.a - m.d + disc) / (2.0 * m.c)
    z2 = (m.a - m.d - disc) / (2.0 * m.c)
    # attracting fixed point has |cz + d| > 1
    if abs(m.c * z1 + m.d) > abs(m.c * z2 + m.d):
        return z1, z2
    return z2, z1


def _axis_straightener(m: Mat2C) -> Mat2C:
    """Isometry sending (repelling, attracting) to (0, infinity)."""
    plus, minus = axis_endpoints(m)
    if plus is None:
        return Mat2C.of(1, -minus, 0, 1)
    if minus is None:
        return Mat2C.of(0, 1, 1, -plus)
    return Mat2C.of(1, -minus, 1, -plus)


def dist_to_axis(p: H3Point, m: Mat2C) -> float:
    q = apply_isometry(_axis_straightener(m), p)
    r = math.hypot(abs(q.z), q.t)
    return math.acosh(max(1.0, r / q.t))


def axis_coordinate(p: H3Point, m: Mat2C) -> float:
    """Signed position of the projection of p along the axis of m (the
    attracting direction is positive; the projection of o sits at 0 only
    up to the caller's normalization)."""
    q = apply_isometry(_axis_straightener(m), p)
    return math.log(math.hypot(abs(q.z), q.t))


# ---------------------------------------------------------------------------
# orbit profiles, excursions, quasi-loops


@dataclass(frozen=True)
class OrbitProfile:
    """Distance to the axis and position along it, sampled at the prefix
    points of one period of the invariant line of a simple word."""

    word: bytes
    dist_samples: tuple[float, ...]
    axis_samples: tuple[float, ...]
    dist_fn: PLFunction
    axis_fn: PLFunction


def orbit_profile(rep: Rep, curve: SimpleCurve) -> OrbitProfile:
    m = evaluate(rep, curve.word)
    if classify(m) != "loxodromic":
        raise GeometryError(f"image of {curve} is not loxodromic")
    straight = _axis_straightener(m)
    dists = []
    axes = []
    acc = Mat2C.identity()
    n = len(curve.word)
    for k in range(n + 1):
        q = apply_isometry(straight @ acc, BASEPOINT)
        r = math.hypot(abs(q.z), q.t)
        dists.append(math.acosh(max(1.0, r / q.t)))
        axes.append(math.log(r))
        if k < n:
            letter = curve.word[k]
            acc = acc @ rep.generator(letter >> 1, bool(letter & 1))
    base = axes[0]
    axes = [x - base for x in axes]
    xs = tuple(float(k) for k in range(n + 1))
    return OrbitProfile(
        curve.word, tuple(dists), tuple(axes),
        PLFunction(xs, tuple(dists)), PLFunction(xs, tuple(axes)),
    )


def profile_excursions(profile: OrbitProfile) -> list[Excursion]:
    return find_excursions(profile.dist_fn)


@dataclass(frozen=True)
class QuasiLoop:
    start: int
    length: int
    word: bytes
    displacement: float


def find_quasi_loops(rep: Rep, curve: SimpleCurve, eps: float) -> list[QuasiLoop]:
    """Maximal cyclic subwords w of the curve with d(rho(w) o, o) <= eps |w|.

    Maximal means not contained in a longer qualifying cyclic subword.
    """
    if eps <= 0:
        raise GeometryError("eps must be positive")
    word = curve.word
    n = len(word)
    prefixes = [Mat2C.identity()]
    for letter in word:
        prefixes.append(prefixes[-1] @ rep.generator(letter >> 1, bool(letter & 1)))
    full = prefixes[-1]

    def displacement(start: int, length: int) -> float:
        mat = prefixes[start].inverse()
        end = start + length
        if end <= n:
            mat = mat @ prefixes[end]
        else:
            mat = mat @ full @ prefixes[end - n]
        return dist_o_mo(mat)

    hits = {}
    for length in range(2, n + 1):
        for start in range(n):
            d = displacement(start, length)
            if d <= eps * length:
                hits[(start, length)] = d
    maximal = []
    for (start, length), d in sorted(hits.items()):
        grown = (
            (start, length + 1) in hits
            or ((start - 1) % n, length + 1) in hits
        )
        if not grown and length < n + 1:
            maximal.append(QuasiLoop(start, length, _cyclic_slice(word, start, length), d))
    return maximal


def _cyclic_slice(w: bytes, start: int, length: int) -> bytes:
    dbl = w + w
    return dbl[start:start + length]


# ---------------------------------------------------------------------------
# local quasi-geodesic fit


@dataclass(frozen=True)
class QGFit:
    lam: float
    k: float
    degenerate: bool = False


def local_qg_fit(points: Sequence[H3Point], window: int) -> QGFit:
    """Lexicographically least (lambda, k), lambda >= 1, such that every pair
    within index distance `window` satisfies
    |i-j|/lambda - k <= d(p_i, p_j) <= lambda |i-j| + k.

    Any lambda >= 1 admits some k, so lambda = 1 and k is the largest
    two-sided violation; a degenerate flag marks an all-equal point set.
    """
    if len(points) < 2:
        raise GeometryError("need at least two points")
    if window < 1 or window > len(points) - 1:
        raise GeometryError("bad window")
    dists = {}
    for i in range(len(points)):
        for j in range(i + 1, min(i + window, len(points) - 1) + 1):
            dists[(i, j)] = h3_distance(points[i], points[j])
    if all(d == 0.0 for d in dists.values()):
        span = max(j - i for i, j in dists)
        return QGFit(1.0, float(span), degenerate=True)
    k = 0.0
    for (i, j), d in dists.items():
        gap = j - i
        k = max(k, d - gap, gap - d)
    return QGFit(1.0, k)


# ---------------------------------------------------------------------------
# trace profiling over simple slopes


def slopes_all_regimes(max_pq: int) -> list[Rational]:
    """All slopes p/q with |p| + q <= max_pq (every sign regime), plus
    infinity, in ascending order."""
    out = [INFINITY]
    for q in range(1, max_pq + 1):
        for p in range(-(max_pq - q), max_pq - q + 1):
            if math.gcd(abs(p), q) == 1:
                out.append(Rational(p, q))
    return sorted(out)


@dataclass(frozen=True)
class ProfileRow:
    slope: Rational
    cf: tuple[int, ...]
    norm_len: int
    trace: complex
    transl_len: float
    ratio: float
    cls: str

    def as_record(self) -> dict:
        return {
            "slope": str(self.slope),
            "cf": list(self.cf),
            "norm_len": self.norm_len,
            "trace_re": self.trace.real,
            "trace_im": self.trace.imag,
            "transl_len": self.transl_len,
            "ratio": self.ratio,
            "class": self.cls,
        }


def bowditch_profile(rep: Rep, max_pq: int) -> list[ProfileRow]:
    """Per-slope cyclic length, trace, translation length and their ratio,
    for every simple slope of size at most max_pq in all sign regimes."""
    if max_pq < 2:
        raise GeometryError("max_pq must be >= 2")
    rows = []
    for slope in slopes_all_regimes(max_pq):
        curve = curve_for_slope(slope)
        m = evaluate(rep, curve.word)
        tl = translation_length(m)
        rows.append(ProfileRow(
            slope, curve.cf.terms, len(curve.word), m.trace(),
            tl, tl / len(curve.word), classify(m),
        ))
    return rows


def min_ratio(rows: Sequence[ProfileRow]) -> tuple[float, Rational]:
    best = min(rows, key=lambda r: (r.ratio, r.slope))
    return best.ratio, best.slope


@dataclass(frozen=True)
class BQReport:
    k_bound: float
    rows: tuple[ProfileRow, ...]
    bq1_violations: tuple[ProfileRow, ...]
    small_trace: tuple[ProfileRow, ...]

    @property
    def bq1_ok(self) -> bool:
        return not self.bq1_violations


def bq_check(rep: Rep, max_pq: int, k_bound: float) -> BQReport:
    """Trace conditions over simple slopes: violations of the segment
    exclusion (trace within tolerance of [-2, 2]), and the curves whose
    trace modulus is at most the caller's bound."""
    if k_bound <= 0:
        raise GeometryError("K must be positive")
    rows = tuple(bowditch_profile(rep, max_pq))
    bad = tuple(
        r for r in rows if _dist_to_real_segment(r.trace) <= BOUNDARY_TOL
    )
    small = tuple(r for r in rows if abs(r.trace) <= k_bound)
    return BQReport(k_bound, rows, bad, small)


# ---------------------------------------------------------------------------
# example representations


def identity_rep() -> Rep:
    i = Mat2C.identity()
    return Rep(i, i, i)


def diagonal_rep(lam: float = 2.0) -> Rep:
    """All three generators map to the same diagonal loxodromic."""
    d = Mat2C.of(lam, 0, 0, 1.0 / lam)
    return Rep(d, d, d)


def loxodromic_with_axis(lam: float, lo: complex, hi: complex) -> Mat2C:
    """Loxodromic with eigenvalue ratio lam^2 translating from lo to hi."""
    conj = Mat2C.of(hi, lo, 1, 1)
    return conj @ Mat2C.of(lam, 0, 0, 1.0 / lam) @ conj.inverse()


def pingpong_rep(lam: float = 10.0, centers=(0.0, 14.0, 28.0),
                 radius: float = 1.0) -> Rep:
    """Three loxodromics with short, far-separated axes.

    For lam large against radius/separation the isometric circles are
    small and disjoint, so the generators play ping-pong and the group is
    free and discrete; the profile over simple slopes then shows a
    ratio bounded away from zero.
    """
    mats = [
        loxodromic_with_axis(lam, c - radius, c + radius) for c in centers
    ]
    return Rep(*mats)
