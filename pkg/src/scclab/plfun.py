"""Piecewise-linear functions and the constructive interval routines used
by the representation diagnostics: halving an excursion while keeping its
floor, and extracting a sub-interval of prescribed length with controlled
mean slope.

Everything is exact when breakpoints and values are Fractions; floats are
accepted for diagnostic use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class PLError(ValueError):
    pass


def _half(x):
    return x / 2 if isinstance(x, float) else Fraction(x, 2)


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear function given by its breakpoints."""

    xs: tuple
    ys: tuple

    def __post_init__(self):
        if len(self.xs) != len(self.ys) or len(self.xs) < 2:
            raise PLError("need matching xs/ys with at least two breakpoints")
        if any(a >= b for a, b in zip(self.xs, self.xs[1:])):
            raise PLError("breakpoints must be strictly increasing")

    @property
    def lo(self):
        return self.xs[0]

    @property
    def hi(self):
        return self.xs[-1]

    def _segment(self, x) -> int:
        lo, hi = 0, len(self.xs) - 2
        while lo < hi:
            mid = (lo + hi) // 2
            if self.xs[mid + 1] < x:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def __call__(self, x):
        if not self.lo <= x <= self.hi:
            raise PLError(f"{x} outside domain [{self.lo}, {self.hi}]")
        k = self._segment(x)
        x0, x1 = self.xs[k], self.xs[k + 1]
        y0, y1 = self.ys[k], self.ys[k + 1]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def restrict(self, a, b) -> "PLFunction":
        if not (self.lo <= a < b <= self.hi):
            raise PLError("bad restriction interval")
        xs = [a]
        ys = [self(a)]
        for x, y in zip(self.xs, self.ys):
            if a < x < b:
                xs.append(x)
                ys.append(y)
        xs.append(b)
        ys.append(self(b))
        return PLFunction(tuple(xs), tuple(ys))


@dataclass(frozen=True)
class Excursion:
    """Interval [u, v] with f(u) = f(v) = level and f >= level inside."""

    fn: PLFunction
    u: object
    v: object
    level: object

    @property
    def length(self):
        return self.v - self.u


def find_excursions(f: PLFunction) -> list[Excursion]:
    """Maximal excursions of f, one per local-minimum basin.

    Each interval stretches from the outermost point at the basin's floor
    level on the left to its counterpart on the right.
    """
    n = len(f.xs)
    out = []
    seen = set()
    for k in range(n):
        m = f.ys[k]
        if (k > 0 and f.ys[k - 1] < m) or (k < n - 1 and f.ys[k + 1] < m):
            continue
        # left boundary of the basin at level m
        j = k
        while j > 0 and f.ys[j - 1] >= m:
            j -= 1
        if j > 0:  # crossing on the segment [j-1, j]
            x0, x1 = f.xs[j - 1], f.xs[j]
            y0, y1 = f.ys[j - 1], f.ys[j]
            u = x0 + (m - y0) * (x1 - x0) / (y1 - y0)
        else:  # domain edge: first vertex sitting at the floor
            u = next(f.xs[idx] for idx in range(j, k + 1) if f.ys[idx] == m)
        # right boundary
        j = k
        while j < n - 1 and f.ys[j + 1] >= m:
            j += 1
        if j < n - 1:  # crossing on the segment [j, j+1]
            x0, x1 = f.xs[j], f.xs[j + 1]
            y0, y1 = f.ys[j], f.ys[j + 1]
            v = x0 + (m - y0) * (x1 - x0) / (y1 - y0)
        else:
            v = next(f.xs[idx] for idx in range(j, k - 1, -1) if f.ys[idx] == m)
        if u < v and (u, v) not in seen:
            seen.add((u, v))
            out.append(Excursion(f, u, v, m))
    out.sort(key=lambda e: (e.u, e.v))
    return out


def _level_span(f: PLFunction, lam):
    """The span [s, e] of {f >= lam} when that set is connected."""
    s = e = None
    for k in range(len(f.xs) - 1):
        x0, x1 = f.xs[k], f.xs[k + 1]
        y0, y1 = f.ys[k], f.ys[k + 1]
        if s is None:
            if y0 >= lam:
                s = x0
            elif y1 >= lam:
                s = x0 + (lam - y0) * (x1 - x0) / (y1 - y0)
        if y1 >= lam:
            e = x1
        elif y0 >= lam:
            e = x0 + (lam - y0) * (x1 - x0) / (y1 - y0)
    if s is None or e is None or s > e:  # pragma: no cover
        raise PLError("empty level span")
    return s, e


def _interior_floor_touch(f: PLFunction, m):
    """An interior point with f == m, the one nearest the midpoint, if any."""
    mid = _half(f.lo + f.hi)
    best = None
    for k in range(len(f.xs) - 1):
        x0, x1 = f.xs[k], f.xs[k + 1]
        y0, y1 = f.ys[k], f.ys[k + 1]
        cands = []
        if y0 == m:
            cands.append(x0)
        if (y0 - m) * (y1 - m) < 0:
            cands.append(x0 + (m - y0) * (x1 - x0) / (y1 - y0))
        elif y0 == m and y1 == m:
            cands.append(_half(x0 + x1))  # flat floor: any interior point
        for t in cands:
            if f.lo < t < f.hi:
                d = abs(t - mid)
                if best is None or (d, t) < best:
                    best = (d, t)
    return best[1] if best else None


def halve_excursion(exc: Excursion) -> Excursion:
    """Sub-excursion of length in [L/2, L) with floor >= the input floor.

    Either the floor is touched strictly inside (split there, keep the
    longer half), or the level is swept upward until the span of
    {f >= level} shrinks to exactly L/2.
    """
    if exc.u >= exc.v:
        raise PLError("cannot halve a degenerate excursion")
    f = exc.fn.restrict(exc.u, exc.v)
    m = exc.level
    big = exc.v - exc.u
    if f.ys[0] != m or f.ys[-1] != m or min(f.ys) < m:
        raise PLError("not an excursion")

    t0 = _interior_floor_touch(f, m)
    if t0 is not None:
        if t0 - exc.u >= exc.v - t0:
            return Excursion(exc.fn, exc.u, t0, m)
        return Excursion(exc.fn, t0, exc.v, m)

    # f > m strictly inside; the span of {f >= lam} is a single interval
    # up to the lowest interior local-minimum value lam_star
    half = _half(big)
    lam_star = None
    for k in range(1, len(f.xs) - 1):
        if f.ys[k] <= f.ys[k - 1] and f.ys[k] <= f.ys[k + 1]:
            if lam_star is None or f.ys[k] < lam_star:
                lam_star = f.ys[k]
    if lam_star is None:
        lam_star = max(f.ys)
    s, e = _level_span(f, lam_star)
    if e - s >= half:
        return Excursion(exc.fn, s, e, lam_star)

    # span length is continuous piecewise-affine in the level on each band
    # between vertex values: bracket L/2 and solve linearly
    knots = sorted({y for y in f.ys if m < y < lam_star}) + [lam_star]
    prev_lam, prev_len = m, big
    for lam in knots:
        s, e = _level_span(f, lam)
        ln = e - s
        if ln == half:
            return Excursion(exc.fn, s, e, lam)
        if ln < half:
            t = (prev_len - half) / (prev_len - ln)
            target = prev_lam + t * (lam - prev_lam)
            s, e = _level_span(f, target)
            if e - s != half:  # pragma: no cover
                raise PLError("level interpolation failed")
            return Excursion(exc.fn, s, e, target)
        prev_lam, prev_len = lam, ln
    raise PLError("level sweep failed")  # pragma: no cover


# ---------------------------------------------------------------------------
# controlled-slope sub-intervals


def _chord_zeros(f: PLFunction):
    """Interior zeros of f minus its chord."""
    a, b = f.lo, f.hi
    fa = f(a)
    s = (f(b) - fa) / (b - a)
    zeros = set()
    for k in range(len(f.xs) - 1):
        x0, x1 = f.xs[k], f.xs[k + 1]
        g0 = f.ys[k] - fa - s * (x0 - a)
        g1 = f.ys[k + 1] - fa - s * (x1 - a)
        if g0 == 0 and a < x0 < b:
            zeros.add(x0)
        if (g0 > 0 > g1) or (g0 < 0 < g1):
            zeros.add(x0 - g0 * (x1 - x0) / (g1 - g0))
    return sorted(t for t in zeros if a < t < b)


def halve_chord_interval(f: PLFunction):
    """(x', y') with y' - x' in [L/2, L) and mean slope equal to the chord's.

    If the graph crosses its chord inside, split at the crossing nearest
    the midpoint; otherwise f sits on one side of the chord and the
    excursion halving applies to the difference.
    """
    a, b = f.lo, f.hi
    zeros = _chord_zeros(f)
    if zeros:
        mid = _half(a + b)
        z = min(zeros, key=lambda t: (abs(t - mid), t))
        return (a, z) if z - a >= b - z else (z, b)
    fa = f(a)
    s = (f(b) - fa) / (b - a)
    gy = tuple(y - fa - s * (x - a) for x, y in zip(f.xs, f.ys))
    if any(y < 0 for y in gy):
        gy = tuple(-y for y in gy)
    g = PLFunction(f.xs, gy)
    exc = halve_excursion(Excursion(g, a, b, 0))
    return exc.u, exc.v


def _min_admissible_length(f: PLFunction, eps, a):
    """Exact minimum l' in [a, L] such that some sub-interval of length l'
    has |f-increment| <= eps l', plus a witness left endpoint.

    The feasible set is polyhedral over the grid cut by the breakpoints
    (two affine constraints per cell), so the minimum sits on the line
    l' = a, at a grid corner, or at a boundary zero along a grid line.
    """
    lo, hi = f.lo, f.hi
    big = hi - lo

    def witness_at_length(ln):
        knots = sorted(
            {x for x in f.xs if lo <= x <= hi - ln}
            | {x - ln for x in f.xs if lo + ln <= x <= hi}
            | {lo, hi - ln}
        )
        bound = eps * ln
        vals = [f(x + ln) - f(x) for x in knots]
        for k, v in enumerate(vals):
            if abs(v) <= bound:
                return knots[k]
            if k:
                v0 = vals[k - 1]
                for target in (bound, -bound):
                    if (v0 - target) * (v - target) < 0:
                        x0, x1 = knots[k - 1], knots[k]
                        return x0 + (target - v0) * (x1 - x0) / (v - v0)
        return None

    w = witness_at_length(a)
    if w is not None:
        return a, w

    cands = []
    for xi in f.xs:
        fi = f(xi)
        for xj in f.xs:
            ln = xj - xi
            if a <= ln <= big and abs(f(xj) - fi) <= eps * ln:
                cands.append((ln, xi))
        # boundary zeros along x' = xi, right endpoint moving on a segment
        for k in range(len(f.xs) - 1):
            x0 = max(f.xs[k], xi)
            x1 = f.xs[k + 1]
            if x1 <= x0:
                continue
            for sgn in (1, -1):
                g0 = sgn * (f(x0) - fi) - eps * (x0 - xi)
                g1 = sgn * (f(x1) - fi) - eps * (x1 - xi)
                if g0 == g1:
                    continue
                t = x0 - g0 * (x1 - x0) / (g1 - g0)
                if x0 <= t <= x1 and a <= t - xi <= big:
                    if abs(f(t) - fi) <= eps * (t - xi):
                        cands.append((t - xi, xi))
    for xj in f.xs:
        fj = f(xj)
        # boundary zeros along x' + l' = xj, left endpoint moving
        for k in range(len(f.xs) - 1):
            x0 = f.xs[k]
            x1 = min(f.xs[k + 1], xj)
            if x1 <= x0:
                continue
            for sgn in (1, -1):
                g0 = sgn * (fj - f(x0)) - eps * (xj - x0)
                g1 = sgn * (fj - f(x1)) - eps * (xj - x1)
                if g0 == g1:
                    continue
                t = x0 - g0 * (x1 - x0) / (g1 - g0)
                if x0 <= t <= x1 and a <= xj - t <= big:
                    if abs(fj - f(t)) <= eps * (xj - t):
                        cands.append((xj - t, t))
    if not cands:  # pragma: no cover
        raise PLError("no admissible length found")
    return min(cands)


def eps_slope_subinterval(f: PLFunction, eps, a):
    """(x', y') with a/2 <= y' - x' < a and |f(y') - f(x')| <= eps (y' - x').

    Requires |f(hi) - f(lo)| <= eps (hi - lo) and 0 < a < hi - lo.  The
    minimum admissible length in [a, L] is located first; halving it lands
    strictly below a by minimality, and at or above a/2.
    """
    if eps <= 0:
        raise PLError("eps must be positive")
    big = f.hi - f.lo
    if not 0 < a < big:
        raise PLError("need 0 < a < domain length")
    if abs(f(f.hi) - f(f.lo)) > eps * big:
        raise PLError("chord slope exceeds eps")
    ln, xi = _min_admissible_length(f, eps, a)
    x1, y1 = halve_chord_interval(f.restrict(xi, xi + ln))
    if not (_half(a) <= y1 - x1 < a):  # pragma: no cover
        raise PLError("halving step left the length window")
    return x1, y1
