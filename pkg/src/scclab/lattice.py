"""Exact-rational lattice geometry for reading simple words along
horizontal lines: the level-i frame map, typed lattice points, the S/R/T
rectangles, horizontal-segment decomposition against the induced tilings,
and the words read inside tiles.

Everything here is Fraction arithmetic; no invariant is ever checked in
floating point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .farey import Rational, cf_expand, convergents
from .words import (
    LatticeCrossingError,
    SpecialLengths,
    curve_for_slope,
    read_segment,
    special_lengths,
)

TYPE_TAGS = {(0, 0): "abc", (1, 0): "a", (0, 1): "b", (1, 1): "c"}


class LatticeError(ValueError):
    pass


class AmbiguousHeightError(LatticeError):
    """The segment height sits exactly on a tile boundary ordinate."""


def _slope_sign(vec: tuple[Fraction, Fraction]) -> int:
    if vec[0] == 0:
        raise LatticeError("vertical vector has no slope sign")
    s = vec[1] / vec[0]
    return (s > 0) - (s < 0)


@dataclass(frozen=True)
class PointType:
    cls: tuple[int, int]

    @property
    def tag(self) -> str:
        return TYPE_TAGS[self.cls]

    def __str__(self) -> str:
        return self.tag


@dataclass(frozen=True)
class LatticeFrame:
    """The image of Z^2 under the level-i straightening map of a slope.

    u and v are the images of the neighbouring convergent vectors, ordered
    so that Slope(u) < 0 < Slope(v); `basis` tells whether this is the
    plain frame or the derived (u, u+v)/(u+v, v) variant.
    """

    slope: Rational
    level: int
    matrix: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    inv_matrix: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    u_pre: tuple[int, int]
    v_pre: tuple[int, int]
    lengths: SpecialLengths
    basis: str = "standard"

    # -- geometry helpers ---------------------------------------------------

    def apply(self, x, y) -> tuple[Fraction, Fraction]:
        (m00, m01), (m10, m11) = self.matrix
        return (m00 * x + m01 * y, m10 * x + m11 * y)

    def unapply(self, x, y) -> tuple[Fraction, Fraction]:
        (m00, m01), (m10, m11) = self.inv_matrix
        return (m00 * x + m01 * y, m10 * x + m11 * y)

    def point(self, m: int, n: int) -> tuple[Fraction, Fraction]:
        return self.apply(m, n)

    def type_of(self, m: int, n: int) -> PointType:
        return PointType((m % 2, n % 2))

    def opposite_type(self, t: PointType) -> PointType:
        du, dv = self.u_pre, self.v_pre
        return PointType(((t.cls[0] + du[0] + dv[0]) % 2,
                          (t.cls[1] + du[1] + dv[1]) % 2))

    @property
    def u(self) -> tuple[Fraction, Fraction]:
        return self.apply(*self.u_pre)

    @property
    def v(self) -> tuple[Fraction, Fraction]:
        return self.apply(*self.v_pre)

    @property
    def regime(self) -> str:
        """'opposite' or 'same': the sign relation of Slope(u+v), Slope(v-u)."""
        u, v = self.u, self.v
        s1 = _slope_sign((u[0] + v[0], u[1] + v[1]))
        s2 = _slope_sign((v[0] - u[0], v[1] - u[1]))
        return "opposite" if s1 * s2 < 0 else "same"

    def derived(self) -> "LatticeFrame":
        """The (u, u+v) or (u+v, v) frame used for segments inside T tiles."""
        u, v = self.u, self.v
        upv = (u[0] + v[0], u[1] + v[1])
        pre_sum = (self.u_pre[0] + self.v_pre[0], self.u_pre[1] + self.v_pre[1])
        if _slope_sign(upv) > 0:
            u2, v2 = self.u_pre, pre_sum
        else:
            u2, v2 = pre_sum, self.v_pre
        return LatticeFrame(
            self.slope, self.level, self.matrix, self.inv_matrix,
            u2, v2, self.lengths, basis="derived",
        )

    @property
    def period_length(self) -> Fraction:
        """Horizontal translation length of one full curve period."""
        p, q = self.slope.num, self.slope.den
        return self.apply(2 * q, 2 * p)[0]

    def lattice_points_in_box(
        self, x_lo, x_hi, y_lo, y_hi
    ) -> Iterator[tuple[int, int]]:
        corners = [
            self.unapply(x, y) for x in (x_lo, x_hi) for y in (y_lo, y_hi)
        ]
        ms = [c[0] for c in corners]
        ns = [c[1] for c in corners]
        m0, m1 = _floor(min(ms)), _ceil(max(ms))
        n0, n1 = _floor(min(ns)), _ceil(max(ns))
        for m in range(m0, m1 + 1):
            for n in range(n0, n1 + 1):
                x, y = self.apply(m, n)
                if x_lo <= x <= x_hi and y_lo <= y <= y_hi:
                    yield (m, n)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def build_frame(slope: Rational, i: int) -> LatticeFrame:
    """Level-i frame of a slope in (0, inf); requires 1 <= i < depth and
    excludes the degenerate (i, n_1) = (1, 0) case."""
    if slope.is_infinite or slope.num <= 0:
        raise LatticeError(f"slope {slope} is not in (0, inf)")
    cf = cf_expand(slope)
    if not 1 <= i < cf.depth:
        raise LatticeError(f"level {i} not in [1, {cf.depth - 1}]")
    if i == 1 and cf.terms[0] == 0:
        raise LatticeError("level 1 of a slope below 1 is degenerate")
    conv = cf.convergents()
    u0 = (conv[i].den, conv[i].num)
    v0 = (conv[i - 1].den, conv[i - 1].num)
    if _vec_slope_key(u0) > _vec_slope_key(v0):
        u0, v0 = v0, u0
    p, q = slope.num, slope.den
    pi, qi = u0[1], u0[0]
    ppi, qpi = v0[1], v0[0]
    sl = special_lengths(cf)
    lp_i = sl.lp[i]
    delta = p * (qi - qpi) - q * (pi - ppi)
    if delta <= 0:
        raise LatticeError("orientation error")  # pragma: no cover
    matrix = (
        (Fraction(1, lp_i), Fraction(1, lp_i)),
        (Fraction(-p, delta), Fraction(q, delta)),
    )
    pq = p + q
    inv = (
        (Fraction(q * lp_i, pq), Fraction(-delta, pq)),
        (Fraction(p * lp_i, pq), Fraction(delta, pq)),
    )
    frame = LatticeFrame(slope, i, matrix, inv, u0, v0, sl)
    u, v = frame.u, frame.v
    assert u[0] + v[0] == 1 and v[1] - u[1] == 1
    assert u[0] > 0 and v[0] > 0 and u[1] < 0 < v[1]
    assert max(u[0], v[0]) == Fraction(sl.l[i], lp_i)
    assert frame.regime == "opposite"
    return frame


def _vec_slope_key(vec: tuple[int, int]):
    q0, p0 = vec
    if q0 == 0:
        return (1, 0)  # vertical counts as +infinity
    return (0, Fraction(p0, q0))


# ---------------------------------------------------------------------------
# tiles


@dataclass(frozen=True)
class Tile:
    """Axis-aligned rectangle attached to a lattice anchor.

    star removes a closed vertical side: 'right' for the starred tiles used
    in concatenations, 'left' for their mirror, None for the closed tile.
    """

    kind: str                   # 'S', 'R' or 'T'
    anchor: tuple[int, int]     # preimage coordinates of the anchor
    star: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("S", "R", "T"):
            raise LatticeError(f"unknown tile kind {self.kind}")
        if self.star not in (None, "right", "left"):
            raise LatticeError(f"unknown star {self.star}")


def tile_rect(frame: LatticeFrame, tile: Tile):
    """(x_lo, x_hi, y_lo, y_hi) of the tile in the image plane."""
    x1, x2 = frame.point(*tile.anchor)
    (u1, u2), (v1, v2) = frame.u, frame.v
    upv = u2 + v2  # ordinate of u+v; its sign splits the R/T formulas
    if tile.kind == "S":
        return (x1, x1 + u1 + v1, x2 + u2, x2 + v2)
    if frame.regime != "opposite":
        raise LatticeError(f"{tile.kind} tiles need the opposite-sign regime")
    if tile.kind == "R":
        if upv > 0:
            return (x1, x1 + u1 - v1, x2 - v2, x2 + u2)
        return (x1, x1 - u1 + v1, x2 + v2, x2 - u2)
    if upv > 0:
        return (x1 + v1, x1 + 2 * u1, x2 + u2, x2 + u2 + v2)
    return (x1 + u1, x1 + 2 * v1, x2 + u2 + v2, x2 + v2)


def tile_contains(frame: LatticeFrame, tile: Tile, x, y) -> bool:
    x_lo, x_hi, y_lo, y_hi = tile_rect(frame, tile)
    if not y_lo <= y <= y_hi:
        return False
    if tile.star == "right":
        return x_lo <= x < x_hi
    if tile.star == "left":
        return x_lo < x <= x_hi
    return x_lo <= x <= x_hi


def tile_contains_segment(frame, tile, y, xa, xb) -> bool:
    return tile_contains(frame, tile, xa, y) and tile_contains(frame, tile, xb, y)


# ---------------------------------------------------------------------------
# reading words in the frame


def read_word(
    frame: LatticeFrame,
    y: Fraction,
    x_from: Fraction,
    x_to: Fraction,
    include_start: bool = True,
    include_end: bool = True,
) -> bytes:
    """Letters read along the horizontal segment [x_from, x_to] at height y."""
    if x_from > x_to:
        raise LatticeError("empty segment orientation")
    if x_from == x_to:
        return b""
    p0 = frame.unapply(x_from, y)
    p1 = frame.unapply(x_to, y)
    return read_segment(p0[0], p0[1], p1[0], p1[1], include_start, include_end)


def read_period(frame: LatticeFrame, y: Fraction, x_from: Fraction) -> bytes:
    """One full period of the curve word starting at x_from (half-open)."""
    return read_word(frame, y, x_from, x_from + frame.period_length,
                     include_start=True, include_end=False)


def line_crossings(
    frame: LatticeFrame, y: Fraction, x_from: Fraction, x_to: Fraction
) -> list[tuple[Fraction, int]]:
    """(x position, letter) of every line crossing along the segment."""
    from .words import _line_crossings_raw

    p0 = frame.unapply(x_from, y)
    p1 = frame.unapply(x_to, y)
    pairs = _line_crossings_raw(p0[0], p0[1], p1[0], p1[1])
    span = x_to - x_from
    return [(x_from + t * span, letter) for t, letter in pairs]


def tile_heights(frame: LatticeFrame, tile: Tile) -> tuple[Fraction, Fraction]:
    x_lo, x_hi, y_lo, y_hi = tile_rect(frame, tile)
    return y_lo, y_hi


def tile_word(frame: LatticeFrame, tile: Tile, h: Fraction) -> bytes:
    """Word read along the height-h segment of the tile; h is the offset
    above the bottom side and must keep the segment off the lattice."""
    x_lo, x_hi, y_lo, y_hi = tile_rect(frame, tile)
    if not 0 < h < y_hi - y_lo:
        raise LatticeError(f"height {h} outside (0, {y_hi - y_lo})")
    return read_word(
        frame, y_lo + h, x_lo, x_hi,
        include_start=tile.star != "left",
        include_end=tile.star != "right",
    )


def height_bands(frame: LatticeFrame, tile: Tile) -> list[tuple[Fraction, Fraction]]:
    """Maximal height bands of the tile free of boundary-vertex ordinates."""
    x_lo, x_hi, y_lo, y_hi = tile_rect(frame, tile)
    (u1, u2), (v1, v2) = frame.u, frame.v
    cuts = {y_lo, y_hi}
    if tile.kind == "S":
        x1, x2 = frame.point(*tile.anchor)
        for c in (x2 + u2, x2 + v2, x2):
            if y_lo < c < y_hi:
                cuts.add(c)
    ordered = sorted(cuts)
    return [(a - y_lo, b - y_lo) for a, b in zip(ordered, ordered[1:])]


def safe_tile_height(
    frame: LatticeFrame, tile: Tile, band: tuple[Fraction, Fraction]
) -> Fraction:
    """A height inside the band whose segment avoids the lattice exactly."""
    lo, hi = band
    span = hi - lo
    for k in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29):
        h = lo + span / k
        try:
            tile_word(frame, tile, h)
            return h
        except LatticeCrossingError:
            continue
    raise LatticeError("no lattice-free height found in band")  # pragma: no cover


# ---------------------------------------------------------------------------
# locating and decomposing segments


@dataclass(frozen=True)
class SegmentPiece:
    tile: Tile
    h: Fraction
    x_from: Fraction
    x_to: Fraction


def _anchor_candidates(frame: LatticeFrame, x, y, margin=3):
    return frame.lattice_points_in_box(x - margin, x + margin, y - margin, y + margin)


def locate_segment(frame: LatticeFrame, y: Fraction, x_from: Fraction) -> Tile:
    """The starred S or T tile containing the horizontal segment of length
    max(u_1, v_1) starting at (x_from, y)."""
    if frame.regime != "opposite":
        raise LatticeError("locating needs the opposite-sign regime")
    (u1, _), (v1, _) = frame.u, frame.v
    x_to = x_from + max(u1, v1)
    hits = []
    for m, n in _anchor_candidates(frame, x_from, y):
        for kind in ("S", "T"):
            tile = Tile(kind, (m, n), star="right")
            if tile_contains_segment(frame, tile, y, x_from, x_to):
                hits.append((kind != "S", (m, n), tile))
    if not hits:
        raise LatticeError("segment not contained in any starred S or T tile")
    return min(hits)[2]


def _tile_at(frame: LatticeFrame, x, y, t: PointType) -> Tile:
    """The unique starred S or R tile of type t or opposite(t) containing
    (x, y) in the opposite-sign partition."""
    tags = {t.cls, frame.opposite_type(t).cls}
    found = []
    for m, n in _anchor_candidates(frame, x, y):
        if (m % 2, n % 2) not in tags:
            continue
        for kind in ("S", "R"):
            tile = Tile(kind, (m, n), star="right")
            x_lo, x_hi, y_lo, y_hi = tile_rect(frame, tile)
            if x_lo <= x < x_hi and y_lo <= y <= y_hi:
                if y == y_lo or y == y_hi:
                    raise AmbiguousHeightError(
                        f"height {y} lies on a tile boundary"
                    )
                found.append(tile)
    if len(found) != 1:
        raise LatticeError(
            f"point ({x}, {y}) covered by {len(found)} tiles"  # pragma: no cover
        )
    return found[0]


def decompose_segment(
    frame: LatticeFrame, y: Fraction, x_from: Fraction, x_to: Fraction,
    t: PointType,
) -> list[SegmentPiece]:
    """Split [x_from, x_to] at height y along the tiling by tiles anchored
    at points of type t or its opposite.

    In the opposite-sign regime the pieces partition the segment (interior
    pieces are full tile widths); in the same-sign regime consecutive
    pieces may overlap, mirroring the covering by S tiles.
    """
    if x_from >= x_to:
        raise LatticeError("need a non-degenerate segment")
    if frame.regime == "opposite":
        return _decompose_opposite(frame, y, x_from, x_to, t)
    return _decompose_same(frame, y, x_from, x_to, t)


def _decompose_opposite(frame, y, x_from, x_to, t):
    pieces = []
    cur = x_from
    while cur < x_to:
        tile = _tile_at(frame, cur, y, t)
        x_lo, x_hi, y_lo, _ = tile_rect(frame, tile)
        end = min(x_hi, x_to)
        pieces.append(SegmentPiece(tile, y - y_lo, cur, end))
        cur = end
    return pieces


def _decompose_same(frame, y, x_from, x_to, t):
    tags = {t.cls, frame.opposite_type(t).cls}
    u, v = frame.u, frame.v
    upv = (u[0] + v[0], u[1] + v[1])
    over_shift = (2 * frame.u_pre[0], 2 * frame.u_pre[1]) \
        if _slope_sign(upv) > 0 else (2 * frame.v_pre[0], 2 * frame.v_pre[1])
    sum_shift = (frame.u_pre[0] + frame.v_pre[0], frame.u_pre[1] + frame.v_pre[1])

    def s_tile_containing(x):
        best = None
        for m, n in _anchor_candidates(frame, x, y):
            if (m % 2, n % 2) not in tags:
                continue
            tile = Tile("S", (m, n), star=None)
            x_lo, x_hi, y_lo, y_hi = tile_rect(frame, tile)
            if x_lo <= x < x_hi and y_lo <= y <= y_hi:
                if y == y_lo or y == y_hi:
                    raise AmbiguousHeightError(f"height {y} on tile boundary")
                if best is None or x_hi > tile_rect(frame, best)[1]:
                    best = tile
        if best is None:
            raise LatticeError(f"uncovered point ({x}, {y})")
        return best

    pieces = []
    tile = s_tile_containing(x_from)
    while True:
        x_lo, x_hi, y_lo, _ = tile_rect(frame, tile)
        pieces.append(SegmentPiece(tile, y - y_lo, max(x_lo, x_from), min(x_hi, x_to)))
        if x_hi >= x_to:
            return pieces
        m, n = tile.anchor
        nxt = None
        for shift in (sum_shift, over_shift):
            cand = Tile("S", (m + shift[0], n + shift[1]), star=None)
            cx_lo, cx_hi, cy_lo, cy_hi = tile_rect(frame, cand)
            if cx_lo <= x_hi < cx_hi and cy_lo < y < cy_hi:
                nxt = cand
                break
        if nxt is None:
            nxt = s_tile_containing(x_hi)
        tile = nxt


# ---------------------------------------------------------------------------
# tiling verification


@dataclass(frozen=True)
class TilingReport:
    regime: str
    samples: int
    seed: int
    uncovered: tuple
    star_overlaps: tuple
    t_overlaps: tuple
    same_shift_violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not (self.uncovered or self.star_overlaps or self.t_overlaps
                    or self.same_shift_violations)


def _scaled_rect(rect, sx, sy):
    x_lo, x_hi, y_lo, y_hi = rect
    return (x_lo * sx, x_hi * sx, y_lo * sy, y_hi * sy)


def check_tilings(frame: LatticeFrame, samples: int, seed: int = 0,
                  resolution: int = 64) -> TilingReport:
    """Sample exact rational points of a window and verify the covering and
    disjointness statements of the tiling attached to the frame."""
    if samples < 1:
        raise LatticeError("samples must be >= 1")
    t = frame.type_of(0, 0)
    tags = {t.cls, frame.opposite_type(t).cls}
    regime = frame.regime

    # integer scaling: lattice x-coordinates are multiples of 1/sx etc.
    sx = frame.matrix[0][0].denominator * resolution
    sy = frame.matrix[1][0].denominator * resolution

    margin = 3
    anchors = [
        (m, n)
        for m, n in frame.lattice_points_in_box(
            -margin, 2 + margin, -margin, 2 + margin
        )
        if (m % 2, n % 2) in tags
    ]
    kinds = ("S", "R") if regime == "opposite" else ("S",)
    rects = {}
    for kind in kinds:
        for a in anchors:
            r = tile_rect(frame, Tile(kind, a))
            rects[(kind, a)] = tuple(
                int(val) for val in _scaled_rect(r, sx, sy)
            )

    rng = random.Random(seed)
    span_x, span_y = 2 * sx, 2 * sy
    uncovered = []
    items = sorted(rects.items(), key=lambda kv: kv[1][0])
    xs_sorted = [r[1][0] for r in items]
    import bisect as _b

    max_w = max(r[1] - r[0] for _, r in items)
    for _ in range(samples):
        px = rng.randrange(span_x)
        py = rng.randrange(span_y)
        lo = _b.bisect_left(xs_sorted, px - max_w)
        hi = _b.bisect_right(xs_sorted, px)
        hit = False
        for idx in range(lo, hi):
            x0, x1, y0, y1 = items[idx][1]
            if x0 <= px <= x1 and y0 <= py <= y1:
                hit = True
                break
        if not hit and len(uncovered) < 8:
            uncovered.append((Fraction(px, sx), Fraction(py, sy)))

    # starred S/R tiles of opposite types never share interior heights:
    # the half-open side removal kills vertical-side contact, and the only
    # remaining closed contact is along single horizontal ordinates
    star_overlaps = []
    opp = frame.opposite_type(t).cls
    for (k1, a1), r1 in rects.items():
        if (a1[0] % 2, a1[1] % 2) != t.cls:
            continue
        for (k2, a2), r2 in rects.items():
            if (a2[0] % 2, a2[1] % 2) != opp:
                continue
            if _half_open_x_open_y(r1, r2) and len(star_overlaps) < 8:
                star_overlaps.append(((k1, a1), (k2, a2)))

    # T tiles, paired through the derived-basis opposite type (the pairing
    # under which a horizontal line meets them one at a time): disjoint
    # interiors always, and strictly disjoint along the walk shifts
    t_overlaps = []
    if regime == "opposite":
        u, v = frame.u, frame.v
        if _slope_sign((u[0] + v[0], u[1] + v[1])) > 0:
            derived_pair = frame.v_pre  # u'+v' = 2u+v = v mod 2
            walk = ((frame.u_pre[0] + frame.v_pre[0] + frame.u_pre[0],
                     frame.u_pre[1] + frame.v_pre[1] + frame.u_pre[1]),
                    (2 * frame.u_pre[0], 2 * frame.u_pre[1]))
        else:
            derived_pair = frame.u_pre  # u'+v' = u+2v = u mod 2
            walk = ((frame.u_pre[0] + 2 * frame.v_pre[0],
                     frame.u_pre[1] + 2 * frame.v_pre[1]),
                    (2 * frame.v_pre[0], 2 * frame.v_pre[1]))
        tags_t = {
            t.cls,
            ((t.cls[0] + derived_pair[0]) % 2, (t.cls[1] + derived_pair[1]) % 2),
        }
        t_anchors = [
            (m, n)
            for m, n in frame.lattice_points_in_box(-2, 3, -2, 3)
            if (m % 2, n % 2) in tags_t
        ]
        t_rects = [
            (a, tuple(int(val) for val in
                      _scaled_rect(tile_rect(frame, Tile("T", a)), sx, sy)))
            for a in t_anchors
        ]
        for idx, (a1, r1) in enumerate(t_rects):
            for a2, r2 in t_rects[idx + 1:]:
                if _open_overlap(r1, r2) and len(t_overlaps) < 8:
                    t_overlaps.append((a1, a2))
        # anchors one walk step apart carry the disjoint pattern occurrences
        for a1, r1 in t_rects:
            for dm, dn in walk:
                a2 = (a1[0] + dm, a1[1] + dn)
                r2 = tuple(int(val) for val in
                           _scaled_rect(tile_rect(frame, Tile("T", a2)), sx, sy))
                if _closed_overlap(r1, r2) and len(t_overlaps) < 8:
                    t_overlaps.append((a1, a2))

    # same-sign regime: same-type tiles may only overlap along the 2u/2v runs
    shift_bad = []
    if regime == "same":
        u, v = frame.u, frame.v
        step = frame.u_pre if _slope_sign((u[0] + v[0], u[1] + v[1])) > 0 \
            else frame.v_pre
        for (k1, a1), r1 in rects.items():
            for (k2, a2), r2 in rects.items():
                if a2 <= a1 or (a1[0] % 2, a1[1] % 2) != (a2[0] % 2, a2[1] % 2):
                    continue
                if not _open_overlap(r1, r2):
                    continue
                dm, dn = a2[0] - a1[0], a2[1] - a1[1]
                if not _is_multiple(dm, dn, 2 * step[0], 2 * step[1]):
                    if len(shift_bad) < 8:
                        shift_bad.append((a1, a2))
    return TilingReport(
        regime, samples, seed,
        tuple(uncovered), tuple(star_overlaps), tuple(t_overlaps),
        tuple(shift_bad),
    )


def _half_open_x_open_y(r1, r2) -> bool:
    # [x_lo, x_hi) x (y_lo, y_hi): a shared interior height
    return (r1[0] < r2[1] and r2[0] < r1[1]
            and r1[2] < r2[3] and r2[2] < r1[3])


def _closed_overlap(r1, r2) -> bool:
    return (r1[0] <= r2[1] and r2[0] <= r1[1]
            and r1[2] <= r2[3] and r2[2] <= r1[3])


def _open_overlap(r1, r2) -> bool:
    return (r1[0] < r2[1] and r2[0] < r1[1]
            and r1[2] < r2[3] and r2[2] < r1[3])


def _is_multiple(dm, dn, sm, sn) -> bool:
    if sm == 0 and sn == 0:
        return dm == 0 and dn == 0
    if sm != 0:
        if dm % sm:
            return False
        k = dm // sm
    else:
        if dm != 0:
            return False
        k = dn // sn if sn else 0
    return dm == k * sm and dn == k * sn


# ---------------------------------------------------------------------------
# SVG emission (visual debugging only)


_TYPE_COLORS = {"a": "#2a9d2a", "b": "#2a5bd7", "c": "#d72a2a", "abc": "#111111"}


def render_svg(frame: LatticeFrame, path: str, window: float = 2.0) -> str:
    """Write a deterministic SVG of the tiling with typed lattice points."""
    scale = 220.0
    pad = 30.0
    size = window * scale + 2 * pad

    def sx(x) -> str:
        return f"{float(x) * scale + pad:.2f}"

    def sy(y) -> str:
        return f"{size - (float(y) * scale + pad):.2f}"

    t = frame.type_of(0, 0)
    tags = {t.cls, frame.opposite_type(t).cls}
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" '
        f'height="{size:.0f}" viewBox="0 0 {size:.0f} {size:.0f}">',
        f"<!-- slope {frame.slope} level {frame.level} basis {frame.basis} -->",
    ]
    kinds = ("S", "R", "T") if frame.regime == "opposite" else ("S",)
    fills = {"S": "#9ecae1", "R": "#fdae6b", "T": "#a1d99b"}
    for kind in kinds:
        for m, n in frame.lattice_points_in_box(-1, window + 1, -1, window + 1):
            if (m % 2, n % 2) not in tags:
                continue
            x_lo, x_hi, y_lo, y_hi = tile_rect(frame, Tile(kind, (m, n)))
            out.append(
                f'<rect x="{sx(x_lo)}" y="{sy(y_hi)}" '
                f'width="{(float(x_hi - x_lo) * scale):.2f}" '
                f'height="{(float(y_hi - y_lo) * scale):.2f}" '
                f'fill="{fills[kind]}" fill-opacity="0.35" '
                f'stroke="#555555" stroke-width="0.6"/>'
            )
    for m, n in frame.lattice_points_in_box(-1, window + 1, -1, window + 1):
        x, y = frame.point(m, n)
        color = _TYPE_COLORS[frame.type_of(m, n).tag]
        out.append(
            f'<circle cx="{sx(x)}" cy="{sy(y)}" r="3" fill="{color}"/>'
        )
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path
