"""Suspension data ``(pi, lambda, tau)``: cones, heights, polygons and actions.

The polygon is built from the complex side vectors
``zeta_a = lambda_a + i tau_a``; its top chain follows the top order and
its bottom chain the bottom order.  All geometry is exact except
:func:`rotate` with a float angle, which is flagged as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .iet import Iet, PermutationPair, classify, omega_matrix
from .numbers import Scalar, exact, exact_vector, sign
from .rauzy import CocycleMatrix, cocycle

__all__ = [
    "ConeReport",
    "Invalid",
    "Polygon",
    "RotationResult",
    "SuspensionDatum",
    "cone_check",
    "extended_induction",
    "heights",
    "in_Z",
    "polygon_svg",
    "rotate",
    "rotate_to_vertical",
    "similarity",
    "teichmuller",
]


def _sum(v):
    total = 0
    for x in v:
        total = total + x
    return total


@dataclass(frozen=True)
class ConeReport:
    in_T_plus: bool
    in_T_plus_lambda: bool
    first_violated_index: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.in_T_plus and self.in_T_plus_lambda


def cone_check(pair: PermutationPair, lengths: Sequence[Scalar], tau: Sequence[Scalar]) -> ConeReport:
    """Membership of ``tau`` in the cone and in its length-dependent refinement.

    ``first_violated_index`` is the partial-sum index k (1-based) of the
    first failing inequality, or of the first offending pair of
    consecutive zero-length letters.
    """
    lengths = exact_vector(lengths)
    tau = exact_vector(tau)
    d = pair.d
    for k in range(1, d):
        top = _sum(tau[pair.index(x)] for x in pair.top[:k])
        if not top > 0:
            return ConeReport(False, False, k, f"top partial sum {k} is not positive")
        bot = _sum(tau[pair.index(x)] for x in pair.bottom[:k])
        if not bot < 0:
            return ConeReport(False, False, k, f"bottom partial sum {k} is not negative")
    for eps in (0, 1):
        row = pair.row(eps)
        for k in range(1, d):
            a, b = pair.index(row[k - 1]), pair.index(row[k])
            if lengths[a] == 0 and lengths[b] == 0 and not sign(tau[a]) * sign(tau[b]) > 0:
                return ConeReport(
                    True, False, k,
                    f"zero-length letters {row[k - 1]}, {row[k]} with heights of opposite sign",
                )
    return ConeReport(True, True)


def heights(pair: PermutationPair, tau: Sequence[Scalar]) -> tuple:
    """``h = -Omega tau``; positive whenever ``tau`` lies in the cone."""
    tau = exact_vector(tau)
    report = cone_check(pair, [1] * pair.d, tau)
    if not report.in_T_plus:
        raise ValueError(f"tau outside the cone: {report.reason}")
    h = tuple(-x for x in _linalg.matvec(omega_matrix(pair), tau))
    if not all(x > 0 for x in h):
        raise AssertionError("cone point with non-positive height")
    return h


@dataclass(frozen=True)
class Polygon:
    """Vertex chains of the polygon, both starting at the origin.

    ``top[j]`` is the sum of the first j side vectors in top order, as an
    ``(x, y)`` pair; ``bottom`` likewise in bottom order.
    """

    pair: PermutationPair
    top: tuple
    bottom: tuple

    @property
    def closes(self) -> bool:
        return self.top[-1] == self.bottom[-1]

    def boundary(self) -> list:
        """Closed vertex loop: top chain forward, then bottom chain backward."""
        return list(self.top) + list(reversed(self.bottom[1:-1]))

    def shoelace_area(self):
        """Area enclosed between the chains by the shoelace formula."""
        loop = self.boundary()
        acc = 0
        for (x0, y0), (x1, y1) in zip(loop, loop[1:] + loop[:1]):
            acc = acc + (x0 * y1 - x1 * y0)
        # the loop runs clockwise
        return -acc / 2

    def _chain_value(self, chain, x):
        for (x0, y0), (x1, y1) in zip(chain, chain[1:]):
            if x0 <= x <= x1 and x1 != x0:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        raise ValueError(f"{x} outside the polygon's horizontal range")

    def top_at(self, x):
        return self._chain_value(self.top, x)

    def bottom_at(self, x):
        return self._chain_value(self.bottom, x)

    def vertically_simple(self) -> bool:
        """True if the top chain lies strictly above the bottom chain on (0, |lambda|).

        Both chains are piecewise linear, so comparing at every vertex
        abscissa suffices.
        """
        xs = sorted({p[0] for p in self.top[1:-1]} | {p[0] for p in self.bottom[1:-1]})
        return all(self.top_at(x) > self.bottom_at(x) for x in xs)

    def contains(self, point) -> bool:
        x, y = point
        if not (0 < x < self.top[-1][0]):
            return False
        return self.bottom_at(x) < y < self.top_at(x)


class SuspensionDatum:
    """``(pi, lambda, tau)`` with cone membership checked at construction."""

    def __init__(self, pair: PermutationPair, lengths: Sequence[Scalar], tau: Sequence[Scalar]):
        self.pair = pair
        self.lengths = exact_vector(lengths)
        self.tau = exact_vector(tau)
        if len(self.lengths) != pair.d or len(self.tau) != pair.d:
            raise ValueError("lengths and tau need one entry per letter")
        if any(x < 0 for x in self.lengths) or not _sum(self.lengths) > 0:
            raise ValueError("lengths must be non-negative with positive total")
        report = cone_check(pair, self.lengths, self.tau)
        if not report:
            raise ValueError(f"not a suspension datum: {report.reason}")

    def __repr__(self):
        return f"SuspensionDatum({self.pair.top}/{self.pair.bottom}, {self.lengths}, {self.tau})"

    def __eq__(self, other):
        return (
            isinstance(other, SuspensionDatum)
            and self.pair == other.pair
            and self.lengths == other.lengths
            and self.tau == other.tau
        )

    def __hash__(self):
        return hash((self.pair, self.lengths, self.tau))

    @cached_property
    def heights(self) -> tuple:
        return heights(self.pair, self.tau)

    @cached_property
    def polygon(self) -> Polygon:
        def chain(row):
            pts, x, y = [(0, 0)], 0, 0
            for a in row:
                i = self.pair.index(a)
                x, y = x + self.lengths[i], y + self.tau[i]
                pts.append((x, y))
            return tuple(pts)

        poly = Polygon(self.pair, chain(self.pair.top), chain(self.pair.bottom))
        if not poly.closes:
            raise AssertionError("polygon chains do not close")
        return poly

    @cached_property
    def area(self):
        """``sum lambda_a h_a``, the total area of the surface."""
        return _sum(l * h for l, h in zip(self.lengths, self.heights))

    @property
    def total_length(self):
        return _sum(self.lengths)

    def iet(self) -> Iet:
        return Iet(self.pair, self.lengths)

    def scaled(self, c) -> "SuspensionDatum":
        """Homothety by a positive scalar (both lengths and tau)."""
        return SuspensionDatum(self.pair, [c * x for x in self.lengths], [c * t for t in self.tau])


# ---------------------------------------------------------------------------
# actions


@dataclass(frozen=True)
class Invalid:
    """A rotated vector left the chart; ``condition`` names which check failed."""

    condition: str
    index: int | None = None

    def __bool__(self):
        return False


@dataclass(frozen=True)
class FloatRotation:
    """Result of rotating by a float angle; coordinates are floats, not certified."""

    lengths: tuple
    tau: tuple
    exact: bool = False


def _validate_rotated(pair, lengths, tau):
    for i, x in enumerate(lengths):
        if not x > 0:
            return Invalid("lengths not positive", i)
    report = cone_check(pair, lengths, tau)
    if not report.in_T_plus:
        return Invalid(report.reason, report.first_violated_index)
    return None


def rotate(datum: SuspensionDatum, angle):
    """Rotate every side vector by ``angle``.

    ``angle`` is either a float (non-exact, validity checked with a small
    tolerance) or an exact pair ``(cos, sin)`` with ``cos^2 + sin^2 = 1``,
    e.g. a Pythagorean pair.  Returns the rotated datum, a
    :class:`FloatRotation`, or :class:`Invalid`.
    """
    if isinstance(angle, tuple):
        c, s = exact(angle[0]), exact(angle[1])
        if c * c + s * s != 1:
            raise ValueError("(cos, sin) must lie on the unit circle")
        lengths = tuple(c * l - s * t for l, t in zip(datum.lengths, datum.tau))
        tau = tuple(s * l + c * t for l, t in zip(datum.lengths, datum.tau))
        bad = _validate_rotated(datum.pair, lengths, tau)
        return bad if bad is not None else SuspensionDatum(datum.pair, lengths, tau)
    if angle == 0:
        return datum
    c, s = math.cos(angle), math.sin(angle)
    lengths = tuple(c * float(l) - s * float(t) for l, t in zip(datum.lengths, datum.tau))
    tau = tuple(s * float(l) + c * float(t) for l, t in zip(datum.lengths, datum.tau))
    tol = 1e-12
    for i, x in enumerate(lengths):
        if not x > tol:
            return Invalid("lengths not positive", i)
    d = datum.pair.d
    for k in range(1, d):
        if not sum(tau[datum.pair.index(x)] for x in datum.pair.top[:k]) > tol:
            return Invalid(f"top partial sum {k} is not positive", k)
        if not sum(tau[datum.pair.index(x)] for x in datum.pair.bottom[:k]) < -tol:
            return Invalid(f"bottom partial sum {k} is not negative", k)
    return FloatRotation(lengths, tau)


@dataclass(frozen=True)
class RotationResult:
    """Exact similarity ``zeta -> zeta * (u + i v)``.

    ``datum`` holds the numerators; the true rotation divides every
    coordinate by ``sqrt(norm_sq)``, which is kept symbolic.  Cone and
    zero-length conditions are invariant under that positive scaling.
    """

    datum: SuspensionDatum
    u: Scalar
    v: Scalar
    norm_sq: Scalar


def similarity(datum_or_pair, lengths=None, tau=None, u=None, v=None, allow_zero_lengths=True):
    """Multiply every ``zeta_a`` by ``u + i v`` exactly.

    Accepts either a datum or ``(pair, lengths, tau)`` so inputs that are
    not themselves valid data (e.g. perturbed intermediates) can be
    rotated.  Returns a :class:`RotationResult` or :class:`Invalid`.
    """
    if isinstance(datum_or_pair, SuspensionDatum):
        pair, lengths, tau = datum_or_pair.pair, datum_or_pair.lengths, datum_or_pair.tau
    else:
        pair = datum_or_pair
    lengths, tau = exact_vector(lengths), exact_vector(tau)
    u, v = exact(u), exact(v)
    new_l = tuple(u * l - v * t for l, t in zip(lengths, tau))
    new_t = tuple(v * l + u * t for l, t in zip(lengths, tau))
    for i, x in enumerate(new_l):
        if x < 0 or (not allow_zero_lengths and x == 0):
            return Invalid("lengths not positive", i)
    report = cone_check(pair, new_l, new_t)
    if not report:
        return Invalid(report.reason, report.first_violated_index)
    return RotationResult(SuspensionDatum(pair, new_l, new_t), u, v, u * u + v * v)


def rotate_to_vertical(pair, lengths, tau, letter_index: int = 0):
    """Rotate so the side of the given letter becomes vertical (pointing up).

    Uses the unit vector along ``(tau_j, lambda_j)``; the side's rotated
    length is exactly zero.
    """
    lengths, tau = exact_vector(lengths), exact_vector(tau)
    return similarity(pair, lengths, tau, u=tau[letter_index], v=lengths[letter_index])


def teichmuller(datum: SuspensionDatum, t) -> SuspensionDatum:
    """``(pi, t lambda, tau / t)`` for the exact multiplier ``t = e^s``."""
    t = exact(t)
    if not t > 0:
        raise ValueError("multiplier must be positive")
    return SuspensionDatum(datum.pair, [t * x for x in datum.lengths], [x / t for x in datum.tau])


@dataclass(frozen=True)
class ExtendedInduction:
    datum: SuspensionDatum
    cocycle: CocycleMatrix
    aborted_at: int | None = None


def extended_induction(datum: SuspensionDatum, n: int) -> ExtendedInduction:
    """Apply ``n`` Rauzy-Veech steps to lengths and tau together."""
    if not all(x > 0 for x in datum.lengths):
        raise ValueError("extended induction needs strictly positive lengths")
    run = cocycle(datum.pair, datum.lengths, n, tau=datum.tau)
    out = SuspensionDatum(run.pair, run.lengths, run.tau)
    return ExtendedInduction(out, run.cocycle, run.aborted_at)


def in_Z(datum: SuspensionDatum, pibar: PermutationPair) -> bool:
    """Membership in the locus where the first ``d - 3`` lengths vanish."""
    d = pibar.d
    if d < 4 or datum.pair != pibar:
        return False
    if pibar.top != pibar.alphabet or not classify(pibar).standard:
        return False
    if any(datum.lengths[i] != 0 for i in range(d - 3)):
        return False
    return bool(cone_check(datum.pair, datum.lengths, datum.tau))


# ---------------------------------------------------------------------------
# SVG export


def polygon_svg(datum: SuspensionDatum, width: int = 480, margin: int = 24) -> str:
    """Render the polygon with each side labeled by its letter.

    Paired sides share a colour.  Float conversion happens only here.
    """
    poly = datum.polygon
    pts = [(float(x), float(y)) for x, y in poly.top + poly.bottom]
    xmin, xmax = min(p[0] for p in pts), max(p[0] for p in pts)
    ymin, ymax = min(p[1] for p in pts), max(p[1] for p in pts)
    scale = (width - 2 * margin) / max(xmax - xmin, ymax - ymin, 1e-12)
    height = int((ymax - ymin) * scale + 2 * margin)

    def sx(x):
        return margin + (x - xmin) * scale

    def sy(y):
        return margin + (ymax - y) * scale

    palette = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    for chain, row, dash in ((poly.top, datum.pair.top, ""), (poly.bottom, datum.pair.bottom, ' stroke-dasharray="4 2"')):
        for (x0, y0), (x1, y1), letter in zip(chain, chain[1:], row):
            colour = palette[datum.pair.index(letter) % len(palette)]
            x0f, y0f, x1f, y1f = sx(float(x0)), sy(float(y0)), sx(float(x1)), sy(float(y1))
            out.append(
                f'<line x1="{x0f:.2f}" y1="{y0f:.2f}" x2="{x1f:.2f}" y2="{y1f:.2f}" '
                f'stroke="{colour}" stroke-width="2"{dash}/>'
            )
            out.append(
                f'<text x="{(x0f + x1f) / 2:.2f}" y="{(y0f + y1f) / 2:.2f}" font-size="12" '
                f'fill="{colour}">{letter}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
