"""Special flows under step roofs, vertical flows on polygons, and the
three-interval certificate of mild mixing.

A point of a special flow is ``(x, s)`` with ``0 <= s < f(x)``; flowing
up to the roof sends ``(x, f(x))`` to ``(T x, 0)``.  On the polygon side,
a point ``(x, y)`` corresponds to the flow point reached from ``(x, 0)``
after time ``y`` (negative ``y`` flows backwards).  Crossing the top side
of letter ``a`` re-enters through the bottom side of ``a`` shifted by
``(w_a, -h_a)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .iet import Iet, PermutationPair, classify, first_return, reduce_zero_letters
from .numbers import (
    AlgebraicNumber,
    CertificationRefused,
    NumberContext,
    Scalar,
    context_of,
    default_context,
    exact,
    exact_vector,
    in_M_set,
    independent_over_Q_alpha,
)
from .rauzy import Degenerate, induction_step
from .serialize import (
    canonical_dumps,
    decode_datum,
    encode_datum,
    encode_pair,
    encode_scalar,
    encode_vector,
)
from .suspension import SuspensionDatum, in_Z

__all__ = [
    "FlowPath",
    "InducedRoofReport",
    "MildMixCertificate",
    "SingularHit",
    "STATUS",
    "SpecialFlowSystem",
    "ThreeIetParams",
    "VerticalTrace",
    "certify_mild",
    "flow_letters_for_trace",
    "induced_roof_check",
    "polygon_to_flow",
    "rescale_flow",
    "rho",
    "rho_inverse",
    "rho_map",
    "three_shape",
    "verify_certificate",
    "vertical_trace",
]


def _sum(v):
    total = 0
    for x in v:
        total = total + x
    return total


# ---------------------------------------------------------------------------
# special flows


@dataclass(frozen=True)
class FlowPath:
    endpoint: tuple
    letters: tuple
    jump_times: tuple


class SpecialFlowSystem:
    """Flow under ``f_h = sum h_a chi_{I_a}`` over an interval exchange."""

    def __init__(self, base: Iet, roof: Sequence[Scalar]):
        self.base = base
        self.roof = exact_vector(roof)
        if len(self.roof) != base.pair.d:
            raise ValueError("one roof height per letter")
        if not all(h > 0 for h in self.roof):
            raise ValueError("roof heights must be positive")

    def __repr__(self):
        return f"SpecialFlowSystem({self.base!r}, roof={self.roof})"

    @property
    def total_measure(self):
        return _sum(l * h for l, h in zip(self.base.lengths, self.roof))

    def roof_at(self, x):
        return self.roof[self.base.pair.index(self.base.letter_of(x))]

    def _check_point(self, point):
        x, s = exact(point[0]), exact(point[1])
        if s < 0 or not s < self.roof_at(x):
            raise ValueError(f"({x}, {s}) is not in the phase space")
        return x, s

    def evolve_path(self, point, t) -> FlowPath:
        """Flow for time ``t`` (negative allowed), recording every roof jump.

        Backward jumps are recorded with the letter of the landing point.
        """
        x, s = self._check_point(point)
        t = exact(t)
        letters, times = [], []
        elapsed = 0
        if t >= 0:
            remaining = t
            while True:
                f = self.roof_at(x)
                gap = f - s
                if remaining < gap:
                    s = s + remaining
                    break
                elapsed = elapsed + gap
                remaining = remaining - gap
                letters.append(self.base.letter_of(x))
                times.append(elapsed)
                x, s = self.base(x), 0
        else:
            remaining = -t
            while True:
                if remaining <= s:
                    s = s - remaining
                    break
                elapsed = elapsed - s
                remaining = remaining - s
                x = self.base.inverse(x)
                s = self.roof_at(x)
                letters.append(self.base.letter_of(x))
                times.append(elapsed)
        return FlowPath((x, s), tuple(letters), tuple(times))

    def evolve(self, point, t):
        return self.evolve_path(point, t).endpoint


def rescale_flow(system: SpecialFlowSystem, t) -> SpecialFlowSystem:
    """Base lengths times ``t``, roof divided by ``t``.

    The map ``(x, s) -> (t x, s / t)`` conjugates the original flow run at
    speed ``t`` to this one: flowing here for time ``T / t`` matches
    flowing the original for time ``T``.
    """
    t = exact(t)
    if not t > 0:
        raise ValueError("multiplier must be positive")
    base = Iet(system.base.pair, [t * x for x in system.base.lengths])
    return SpecialFlowSystem(base, [h / t for h in system.roof])


# ---------------------------------------------------------------------------
# induced roofs


@dataclass(frozen=True)
class InducedRoofReport:
    ok: bool
    eps: int
    induced_heights: tuple
    entries: tuple  # (letter, x, return time, Birkhoff sum, expected, landing agrees)
    measure_before: Scalar
    measure_after: Scalar


def _sample_points(a, b):
    width = b - a
    return [a, a + width / 3, a + width / 2, a + 2 * width / 3]


def induced_roof_check(pair: PermutationPair, lengths, h, points_per_letter=None) -> InducedRoofReport:
    """Compare the induced roof ``Theta h`` with Birkhoff sums of ``f_h``.

    For points x in each interval of the induced exchange, the sum of
    ``f_h`` along ``x, Tx, ..., T^{r-1}x`` (r the first return time to
    the shortened interval) must equal ``(Theta h)`` at x's letter, and
    ``T^r x`` must equal the induced map at x.
    """
    lengths, h = exact_vector(lengths), exact_vector(h)
    step = induction_step(pair, lengths)
    T = Iet(pair, lengths)
    T2 = Iet(step.new_pair, step.new_lengths)
    h2 = _linalg.matvec(step.theta, h)
    bound = T2.total
    entries = []
    ok = True
    for letter in step.new_pair.alphabet:
        a, b = T2.interval(letter)
        xs = points_per_letter(letter, a, b) if points_per_letter else _sample_points(a, b)
        for x in xs:
            y, r, visited = first_return(T, x, bound)
            total = _sum(h[pair.index(T.letter_of(z))] for z in visited)
            expected = h2[step.new_pair.index(letter)]
            agrees = y == T2(x)
            good = total == expected and agrees
            ok = ok and good
            entries.append((letter, x, r, total, expected, agrees))
    before = _sum(l * v for l, v in zip(lengths, h))
    after = _sum(l * v for l, v in zip(step.new_lengths, h2))
    return InducedRoofReport(ok and before == after, step.eps, tuple(h2), tuple(entries), before, after)


# ---------------------------------------------------------------------------
# polygon vertical flow


@dataclass(frozen=True)
class SingularHit:
    """The vertical through the current point meets a polygon vertex."""

    time: Scalar
    point: tuple


@dataclass(frozen=True)
class VerticalTrace:
    """Upward motion inside the polygon.

    ``itinerary`` lists the sides crossed (leaving through the top side
    of a letter, re-entering through the bottom side of the same letter).
    ``base_hits`` lists ``(time, u)`` for each arrival on the base
    interval at abscissa ``u``; these are the roof jumps of the special flow.
    """

    start: tuple
    time: Scalar
    itinerary: tuple
    crossing_times: tuple
    endpoint: tuple | None
    singular: SingularHit | None = None
    base_hits: tuple = ()

    def itinerary_string(self) -> str:
        return "".join(str(a) for a in self.itinerary)

    def to_json(self) -> dict:
        return {
            "itinerary": [str(a) for a in self.itinerary],
            "crossing_times": encode_vector(self.crossing_times),
            "base_hits": [[encode_scalar(t), encode_scalar(u)] for t, u in self.base_hits],
            "endpoint": None if self.endpoint is None else encode_vector(self.endpoint),
            "singular": None if self.singular is None else {
                "time": encode_scalar(self.singular.time),
                "point": encode_vector(self.singular.point),
            },
        }


def _require_traceable(datum: SuspensionDatum):
    if not all(x > 0 for x in datum.lengths):
        raise ValueError("tracing needs strictly positive lengths")
    if not datum.polygon.vertically_simple():
        raise ValueError("polygon is not vertically simple; tracing is undefined in this chart")


def base_point(datum: SuspensionDatum, u):
    """Polygon point representing ``(u, 0)`` of the base interval.

    Near the right end the horizontal through the origin can leave the
    polygon (when the chains end off the axis); the point is then carried
    back inside across the side it passed.
    """
    T = datum.iet()
    poly = datum.polygon
    h = datum.heights
    x, y = exact(u), 0
    for _ in range(datum.pair.d + 1):
        if poly.bottom_at(x) <= y < poly.top_at(x):
            return x, y
        if y >= poly.top_at(x):
            a = T.letter_of(x)
            i = datum.pair.index(a)
            x, y = x + T.translations[i], y - h[i]
        else:
            xp = T.inverse(x)
            i = datum.pair.index(T.letter_of(xp))
            x, y = xp, y + h[i]
        if not 0 <= x < T.total:
            break
    raise ValueError(f"base point {u} has no representative in the polygon")


def _base_levels(datum: SuspensionDatum, x) -> list:
    """``(level, u)`` for every base point represented on the vertical at ``x``."""
    T = datum.iet()
    candidates = {x}
    for w in T.translations:
        candidates.add(x - w)
        candidates.add(x + w)
    out = []
    for u in candidates:
        if not 0 <= u < T.total:
            continue
        bx, by = base_point(datum, u)
        if bx == x:
            out.append((by, u))
    return sorted(set(out), key=lambda p: p[0])


def vertical_trace(datum: SuspensionDatum, start, t) -> VerticalTrace:
    """Move ``start`` straight up for time ``t`` with side identifications.

    If the moving point reaches the top chain exactly at a vertex the
    trace stops with a :class:`SingularHit`.
    """
    _require_traceable(datum)
    x, y = exact(start[0]), exact(start[1])
    origin = (x, y)
    t = exact(t)
    if t < 0:
        raise ValueError("vertical_trace runs forward in time")
    poly = datum.polygon
    if not poly.contains((x, y)):
        raise ValueError(f"({x}, {y}) is not inside the polygon")
    T = datum.iet()
    vertex_xs = {p[0] for p in poly.top[1:-1]}
    h = datum.heights
    letters, times, hits = [], [], []
    elapsed, remaining = 0, t

    def record_hits(lo, hi):
        # base arrivals strictly above the segment start, up to and including hi
        for level, u in _base_levels(datum, x):
            if lo < level <= hi:
                hits.append((elapsed + level - lo, u))

    while True:
        gap = poly.top_at(x) - y
        if remaining < gap:
            record_hits(y, y + remaining)
            return VerticalTrace(origin, t, tuple(letters), tuple(times), (x, y + remaining), None, tuple(hits))
        record_hits(y, y + gap)
        if x in vertex_xs:
            return VerticalTrace(
                origin, t, tuple(letters), tuple(times), None,
                SingularHit(elapsed + gap, (x, y + gap)), tuple(hits),
            )
        elapsed, remaining = elapsed + gap, remaining - gap
        letter = T.letter_of(x)
        i = datum.pair.index(letter)
        top_y = y + gap
        x, y = x + T.translations[i], top_y - h[i]
        letters.append(letter)
        times.append(elapsed)
        # a base point exactly at the re-entry point is reached now
        hits.extend((elapsed, u) for level, u in _base_levels(datum, x) if level == y)
        if remaining == 0:
            return VerticalTrace(origin, t, tuple(letters), tuple(times), (x, y), None, tuple(hits))


def polygon_to_flow(datum: SuspensionDatum, point):
    """Special-flow coordinates ``(u, s)`` of a polygon point.

    Moves straight down (with side identifications) to the most recent
    base point; ``s`` is the distance travelled.
    """
    _require_traceable(datum)
    x, y = exact(point[0]), exact(point[1])
    poly = datum.polygon
    T = datum.iet()
    s = 0
    for _ in range(4 * datum.pair.d + 4):
        below = [(lvl, u) for lvl, u in _base_levels(datum, x) if lvl <= y]
        if below:
            lvl, u = below[-1]
            return u, s + y - lvl
        bot = poly.bottom_at(x)
        s = s + y - bot
        xp = T.inverse(x)
        x, y = xp, poly.top_at(xp)
    raise ValueError("no base point found below the given point")


def flow_letters_for_trace(datum: SuspensionDatum, trace: VerticalTrace) -> tuple:
    """Roof-jump letters of the special flow for the motion of ``trace``.

    A jump departs from base point ``T^{-1} u`` when the trace arrives at
    base point ``u``.
    """
    T = datum.iet()
    return tuple(T.letter_of(T.inverse(u)) for _, u in trace.base_hits)


# ---------------------------------------------------------------------------
# three-interval exchanges


_SHAPES = {(3, 2, 1): "s", (3, 1, 2): "r", (2, 3, 1): "l"}


def three_shape(pair: PermutationPair) -> str | None:
    """``"s"``, ``"r"`` or ``"l"`` for the three irreducible 3-letter shapes."""
    if pair.d != 3:
        return None
    return _SHAPES.get(pair.normalized().bottom)


def rho_map(gamma: str, x):
    """``rho_gamma(x_a, x_b, x_c)`` for gamma in ``l, r, 0, 1``."""
    xa, xb, xc = x
    if gamma == "l":
        return 1 - xa, 1 - xc
    if gamma == "r":
        return xc, xa
    if gamma == "0":
        return (xc - xa) / (1 - xa), xa / (1 - xa)
    if gamma == "1":
        return (1 - xa) / (1 - xc), xa / (1 - xc)
    raise ValueError(f"unknown case {gamma!r}")


def _in_domain(gamma, x) -> bool:
    if not all(v > 0 for v in x) or _sum(x) != 1:
        return False
    if gamma == "0":
        return x[0] < x[2]
    if gamma == "1":
        return x[0] > x[2]
    return True


def rho_inverse(gamma: str, alpha, xi):
    """Normalized lengths ``(x_a, x_b, x_c)`` with ``rho_gamma(x) = (alpha, xi)``."""
    alpha, xi = exact(alpha), exact(xi)
    if gamma == "r":
        x = (xi, 1 - alpha - xi, alpha)
    elif gamma == "l":
        x = (1 - alpha, alpha + xi - 1, 1 - xi)
    elif gamma == "0":
        x = (xi / (1 + xi), (1 - xi - alpha) / (1 + xi), (xi + alpha) / (1 + xi))
    elif gamma == "1":
        s = alpha + xi
        x = (xi / s, (1 - xi) / s, (s - 1) / s)
    else:
        raise ValueError(f"unknown case {gamma!r}")
    if not _in_domain(gamma, x):
        raise ValueError(f"({alpha}, {xi}) is not in the image of case {gamma}")
    return x


@dataclass(frozen=True)
class ThreeIetParams:
    pair: PermutationPair
    lengths: tuple  # normalized, in top order a, b, c
    shape: str
    gamma: str
    alpha: Scalar
    xi: Scalar


def rho(pair: PermutationPair, lengths) -> ThreeIetParams:
    """Case label and ``(alpha, xi)`` of a 3-interval exchange.

    Lengths are normalized to total 1 and read in top order.
    """
    shape = three_shape(pair)
    if shape is None:
        raise ValueError("not one of the three irreducible 3-letter shapes")
    lengths = exact_vector(lengths)
    total = _sum(lengths)
    x = tuple(lengths[pair.index(a)] / total for a in pair.top)
    if shape == "s":
        if x[0] == x[2]:
            raise ValueError("case undefined: first and last lengths are equal")
        gamma = "0" if x[0] < x[2] else "1"
    else:
        gamma = shape
    alpha, xi = rho_map(gamma, x)
    return ThreeIetParams(pair, x, shape, gamma, alpha, xi)


# ---------------------------------------------------------------------------
# certificate


STATUS = (
    "hypotheses of the mild-mixing criterion for special flows over rotations "
    "verified exactly; mild mixing itself is an imported consequence"
)
IMPORTED = (
    "the criterion also yields that the flow is not isomorphic to its "
    "time-s rescaling for any positive s != 1; no finite computation witnesses this"
)


def _roof_decomposition(shape, h):
    """Coefficients ``(a1, a2, a3)`` with ``f = a1 + a2 chi[0, xi) + a3 chi[0, 1 - alpha)``."""
    ha, hb, hc = h
    if shape == "r":
        return hc, ha - hb, hb - hc
    if shape == "l":
        return hc, hb - hc, ha - hb
    raise ValueError("roof decomposition is defined on the rotation shapes only")


def _ctx_from(datum, context):
    if context is not None:
        return context
    return context_of(*datum.lengths, *datum.tau) or default_context()


@dataclass
class MildMixCertificate:
    """Exact record of every hypothesis check; ``to_json`` is deterministic."""

    datum: SuspensionDatum
    context: NumberContext
    gamma: str
    alpha: AlgebraicNumber
    xi: AlgebraicNumber
    p: Fraction
    q: Fraction
    heights: tuple
    coefficients: tuple
    chain: list = field(default_factory=list)
    transcripts: dict = field(default_factory=dict)
    dc1: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    def to_json(self) -> dict:
        ctx = self.context.to_json()
        ctx["id"] = self.context.id
        return {
            "format": "mildmix-certificate/1",
            "status": STATUS,
            "imported_consequence": IMPORTED,
            "context": ctx,
            "datum": encode_datum(self.datum),
            "case": self.gamma,
            "alpha": encode_scalar(self.alpha),
            "xi": encode_scalar(self.xi),
            "xi_coordinates": {"p": encode_scalar(self.p), "q": encode_scalar(self.q)},
            "dc1": self.dc1,
            "heights": encode_vector(self.heights),
            "roof_coefficients": encode_vector(self.coefficients),
            "chain": self.chain,
            "independence": self.transcripts,
            "flags": list(self.flags),
        }

    def dumps(self) -> str:
        return canonical_dumps(self.to_json())


def _refuse(predicate, reason):
    raise CertificationRefused(predicate, reason)


def certify_mild(datum: SuspensionDatum, context: NumberContext | None = None) -> MildMixCertificate:
    """Certify the mild-mixing hypotheses for a datum whose first d-3 lengths vanish.

    Raises :class:`CertificationRefused` naming the first failed check.
    """
    pibar = datum.pair
    d = pibar.d
    if not in_Z(datum, pibar):
        _refuse("Z", "datum is not on the three-interval locus of a standard pair with identity top row")
    if not classify(pibar).in_P_star:
        _refuse("P*", "pair has an adjacent increase")
    ctx = _ctx_from(datum, context)
    chain = []
    flags = []

    # zero-letter reduction; the roof keeps the heights of surviving letters
    try:
        sub, sub_lengths, letter_map = reduce_zero_letters(pibar, datum.lengths)
    except ValueError as exc:
        _refuse("reduction", str(exc))
    if sub.d != 3:
        _refuse("reduction", f"{sub.d} letters of positive length, need 3")
    h_full = datum.heights
    h3 = tuple(h_full[pibar.index(a)] for a in sub.alphabet)
    chain.append({
        "link": "zero-length letters removed",
        "pair": encode_pair(sub),
        "lambda": encode_vector(sub_lengths),
        "heights": encode_vector(h3),
    })

    total = _sum(sub_lengths)
    x = tuple(v / total for v in sub_lengths)
    chain.append({"link": "base rescaled to unit length", "factor": encode_scalar(total)})
    try:
        params = rho(sub, x)
    except ValueError as exc:
        _refuse("case", str(exc))
    alpha, xi = ctx.lift(params.alpha), ctx.lift(params.xi)
    chain.append({
        "link": "case",
        "shape": params.shape,
        "case": params.gamma,
        "alpha": encode_scalar(alpha),
        "xi": encode_scalar(xi),
    })

    pair3, x3, h_final = sub, x, h3
    if params.shape == "s":
        try:
            step = induction_step(sub, x)
        except Degenerate as exc:
            _refuse("case", str(exc))
        h_new = _linalg.matvec(step.theta, h3)
        size = _sum(step.new_lengths)
        x_new = tuple(v / size for v in step.new_lengths)
        params2 = rho(step.new_pair, x_new)
        same_rho = (ctx.lift(params2.alpha), ctx.lift(params2.xi)) == (alpha, xi)
        same_area = _sum(a * b for a, b in zip(step.new_lengths, h_new)) == _sum(a * b for a, b in zip(x, h3))
        if not (same_rho and same_area):
            raise AssertionError("induction transport failed its exact identities")
        chain.append({
            "link": "one induction step",
            "eps": step.eps,
            "theta": [list(r) for r in step.theta],
            "pair": encode_pair(step.new_pair),
            "lambda": encode_vector(x_new),
            "heights": encode_vector(h_new),
            "same_rho": same_rho,
            "same_area": same_area,
        })
        pair3, x3, h_final = step.new_pair, x_new, tuple(h_new)
    shape = three_shape(pair3)
    if shape == "l":
        flags.append("left-rotation shape: argument mirrors the right-rotation case")

    # T is the rotation by alpha and f_h has the three-coefficient form
    top_h = tuple(h_final[pair3.index(a)] for a in pair3.top)
    T = Iet(pair3, x3)
    for a in pair3.alphabet:
        w = T.translations[pair3.index(a)]
        if not (w == alpha or w == alpha - 1):
            raise AssertionError("base is not the rotation by alpha")
    a1, a2, a3 = _roof_decomposition(shape, top_h)
    for a in pair3.top:
        lo, hi = T.interval(a)
        mid = (lo + hi) / 2
        f = a1 + (a2 if mid < xi else 0) + (a3 if mid < 1 - alpha else 0)
        if f != h_final[pair3.index(a)] or not f > 0:
            raise AssertionError("roof decomposition mismatch")
    chain.append({
        "link": "rotation and roof",
        "translations": encode_vector(T.translations),
        "roof": "a1 + a2*chi[0,xi) + a3*chi[0,1-alpha)",
        "coefficients": encode_vector((a1, a2, a3)),
    })

    # (alpha, xi) admissible
    cert = in_M_set(alpha, xi)
    w = cert.dc1
    dc1 = {
        "status": w.status,
        "preperiod": list(w.preperiod or ()),
        "period": list(w.period or ()),
        "max_quotient": w.max_quotient,
        "constant": encode_scalar(w.constant),
    }

    transcripts = {}
    for name, values in (
        ("reduced_heights", h3),
        ("heights", h_final),
        ("roof_coefficients", (a1, a2, a3)),
    ):
        res = independent_over_Q_alpha(values, alpha)
        transcripts[name] = res.transcript()
        if not res:
            _refuse("independence", f"{name} are dependent over Q + Q*alpha (rank {res.rank} < {res.size})")

    return MildMixCertificate(
        datum, ctx, params.gamma, alpha, xi, cert.p, cert.q, tuple(h_final), (a1, a2, a3),
        chain, transcripts, dc1, flags,
    )


def verify_certificate(document) -> bool:
    """Re-derive a certificate from its own JSON and compare byte for byte.

    ``document`` is JSON text or an already parsed object.  Only the
    embedded context is used, never a shipped default.
    """
    obj = json.loads(document) if isinstance(document, str) else document
    ctx = NumberContext.from_json(obj["context"])
    if ctx.id != obj["context"]["id"]:
        return False
    reg = {ctx.id: ctx}
    datum = decode_datum(obj["datum"], reg)
    try:
        fresh = certify_mild(datum, ctx)
    except CertificationRefused:
        return False
    return fresh.dumps() == canonical_dumps(obj)

