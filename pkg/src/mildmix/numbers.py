"""Exact scalars: rationals and finite-dimensional Q-modules of radicals.

An :class:`AlgebraicNumber` is a rational coordinate vector over the basis
of a :class:`NumberContext`.  Each basis element is the square root of a
positive rational (its *radicand*), which gives two things:

* exact multiplication through a (possibly partial) product table, and
* rational enclosures of every basis element, from which signs, floors
  and continued fractions are decided exactly.

No predicate in this module ever looks at a float.  Linear independence
of the declared basis over Q is an assumption of the context author; it
is recorded in the context and travels with every certificate.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from . import _linalg

__all__ = [
    "AlgebraicNumber",
    "CertificationRefused",
    "ContextIncomplete",
    "DiophantineWitness",
    "IndependenceResult",
    "MCertificate",
    "NumberContext",
    "Scalar",
    "cf_expansion",
    "dc1_witness",
    "default_context",
    "in_M_set",
    "independent_over_Q_alpha",
    "module_generators",
    "quadratic_cf",
    "radical_context",
]

BASIS_ASSUMPTION = "basis elements are linearly independent over Q (declared, not proved)"

_MAX_BITS = 1 << 14


class ContextIncomplete(ValueError):
    """The number context cannot represent or decide the requested operation."""


class CertificationRefused(ValueError):
    """A hypothesis could not be certified.

    ``predicate`` names the failed check.  A refusal is never a claim that
    the property being certified is false.
    """

    def __init__(self, predicate: str, reason: str):
        super().__init__(f"{predicate}: {reason}")
        self.predicate = predicate
        self.reason = reason


# ---------------------------------------------------------------------------
# contexts


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    raise TypeError(f"cannot read {x!r} as an exact rational")


@dataclass(frozen=True, eq=False)
class NumberContext:
    """Declared basis ``b_1 = 1, b_2, ..., b_m`` with exact product table.

    ``products`` maps ``(i, j)`` with ``i <= j`` to the coordinates of
    ``b_i * b_j``.  Missing entries are allowed; any operation that needs
    one raises :class:`ContextIncomplete`.
    """

    labels: tuple[str, ...]
    radicands: tuple[Fraction, ...]
    products: Mapping[tuple[int, int], tuple[Fraction, ...]]
    alpha_coords: tuple[Fraction, ...] | None = None
    name: str = ""
    id: str = field(init=False)

    def __post_init__(self):
        m = len(self.labels)
        if m == 0 or self.radicands[0] != 1:
            raise ValueError("the first basis element must be 1")
        if len(self.radicands) != m:
            raise ValueError("one radicand per basis label")
        if any(r <= 0 for r in self.radicands):
            raise ValueError("radicands must be positive")
        for (i, j), coords in self.products.items():
            if not (0 <= i <= j < m) or len(coords) != m:
                raise ValueError(f"bad product table entry {(i, j)}")
        if self.alpha_coords is not None and len(self.alpha_coords) != m:
            raise ValueError("alpha coordinates must match the basis")
        digest = hashlib.sha256(self.canonical_json().encode()).hexdigest()
        object.__setattr__(self, "id", digest[:16])

    @property
    def dim(self) -> int:
        return len(self.labels)

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "radicands": [[r.numerator, r.denominator] for r in self.radicands],
            "products": [
                [i, j, [[c.numerator, c.denominator] for c in coords]]
                for (i, j), coords in sorted(self.products.items())
            ],
            "alpha": None if self.alpha_coords is None else
            [[c.numerator, c.denominator] for c in self.alpha_coords],
            "assumption": BASIS_ASSUMPTION,
        }

    def canonical_json(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: Mapping, name: str = "") -> "NumberContext":
        labels = tuple(obj["labels"])
        radicands = tuple(_frac(r) for r in obj["radicands"])
        products = {
            (int(i), int(j)): tuple(_frac(c) for c in coords)
            for i, j, coords in obj.get("products", [])
        }
        alpha = obj.get("alpha")
        alpha_coords = None if alpha is None else tuple(_frac(c) for c in alpha)
        return cls(labels, radicands, products, alpha_coords, name or obj.get("name", ""))

    # -- elements ---------------------------------------------------------

    def element(self, coords: Iterable) -> "AlgebraicNumber":
        return AlgebraicNumber(self, tuple(_frac(c) for c in coords))

    def rational(self, q) -> "AlgebraicNumber":
        coords = [Fraction(0)] * self.dim
        coords[0] = _frac(q)
        return AlgebraicNumber(self, tuple(coords))

    def basis(self, i: int) -> "AlgebraicNumber":
        coords = [Fraction(0)] * self.dim
        coords[i] = Fraction(1)
        return AlgebraicNumber(self, tuple(coords))

    def sqrt(self, radicand) -> "AlgebraicNumber":
        """The basis element whose radicand is ``radicand``."""
        r = _frac(radicand)
        for i, ri in enumerate(self.radicands):
            if ri == r:
                return self.basis(i)
        raise ContextIncomplete(f"sqrt({r}) is not a basis element of this context")

    @property
    def alpha(self) -> "AlgebraicNumber":
        if self.alpha_coords is None:
            raise ContextIncomplete("context declares no designated alpha")
        return AlgebraicNumber(self, self.alpha_coords)

    def lift(self, x) -> "AlgebraicNumber":
        if isinstance(x, AlgebraicNumber):
            if x.ctx is not self and x.ctx.id != self.id:
                raise ContextIncomplete("numbers from different contexts")
            return x
        return self.rational(x)

    def product(self, i: int, j: int) -> tuple[Fraction, ...]:
        key = (i, j) if i <= j else (j, i)
        if key[0] == 0:
            coords = [Fraction(0)] * self.dim
            coords[key[1]] = Fraction(1)
            return tuple(coords)
        try:
            return self.products[key]
        except KeyError:
            raise ContextIncomplete(
                f"context incomplete: product {self.labels[i]}*{self.labels[j]} not tabulated"
            ) from None

    def __repr__(self):
        return f"NumberContext({', '.join(self.labels)}; id={self.id})"


def _squarefree_split(n: int) -> tuple[int, int]:
    """Write n = s^2 * m with m squarefree; return (s, m)."""
    s, m, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            m *= p
        p += 1
    return s, m * n


def radical_context(radicands: Sequence[int], alpha=None, name: str = "") -> NumberContext:
    """Context spanned by square roots of distinct squarefree integers.

    The product table contains every product that lands back in the span;
    the rest is left out (and will raise on use).
    """
    rads = [int(r) for r in radicands]
    if rads[0] != 1:
        raise ValueError("first radicand must be 1")
    for r in rads:
        if _squarefree_split(r)[0] != 1:
            raise ValueError(f"radicand {r} is not squarefree")
    index = {r: i for i, r in enumerate(rads)}
    m = len(rads)
    products = {}
    for i in range(1, m):
        for j in range(i, m):
            s, sf = _squarefree_split(rads[i] * rads[j])
            if sf in index:
                coords = [Fraction(0)] * m
                coords[index[sf]] = Fraction(s)
                products[(i, j)] = tuple(coords)
    labels = tuple("1" if r == 1 else f"sqrt{r}" for r in rads)
    alpha_coords = None if alpha is None else tuple(_frac(c) for c in alpha)
    return NumberContext(labels, tuple(Fraction(r) for r in rads), products, alpha_coords, name)


@lru_cache(maxsize=1)
def default_context() -> NumberContext:
    """The shipped context {1, sqrt2, sqrt3, sqrt5, sqrt10, sqrt15}.

    These six numbers are genuinely independent over Q (distinct
    squarefree radicands).  The designated alpha is the golden mean
    (sqrt5 - 1)/2.  The table is partial: sqrt2*sqrt3 is absent.
    """
    golden = [Fraction(-1, 2), 0, 0, Fraction(1, 2), 0, 0]
    return radical_context([1, 2, 3, 5, 10, 15], alpha=golden, name="default")


# ---------------------------------------------------------------------------
# enclosures


@lru_cache(maxsize=4096)
def _sqrt_enclosure(r: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    p, q = r.numerator, r.denominator
    n = (p * q) << (2 * bits)
    s = math.isqrt(n)
    scale = q << bits
    lo = Fraction(s, scale)
    hi = lo if s * s == n else Fraction(s + 1, scale)
    return lo, hi


class AlgebraicNumber:
    """Exact element of the Q-span of a context basis."""

    __slots__ = ("ctx", "coords", "_hash")

    def __init__(self, ctx: NumberContext, coords: tuple[Fraction, ...]):
        if len(coords) != ctx.dim:
            raise ValueError("coordinate vector length must equal the basis size")
        self.ctx = ctx
        self.coords = coords
        self._hash = None

    # -- structure ------------------------------------------------------

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coords) if c)

    def _other(self, other) -> "AlgebraicNumber | None":
        if isinstance(other, AlgebraicNumber):
            if other.ctx is not self.ctx and other.ctx.id != self.ctx.id:
                raise ContextIncomplete("numbers from different contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.rational(other)
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.ctx, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.ctx, tuple(-a for a in self.coords))

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.ctx, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.ctx, tuple(a * other for a in self.coords))
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            return self * o.coords[0]
        if self.is_rational():
            return o * self.coords[0]
        out = [Fraction(0)] * self.ctx.dim
        for i in self.support():
            for j in o.support():
                c = self.coords[i] * o.coords[j]
                for k, e in enumerate(self.ctx.product(i, j)):
                    if e:
                        out[k] += c * e
        return AlgebraicNumber(self.ctx, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        """Multiplicative inverse, found by exact linear solve.

        Works whenever the span of ``{self * b_j}`` over the tabulated
        products contains 1; otherwise raises :class:`ContextIncomplete`.
        """
        if self.is_rational():
            return self.ctx.rational(1 / self.coords[0])
        cols, used = [], []
        for j in range(self.ctx.dim):
            try:
                cols.append((self * self.ctx.basis(j)).coords)
            except ContextIncomplete:
                continue
            used.append(j)
        one = [Fraction(0)] * self.ctx.dim
        one[0] = Fraction(1)
        sol = _linalg.solve(_linalg.transpose(cols), one)
        if sol is None:
            raise ContextIncomplete(f"context incomplete: cannot invert {self}")
        coords = [Fraction(0)] * self.ctx.dim
        for j, c in zip(used, sol):
            coords[j] = c
        inv = AlgebraicNumber(self.ctx, tuple(coords))
        assert (inv * self) == 1
        return inv

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.ctx, tuple(a / other for a in self.coords))
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- order ------------------------------------------------------------

    def enclosure(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        lo = hi = self.coords[0]
        for i in self.support():
            if i == 0:
                continue
            c = self.coords[i]
            blo, bhi = _sqrt_enclosure(self.ctx.radicands[i], bits)
            if c > 0:
                lo += c * blo
                hi += c * bhi
            else:
                lo += c * bhi
                hi += c * blo
        return lo, hi

    def sign(self) -> int:
        if self.is_rational():
            c = self.coords[0]
            return (c > 0) - (c < 0)
        bits = 64
        while bits <= _MAX_BITS:
            lo, hi = self.enclosure(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2
        raise ContextIncomplete(
            f"sign of {self} unresolved at {_MAX_BITS} bits; is the basis really independent?"
        )

    def _cmp(self, other) -> int | None:
        o = self._other(other)
        if o is None:
            return None
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __eq__(self, other):
        try:
            o = self._other(other)
        except ContextIncomplete:
            return False
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coords[0])
            else:
                self._hash = hash((self.ctx.id, self.coords))
        return self._hash

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __floor__(self) -> int:
        if self.is_rational():
            return math.floor(self.coords[0])
        bits = 64
        while bits <= _MAX_BITS:
            lo, hi = self.enclosure(bits)
            flo, fhi = math.floor(lo), math.floor(hi)
            if flo == fhi:
                return flo
            bits *= 2
        raise ContextIncomplete(f"floor of {self} unresolved")

    def __float__(self):
        lo, hi = self.enclosure(64)
        return float((lo + hi) / 2)

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        terms = []
        for label, c in zip(self.ctx.labels, self.coords):
            if c:
                terms.append(str(c) if label == "1" else f"{c}*{label}")
        return "(" + (" + ".join(terms) if terms else "0") + ")"


Scalar = Union[int, Fraction, AlgebraicNumber]


def exact(x) -> Scalar:
    """Coerce ints and rational strings to Fraction; refuse floats."""
    if isinstance(x, (Fraction, AlgebraicNumber)):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"{x!r} is not an exact scalar")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"{x!r} is not an exact scalar")


def exact_vector(v) -> tuple:
    return tuple(exact(x) for x in v)


def sign(x: Scalar) -> int:
    if isinstance(x, AlgebraicNumber):
        return x.sign()
    return (x > 0) - (x < 0)


def to_fraction_if_rational(x: Scalar):
    if isinstance(x, AlgebraicNumber) and x.is_rational():
        return x.coords[0]
    return x


def enclosure(x: Scalar, bits: int = 64) -> tuple[Fraction, Fraction]:
    if isinstance(x, AlgebraicNumber):
        return x.enclosure(bits)
    f = Fraction(x)
    return f, f


def context_of(*xs) -> NumberContext | None:
    for x in xs:
        if isinstance(x, AlgebraicNumber):
            return x.ctx
        if isinstance(x, (list, tuple)):
            c = context_of(*x)
            if c is not None:
                return c
    return None


# ---------------------------------------------------------------------------
# continued fractions


def _euclid_cf(x: Fraction, depth: int) -> list[int]:
    out = []
    p, q = x.numerator, x.denominator
    while q and len(out) < depth:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out


def _quadratic_parts(x: AlgebraicNumber) -> tuple[Fraction, Fraction, Fraction] | None:
    supp = [i for i in x.support() if i != 0]
    if len(supp) != 1:
        return None
    i = supp[0]
    return x.coords[0], x.coords[i], x.ctx.radicands[i]


def quadratic_cf(x: AlgebraicNumber) -> tuple[list[int], list[int]]:
    """Exact (preperiod, period) of the continued fraction of ``a + b*sqrt(r)``.

    Uses the classical surd recurrence on ``(P + sqrt(D)) / Q`` with
    ``Q | D - P^2``; a repeated ``(P, Q)`` pair closes the period.
    """
    parts = _quadratic_parts(x)
    if parts is None:
        raise ValueError(f"{x} is not a quadratic irrational over a single radical")
    a, b, r = parts
    # a + b*sqrt(p/q) = a + (b/q)*sqrt(p*q)
    m = r.numerator * r.denominator
    s_m, m_sf = _squarefree_split(m)
    if m_sf == 1:
        raise ValueError("radicand is a perfect square")
    b = b * Fraction(s_m, r.denominator)
    m = m_sf
    den = math.lcm(a.denominator, b.denominator)
    A = a.numerator * (den // a.denominator)
    B = b.numerator * (den // b.denominator)
    D = B * B * m
    P, Q = (A, den) if B > 0 else (-A, -den)
    if (D - P * P) % Q:
        P, Q, D = P * abs(Q), Q * abs(Q), D * Q * Q
    s = math.isqrt(D)
    seen: dict[tuple[int, int], int] = {}
    quotients: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(quotients)
        q = (P + s) // Q if Q > 0 else (P + s + 1) // Q
        quotients.append(q)
        P = q * Q - P
        Q = (D - P * P) // Q
    start = seen[(P, Q)]
    return quotients[:start], quotients[start:]


def _enclosure_cf(x: AlgebraicNumber, depth: int) -> list[int]:
    bits = 64
    while True:
        lo, hi = x.enclosure(bits)
        out: list[int] = []
        while len(out) < depth:
            flo, fhi = math.floor(lo), math.floor(hi)
            if flo != fhi or lo == flo:
                break
            out.append(flo)
            lo, hi = 1 / (hi - flo), 1 / (lo - flo)
        if len(out) >= depth:
            return out
        bits *= 2
        if bits > _MAX_BITS:
            raise ContextIncomplete(f"continued fraction of {x} unresolved to depth {depth}")


def cf_expansion(x: Scalar, depth: int) -> list[int]:
    """First ``depth`` partial quotients of ``x`` (fewer if it terminates).

    Rationals go through the Euclidean algorithm, single-radical
    quadratic irrationals through the periodic surd recurrence, and any
    other element through nested rational enclosures.

    >>> cf_expansion(Fraction(3, 7), 10)
    [0, 2, 3]
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if isinstance(x, AlgebraicNumber):
        if x.is_rational():
            return _euclid_cf(x.coords[0], depth)
        if _quadratic_parts(x) is not None:
            pre, per = quadratic_cf(x)
            out = list(pre)
            while len(out) < depth:
                out.extend(per)
            return out[:depth]
        return _enclosure_cf(x, depth)
    return _euclid_cf(Fraction(x), depth)


# ---------------------------------------------------------------------------
# Diophantine condition


@dataclass(frozen=True)
class DiophantineWitness:
    """Continued-fraction evidence that ``|p - q*alpha| > c/q`` for all p, q.

    ``certified`` is True only when every partial quotient is covered
    (periodic expansion).  Otherwise the bound holds up to ``depth`` and
    the witness is a semi-decision.
    """

    alpha: AlgebraicNumber
    depth: int
    quotients: tuple[int, ...]
    preperiod: tuple[int, ...] | None
    period: tuple[int, ...] | None
    max_quotient: int
    constant: Fraction
    certified: bool

    @property
    def status(self) -> str:
        if self.certified:
            return "certified"
        return f"bounded up to depth {self.depth}"


def dc1_witness(alpha: Scalar, depth: int = 64) -> DiophantineWitness:
    """Check the bounded-partial-quotient Diophantine condition for alpha.

    For a quadratic irrational the expansion is periodic, so the maximal
    quotient ``A`` over all indices ``>= 1`` is known and
    ``c = 1/(A + 2)`` works: ``|q alpha - p| > 1/((a_{n+1}+2) q_n)`` at
    convergents, and best approximation covers every other q.
    """
    if not isinstance(alpha, AlgebraicNumber) or alpha.is_rational():
        raise CertificationRefused("DC1", "alpha is rational")
    if _quadratic_parts(alpha) is not None:
        pre, per = quadratic_cf(alpha)
        tail = pre[1:] + per if pre else per[1:] + per
        A = max(tail)
        quotients = tuple(pre + per)
        return DiophantineWitness(
            alpha, len(quotients), quotients, tuple(pre), tuple(per),
            A, Fraction(1, A + 2), True,
        )
    qs = cf_expansion(alpha, depth)
    A = max(qs[1:]) if len(qs) > 1 else qs[0]
    return DiophantineWitness(alpha, depth, tuple(qs), None, None, A, Fraction(1, A + 2), False)


# ---------------------------------------------------------------------------
# the set of admissible (alpha, xi) pairs


@dataclass(frozen=True)
class MCertificate:
    alpha: AlgebraicNumber
    xi: AlgebraicNumber
    p: Fraction
    q: Fraction
    dc1: DiophantineWitness


def in_M_set(alpha: AlgebraicNumber, xi: Scalar) -> MCertificate:
    """Certify that ``alpha`` is in DC1 and ``xi`` is in ``(Q+Q alpha) \\ (Z+Z alpha)``.

    Raises :class:`CertificationRefused` naming the failing predicate.
    """
    if not isinstance(alpha, AlgebraicNumber):
        raise CertificationRefused("DC1", "alpha is rational")
    ctx = alpha.ctx
    xi = ctx.lift(xi)
    if not (0 <= alpha < 1):
        raise CertificationRefused("range", "alpha not in [0, 1)")
    if not (0 <= xi < 1):
        raise CertificationRefused("range", "xi not in [0, 1)")
    w = dc1_witness(alpha)
    if not w.certified:
        raise CertificationRefused("DC1", f"only {w.status}")
    cols = _linalg.transpose([ctx.rational(1).coords, alpha.coords])
    sol = _linalg.solve(cols, xi.coords)
    if sol is None:
        raise CertificationRefused("Q+Q*alpha", "xi not in Q+Q*alpha")
    p, q = sol
    if p.denominator == 1 and q.denominator == 1:
        raise CertificationRefused("Z+Z*alpha", f"xi in Z+Z*alpha (p, q) = ({p}, {q})")
    return MCertificate(alpha, xi, p, q, w)


# ---------------------------------------------------------------------------
# independence over Q + Q*alpha


@dataclass(frozen=True)
class IndependenceResult:
    independent: bool
    rank: int
    size: int
    vectors: tuple[tuple[Fraction, ...], ...]

    def __bool__(self):
        return self.independent

    def transcript(self) -> dict:
        return {
            "rank": self.rank,
            "required": self.size,
            "independent": self.independent,
            "vectors": [[[c.numerator, c.denominator] for c in v] for v in self.vectors],
        }


def independent_over_Q_alpha(values: Sequence[Scalar], alpha: AlgebraicNumber) -> IndependenceResult:
    """Decide independence of ``values`` over ``Q + Q*alpha``.

    ``v_1..v_k`` are independent over ``Q + Q alpha`` exactly when the
    ``2k`` vectors ``v_i, alpha*v_i`` have rational rank ``2k``.
    """
    ctx = alpha.ctx
    vecs = []
    for v in values:
        v = ctx.lift(v)
        vecs.append(v.coords)
        vecs.append((alpha * v).coords)
    r = _linalg.rank(vecs) if vecs else 0
    return IndependenceResult(r == len(vecs), r, len(vecs), tuple(vecs))


def module_generators(ctx: NumberContext, alpha: AlgebraicNumber) -> list[AlgebraicNumber]:
    """Greedy basis elements independent over ``Q + Q*alpha`` (starting from 1)."""
    chosen: list[AlgebraicNumber] = []
    for i in range(ctx.dim):
        b = ctx.basis(i)
        try:
            ok = independent_over_Q_alpha(chosen + [b], alpha).independent
        except ContextIncomplete:
            continue
        if ok:
            chosen.append(b)
    return chosen
