"""Approximation of suspension data by three-interval data, and the snap
to certified mildly mixing data.

``run_approximation`` walks the renormalization orbit of a datum until
it sits in the set ``A_n`` over the chosen standard pair, straightens
the first ``d - 3`` sides (perturb, then rotate exactly), and transports
the perturbation back with the recorded cocycle.  ``mild_snap`` moves a
datum on the three-interval locus to nearby data whose vertical flow
satisfies the certified mild-mixing hypotheses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .iet import PermutationPair, classify, omega_matrix
from .numbers import (
    AlgebraicNumber,
    ContextIncomplete,
    NumberContext,
    Scalar,
    cf_expansion,
    default_context,
    exact,
    exact_vector,
    independent_over_Q_alpha,
    module_generators,
)
from .rauzy import (
    Degenerate,
    _apply_theta_star,
    _theta_entry,
    cocycle,
    iet_type,
    matrix_ratio,
    predecessor,
    rauzy_move,
)
from .specflow import MildMixCertificate, certify_mild, rho, rho_inverse
from .suspension import RotationResult, SuspensionDatum, cone_check, in_Z, rotate_to_vertical

__all__ = [
    "AnConditions",
    "IndependenceCheck",
    "NotFound",
    "PipelineRun",
    "SnapFailed",
    "SnapResult",
    "Step1Result",
    "Step2Result",
    "Step3Result",
    "Step4Result",
    "an_check",
    "backward_seed",
    "lemma_independence_check",
    "matrix_ratio",
    "mild_snap",
    "noble_approximation",
    "norm_l1",
    "random_An_point",
    "random_Z_datum",
    "random_seed_datum",
    "run_approximation",
    "step1_search",
    "step2_perturb",
    "step3_rotate",
    "step4_backtransport",
    "symmetric_pair",
]


def _sum(v):
    total = 0
    for x in v:
        total = total + x
    return total


def norm_l1(x) -> Scalar:
    """``sum |x_a|``."""
    return _sum(abs(v) for v in x)


def symmetric_pair(d: int) -> PermutationPair:
    """Standard pair on ``1..d`` with identity top row and reversed bottom row."""
    return PermutationPair.standard_from_bottom_values(tuple(range(d, 0, -1)))


def _require_pibar(pibar: PermutationPair):
    if pibar.d < 4:
        raise ValueError("the construction needs d >= 4")
    if pibar.top != pibar.alphabet or pibar.alphabet != tuple(range(1, pibar.d + 1)):
        raise ValueError("pibar must live on 1..d with identity top row")
    if not classify(pibar).standard:
        raise ValueError("pibar must be standard")


class NotFound(Exception):
    """No accepted visit within the step budget (or a degenerate step ended the orbit)."""

    def __init__(self, max_steps: int, reason: str = "", degenerate_at: int | None = None):
        super().__init__(reason or f"no visit within {max_steps} steps")
        self.max_steps = max_steps
        self.degenerate_at = degenerate_at


# ---------------------------------------------------------------------------
# A_n


@dataclass(frozen=True)
class AnConditions:
    n: int
    steep_start: bool
    aligned_slopes: bool
    last_positive: bool
    violation: str = ""
    index: int | None = None

    def __bool__(self):
        return self.steep_start and self.aligned_slopes and self.last_positive


def an_check(pibar: PermutationPair, lengths, tau, n: int) -> AnConditions:
    """Evaluate the three conditions defining ``A_n`` on normalized data.

    Conditions are checked in order; the first failure is reported and
    later conditions are reported as not evaluated (False).
    """
    _require_pibar(pibar)
    lam, tau = exact_vector(lengths), exact_vector(tau)
    if _sum(lam) != 1:
        raise ValueError("lengths must be normalized to total 1")
    d = pibar.d
    if not all(x > 0 for x in lam):
        i = next(i for i, x in enumerate(lam) if not x > 0)
        return AnConditions(n, False, False, False, "length not positive", i + 1)
    slope = tau[0] / lam[0]
    if not slope > 1:
        return AnConditions(n, False, False, False, "tau_1/lambda_1 <= 1", 1)
    inv = lam[0] / tau[0]
    acc = 0
    for j, letter in enumerate(pibar.bottom, start=1):
        acc = acc + tau[letter - 1]
        if not -acc > inv:
            return AnConditions(n, False, False, False, "bottom partial sum too small", j)
    bound = Fraction(1, n)
    for j in range(2, d - 2):
        if not abs(slope - tau[j - 1] / lam[j - 1]) < bound:
            return AnConditions(n, True, False, False, "slope not within 1/n", j)
    for j in (d - 2, d - 1, d):
        if not tau[j - 1] < 0:
            return AnConditions(n, True, False, False, "tau not negative", j)
    value = inv * _sum(tau[: d - 3]) + lam[d - 3] + lam[d - 2]
    if not value < 1:
        return AnConditions(n, True, True, False, "last length would not be positive", None)
    return AnConditions(n, True, True, True)


# ---------------------------------------------------------------------------
# step 1


@dataclass
class Step1Result:
    k: int
    pair: PermutationPair  # pair reached, original labels
    lengths: tuple  # unnormalized lambda^(n), original labels
    tau: tuple  # tau^(n), original labels
    relabel: tuple  # relabel[i] = original letter at position i + 1 of the top row
    matrix: tuple  # Theta^(k)
    steps: tuple
    positive: bool
    gamma: Fraction

    @property
    def size(self):
        return _sum(self.lengths)

    def in_pibar_labels(self, v):
        """Reorder a vector from original labels to the ``1..d`` labels of pibar."""
        index = {x: i for i, x in enumerate(self.pair.alphabet)}
        return tuple(v[index[x]] for x in self.relabel)

    def to_original_labels(self, v):
        index = {x: i for i, x in enumerate(self.pair.alphabet)}
        out = [None] * len(v)
        for pos, x in enumerate(self.relabel):
            out[index[x]] = v[pos]
        return tuple(out)

    @property
    def normalized(self):
        """``(lambda~, tau~)`` in pibar labels."""
        s = self.size
        return (
            tuple(x / s for x in self.in_pibar_labels(self.lengths)),
            tuple(t * s for t in self.in_pibar_labels(self.tau)),
        )


def step1_search(datum: SuspensionDatum, pibar: PermutationPair, n: int, max_steps: int) -> Step1Result:
    """First k with the normalized iterate in ``A_n`` over pibar (up to relabeling)
    and a positive cocycle; ``k = 0`` is accepted without positivity.
    """
    _require_pibar(pibar)
    if _sum(datum.lengths) != 1:
        raise ValueError("input lengths must be normalized to total 1")
    if not all(x > 0 for x in datum.lengths):
        raise ValueError("input lengths must be positive")
    d = datum.pair.d
    if d != pibar.d:
        raise ValueError("pibar has the wrong number of letters")
    pair, lam, tau = datum.pair, datum.lengths, datum.tau
    mat = [list(r) for r in _linalg.identity(d)]
    steps: list[int] = []
    for k in range(max_steps + 1):
        if pair.normalized() == pibar:
            positive = all(x > 0 for row in mat for x in row)
            if k == 0 or positive:
                relabel = pair.top
                res = Step1Result(
                    k, pair, lam, tau, relabel, tuple(tuple(r) for r in mat), tuple(steps),
                    positive, Fraction(1),
                )
                lt, tt = res.normalized
                if an_check(pibar, lt, tt, n):
                    if positive:
                        res.gamma = matrix_ratio(_linalg.transpose(res.matrix))
                    return res
        if k == max_steps:
            break
        eps = iet_type(pair, lam)
        if eps is None:
            raise NotFound(max_steps, f"degenerate step at {k + 1}", degenerate_at=k + 1)
        i, j = _theta_entry(pair, eps)
        mat[i] = [a + b for a, b in zip(mat[i], mat[j])]
        lam = _apply_theta_inv(pair, eps, lam)
        tau = _apply_theta_inv(pair, eps, tau)
        pair = rauzy_move(pair, eps)
        steps.append(eps)
    raise NotFound(max_steps)


def _apply_theta_inv(pair, eps, v):
    i, j = _theta_entry(pair, eps)
    out = list(v)
    out[j] = v[j] - v[i]
    return tuple(out)


# ---------------------------------------------------------------------------
# step 2


@dataclass(frozen=True)
class Step2Result:
    lengths_tilde: tuple  # lambda~^(n)
    tau_tilde: tuple
    perturbed_tilde: tuple  # lambda~^p(n)
    perturbed: tuple  # lambda^p(n)
    distance: Scalar


def step2_perturb(pibar: PermutationPair, lengths_tilde, tau_tilde, size, n: int) -> Step2Result:
    """Make the first ``d - 3`` sides exactly parallel to the first one."""
    lam, tau = exact_vector(lengths_tilde), exact_vector(tau_tilde)
    d = pibar.d
    if not an_check(pibar, lam, tau, n):
        raise AssertionError("step 2 needs a point of A_n")
    ratio = lam[0] / tau[0]
    p = [ratio * tau[j] for j in range(d - 3)] + [lam[d - 3], lam[d - 2]]
    p.append(1 - _sum(p))
    p = tuple(p)
    if not all(x > 0 for x in p):
        raise AssertionError("perturbed lengths left the simplex")
    dist = norm_l1([a - b for a, b in zip(p, lam)])
    if not dist < Fraction(2, n):
        raise AssertionError("perturbation larger than 2/n")
    size = exact(size)
    return Step2Result(lam, tau, p, tuple(size * x for x in p), dist)


# ---------------------------------------------------------------------------
# step 3


@dataclass(frozen=True)
class Step3Result:
    rotation: RotationResult
    u: Scalar  # rotation coefficients: multiply by (u + i v) / sqrt(u^2 + v^2)
    v: Scalar

    @property
    def datum(self) -> SuspensionDatum:
        return self.rotation.datum


def step3_rotate(pibar: PermutationPair, perturbed, tau) -> Step3Result:
    """Rotate so that the first ``d - 3`` sides become vertical, exactly."""
    lam, tau = exact_vector(perturbed), exact_vector(tau)
    d = pibar.d
    slope = tau[0] / lam[0]
    for j in range(d - 3):
        if tau[j] / lam[j] != slope:
            raise ValueError(f"side {j + 1} is not parallel to side 1")
    rot = rotate_to_vertical(pibar, lam, tau, 0)
    if not isinstance(rot, RotationResult):
        raise AssertionError(f"rotation left the cone: {rot.condition} at {rot.index}")
    out = rot.datum
    for j in range(d - 3):
        if out.lengths[j] != 0 or not out.tau[j] > 0:
            raise AssertionError(f"side {j + 1} is not vertical and upward")
    for j in range(d - 3, d):
        if not out.lengths[j] > 0:
            raise AssertionError(f"side {j + 1} has non-positive length after rotation")
    if not in_Z(out, pibar):
        raise AssertionError("rotated datum is not on the three-interval locus")
    return Step3Result(rot, tau[0], lam[0])


# ---------------------------------------------------------------------------
# step 4


@dataclass(frozen=True)
class Step4Result:
    lengths: tuple  # lambda^b(n)
    distance: Scalar  # ||lambda^b - lambda||
    lipschitz_bound: Scalar  # Gamma_obs^2 ||lambda~^p - lambda~||
    rate_bound: Scalar  # 2 Gamma_obs^2 / n
    replay_ok: bool

    @property
    def ok(self) -> bool:
        return self.replay_ok and self.distance <= self.lipschitz_bound <= self.rate_bound


def step4_backtransport(datum: SuspensionDatum, s1: Step1Result, s2: Step2Result, n: int) -> Step4Result:
    """Pull the perturbed lengths back along the recorded cocycle."""
    star = _linalg.transpose(s1.matrix)
    p_orig = s1.to_original_labels(s2.perturbed_tilde)
    t_orig = s1.to_original_labels(s2.lengths_tilde)
    top = _linalg.matvec(star, p_orig)
    bottom = _sum(_linalg.matvec(star, t_orig))
    lam_b = tuple(x / bottom for x in top)

    # replay: forward k steps from (pi, lambda^b) must land on lambda^p
    run = cocycle(datum.pair, lam_b, s1.k)
    target = s1.to_original_labels(s2.perturbed)
    replay_ok = (
        run.aborted_at is None
        and run.pair == s1.pair
        and run.cocycle.steps == s1.steps
        and run.lengths == target
    )
    if not replay_ok:
        raise AssertionError("replay of the cocycle did not reproduce the perturbed lengths")
    dist = norm_l1([a - b for a, b in zip(lam_b, datum.lengths)])
    g2 = s1.gamma * s1.gamma
    lip = g2 * s2.distance
    return Step4Result(lam_b, dist, lip, 2 * g2 / n, replay_ok)


# ---------------------------------------------------------------------------
# the whole approximation


@dataclass
class PipelineRun:
    datum: SuspensionDatum
    pibar: PermutationPair
    n: int
    step1: Step1Result
    step2: Step2Result
    step3: Step3Result
    step4: Step4Result

    @property
    def k(self) -> int:
        return self.step1.k

    @property
    def gamma(self) -> Fraction:
        return self.step1.gamma

    @property
    def rotated(self) -> SuspensionDatum:
        return self.step3.datum

    def to_json(self) -> dict:
        from .serialize import encode_datum, encode_scalar, encode_vector

        return {
            "n": self.n,
            "k": self.k,
            "positive_cocycle": self.step1.positive,
            "gamma_obs": encode_scalar(self.gamma),
            "steps": [{"eps": e} for e in self.step1.steps],
            "theta": [list(r) for r in self.step1.matrix],
            "lambda_n": encode_vector(self.step1.lengths),
            "tau_n": encode_vector(self.step1.tau),
            "lambda_tilde": encode_vector(self.step2.lengths_tilde),
            "lambda_tilde_p": encode_vector(self.step2.perturbed_tilde),
            "lambda_p": encode_vector(self.step2.perturbed),
            "rotation": {"u": encode_scalar(self.step3.u), "v": encode_scalar(self.step3.v)},
            "rotated": encode_datum(self.rotated),
            "lambda_b": encode_vector(self.step4.lengths),
            "distance": encode_scalar(self.step4.distance),
            "lipschitz_bound": encode_scalar(self.step4.lipschitz_bound),
            "bound_2_gamma_sq_over_n": encode_scalar(self.step4.rate_bound),
            "replay_ok": self.step4.replay_ok,
        }


def run_approximation(
    datum: SuspensionDatum, n: int, max_steps: int = 10_000, pibar: PermutationPair | None = None
) -> PipelineRun:
    """Steps 1 to 4 for a normalized datum; raises :class:`NotFound` on timeout."""
    pibar = pibar or symmetric_pair(datum.pair.d)
    s1 = step1_search(datum, pibar, n, max_steps)
    lt, tt = s1.normalized
    s2 = step2_perturb(pibar, lt, tt, s1.size, n)
    s3 = step3_rotate(pibar, s2.perturbed, s1.in_pibar_labels(s1.tau))
    s4 = step4_backtransport(datum, s1, s2, n)
    return PipelineRun(datum, pibar, n, s1, s2, s3, s4)


# ---------------------------------------------------------------------------
# random data for experiments


def _rand_frac(rng: random.Random, lo: Fraction, hi: Fraction, den: int = 997) -> Fraction:
    return lo + (hi - lo) * Fraction(rng.randint(1, den - 1), den)


def random_An_point(pibar: PermutationPair, n: int, rng: random.Random, tries: int = 1000):
    """Rejection-sample a normalized ``(lambda, tau)`` in ``A_n`` (rational)."""
    _require_pibar(pibar)
    d = pibar.d
    for _ in range(tries):
        weights = [rng.randint(1, 20) for _ in range(d)]
        weights[-1] += rng.randint(10, 40)
        total = sum(weights)
        lam = [Fraction(w, total) for w in weights]
        slope = _rand_frac(rng, Fraction(11, 10), Fraction(4))
        tau = []
        for j in range(d - 3):
            dev = _rand_frac(rng, Fraction(-1, 2 * n), Fraction(1, 2 * n)) if j else Fraction(0)
            tau.append((slope + dev) * lam[j])
        tau.append(-_rand_frac(rng, Fraction(1, 100), Fraction(1, 4)) * lam[d - 3])
        tau.append(-_rand_frac(rng, Fraction(1, 100), Fraction(1, 4)) * lam[d - 2])
        rest = _sum(tau)
        tau.append(-rest - lam[0] / tau[0] - _rand_frac(rng, Fraction(1, 10), Fraction(3)))
        if an_check(pibar, lam, tau, n) and cone_check(pibar, lam, tau):
            return tuple(lam), tuple(tau)
    raise RuntimeError("could not sample a point of A_n")


def backward_seed(pibar: PermutationPair, lengths, tau, k: int, rng: random.Random, max_extra: int = 200):
    """Walk at least ``k`` inverse induction steps from ``(pibar, lengths, tau)``.

    Each inverse step is chosen at random among those keeping tau in the
    cone; the walk continues until the forward cocycle is positive.
    Returns a normalized :class:`SuspensionDatum` whose forward orbit
    passes through the given point after the returned number of steps.
    """
    pair, lam, tau = pibar, exact_vector(lengths), exact_vector(tau)
    d = pibar.d
    mat = [list(r) for r in _linalg.identity(d)]
    steps = 0
    while True:
        options = []
        for eps in (0, 1):
            try:
                prev = predecessor(pair, eps)
            except ValueError:
                continue
            new_tau = _apply_theta_star(prev, eps, tau)
            if cone_check(prev, [1] * d, new_tau).in_T_plus:
                options.append((eps, prev, new_tau))
        if not options:
            raise RuntimeError("backward walk stuck: no inverse step keeps tau in the cone")
        eps, prev, new_tau = rng.choice(options)
        lam = _apply_theta_star(prev, eps, lam)
        tau = new_tau
        # Theta^(m+1) = Theta^(m) * Theta(prev, eps): column i is added to column j
        i, j = _theta_entry(prev, eps)
        for row in mat:
            row[j] += row[i]
        pair = prev
        steps += 1
        if steps >= k and all(x > 0 for row in mat for x in row):
            break
        if steps > k + max_extra:
            raise RuntimeError("cocycle did not become positive")
    s = _sum(lam)
    return SuspensionDatum(pair, [x / s for x in lam], [t * s for t in tau]), steps


def random_seed_datum(pibar: PermutationPair, n: int, rng: random.Random, depth: int = 20, attempts: int = 50):
    """A normalized datum whose orbit visits ``A_n`` over pibar after ``>= depth`` steps
    with a positive cocycle.  Returns ``(datum, steps)``.
    """
    for _ in range(attempts):
        lam, tau = random_An_point(pibar, n, rng)
        try:
            return backward_seed(pibar, lam, tau, depth, rng)
        except RuntimeError:
            continue
    raise RuntimeError("could not build a seed datum")


def random_Z_datum(pibar: PermutationPair, rng: random.Random, tries: int = 1000) -> SuspensionDatum:
    """A rational datum on the three-interval locus with distinct outer lengths."""
    _require_pibar(pibar)
    d = pibar.d
    for _ in range(tries):
        w = [rng.randint(1, 30) for _ in range(3)]
        if w[0] == w[2]:
            continue
        total = sum(w)
        lam = [Fraction(0)] * (d - 3) + [Fraction(x, total) for x in w]
        tau = [Fraction(rng.randint(1, 40), 20) for _ in range(d - 3)]
        tau += [Fraction(-rng.randint(1, 20), 40), Fraction(-rng.randint(1, 20), 40)]
        tau.append(-_sum(tau) - Fraction(rng.randint(1, 40), 10))
        if cone_check(pibar, lam, tau):
            return SuspensionDatum(pibar, lam, tau)
    raise RuntimeError("could not sample a datum")


# ---------------------------------------------------------------------------
# symbolic independence of the last three heights


@dataclass(frozen=True)
class IndependenceCheck:
    holds: bool
    witness: int | None
    rank: int


def lemma_independence_check(pibar: PermutationPair) -> IndependenceCheck:
    """Heights ``h_{d-2}, h_{d-1}, h_d`` inherit independence from tau.

    Checks the hypothesis (no adjacent increase), finds a row index s with
    ``1 < s < d - 1`` separating columns d-2 and d-1 of Omega, and
    confirms the 3 x d coefficient matrix of those heights in tau has
    rank 3, so any vanishing combination with coefficients in a subgroup
    over which tau is independent is trivial.
    """
    _require_pibar(pibar)
    if not classify(pibar).in_P_star:
        raise ValueError("pair has an adjacent increase; the rank argument does not apply")
    d = pibar.d
    omega = omega_matrix(pibar)
    witness = next((s for s in range(2, d - 1) if omega[s - 1][d - 3] != omega[s - 1][d - 2]), None)
    rows = [[-x for x in omega[j]] for j in (d - 3, d - 2, d - 1)]
    r = _linalg.rank(rows)
    return IndependenceCheck(witness is not None and r == 3, witness, r)


# ---------------------------------------------------------------------------
# snap


class SnapFailed(ValueError):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


def _convergents(quotients):
    p0, q0, p1, q1 = 1, 0, quotients[0], 1
    out = [(p1, q1)]
    for a in quotients[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((p1, q1))
    return out


def noble_approximation(target, delta, ctx: NumberContext) -> AlgebraicNumber:
    """A number ``[0; a_1, ..., a_k, 1, 1, 1, ...]`` within ``delta`` of target.

    The prefix is copied from the continued fraction of ``target`` (in
    (0, 1)); the tail of ones puts the result in ``Q(sqrt5)`` with bounded
    partial quotients.
    """
    root5 = ctx.sqrt(5)
    phi = (1 + root5) / 2
    target = ctx.lift(target)
    delta = exact(delta)
    depth = 2
    while True:
        quotients = cf_expansion(target, depth)
        if len(quotients) < depth:
            # rational target: a large extra quotient keeps the tail close
            quotients = quotients + [2 ** depth]
        conv = _convergents(quotients)
        (p1, q1) = conv[-1]
        (p0, q0) = conv[-2] if len(conv) > 1 else (1, 0)
        candidate = (phi * p1 + p0) / (phi * q1 + q0)
        if abs(candidate - target) < delta and 0 < candidate < 1:
            return candidate
        depth += 1
        if depth > 200:
            raise SnapFailed("eps", "could not approximate the rotation number")


@dataclass
class SnapResult:
    datum: SuspensionDatum
    certificate: MildMixCertificate
    route: str
    lengths_distance: Scalar
    tau_distance: Scalar

    @property
    def distance(self):
        return self.lengths_distance + self.tau_distance


def mild_snap(
    datum: SuspensionDatum,
    eps,
    context: NumberContext | None = None,
    seed: int = 0,
    max_halvings: int = 60,
) -> SnapResult:
    """Certified datum on the three-interval locus within ``eps`` of the input.

    The new lengths come from an admissible ``(alpha, xi)`` near the
    input's, with ``alpha`` a noble quadratic irrational and
    ``xi = p + alpha/2``; tau is pushed off the rationals by small
    multiples of context radicals until the heights are independent.
    """
    pibar = datum.pair
    _require_pibar(pibar)
    d = pibar.d
    eps = exact(eps)
    if not eps > 0:
        raise SnapFailed("precondition", "eps must be positive")
    if not in_Z(datum, pibar):
        raise SnapFailed("precondition", "datum is not on the three-interval locus")
    if not classify(pibar).in_P_star:
        raise SnapFailed("precondition", "pibar has an adjacent increase")
    outer = datum.lengths[d - 3:]
    if not all(x > 0 for x in outer):
        raise SnapFailed("precondition", "last three lengths must be positive")
    if outer[0] == outer[2]:
        raise SnapFailed("precondition", "lambda_{d-2} equals lambda_d")
    ctx = context or default_context()
    try:
        ctx.sqrt(5)
    except ContextIncomplete:
        raise SnapFailed("context", "context insufficient: sqrt5 is needed for the rotation number") from None
    rng = random.Random(seed)

    sub = pibar.restricted(pibar.alphabet[d - 3:])
    total = _sum(outer)
    params = rho(sub, outer)
    alpha0, xi0 = params.alpha, params.xi

    # lengths
    delta = eps / 8
    for _ in range(max_halvings):
        try:
            alpha = noble_approximation(alpha0, delta, ctx)
            shift = ctx.lift(xi0) - alpha / 2
            scale = int(4 / delta) + 1
            p = Fraction(_floor(shift * scale), scale)
            xi = alpha / 2 + p
            if not (abs(xi - xi0) < delta and 0 <= xi < 1):
                raise ValueError("xi out of range")
            x = rho_inverse(params.gamma, alpha, xi)
        except ValueError:
            delta /= 2
            continue
        new_outer = tuple(total * v for v in x)
        lam_new = tuple(datum.lengths[: d - 3]) + new_outer
        lam_dist = norm_l1([a - b for a, b in zip(lam_new, datum.lengths)])
        if lam_dist < eps / 2 and new_outer[0] != new_outer[2]:
            break
        delta /= 2
    else:
        raise SnapFailed("eps", "could not place admissible lengths within eps")

    # tau
    gens = module_generators(ctx, alpha)
    radicals = gens[1:]
    if len(radicals) < 2:
        raise SnapFailed("context", "context insufficient: need two radicals independent over Q + Q*alpha")
    route = "symbolic" if len(radicals) >= d else "direct"
    omega = omega_matrix(pibar)
    for attempt in range(20):
        if route == "symbolic":
            eta = [Fraction(rng.randint(1, 9), 10) * radicals[j] for j in range(d)]
        else:
            eta = [
                _sum(Fraction(rng.randint(-9, 9), 10) * g for g in radicals)
                for _ in range(d)
            ]
        s = eps / (4 * (1 + d * max(1, _ceil_abs_bound(eta))))
        for _ in range(max_halvings):
            tau_new = tuple(t + s * e for t, e in zip(datum.tau, eta))
            tau_dist = norm_l1([a - b for a, b in zip(tau_new, datum.tau)])
            if cone_check(pibar, lam_new, tau_new) and tau_dist < eps / 2:
                break
            s /= 2
        else:
            raise SnapFailed("eps", "eps too large: tau perturbation never re-entered the cone")
        tau_lifted = [ctx.lift(t) for t in tau_new]
        h = [-_sum(o * t for o, t in zip(omega[j], tau_lifted) if o) for j in range(d)]
        if route == "symbolic" and not independent_over_Q_alpha(tau_lifted, alpha):
            continue
        if independent_over_Q_alpha(h[d - 3:], alpha):
            break
    else:
        raise SnapFailed("independence", "could not make the heights independent")

    new = SuspensionDatum(pibar, lam_new, tau_new)
    cert = certify_mild(new, ctx)
    return SnapResult(new, cert, route, lam_dist, tau_dist)


def _floor(x) -> int:
    import math

    return math.floor(x)


def _ceil_abs_bound(values) -> int:
    best = 1
    for v in values:
        lo, hi = (v.enclosure() if isinstance(v, AlgebraicNumber) else (v, v))
        best = max(best, int(max(abs(lo), abs(hi))) + 1)
    return best
