"""Random exact data and checks shared by the test modules."""

import random
from fractions import Fraction

from mildmix.iet import PermutationPair, classify
from mildmix.rauzy import iet_type
from mildmix.suspension import SuspensionDatum, cone_check

F = Fraction


def random_irreducible(rng: random.Random, d: int) -> PermutationPair:
    alphabet = tuple(range(1, d + 1))
    while True:
        bottom = list(alphabet)
        rng.shuffle(bottom)
        pair = PermutationPair(alphabet, alphabet, tuple(bottom))
        if classify(pair).irreducible:
            return pair


def random_lengths(rng: random.Random, d: int, den: int = 997) -> tuple:
    return tuple(F(rng.randint(1, den), den) for _ in range(d))


def random_nondegenerate(rng: random.Random, dmin: int = 2, dmax: int = 5):
    while True:
        pair = random_irreducible(rng, rng.randint(dmin, dmax))
        lam = random_lengths(rng, pair.d)
        if iet_type(pair, lam) is not None:
            return pair, lam


def random_tau(rng: random.Random, pair: PermutationPair, lengths=None, tries: int = 10_000) -> tuple:
    """Rejection sample of tau in the cone (for the given lengths when supplied)."""
    d = pair.d
    lam = lengths if lengths is not None else (1,) * d
    for _ in range(tries):
        # sides drawn with a bias that makes the top chain rise and the bottom chain fall
        tau = [F(rng.randint(-40, 40), 20) for _ in range(d)]
        first, last = pair.top[0], pair.bottom[0]
        tau[pair.index(first)] = abs(tau[pair.index(first)]) + 1
        tau[pair.index(last)] = -abs(tau[pair.index(last)]) - 1
        if cone_check(pair, lam, tau):
            return tuple(tau)
    raise RuntimeError("no tau found")


def random_datum(rng: random.Random, dmin: int = 2, dmax: int = 6, simple: bool = False) -> SuspensionDatum:
    """Random valid datum with positive lengths; ``simple`` asks for a vertically simple polygon."""
    while True:
        pair = random_irreducible(rng, rng.randint(dmin, dmax))
        lam = random_lengths(rng, pair.d, 60)
        tau = random_tau(rng, pair, lam)
        datum = SuspensionDatum(pair, lam, tau)
        if not simple or datum.polygon.vertically_simple():
            return datum


def exhaustive_dc1(alpha, c, qmax):
    """Check |p - q alpha| > c / q for every q <= qmax against the nearest p."""
    lo, hi = alpha.enclosure(200)
    for q in range(1, qmax + 1):
        p = round((lo + hi) / 2 * q)
        for cand in (p - 1, p, p + 1):
            # |cand - q alpha| > c / q, decided with the enclosure
            left = min(abs(cand - q * lo), abs(cand - q * hi))
            if not (cand - q * lo) * (cand - q * hi) > 0:
                return False
            if not left > c / q:
                return False
    return True


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []
