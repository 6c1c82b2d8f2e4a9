"""Rauzy-Veech induction, its integer cocycle and Rauzy classes."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .iet import PermutationPair, classify
from .numbers import Scalar, exact_vector

__all__ = [
    "CocycleMatrix",
    "CocycleRun",
    "Degenerate",
    "InductionStep",
    "RauzyClass",
    "cocycle",
    "induction_step",
    "inverse_step",
    "iet_type",
    "matrix_ratio",
    "predecessor",
    "rauzy_class",
    "rauzy_move",
    "renormalize",
    "theta",
]


class Degenerate(ValueError):
    """The two critical lengths coincide, so the induction is undefined."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


def _require_irreducible(pair: PermutationPair):
    if not classify(pair).irreducible:
        raise ValueError(f"reducible pair:\n{pair}")


def iet_type(pair: PermutationPair, lengths: Sequence[Scalar]) -> int | None:
    """0 if the top-last interval is longer, 1 if shorter, None if equal."""
    top_last = lengths[pair.index(pair.letter_at(0, pair.d))]
    bot_last = lengths[pair.index(pair.letter_at(1, pair.d))]
    if top_last > bot_last:
        return 0
    if top_last < bot_last:
        return 1
    return None


def rauzy_move(pair: PermutationPair, eps: int) -> PermutationPair:
    """``R_eps``: the loser row moves its last letter just after the winner."""
    _require_irreducible(pair)
    d = pair.d
    winner = pair.letter_at(eps, d)
    other = 1 - eps
    pivot = pair.pi(other, winner)
    new_pos = {}
    for x in pair.alphabet:
        p = pair.pi(other, x)
        if p <= pivot:
            new_pos[x] = p
        elif p < d:
            new_pos[x] = p + 1
        else:
            new_pos[x] = pivot + 1
    row = [None] * d
    for x, p in new_pos.items():
        row[p - 1] = x
    rows = [pair.top, pair.bottom]
    rows[other] = tuple(row)
    return PermutationPair(pair.alphabet, rows[0], rows[1])


def predecessor(pair: PermutationPair, eps: int) -> PermutationPair:
    """The unique ``p`` with ``rauzy_move(p, eps) == pair``."""
    d = pair.d
    winner = pair.letter_at(eps, d)
    other = 1 - eps
    row = list(pair.row(other))
    k = row.index(winner)
    if k == d - 1:
        raise ValueError("no predecessor: winner is last in both rows")
    moved = row.pop(k + 1)
    row.append(moved)
    rows = [pair.top, pair.bottom]
    rows[other] = tuple(row)
    prev = PermutationPair(pair.alphabet, rows[0], rows[1])
    assert rauzy_move(prev, eps) == pair
    return prev


def _theta_entry(pair: PermutationPair, eps: int) -> tuple[int, int]:
    d = pair.d
    loser = pair.letter_at(1 - eps, d)
    winner = pair.letter_at(eps, d)
    return pair.index(loser), pair.index(winner)


def theta(pair: PermutationPair, eps: int) -> tuple[tuple[int, ...], ...]:
    """Identity plus one at (loser, winner)."""
    _require_irreducible(pair)
    i, j = _theta_entry(pair, eps)
    m = [list(r) for r in _linalg.identity(pair.d)]
    m[i][j] += 1
    return tuple(tuple(r) for r in m)


def _apply_theta_star(pair, eps, v):
    """``Theta*_{pair, eps} v``: the winner coordinate gains the loser coordinate."""
    i, j = _theta_entry(pair, eps)
    out = list(v)
    out[j] = v[j] + v[i]
    return tuple(out)


def _apply_theta_inv_star(pair, eps, v):
    i, j = _theta_entry(pair, eps)
    out = list(v)
    out[j] = v[j] - v[i]
    return tuple(out)


def _total(v):
    return sum(v[1:], v[0])


@dataclass(frozen=True)
class InductionStep:
    pair: PermutationPair
    lengths: tuple
    eps: int
    new_pair: PermutationPair
    theta: tuple
    new_lengths: tuple

    @property
    def ratio(self):
        """``|lambda'| / |lambda|``, kept exact."""
        return _total(self.new_lengths) / _total(self.lengths)

    @property
    def return_time(self) -> float:
        """``t_R = -log(|lambda'|/|lambda|)`` (display only)."""
        return -math.log(float(self.ratio))


def induction_step(pair: PermutationPair, lengths: Sequence[Scalar]) -> InductionStep:
    """One step of Rauzy-Veech induction (first return to the shortened interval)."""
    lengths = exact_vector(lengths)
    eps = iet_type(pair, lengths)
    if eps is None:
        raise Degenerate("degenerate type: equal critical lengths")
    new_pair = rauzy_move(pair, eps)
    return InductionStep(
        pair, lengths, eps, new_pair, theta(pair, eps),
        _apply_theta_inv_star(pair, eps, lengths),
    )


def inverse_step(pair: PermutationPair, eps: int, lengths: Sequence[Scalar]):
    """Lengths ``Theta*_{pair,eps} lengths`` whose forward step is ``(R_eps pair, lengths)``."""
    lengths = exact_vector(lengths)
    if not all(x > 0 for x in lengths):
        raise ValueError("lengths must be positive")
    return pair, _apply_theta_star(pair, eps, lengths)


@dataclass(frozen=True)
class CocycleMatrix:
    """``Theta^(n) = Theta(step n) ... Theta(step 1)`` with its step log."""

    n: int
    matrix: tuple
    steps: tuple[int, ...] = ()

    @property
    def positive(self) -> bool:
        return all(x > 0 for row in self.matrix for x in row)

    def star(self) -> tuple:
        return _linalg.transpose(self.matrix)

    def nu(self) -> Fraction | None:
        """``nu(Theta^(n)*)`` when every entry is positive, else None."""
        if not self.positive:
            return None
        return matrix_ratio(self.star())

    def step_log(self) -> list[dict]:
        return [{"eps": e} for e in self.steps]


def matrix_ratio(B) -> Fraction:
    """``nu(B)``: largest within-row ratio of a positive matrix."""
    best = None
    for row in B:
        if any(not x > 0 for x in row):
            raise ValueError("nu(B) needs strictly positive entries")
        r = Fraction(max(row)) / Fraction(min(row))
        best = r if best is None else max(best, r)
    return best


@dataclass
class CocycleRun:
    cocycle: CocycleMatrix
    pair: PermutationPair
    lengths: tuple
    tau: tuple | None = None
    aborted_at: int | None = None
    pairs: list = field(default_factory=list)


def cocycle(pair: PermutationPair, lengths: Sequence[Scalar], n: int, tau=None) -> CocycleRun:
    """Run ``n`` induction steps, accumulating the cocycle.

    When ``tau`` is given it is transported by the same matrices
    (extended induction).  A degenerate step stops the run and records
    its 1-based index in ``aborted_at``.
    """
    d = pair.d
    mat = [list(r) for r in _linalg.identity(d)]
    lengths = exact_vector(lengths)
    tau = None if tau is None else exact_vector(tau)
    steps = []
    pairs = [pair]
    aborted = None
    for k in range(n):
        eps = iet_type(pair, lengths)
        if eps is None:
            aborted = k + 1
            break
        i, j = _theta_entry(pair, eps)
        # left-multiplying by I + E_ij adds row j to row i
        mat[i] = [a + b for a, b in zip(mat[i], mat[j])]
        lengths = _apply_theta_inv_star(pair, eps, lengths)
        if tau is not None:
            tau = _apply_theta_inv_star(pair, eps, tau)
        pair = rauzy_move(pair, eps)
        steps.append(eps)
        pairs.append(pair)
    cm = CocycleMatrix(len(steps), tuple(tuple(r) for r in mat), tuple(steps))
    return CocycleRun(cm, pair, lengths, tau, aborted, pairs)


@dataclass(frozen=True)
class RauzyClass:
    members: frozenset
    edges: tuple
    standard: tuple

    def __len__(self):
        return len(self.members)

    def __contains__(self, pair):
        return pair.normalized() in self.members

    def to_json(self) -> dict:
        def enc(p):
            return list(p.bottom)
        return {
            "size": len(self.members),
            "members": sorted(enc(p) for p in self.members),
            "standard": sorted(enc(p) for p in self.standard),
            "edges": [{"from": enc(a), "eps": e, "to": enc(b)} for a, e, b in self.edges],
        }


def rauzy_class(pair: PermutationPair) -> RauzyClass:
    """Breadth-first closure under both moves, with pairs relabeled so top = identity."""
    _require_irreducible(pair)
    start = pair.normalized()
    seen = {start}
    edges = []
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for eps in (0, 1):
            q = rauzy_move(p, eps).normalized()
            edges.append((p, eps, q))
            if q not in seen:
                seen.add(q)
                queue.append(q)
    standard = tuple(sorted((p for p in seen if classify(p).standard), key=lambda p: p.bottom))
    if not standard:
        raise AssertionError("Rauzy class without a standard pair")
    return RauzyClass(frozenset(seen), tuple(edges), standard)


def renormalize(pair: PermutationPair, lengths: Sequence[Scalar], tau: Sequence[Scalar]):
    """One step of the normalized renormalization.

    Returns ``(new_pair, lambda'/|lambda'|, tau'*|lambda'|, ratio)`` where
    ``ratio = |lambda'|/|lambda|`` and ``t_R = -log(ratio)``.  Input
    lengths need not be normalized; ``ratio`` is relative to them.
    """
    step = induction_step(pair, lengths)
    new_tau = _apply_theta_inv_star(pair, step.eps, exact_vector(tau))
    size = _total(step.new_lengths)
    lam = tuple(x / size for x in step.new_lengths)
    tau_n = tuple(t * size for t in new_tau)
    return step.new_pair, lam, tau_n, step.ratio
