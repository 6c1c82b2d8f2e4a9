"""Interval exchange transformations over exact scalars.

A :class:`PermutationPair` stores the two orders of the alphabet: ``top``
lists the letters in pre-exchange order (``pi_0``) and ``bottom`` in
post-exchange order (``pi_1``).  Length vectors are tuples in alphabet
order.  Positions are 1-based to match the usual notation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .numbers import Scalar, exact_vector

__all__ = [
    "Classification",
    "Iet",
    "KeaneViolation",
    "NoViolationFound",
    "PermutationPair",
    "apply",
    "first_return",
    "classify",
    "keane_check",
    "omega_matrix",
    "reduce_zero_letters",
]


@dataclass(frozen=True)
class PermutationPair:
    """Combinatorial datum: two bijections of the alphabet onto 1..d."""

    alphabet: tuple
    top: tuple
    bottom: tuple

    def __post_init__(self):
        a = set(self.alphabet)
        if len(a) != len(self.alphabet) or len(self.alphabet) < 2:
            raise ValueError("alphabet must have d >= 2 distinct symbols")
        if set(self.top) != a or len(self.top) != len(a):
            raise ValueError("top row is not a bijection of the alphabet")
        if set(self.bottom) != a or len(self.bottom) != len(a):
            raise ValueError("bottom row is not a bijection of the alphabet")

    @classmethod
    def from_rows(cls, top: Iterable, bottom: Iterable, alphabet: Iterable | None = None):
        """Build from the two letter orders, e.g. ``from_rows("abc", "cba")``."""
        top, bottom = _row(top), _row(bottom)
        return cls(tuple(alphabet) if alphabet is not None else top, top, bottom)

    @classmethod
    def from_positions(cls, alphabet: Sequence, pi0: Sequence[int], pi1: Sequence[int]):
        """Build from position maps: ``pi0[i]`` is the top position of ``alphabet[i]``."""
        alphabet = tuple(alphabet)
        d = len(alphabet)
        top = [None] * d
        bottom = [None] * d
        for letter, p0, p1 in zip(alphabet, pi0, pi1):
            top[p0 - 1] = letter
            bottom[p1 - 1] = letter
        return cls(alphabet, tuple(top), tuple(bottom))

    @classmethod
    def standard_from_bottom_values(cls, pi1: Sequence[int]):
        """Pair on ``{1..d}`` with identity top row and ``pi_1(k) = pi1[k-1]``."""
        d = len(pi1)
        alphabet = tuple(range(1, d + 1))
        return cls.from_positions(alphabet, alphabet, pi1)

    @property
    def d(self) -> int:
        return len(self.alphabet)

    @cached_property
    def _pos(self):
        return (
            {x: i + 1 for i, x in enumerate(self.top)},
            {x: i + 1 for i, x in enumerate(self.bottom)},
        )

    @cached_property
    def _index(self):
        return {x: i for i, x in enumerate(self.alphabet)}

    def index(self, letter) -> int:
        return self._index[letter]

    def pi(self, eps: int, letter) -> int:
        return self._pos[eps][letter]

    def pi0(self, letter) -> int:
        return self._pos[0][letter]

    def pi1(self, letter) -> int:
        return self._pos[1][letter]

    def row(self, eps: int) -> tuple:
        return self.top if eps == 0 else self.bottom

    def letter_at(self, eps: int, k: int):
        """``pi_eps^{-1}(k)``."""
        return self.row(eps)[k - 1]

    def monodromy(self) -> tuple[int, ...]:
        """Values ``pi_1 o pi_0^{-1}(k)`` for k = 1..d."""
        return tuple(self.pi1(x) for x in self.top)

    def inverse(self) -> "PermutationPair":
        return PermutationPair(self.alphabet, self.bottom, self.top)

    def normalized(self) -> "PermutationPair":
        """Relabel so the alphabet is ``1..d`` in top order (top = identity)."""
        relabel = {x: i + 1 for i, x in enumerate(self.top)}
        alphabet = tuple(range(1, self.d + 1))
        return PermutationPair(alphabet, alphabet, tuple(relabel[x] for x in self.bottom))

    def relabel_map(self) -> dict:
        """Map from letters to their top position (the relabeling of :meth:`normalized`)."""
        return {x: i + 1 for i, x in enumerate(self.top)}

    def restricted(self, letters: Iterable) -> "PermutationPair":
        keep = set(letters)
        alphabet = tuple(x for x in self.alphabet if x in keep)
        return PermutationPair(
            alphabet,
            tuple(x for x in self.top if x in keep),
            tuple(x for x in self.bottom if x in keep),
        )

    def __str__(self):
        return " ".join(map(str, self.top)) + "\n" + " ".join(map(str, self.bottom))


def _row(r) -> tuple:
    if isinstance(r, str):
        return tuple(r.split()) if " " in r else tuple(r)
    return tuple(r)


# ---------------------------------------------------------------------------


def omega_matrix(pair: PermutationPair) -> tuple[tuple[int, ...], ...]:
    """Antisymmetric matrix with ``w = Omega lambda`` and ``h = -Omega tau``."""
    rows = []
    for a in pair.alphabet:
        row = []
        for b in pair.alphabet:
            if pair.pi1(a) > pair.pi1(b) and pair.pi0(a) < pair.pi0(b):
                row.append(1)
            elif pair.pi1(a) < pair.pi1(b) and pair.pi0(a) > pair.pi0(b):
                row.append(-1)
            else:
                row.append(0)
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class Classification:
    irreducible: bool
    in_P_star: bool
    standard: bool


def classify(pair: PermutationPair) -> Classification:
    d = pair.d
    p = pair.monodromy()
    irreducible = all(set(p[:k]) != set(range(1, k + 1)) for k in range(1, d))
    no_adjacent = all(p[k] != p[k - 1] + 1 for k in range(1, d))
    standard = p[0] == d and p[-1] == 1
    return Classification(irreducible, irreducible and no_adjacent, standard)


def _check_lengths(pair: PermutationPair, lengths: Sequence, strict: bool) -> tuple:
    lengths = exact_vector(lengths)
    if len(lengths) != pair.d:
        raise ValueError("one length per letter")
    for x in lengths:
        if x < 0 or (strict and not x > 0):
            raise ValueError("lengths must be " + ("positive" if strict else "non-negative"))
    return lengths


class Iet:
    """``T x = x + w_alpha`` on ``I_alpha``, with ``w = Omega lambda``."""

    def __init__(self, pair: PermutationPair, lengths: Sequence[Scalar]):
        self.pair = pair
        self.lengths = _check_lengths(pair, lengths, strict=True)

    def __repr__(self):
        return f"Iet({self.pair.top}/{self.pair.bottom}, {self.lengths})"

    @cached_property
    def total(self):
        return sum(self.lengths[1:], self.lengths[0])

    @cached_property
    def translations(self) -> tuple:
        omega = omega_matrix(self.pair)
        out = []
        for row in omega:
            w = 0
            for o, lam in zip(row, self.lengths):
                if o:
                    w = w + o * lam
            out.append(w)
        return tuple(out)

    @cached_property
    def _cuts(self) -> tuple[tuple, tuple]:
        """Left endpoints along the top row, and the letters in that order."""
        ends, acc = [], 0
        for x in self.pair.top:
            ends.append(acc)
            acc = acc + self.lengths[self.pair.index(x)]
        return tuple(ends), self.pair.top

    def left_endpoint(self, letter):
        return self._cuts[0][self.pair.pi0(letter) - 1]

    def endpoints(self) -> dict:
        return {x: self.left_endpoint(x) for x in self.pair.alphabet}

    def interval(self, letter) -> tuple:
        a = self.left_endpoint(letter)
        return a, a + self.lengths[self.pair.index(letter)]

    def letter_of(self, x):
        if x < 0 or not x < self.total:
            raise ValueError(f"{x} outside [0, {self.total})")
        ends, letters = self._cuts
        for k in range(len(ends) - 1, -1, -1):
            if x >= ends[k]:
                return letters[k]
        raise AssertionError("unreachable")

    def __call__(self, x):
        a = self.letter_of(x)
        return x + self.translations[self.pair.index(a)]

    @cached_property
    def inverse(self) -> "Iet":
        return Iet(self.pair.inverse(), self.lengths)

    def orbit(self, x, n: int) -> list:
        out = [x]
        for _ in range(n):
            x = self(x)
            out.append(x)
        return out


def apply(T: Iet, x, direction: str = "forward"):
    """Evaluate ``T`` or its inverse at ``x``."""
    if direction == "forward":
        return T(x)
    if direction == "inverse":
        return T.inverse(x)
    raise ValueError("direction must be 'forward' or 'inverse'")


@dataclass(frozen=True)
class KeaneViolation:
    m: int
    alpha: Hashable
    beta: Hashable

    def __bool__(self):
        return False


@dataclass(frozen=True)
class NoViolationFound:
    depth: int

    def __bool__(self):
        return True


def keane_check(pair: PermutationPair, lengths: Sequence[Scalar], depth: int):
    """Search for ``T^m dI_alpha = dI_beta`` with ``1 <= m <= depth`` and ``pi_0(beta) != 1``.

    Returns the first violation (smallest m, then alphabet order) or a
    clean report for the inspected depth.  Only a semi-decision.
    """
    T = Iet(pair, lengths)
    if depth <= 0:
        return NoViolationFound(0)
    targets = {T.left_endpoint(b): b for b in pair.alphabet if pair.pi0(b) != 1}
    points = {a: T.left_endpoint(a) for a in pair.alphabet}
    for m in range(1, depth + 1):
        for a in pair.alphabet:
            points[a] = T(points[a])
        for a in pair.alphabet:
            b = targets.get(points[a])
            if b is not None:
                return KeaneViolation(m, a, b)
    return NoViolationFound(depth)


def reduce_zero_letters(pair: PermutationPair, lengths: Sequence[Scalar]):
    """Delete zero-length letters, keeping both relative orders.

    Returns ``(reduced_pair, reduced_lengths, letter_map)`` where
    ``letter_map`` sends each surviving letter to itself; dropped letters
    are absent.
    """
    lengths = _check_lengths(pair, lengths, strict=False)
    keep = [x for x, lam in zip(pair.alphabet, lengths) if lam > 0]
    if len(keep) < 2:
        raise ValueError("fewer than 2 letters of positive length")
    sub = pair.restricted(keep)
    sub_lengths = tuple(lengths[pair.index(x)] for x in sub.alphabet)
    return sub, sub_lengths, {x: x for x in keep}


def all_pairs(d: int) -> Iterable[PermutationPair]:
    """Every pair on ``1..d`` with identity top row."""
    alphabet = tuple(range(1, d + 1))
    for perm in itertools.permutations(alphabet):
        yield PermutationPair(alphabet, alphabet, perm)


def first_return(T: Iet, x, bound, limit: int = 100000):
    """First return of ``x`` to ``[0, bound)`` under ``T``: ``(T^r x, r, visited)``.

    ``visited`` lists ``x, Tx, ..., T^{r-1}x``.
    """
    visited = [x]
    y = T(x)
    while not y < bound:
        visited.append(y)
        if len(visited) > limit:
            raise RuntimeError("no return within the iteration limit")
        y = T(y)
    return y, len(visited), visited
