"""JSON encodings for exact scalars, permutation pairs and suspension data.

Scalars are ``{"rat": [num, den]}`` or
``{"alg": {"ctx": "<context id>", "coeffs": [[num, den], ...]}}``.
Decoding an algebraic scalar needs the context it names, supplied via a
``contexts`` mapping from id to :class:`NumberContext`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping

from .iet import PermutationPair
from .numbers import AlgebraicNumber, ContextIncomplete, NumberContext, default_context

__all__ = [
    "canonical_dumps",
    "context_registry",
    "decode_datum",
    "decode_iet",
    "decode_pair",
    "decode_scalar",
    "decode_vector",
    "encode_datum",
    "encode_iet",
    "encode_pair",
    "encode_scalar",
    "encode_vector",
]


def canonical_dumps(obj) -> str:
    """Deterministic JSON text: sorted keys, no whitespace, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def context_registry(*contexts: NumberContext) -> dict:
    reg = {default_context().id: default_context()}
    for c in contexts:
        if c is not None:
            reg[c.id] = c
    return reg


def encode_scalar(x) -> dict:
    if isinstance(x, AlgebraicNumber):
        return {"alg": {"ctx": x.ctx.id, "coeffs": [[c.numerator, c.denominator] for c in x.coords]}}
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"{x!r} is not an exact scalar")
    q = Fraction(x)
    return {"rat": [q.numerator, q.denominator]}


def decode_scalar(obj, contexts: Mapping[str, NumberContext] | None = None):
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Fraction(obj)
    if isinstance(obj, str):
        return Fraction(obj)
    if "rat" in obj:
        n, d = obj["rat"]
        return Fraction(int(n), int(d))
    if "alg" in obj:
        enc = obj["alg"]
        reg = contexts if contexts is not None else context_registry()
        ctx = reg.get(enc["ctx"])
        if ctx is None:
            raise ContextIncomplete(f"unknown number context {enc['ctx']}")
        return ctx.element(enc["coeffs"])
    raise ValueError(f"not a scalar encoding: {obj!r}")


def encode_vector(v) -> list:
    return [encode_scalar(x) for x in v]


def decode_vector(v, contexts=None) -> tuple:
    return tuple(decode_scalar(x, contexts) for x in v)


def encode_pair(pair: PermutationPair) -> dict:
    return {
        "alphabet": list(pair.alphabet),
        "pi0": [pair.pi0(x) for x in pair.alphabet],
        "pi1": [pair.pi1(x) for x in pair.alphabet],
    }


def decode_pair(obj) -> PermutationPair:
    alphabet = obj["alphabet"]
    if "pi0" in obj:
        return PermutationPair.from_positions(alphabet, obj["pi0"], obj["pi1"])
    return PermutationPair.from_rows(obj["top"], obj["bottom"], alphabet)


def encode_iet(pair: PermutationPair, lengths) -> dict:
    out = encode_pair(pair)
    out["lambda"] = encode_vector(lengths)
    return out


def decode_iet(obj, contexts=None):
    return decode_pair(obj), decode_vector(obj["lambda"], contexts)


def encode_datum(datum) -> dict:
    out = encode_iet(datum.pair, datum.lengths)
    out["tau"] = encode_vector(datum.tau)
    return out


def decode_datum(obj, contexts=None):
    from .suspension import SuspensionDatum

    pair, lengths = decode_iet(obj, contexts)
    return SuspensionDatum(pair, lengths, decode_vector(obj["tau"], contexts))
