"""Rauzy-Veech induction: one step, the accumulated cocycle and Rauzy classes."""

from mildmix import PermutationPair, cocycle, default_context, induction_step, rauzy_class
from mildmix import _linalg

ctx = default_context()
pair = PermutationPair.from_rows("abcd", "dcba")
# lengths spanning four independent radicals avoid connections
r2, r3, r5 = ctx.sqrt(2) / 7, ctx.sqrt(3) / 7, ctx.sqrt(5) / 7
lengths = (r2, r3, r5, 1 - r2 - r3 - r5)

step = induction_step(pair, lengths)
print("type", step.eps, "->", step.new_pair.top, "/", step.new_pair.bottom)

run = cocycle(pair, lengths, 60)
print("steps:", run.cocycle.steps, "aborted at:", run.aborted_at)
print("positive cocycle:", run.cocycle.positive, "det:", _linalg.det(run.cocycle.matrix))
# the transpose of the cocycle carries the induced lengths back to the input
print("transport exact:", tuple(_linalg.matvec(run.cocycle.star(), run.lengths)) == lengths)

cls = rauzy_class(pair)
print("class size:", len(cls), "standard members:", len(cls.standard))
