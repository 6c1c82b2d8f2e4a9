"""Interval exchanges with exact lengths: evaluation, inverse and connections."""

from fractions import Fraction as F

from mildmix import Iet, PermutationPair, classify, default_context, keane_check

ctx = default_context()
golden = (ctx.sqrt(5) - 1) / 2

# three intervals a, b, c swapped into the order c, b, a
pair = PermutationPair.from_rows("abc", "cba")
T = Iet(pair, (F(1, 4), F(1, 4), F(1, 2)))
print("translations:", T.translations)
print("orbit of 1/8:", T.orbit(F(1, 8), 4))
print("inverse undoes T:", T.inverse(T(F(3, 5))) == F(3, 5))
print("classification:", classify(pair))

# rational lengths have a connection, golden ones do not (up to the depth inspected)
print("rational:", keane_check(pair, T.lengths, 50))
print("golden:", keane_check(pair, (golden / 2, golden / 2, 1 - golden), 200))
