"""Three-interval parameters and a mild mixing certificate for a golden datum."""

from fractions import Fraction as F

from mildmix import PermutationPair, SuspensionDatum, certify_mild, default_context, rho, verify_certificate
from mildmix.specflow import rho_inverse

ctx = default_context()
golden = (ctx.sqrt(5) - 1) / 2

print("rho of (1/4, 1/4, 1/2):", rho(PermutationPair.from_rows("abc", "cba"), (F(1, 4), F(1, 4), F(1, 2))))

# a four-letter datum whose last three intervals form a golden rotation with a half-integer shift
pibar = PermutationPair.standard_from_bottom_values((4, 3, 2, 1))
outer = rho_inverse("0", golden, golden / 2 - F(1, 10))
lengths = (0,) + tuple(x / 2 for x in outer)
tau = (F(1, 2), F(-1, 8) + ctx.sqrt(2) / 100, F(-1, 8) + ctx.sqrt(3) / 100, -3)
cert = certify_mild(SuspensionDatum(pibar, lengths, tau), ctx)
text = cert.dumps()
print(text[:200], "...")
print("re-verified from JSON:", verify_certificate(text))
