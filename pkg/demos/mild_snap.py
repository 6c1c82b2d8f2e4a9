"""Snap a datum on the locus to a certified one within eps, then re-verify."""

from fractions import Fraction as F

from mildmix import PermutationPair, SuspensionDatum, default_context, mild_snap, verify_certificate

pibar = PermutationPair.standard_from_bottom_values((4, 3, 2, 1))
datum = SuspensionDatum(pibar, (0, F(1, 4), F(1, 4), F(1, 2)), (F(1, 2), F(-1, 8), F(-1, 8), -3))

for eps in (F(1, 100), F(1, 1000)):
    res = mild_snap(datum, eps, default_context(), seed=1)
    print(f"eps={eps}: distance {float(res.distance):.2e}, route {res.route}")
    print("  lengths:", res.datum.lengths)
    print("  certificate verifies:", verify_certificate(res.certificate.dumps()))
