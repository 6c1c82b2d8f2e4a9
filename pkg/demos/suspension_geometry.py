"""Suspension data: the polygon, its area, deformations and an SVG drawing."""

from fractions import Fraction as F
from pathlib import Path

from mildmix import PermutationPair, SuspensionDatum, extended_induction, polygon_svg, rotate, teichmuller

pair = PermutationPair.from_rows("abc", "cba")
datum = SuspensionDatum(pair, (F(1, 4), F(1, 4), F(1, 2)), (1, F(-1, 4), F(-1, 2)))
print("heights:", datum.heights)
print("area:", datum.area, "shoelace:", datum.polygon.shoelace_area())

# area is unchanged by the Teichmuller scaling, extended induction and rotations that stay valid
print("teichmuller x3:", teichmuller(datum, 3).area)
print("after 1 induction step:", extended_induction(datum, 1).datum.area)
print("pythagorean rotation:", rotate(datum, (F(399, 401), F(40, 401))).area)

out = Path("suspension.svg")
out.write_text(polygon_svg(datum))
print("wrote", out)
