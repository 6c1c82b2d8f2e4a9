"""Vertical flow on the polygon and the matching special flow under the height roof."""

from fractions import Fraction as F

from mildmix import PermutationPair, SpecialFlowSystem, SuspensionDatum, induced_roof_check, vertical_trace
from mildmix.specflow import flow_letters_for_trace, polygon_to_flow

pair = PermutationPair.from_rows("abc", "cba")
datum = SuspensionDatum(pair, (F(1, 4), F(1, 4), F(1, 2)), (1, F(-1, 4), F(-1, 2)))
start, t = (F(1, 8), F(1, 3)), F(5)

trace = vertical_trace(datum, start, t)
print("itinerary:", trace.itinerary, "crossings:", trace.crossing_times)

system = SpecialFlowSystem(datum.iet(), datum.heights)
path = system.evolve_path(polygon_to_flow(datum, start), t)
print("roof jumps:", path.letters, "at", path.jump_times)
print("same letters:", path.letters == flow_letters_for_trace(datum, trace))
print("same endpoint:", path.endpoint == polygon_to_flow(datum, trace.endpoint))

# the induced roof after one step is the Birkhoff sum of the old roof
report = induced_roof_check(pair, datum.lengths, datum.heights)
print("induced roof:", report.induced_heights, "identity holds:", report.ok)
