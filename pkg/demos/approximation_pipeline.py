"""Approximate a generic datum by one on the three-interval locus."""

import random

from mildmix import run_approximation, symmetric_pair
from mildmix.pipeline import random_seed_datum
from mildmix.suspension import in_Z

pibar = symmetric_pair(5)
for n in (10, 50, 100):
    seed, _ = random_seed_datum(pibar, n, random.Random(n))
    run = run_approximation(seed, n)
    print(f"n={n}: k={run.k} gamma={run.gamma}")
    print("  zeros:", run.rotated.lengths[:2], "on locus:", in_Z(run.rotated, pibar))
    print("  distance", float(run.step4.distance), "<= bound", float(run.step4.lipschitz_bound),
          "<= 2 gamma^2/n", float(run.step4.rate_bound))
