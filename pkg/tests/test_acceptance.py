"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line, also collected into the terminal
summary.  Run directly with ``python tests/test_acceptance.py`` for the
lines alone.
"""

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from helpers import (  # noqa: E402
    ACCEPTANCE_LINES,
    exhaustive_dc1,
    random_datum,
    random_lengths,
    random_nondegenerate,
)
from mildmix import _linalg  # noqa: E402
from mildmix.iet import Iet, PermutationPair, all_pairs, classify, first_return  # noqa: E402
from mildmix.numbers import dc1_witness, default_context, independent_over_Q_alpha  # noqa: E402
from mildmix.pipeline import (  # noqa: E402
    NotFound,
    mild_snap,
    random_seed_datum,
    random_Z_datum,
    run_approximation,
    symmetric_pair,
)
from mildmix.rauzy import cocycle, induction_step, inverse_step, rauzy_class  # noqa: E402
from mildmix.specflow import (  # noqa: E402
    SpecialFlowSystem,
    flow_letters_for_trace,
    induced_roof_check,
    polygon_to_flow,
    rho,
    verify_certificate,
    vertical_trace,
)
from mildmix.suspension import SuspensionDatum, extended_induction, in_Z, rotate, teichmuller  # noqa: E402

F = Fraction
PI_S = PermutationPair.from_rows("abc", "cba")


def report(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d} {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _sum(v):
    return sum(v[1:], v[0])


def test_first_return_oracle():
    rng = random.Random(101)
    start = time.perf_counter()
    mismatches = points = 0
    for _ in range(200):
        pair, lam = random_nondegenerate(rng, 2, 5)
        step = induction_step(pair, lam)
        T, induced = Iet(pair, lam), Iet(step.new_pair, step.new_lengths)
        bound = induced.total
        for k in range(1000):
            x = bound * F(k, 1000) + bound * F(rng.randint(0, 999), 10**6)
            points += 1
            mismatches += induced(x) != first_return(T, x, bound)[0]
    elapsed = time.perf_counter() - start
    report(1, "first-return oracle", mismatches == 0 and elapsed < 60,
           f"200 IETs, {points} points, {mismatches} mismatches, {elapsed:.1f}s")


def test_cocycle_identities():
    rng = random.Random(102)
    orbits = failures = 0
    while orbits < 100:
        pair, lam = random_nondegenerate(rng, 2, 5)
        # irrational-looking lengths: large coprime numerators keep depth 30 non-degenerate
        lam = tuple(F(rng.randint(10**8, 10**9), 10**9) for _ in range(pair.d))
        full = cocycle(pair, lam, 30)
        if full.aborted_at is not None:
            continue
        orbits += 1
        m = rng.randint(1, 29)
        first = cocycle(pair, lam, m)
        second = cocycle(first.pair, first.lengths, 30 - m)
        ok = full.cocycle.matrix == _linalg.matmul(second.cocycle.matrix, first.cocycle.matrix)
        ok &= tuple(_linalg.matvec(full.cocycle.star(), full.lengths)) == lam
        ok &= abs(_linalg.det(full.cocycle.matrix)) == 1
        p, v = full.pair, full.lengths
        for eps, prev in zip(reversed(full.cocycle.steps), reversed(full.pairs[:-1])):
            p, v = inverse_step(prev, eps, v)
        ok &= p == pair and v == lam
        failures += not ok
    report(2, "cocycle identities", failures == 0,
           f"{orbits} orbits to depth 30, {failures} failures (factorization, transport, det, replay)")


def _small_rotation(datum):
    # Pythagorean angles shrinking towards 0 stay inside the open cone eventually
    for m in (20, 100, 1000, 10**4, 10**6):
        for sign in (1, -1):
            c, s = F(m * m - 1, m * m + 1), sign * F(2 * m, m * m + 1)
            out = rotate(datum, (c, s))
            if isinstance(out, SuspensionDatum):
                return out
    return None


def test_geometry_conservation():
    rng = random.Random(103)
    failures = rotated = induced = 0
    for _ in range(100):
        datum = random_datum(rng, 2, 6)
        poly = datum.polygon
        ok = poly.closes and poly.shoelace_area() == datum.area == _sum(
            [l * h for l, h in zip(datum.lengths, datum.heights)])
        # rational lengths degenerate eventually; stop one step short of that
        probe = extended_induction(datum, 10)
        steps = 10 if probe.aborted_at is None else probe.aborted_at - 1
        if steps > 0:
            induced += 1
            ok &= extended_induction(datum, steps).datum.area == datum.area
        ok &= teichmuller(datum, F(7, 3)).area == datum.area
        out = _small_rotation(datum)
        if out is not None:
            rotated += 1
            ok &= out.area == datum.area and out.polygon.closes
        failures += not ok
    report(3, "geometry conservation", failures == 0 and rotated == 100,
           f"100 data d<=6, {failures} failures; induction checked on {induced}, exact rotation on {rotated}")


def test_trace_matches_special_flow():
    rng = random.Random(104)
    agree = singular = mismatches = 0
    for _ in range(50):
        datum = random_datum(rng, 2, 5, simple=True)
        poly = datum.polygon
        system = SpecialFlowSystem(datum.iet(), datum.heights)
        for _ in range(20):
            x = datum.total_length * F(rng.randint(1, 997), 998)
            lo, hi = poly.bottom_at(x), poly.top_at(x)
            start = (x, lo + (hi - lo) * F(rng.randint(1, 96), 97))
            t = F(rng.randint(1, 200), 13)
            tr = vertical_trace(datum, start, t)
            if tr.singular is not None:
                singular += 1
                continue
            path = system.evolve_path(polygon_to_flow(datum, start), t)
            same = path.letters == flow_letters_for_trace(datum, tr)
            same &= path.endpoint == polygon_to_flow(datum, tr.endpoint)
            agree += same
            mismatches += not same
    report(4, "trace vs special flow", mismatches == 0 and agree > 0,
           f"50 data x 20 starts: {agree} agree, {mismatches} mismatch, {singular} singular (reported, skipped)")


def test_induced_roof_identity():
    rng = random.Random(105)
    failures = 0
    for _ in range(100):
        pair, lam = random_nondegenerate(rng, 2, 6)
        failures += not induced_roof_check(pair, lam, random_lengths(rng, pair.d, 50)).ok
    report(5, "induced-roof identity", failures == 0, f"100 cases, {failures} failures")


def test_three_interval_conjugation():
    rng = random.Random(106)
    failures = cases = 0
    while cases < 1000:
        lam = random_lengths(rng, 3, 10**6)
        if not lam[0] < lam[2]:
            continue
        cases += 1
        total = _sum(lam)
        lam = tuple(x / total for x in lam)
        before = rho(PI_S, lam)
        step = induction_step(PI_S, lam)
        after = rho(step.new_pair, step.new_lengths)
        failures += not (before.gamma == "0" and after.gamma == "r"
                         and (after.alpha, after.xi) == (before.alpha, before.xi))
    worked = rho(PI_S, (F(1, 4), F(1, 4), F(1, 2)))
    worked_ok = (worked.alpha, worked.xi) == (F(1, 3), F(1, 3))
    report(6, "three-interval conjugation", failures == 0 and worked_ok,
           f"1000 type-0 cases, {failures} failures; (1/4,1/4,1/2) -> ({worked.alpha},{worked.xi})")


def test_approximation_pipeline():
    rng = random.Random(107)
    runs = timeouts = failures = 0
    for d in (4, 5):
        pibar = symmetric_pair(d)
        for n in (10, 50, 100):
            for _ in range(4):
                seed, _ = random_seed_datum(pibar, n, rng)
                try:
                    run = run_approximation(seed, n, 10_000)
                except NotFound:
                    timeouts += 1
                    continue
                runs += 1
                ok = all(run.rotated.lengths[j] == 0 for j in range(d - 3))
                ok &= in_Z(run.rotated, pibar) and run.step4.replay_ok
                ok &= run.step4.distance <= run.step4.lipschitz_bound <= 2 * run.gamma ** 2 / n
                failures += not ok
    witness = SuspensionDatum(symmetric_pair(4), (F(1, 4),) * 4, (F(1, 2), F(-1, 8), F(-1, 8), -3))
    wrun = run_approximation(witness, 10, 10_000)
    witness_ok = wrun.k == 0 and in_Z(wrun.rotated, symmetric_pair(4)) and wrun.step4.ok
    report(7, "approximation pipeline", failures == 0 and runs > 0 and witness_ok,
           f"d in {{4,5}}, n in {{10,50,100}}: {runs} runs, {failures} failures, {timeouts} timeouts; "
           f"witness k={wrun.k}")


def test_certified_snap():
    ctx = default_context()
    rng = random.Random(108)
    inputs = [random_Z_datum(symmetric_pair(4 + i % 2), rng) for i in range(20)]
    done = failures = 0
    for eps in (F(1, 100), F(1, 1000)):
        for i, datum in enumerate(inputs):
            res = mild_snap(datum, eps, ctx, seed=i)
            text = res.certificate.dumps()
            ok = res.distance < eps and in_Z(res.datum, datum.pair.normalized())
            ok &= verify_certificate(text)
            ok &= mild_snap(datum, eps, ctx, seed=i).certificate.dumps() == text
            done += 1
            failures += not ok
    report(8, "certified snap", failures == 0,
           f"{done} snaps (20 inputs x 2 eps), {failures} failures; certify round-trip and re-run bytes checked")


def test_number_certificates():
    ctx = default_context()
    golden = (ctx.sqrt(5) - 1) / 2
    results = []
    for alpha in (golden, ctx.sqrt(2) - 1):
        w = dc1_witness(alpha)
        results.append(w.certified and exhaustive_dc1(alpha, w.constant, 10_000))
    accept = bool(independent_over_Q_alpha([1, ctx.sqrt(2), ctx.sqrt(3)], golden))
    reject = not independent_over_Q_alpha([1, golden, ctx.sqrt(2)], golden)
    report(9, "number certificates", all(results) and accept and reject,
           f"DC1 golden {results[0]}, silver {results[1]} (q<=10^4); "
           f"(1,sqrt2,sqrt3) accepted {accept}, (1,alpha,sqrt2) rejected {reject}")


def test_rauzy_classes():
    d3 = len(rauzy_class(PI_S))
    d4 = len(rauzy_class(symmetric_pair(4)))
    classes = 0
    missing = []
    for d in range(2, 6):
        seen = set()
        for pair in all_pairs(d):
            if not classify(pair).irreducible or pair in seen:
                continue
            cls = rauzy_class(pair)
            seen |= cls.members
            classes += 1
            if not cls.standard:
                missing.append(pair)
    report(10, "Rauzy classes", d3 == 3 and d4 == 7 and not missing,
           f"d=3 size {d3}, d=4 symmetric size {d4}, {classes} classes d<=5, {len(missing)} without a standard pair")


if __name__ == "__main__":
    checks = [v for k, v in list(globals().items()) if k.startswith("test_")]
    failed = 0
    for check in checks:
        try:
            check()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
