import random
from fractions import Fraction

import pytest

from mildmix import _linalg
from mildmix.iet import PermutationPair
from mildmix.numbers import radical_context
from mildmix.pipeline import (
    NotFound,
    SnapFailed,
    an_check,
    lemma_independence_check,
    matrix_ratio,
    mild_snap,
    noble_approximation,
    norm_l1,
    random_An_point,
    random_seed_datum,
    random_Z_datum,
    run_approximation,
    step1_search,
    step2_perturb,
    step3_rotate,
    symmetric_pair,
)
from mildmix.numbers import dc1_witness
from mildmix.specflow import verify_certificate
from mildmix.suspension import SuspensionDatum, in_Z

F = Fraction
PIBAR4 = symmetric_pair(4)
WITNESS_LAMBDA = (F(1, 4),) * 4
WITNESS_TAU = (F(1, 2), F(-1, 8), F(-1, 8), F(-3))


def test_norm_and_ratio():
    assert norm_l1((F(1, 2), F(-1, 3), 0)) == F(5, 6)
    assert matrix_ratio([[1, 2], [3, 4]]) == 2


def test_normalized_transport_lipschitz():
    rng = random.Random(41)
    for _ in range(1000):
        B = [[rng.randint(1, 9) for _ in range(4)] for _ in range(4)]
        lam = [F(rng.randint(1, 50)) for _ in range(4)]
        lam = [x / sum(lam) for x in lam]
        lam2 = [F(rng.randint(1, 50)) for _ in range(4)]
        lam2 = [x / sum(lam2) for x in lam2]
        base = sum(_linalg.matvec(B, lam))
        a = [x / base for x in _linalg.matvec(B, lam2)]
        b = [x / base for x in _linalg.matvec(B, lam)]
        nu = matrix_ratio(B)
        assert norm_l1([p - q for p, q in zip(a, b)]) <= nu * nu * norm_l1([p - q for p, q in zip(lam, lam2)])


def test_an_witness():
    for n in (1, 10, 100, 10**6):
        assert an_check(PIBAR4, WITNESS_LAMBDA, WITNESS_TAU, n)


def test_an_failures():
    res = an_check(PIBAR4, WITNESS_LAMBDA, (F(1, 8),) + WITNESS_TAU[1:], 10)
    assert not res.steep_start
    res = an_check(PIBAR4, WITNESS_LAMBDA, WITNESS_TAU[:3] + (F(1),), 10)
    assert not res
    with pytest.raises(ValueError):
        an_check(PIBAR4, (F(1, 2),) * 4, WITNESS_TAU, 10)
    with pytest.raises(ValueError):
        an_check(PermutationPair.standard_from_bottom_values((2, 4, 3, 1)), WITNESS_LAMBDA, WITNESS_TAU, 10)


def test_step1_k_zero_relaxation():
    datum = SuspensionDatum(PIBAR4, WITNESS_LAMBDA, WITNESS_TAU)
    s1 = step1_search(datum, PIBAR4, 10, 100)
    assert s1.k == 0 and not s1.positive and s1.gamma == 1


def test_witness_end_to_end():
    run = run_approximation(SuspensionDatum(PIBAR4, WITNESS_LAMBDA, WITNESS_TAU), 10)
    assert run.k == 0
    assert run.rotated.lengths[0] == 0 and in_Z(run.rotated, PIBAR4)
    assert run.step4.lengths == WITNESS_LAMBDA


def test_step1_rational_degenerates():
    # not in A_n (tau_2 > 0), and the equal lengths make the first step degenerate
    datum = SuspensionDatum(PIBAR4, WITNESS_LAMBDA, (F(1, 5), F(1, 10), F(-1, 8), -3))
    with pytest.raises(NotFound) as e:
        step1_search(datum, PIBAR4, 10, 100)
    assert e.value.degenerate_at is not None


def test_step1_requires_normalized_lengths():
    datum = SuspensionDatum(PIBAR4, (F(1, 2),) * 4, WITNESS_TAU)
    with pytest.raises(ValueError):
        step1_search(datum, PIBAR4, 10, 10)


def test_step1_golden_datum(ctx, golden):
    # an A_10 point with irrational lengths, pushed back along a fixed inverse path
    lam = (golden / 4, (1 - golden) / 3, golden / 4, 1 - golden / 2 - (1 - golden) / 3)
    slope = F(5, 2)
    tau = (slope * lam[0], -lam[1] / 10, -lam[2] / 10)
    tau = tau + (-(tau[0] + tau[1] + tau[2]) - 1,)
    assert an_check(PIBAR4, lam, tau, 10)
    from mildmix.pipeline import backward_seed

    seed, steps = backward_seed(PIBAR4, lam, tau, 8, random.Random(2))
    run = run_approximation(seed, 10, 10_000)
    assert run.step1.positive and run.gamma >= 1
    assert run.step4.distance <= 2 * run.gamma ** 2 / 10


def test_step2_examples():
    pibar5 = symmetric_pair(5)
    lam = (F(1, 10), F(2, 10), F(2, 10), F(2, 10), F(3, 10))
    tau = (F(2, 10), F(41, 100), F(-1, 100), F(-1, 100), F(-2))
    s2 = step2_perturb(pibar5, lam, tau, 1, 10)
    assert s2.perturbed_tilde == (F(1, 10), F(41, 200), F(2, 10), F(2, 10), F(59, 200))
    assert s2.distance < F(2, 10)
    s4 = step2_perturb(PIBAR4, WITNESS_LAMBDA, WITNESS_TAU, 3, 10)
    assert s4.perturbed_tilde == WITNESS_LAMBDA and s4.perturbed == (F(3, 4),) * 4


def test_step2_norm_bound_random():
    rng = random.Random(43)
    for _ in range(100):
        d, n = rng.choice((4, 5, 6)), rng.choice((10, 50, 100))
        lam, tau = random_An_point(symmetric_pair(d), n, rng)
        assert step2_perturb(symmetric_pair(d), lam, tau, 1, n).distance < F(2, n)


def test_step3_scaling_and_exact_zero():
    res = step3_rotate(PIBAR4, WITNESS_LAMBDA, WITNESS_TAU)
    assert res.datum.lengths[0] == 0
    assert res.datum.tau[0] == WITNESS_TAU[0] ** 2 + WITNESS_LAMBDA[0] ** 2
    scaled = step3_rotate(PIBAR4, [3 * x for x in WITNESS_LAMBDA], [3 * x for x in WITNESS_TAU])
    # numerators are quadratic in the input, the true rotation is linear
    assert scaled.datum.lengths == tuple(9 * x for x in res.datum.lengths)
    with pytest.raises(ValueError):
        step3_rotate(symmetric_pair(5), (F(1, 5),) * 5, (F(2, 5), F(3, 10), F(-1, 20), F(-1, 20), -3))


@pytest.mark.parametrize("d", [4, 5, 6])
@pytest.mark.parametrize("n", [10, 50, 100])
def test_pipeline_on_seeds(d, n):
    rng = random.Random(1000 * d + n)
    pibar = symmetric_pair(d)
    for _ in range(3):
        seed, _ = random_seed_datum(pibar, n, rng)
        run = run_approximation(seed, n, 10_000)
        assert all(run.rotated.lengths[j] == 0 for j in range(d - 3))
        assert in_Z(run.rotated, pibar)
        assert run.step4.replay_ok
        assert run.step4.distance <= run.step4.lipschitz_bound <= 2 * run.gamma ** 2 / n


def test_zero_perturbation_gives_back_lambda():
    # d = 4 never perturbs, so the pulled back lengths are the input
    rng = random.Random(47)
    seed, _ = random_seed_datum(PIBAR4, 10, rng)
    run = run_approximation(seed, 10, 10_000)
    assert run.step4.lengths == seed.lengths


def test_pipeline_timeout():
    rng = random.Random(53)
    seed, steps = random_seed_datum(PIBAR4, 10, rng, depth=30)
    with pytest.raises(NotFound):
        run_approximation(seed, 10, max_steps=5)


def test_height_independence_check():
    res = lemma_independence_check(PIBAR4)
    assert res.holds and res.witness == 2
    assert lemma_independence_check(symmetric_pair(5)).holds
    with pytest.raises(ValueError):
        lemma_independence_check(PermutationPair.standard_from_bottom_values((4, 2, 3, 1)))


def test_noble_approximation(ctx, golden):
    for target in (F(17, 19), F(1, 3), golden / 3):
        a = noble_approximation(target, F(1, 1000), ctx)
        assert abs(a - target) < F(1, 1000)
        assert dc1_witness(a).certified


def test_snap_spec_example(ctx):
    datum = SuspensionDatum(PIBAR4, (0, F(1, 4), F(1, 4), F(1, 2)), WITNESS_TAU)
    res = mild_snap(datum, F(1, 100), ctx, seed=1)
    assert res.distance < F(1, 50)
    assert in_Z(res.datum, PIBAR4)
    assert verify_certificate(res.certificate.dumps())
    assert res.route == "direct"


def test_snap_deterministic(ctx):
    datum = random_Z_datum(symmetric_pair(5), random.Random(3))
    a = mild_snap(datum, F(1, 1000), ctx, seed=9).certificate.dumps()
    b = mild_snap(datum, F(1, 1000), ctx, seed=9).certificate.dumps()
    assert a == b


def test_snap_preconditions(ctx):
    equal_outer = SuspensionDatum(PIBAR4, (0, F(1, 3), F(1, 3), F(1, 3)), WITNESS_TAU)
    with pytest.raises(SnapFailed):
        mild_snap(equal_outer, F(1, 100), ctx)
    datum = SuspensionDatum(PIBAR4, (0, F(1, 4), F(1, 4), F(1, 2)), WITNESS_TAU)
    with pytest.raises(SnapFailed):
        mild_snap(datum, 0, ctx)
    with pytest.raises(SnapFailed) as e:
        mild_snap(datum, F(1, 100), radical_context([1, 2, 3]))
    assert e.value.kind == "context"
    with pytest.raises(SnapFailed) as e:
        mild_snap(datum, F(1, 100), radical_context([1, 5]))
    assert e.value.kind == "context"
