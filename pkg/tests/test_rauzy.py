import random
from fractions import Fraction

import pytest

from helpers import random_irreducible, random_lengths, random_nondegenerate
from mildmix import _linalg
from mildmix.iet import Iet, PermutationPair, all_pairs, classify, first_return
from mildmix.rauzy import (
    Degenerate,
    cocycle,
    induction_step,
    inverse_step,
    iet_type,
    matrix_ratio,
    rauzy_class,
    rauzy_move,
    renormalize,
    theta,
)

F = Fraction
PI_S = PermutationPair.from_rows("abc", "cba")
PI_R = PermutationPair.from_rows("abc", "cab")
PI_L = PermutationPair.from_rows("abc", "bca")


def test_type_examples():
    assert iet_type(PI_S, (F(1, 4), F(1, 4), F(1, 2))) == 0
    assert iet_type(PI_S, (F(1, 2), F(1, 4), F(1, 4))) == 1
    assert iet_type(PI_S, (F(1, 3), F(1, 3), F(1, 3))) is None
    with pytest.raises(Degenerate):
        induction_step(PI_S, (1, 1, 1))


def test_moves():
    assert rauzy_move(PI_S, 0) == PI_R
    ab = PermutationPair.from_rows("ab", "ba")
    assert rauzy_move(ab, 0) == ab and rauzy_move(ab, 1) == ab
    cls = rauzy_class(PI_S)
    back = [a for a, e, b in cls.edges if e == 0 and b == PI_R.normalized()]
    assert PI_S.normalized() in back


def test_theta_examples():
    t = theta(PI_S, 0)
    assert t[0][2] == 1 and sum(map(sum, t)) == 4
    assert _linalg.det(t) == 1
    t = theta(PI_R, 1)
    # type 1: the last bottom letter b wins, the last top letter c loses
    assert t[2][1] == 1 and sum(map(sum, t)) == 4


def test_induction_step_example():
    step = induction_step(PI_S, (F(1, 4), F(1, 4), F(1, 2)))
    assert step.new_pair == PI_R
    assert step.new_lengths == (F(1, 4), F(1, 4), F(1, 4))
    assert step.ratio == F(3, 4)
    star = _linalg.transpose(step.theta)
    assert _linalg.matvec(star, step.new_lengths) == step.lengths
    # under pi_r the critical letters are c (top) and b (bottom), both 1/4 here
    with pytest.raises(Degenerate):
        induction_step(PI_R, step.new_lengths)
    assert induction_step(PI_R, (F(1, 4), F(1, 5), F(1, 4))).eps == 0


def test_inverse_step_example():
    prev, lam = inverse_step(PI_S, 0, (F(1, 3), F(1, 3), F(1, 3)))
    assert lam == (F(1, 3), F(1, 3), F(2, 3))
    step = induction_step(prev, lam)
    assert step.new_pair == PI_R and step.new_lengths == (F(1, 3), F(1, 3), F(1, 3))


def test_cocycle_trivial_and_single():
    run = cocycle(PI_S, (F(1, 4), F(1, 4), F(1, 2)), 0)
    assert run.cocycle.matrix == _linalg.identity(3)
    run = cocycle(PI_S, (F(1, 4), F(1, 4), F(1, 2)), 1)
    assert run.cocycle.matrix == theta(PI_S, 0)


def test_cocycle_golden_fibonacci(golden):
    lam = ((1 - golden) / 2, (1 - golden) / 3, golden + (1 - golden) / 6)
    run = cocycle(PI_S, lam, 30)
    assert run.aborted_at is None
    assert _linalg.det(run.cocycle.matrix) == 1
    star = run.cocycle.star()
    assert _linalg.matvec(star, run.lengths) == lam


def test_cocycle_aborts_on_rational_degeneracy():
    run = cocycle(PI_S, (F(1, 4), F(1, 4), F(1, 2)), 50)
    assert run.aborted_at is not None and run.aborted_at <= 50


def test_first_return_oracle_small():
    rng = random.Random(3)
    for _ in range(20):
        pair, lam = random_nondegenerate(rng)
        step = induction_step(pair, lam)
        T, Tn = Iet(pair, lam), Iet(step.new_pair, step.new_lengths)
        bound = Tn.total
        for k in range(50):
            x = bound * F(k, 50)
            assert Tn(x) == first_return(T, x, bound)[0]


def test_cocycle_factorization_and_replay():
    rng = random.Random(11)
    for _ in range(20):
        pair, lam = random_nondegenerate(rng, 3, 5)
        m, n = 7, 9
        full = cocycle(pair, lam, m + n)
        if full.aborted_at is not None:
            continue
        first = cocycle(pair, lam, m)
        second = cocycle(first.pair, first.lengths, n)
        assert full.cocycle.matrix == _linalg.matmul(second.cocycle.matrix, first.cocycle.matrix)
        assert abs(_linalg.det(full.cocycle.matrix)) == 1
        # replay backwards along the recorded log
        p, v = full.pair, full.lengths
        for eps, prev in zip(reversed(full.cocycle.steps), reversed(full.pairs[:-1])):
            p, v = inverse_step(prev, eps, v)
        assert p == pair and v == lam


@pytest.mark.parametrize("pair,size", [(PI_S, 3), (PermutationPair.standard_from_bottom_values((4, 3, 2, 1)), 7),
                                       (PermutationPair.from_rows("ab", "ba"), 1)])
def test_class_sizes(pair, size):
    cls = rauzy_class(pair)
    assert len(cls) == size


def test_class_d3_members():
    cls = rauzy_class(PI_S)
    assert cls.members == {PI_S.normalized(), PI_R.normalized(), PI_L.normalized()}
    assert PI_S.normalized() in cls.standard


def test_every_class_has_standard_pair():
    for d in range(2, 6):
        seen = set()
        for pair in all_pairs(d):
            if not classify(pair).irreducible or pair in seen:
                continue
            cls = rauzy_class(pair)
            seen |= cls.members
            assert cls.standard


def test_class_json_is_edge_list():
    js = rauzy_class(PI_S).to_json()
    assert js["size"] == 3 and len(js["edges"]) == 6


def test_reducible_rejected():
    with pytest.raises(ValueError):
        rauzy_class(PermutationPair.from_rows("abc", "acb"))


def test_renormalize_example():
    pair, lam, tau, ratio = renormalize(PI_S, (F(1, 4), F(1, 4), F(1, 2)), (1, F(-1, 4), F(-1, 2)))
    assert pair == PI_R
    assert lam == (F(1, 3), F(1, 3), F(1, 3))
    assert tau == (F(3, 4), F(-3, 16), F(-9, 8))
    assert ratio == F(3, 4)


def test_renormalize_normalizes():
    rng = random.Random(5)
    for _ in range(50):
        pair, lam = random_nondegenerate(rng, 2, 6)
        total = sum(lam)
        lam = tuple(x / total for x in lam)
        _, new, _, _ = renormalize(pair, lam, (0,) * pair.d)
        assert sum(new) == 1


def test_matrix_ratio():
    assert matrix_ratio([[1, 2], [3, 4]]) == 2
    assert matrix_ratio([[5, 5], [5, 5]]) == 1
    with pytest.raises(ValueError):
        matrix_ratio([[0, 1], [1, 1]])
