import random
from fractions import Fraction

import pytest

from coble.classifier import Verdict, classify, filter_order_independent, solve_shape, verify_L_shape
from coble.intersection import triple
from coble.lattice import anticanonical, canonical, h


def by_sigma(r):
    return {s.sigma: s for s in classify(r)}


@pytest.mark.parametrize("r", range(8, 13))
def test_only_the_identity_survives(r):
    accepted = [s for s in classify(r) if s.verdict == Verdict.ACCEPTED]
    assert len(accepted) == 1
    s = accepted[0]
    assert (s.sigma, s.alpha) == (1, 0) and not any(s.L)


def test_r8():
    s = by_sigma(8)[-1]
    assert s.alpha == 0 and not any(s.L)
    assert s.verdict == Verdict.EFFECTIVE_CONE
    # 1 - sigma = alpha (8 - r) reads 2 = 0 here
    assert not s.anticanonical_consistent


def test_r9():
    s = by_sigma(9)[-1]
    assert s.alpha == -2
    assert list(s.L) == [-2 * c for c in anticanonical(9).coeffs]
    assert s.is_integral
    assert s.verdict == Verdict.MOVABLE_CURVE
    assert triple(canonical(9), h(9, 0), h(9, 0)) == -4
    assert "-4" in s.justification


def test_r10():
    s = by_sigma(10)[-1]
    assert s.alpha == -1 and s.verdict == Verdict.MOVABLE_CURVE


@pytest.mark.parametrize("r,alpha", [(11, Fraction(-2, 3)), (12, Fraction(-1, 2))])
def test_non_integral(r, alpha):
    s = by_sigma(r)[-1]
    assert s.alpha == alpha
    assert s.verdict == Verdict.NON_INTEGRAL
    assert not s.is_integral


@pytest.mark.parametrize("r", range(8, 13))
def test_filter_order(r):
    assert filter_order_independent(r)


def test_q_consistency():
    for r in range(9, 13):
        for s in classify(r):
            assert s.anticanonical_consistent and s.alpha_matches_q


def test_shape_solutions():
    assert solve_shape(8, Fraction(0)) == [0] * 9
    assert solve_shape(9, Fraction(-2)) == [-2 * c for c in anticanonical(9).coeffs]
    rng = random.Random(0)
    for _ in range(20):
        r = rng.randint(8, 12)
        alpha = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        assert verify_L_shape(r, alpha)


def test_small_rank_refused():
    with pytest.raises(ValueError):
        classify(7)


def test_json():
    out = by_sigma(11)[-1].to_json()
    assert out["alpha"] == "-2/3" and out["verdict"] == "RejectedNonIntegral"
