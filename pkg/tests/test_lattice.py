import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coble import weyl
from coble.lattice import (
    InfiniteRootSystem,
    Isometry,
    LatticeVector,
    NotARoot,
    RankMismatch,
    anticanonical,
    bilinear,
    canonical,
    enumerate_roots,
    h,
    is_isometry,
    qform,
    reflection,
)


def vectors(r):
    return st.lists(st.integers(-30, 30), min_size=r + 1, max_size=r + 1).map(lambda c: LatticeVector(tuple(c)))


S_ROOT = LatticeVector.of(1, -1, -1, -1, -1, 0, 0, 0)


def test_form_examples():
    assert bilinear(h(8, 0), h(8, 0)) == 2
    assert bilinear(h(8, 1), h(8, 1)) == -1
    assert bilinear(h(8, 0), h(8, 3)) == 0
    k = anticanonical(8)
    assert bilinear(k, k) == 0


def test_qform_examples():
    assert qform(h(7, 0)) == 2
    assert qform(S_ROOT) == -2
    assert qform(LatticeVector.zero(7)) == 0


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        bilinear(h(5, 0), h(6, 0))
    with pytest.raises(RankMismatch):
        h(5, 1) + h(6, 1)


def test_canonical_is_minus_twice_k():
    for r in range(1, 13):
        assert canonical(r) == anticanonical(r) * -2


@pytest.mark.parametrize("r", range(5, 13))
def test_q_of_k(r):
    assert qform(anticanonical(r)) == 8 - r


@settings(max_examples=200)
@given(st.integers(5, 12).flatmap(lambda r: st.tuples(vectors(r), vectors(r), vectors(r))))
def test_bilinear_symmetric_and_linear(uvw):
    u, v, w = uvw
    assert bilinear(u, v) == bilinear(v, u)
    assert bilinear(u + v, w) == bilinear(u, w) + bilinear(v, w)
    assert bilinear(u * 3, w) == 3 * bilinear(u, w)


def test_reflection_example():
    m = reflection(S_ROOT)
    assert m(S_ROOT) == -S_ROOT
    assert m(h(7, 0)) == LatticeVector.of(3, -2, -2, -2, -2, 0, 0, 0)
    assert m(h(7, 1)) == LatticeVector.of(1, 0, -1, -1, -1, 0, 0, 0)
    assert m(h(7, 5)) == h(7, 5)


def test_reflection_rejects_non_root():
    with pytest.raises(NotARoot):
        reflection(h(6, 0))


@pytest.mark.parametrize("r", [5, 6, 7])
def test_reflection_properties_on_roots(r):
    for alpha in list(enumerate_roots(r))[:40]:
        m = reflection(alpha)
        assert is_isometry(m)
        assert (m @ m).is_identity()
        assert m(alpha) == -alpha
        for j in range(r + 1):
            e = h(r, j)
            # the component of e orthogonal to alpha is fixed
            perp = e * 2 + alpha * bilinear(e, alpha)
            assert m(perp) == perp


def test_is_isometry_examples():
    assert is_isometry(Isometry.identity(7))
    assert is_isometry(reflection(S_ROOT))
    diag = [[(2 if i == j == 7 else int(i == j)) for j in range(8)] for i in range(8)]
    assert not is_isometry(diag)


def numpy_roots(r):
    """Brute force over a box that provably contains every root.

    (alpha, k) = 0 gives sum a_i = -4 a_0 and q = -2 gives sum a_i^2 = 2 a_0^2 + 2.
    Cauchy-Schwarz: 16 a_0^2 <= r (2 a_0^2 + 2), so |a_0| <= 2 for r <= 7,
    hence a_i^2 <= 10 and |a_i| <= 3.
    """
    tail = np.array(list(itertools.product(range(-3, 4), repeat=r)), dtype=np.int64)
    found = set()
    for a0 in range(-2, 3):
        mask = (tail.sum(axis=1) == -4 * a0) & ((tail * tail).sum(axis=1) == 2 * a0 * a0 + 2)
        for row in tail[mask]:
            found.add((a0, *map(int, row)))
    return found


@pytest.mark.parametrize("r,count", [(5, 30), (6, 60), (7, 126)])
def test_roots_against_brute_force(r, count):
    roots = enumerate_roots(r)
    assert len(roots) == count
    assert {v.coeffs for v in roots} == numpy_roots(r)


@pytest.mark.parametrize("r", [5, 6, 7])
def test_roots_closed_under_negation_and_generators(r):
    roots = enumerate_roots(r)
    assert {-v for v in roots} == roots
    for g in weyl.generators(r):
        m = weyl.generator_matrix(g, r)
        assert {m(v) for v in roots} == roots


@pytest.mark.parametrize("r", [8, 9, 12])
def test_roots_refuse_infinite(r):
    with pytest.raises(InfiniteRootSystem):
        enumerate_roots(r)


def test_roots_saturation_failure_is_loud():
    with pytest.raises(RuntimeError):
        # bound 1 misses 2h_0 - 2h_1 - h_2 - ... - h_7
        enumerate_roots(7, bound=1)


def test_json_round_trip():
    v = LatticeVector.of(3, -1, 0, 2, 5, -7)
    assert LatticeVector.from_json(v.to_json()) == v
    m = reflection(S_ROOT)
    assert Isometry.from_json(m.to_json()) == m
