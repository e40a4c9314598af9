import copy
import itertools
import random

import pytest

from coble.curve import eighth_base_point, sample_vr_config
from coble.fields import PrimeField
from coble.lattice import LatticeVector
from coble.restriction import (
    PicClass,
    Restriction,
    build_restriction,
    divisor_class,
    hyperplane_point,
    pic_add,
    plant_collision,
    scan_box,
)


def vec(*coeffs):
    return LatticeVector(tuple(coeffs))


def test_zero_and_simple_classes(restriction8):
    res = restriction8
    z = res.tr_class(LatticeVector.zero(8))
    assert z == PicClass(0, res.origin)
    assert z.is_zero(res.model)
    d = res.tr_class(vec(0, 1, -1, 0, 0, 0, 0, 0, 0))
    assert d.degree == 0 and not d.is_zero(res.model)
    assert res.tr_class(vec(1, 0, 0, 0, 0, 0, 0, 0, 0)).degree == 4


def test_additivity(restriction8):
    res, rng = restriction8, random.Random(20)
    for _ in range(20):
        a = vec(*(rng.randint(-3, 3) for _ in range(9)))
        b = vec(*(rng.randint(-3, 3) for _ in range(9)))
        assert res.tr_class(a + b) == pic_add(res.model, res.tr_class(a), res.tr_class(b))


def test_divisor_class_matches_generators(restriction8):
    res = restriction8
    pts = res.config.points
    cls = divisor_class(res.model, [(2, pts[0]), (-1, pts[3])])
    assert cls == res.tr_class(vec(0, 2, 0, 0, -1, 0, 0, 0, 0))


def test_second_plane_section_agrees(restriction8):
    assert hyperplane_point(restriction8.model, random.Random(21)) == restriction8.hyperplane


def test_eighth_base_point_relation(restriction8, fp):
    res = restriction8
    q8 = eighth_base_point(res.config.points[:7], fp, res.model.pencil)
    cls = res.tr_class(vec(2, -1, -1, -1, -1, -1, -1, -1, 0))
    m = res.model
    assert cls.degree == 1
    assert m.add(cls.point, m.neg(m.forward(q8))) == m.origin


def test_principality_does_not_depend_on_the_origin(restriction8):
    res = restriction8
    rng = random.Random(22)
    moved = copy.copy(res.model)
    moved.origin = res.images[5]
    other = Restriction(res.config, moved, hyperplane_point(moved, rng), res.images)
    for d in [vec(0, 1, -1, 0, 0, 0, 0, 0, 0), vec(1, -1, -1, -1, -1, 0, 0, 0, 0), vec(0, 1, 1, -1, -1, 0, 0, 0, 0)]:
        assert not res.is_principal(d)
        assert not other.is_principal(d)
    d = vec(2, -1, -1, -1, -1, -1, -1, -1, -1)
    assert res.is_principal(d) == other.is_principal(d)


def test_rank_mismatch(restriction8):
    with pytest.raises(ValueError):
        restriction8.tr_class(LatticeVector.zero(9))


def test_box_scan_counts(restriction8):
    scan = scan_box(restriction8, 1)
    # degree-zero vectors in {-1,0,1}^9 with weights (4,1,...,1), minus zero
    brute = 0
    for c in itertools.product((-1, 0, 1), repeat=9):
        if any(c) and 4 * c[0] + sum(c[1:]) == 0:
            brute += 1
    assert scan.checked == brute
    assert scan.checked_even + scan.checked_odd == brute


def test_planted_collision_is_detected():
    f = PrimeField(1_000_000_007)
    rng = random.Random(23)
    res = build_restriction(sample_vr_config(8, f, rng), rng)
    assert scan_box(res, 1).violations == []
    planted, d = plant_collision(res)
    scan = scan_box(build_restriction(planted, rng), 1)
    assert set(scan.violations) == {d, -d}
