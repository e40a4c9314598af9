import random

import numpy as np
import pytest

from coble.config import Config, general_position, random_config
from coble.curve import (
    QUAD_MONOMIALS,
    NonGeneric,
    QuadricForm,
    QuadricPencil,
    base_curve_is_smooth,
    eighth_base_point,
    pencil_through,
    plane_section,
    quadrics_through,
    sample_curve_point,
    sample_vr_config,
)
from coble.fields import QQ, PrimeField


def test_quadric_dimensions(fp):
    rng = random.Random(0)
    assert len(quadrics_through(random_config(8, fp, rng).points, fp)) == 2
    assert len(quadrics_through(random_config(7, fp, rng).points, fp)) == 3
    assert len(quadrics_through(random_config(10, fp, rng).points, fp)) == 0
    assert len(quadrics_through(random_config(8, QQ, rng).points, QQ)) == 2


def test_points_on_the_curve_impose_dependent_conditions(fp):
    rng = random.Random(1)
    c = sample_vr_config(9, fp, rng)
    basis = quadrics_through(c.points, fp)
    assert len(basis) == 2
    for q in basis:
        assert all(q(p.coords) == 0 for p in c.points)


def test_quadric_form_helpers(fp):
    rng = random.Random(2)
    q = QuadricForm(fp, tuple(fp.random(rng) for _ in QUAD_MONOMIALS))
    x = [fp.random(rng) for _ in range(4)]
    y = [fp.random(rng) for _ in range(4)]
    xy = [a + b for a, b in zip(x, y)]
    assert q.polar(x, y) == q(xy) - q(x) - q(y)
    m = q.matrix()
    assert sum((x[i] * m[i][j] * x[j] for i in range(4) for j in range(4)), start=fp.zero) == q(x)


def test_pencil_rejects_dependent_generators(fp):
    q = QuadricForm(fp, tuple(fp(i + 1) for i in range(10)))
    with pytest.raises(ValueError):
        QuadricPencil(q, QuadricForm(fp, tuple(c * 3 for c in q.coeffs)))


def test_sample_curve_point(fp):
    rng = random.Random(3)
    pencil = pencil_through(random_config(8, fp, rng))
    pts = {sample_curve_point(pencil, rng) for _ in range(10)}
    assert len(pts) >= 2
    assert all(pencil.contains(p.coords) for p in pts)
    section = plane_section(pencil, rng)
    assert len(set(section)) == 4
    assert all(pencil.contains(p.coords) for p in section)


def test_sampling_needs_prime_field():
    pencil = pencil_through(random_config(8, QQ, random.Random(4)))
    with pytest.raises(TypeError):
        sample_curve_point(pencil, random.Random(4))


def test_vr_config(fp):
    rng = random.Random(5)
    c = sample_vr_config(10, fp, rng)
    assert c.r == 10 and general_position(c)
    pencil = pencil_through(Config(fp, c.points[:8]))
    assert all(pencil.contains(p.coords) for p in c.points)
    with pytest.raises(ValueError):
        sample_vr_config(7, fp, rng)


def test_smoothness(fp):
    rng = random.Random(6)
    assert base_curve_is_smooth(pencil_through(random_config(8, fp, rng)))
    # both quadrics ignore x_3, so the base curve is a cone singular at e_3
    z, o = fp.zero, fp.one
    q1 = QuadricForm(fp, (z, o, z, z, z, z, z, -o, z, z))  # x0 x1 - x2^2
    q2 = QuadricForm(fp, (o, z, z, z, o, z, z, o, z, z))  # x0^2 + x1^2 + x2^2
    assert QUAD_MONOMIALS[1] == (1, 1, 0, 0) and QUAD_MONOMIALS[7] == (0, 0, 2, 0)
    assert not base_curve_is_smooth(QuadricPencil(q1, q2))


def brute_force_base_points(quadrics, p):
    """All points of P^3(F_p) on every quadric, by exhaustive numpy evaluation."""
    grids = []
    for lead in range(4):
        free = 3 - lead
        tail = np.indices((p,) * free).reshape(free, -1).T if free else np.zeros((1, 0), dtype=np.int64)
        head = np.zeros((len(tail), lead + 1), dtype=np.int64)
        head[:, lead] = 1
        grids.append(np.hstack([head, tail]))
    pts = np.vstack(grids).astype(np.int64)
    mask = np.ones(len(pts), dtype=bool)
    for q in quadrics:
        val = np.zeros(len(pts), dtype=np.int64)
        for e, c in zip(QUAD_MONOMIALS, q.coeffs):
            term = np.full(len(pts), int(c), dtype=np.int64)
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * pts[:, i] % p
            val = (val + term) % p
        mask &= val == 0
    return {tuple(map(int, row)) for row in pts[mask]}


def test_eighth_point_against_brute_force():
    f = PrimeField(101)
    found = 0
    for seed in range(10):
        rng = random.Random(seed)
        c = random_config(7, f, rng)
        try:
            q8 = eighth_base_point(c.points, f)
        except NonGeneric:
            continue
        base = brute_force_base_points(quadrics_through(c.points, f), 101)
        given = {tuple(int(x) for x in p.coords) for p in c.points}
        assert given <= base
        assert base - given == {tuple(int(x) for x in q8.coords)}
        found += 1
        if found == 3:
            break
    assert found == 3


def test_eighth_point_basis_independent(fp):
    rng = random.Random(7)
    c = sample_vr_config(8, fp, rng)
    pencil = pencil_through(c)
    q8 = eighth_base_point(c.points[:7], fp, pencil)
    for seed in range(3):
        assert eighth_base_point(c.points[:7], fp, pencil, rng=random.Random(seed)) == q8
    net = quadrics_through(c.points[:7], fp)
    assert all(q(q8.coords) == 0 for q in net)
    assert pencil.contains(q8.coords)


def test_eighth_point_rational_field():
    c = random_config(7, QQ, random.Random(8))
    q8 = eighth_base_point(c.points, QQ)
    assert all(q(q8.coords) == 0 for q in quadrics_through(c.points, QQ))


def test_eighth_point_needs_seven(fp):
    with pytest.raises(ValueError):
        eighth_base_point(random_config(6, fp, random.Random(9)).points, fp)
