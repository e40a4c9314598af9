import random

import pytest

from coble.config import ProjPoint
from coble.cubic import DegenerateProjection, project_to_cubic
from coble.curve import sample_curve_point


def curve_points(model, rng, n):
    out = []
    while len(out) < n:
        x = sample_curve_point(model.pencil, rng)
        if x != model.center:
            out.append(model.forward(x))
    return out


def test_fresh_points_lie_on_the_cubic(model):
    rng = random.Random(10)
    for y in curve_points(model, rng, 30):
        assert model.on_cubic(y)
        assert model.is_smooth_at(y)
    assert model.on_cubic(model.center_image)
    assert model.on_cubic(model.origin)


def test_projecting_the_centre_fails(model):
    with pytest.raises(DegenerateProjection):
        model.forward(model.center)


def test_centre_must_lie_on_the_curve(model, fp):
    with pytest.raises(ValueError):
        project_to_cubic(model.pencil, ProjPoint((fp.one, fp.one, fp.zero, fp(5))))


def test_backward_inverts_forward(model):
    rng = random.Random(11)
    for _ in range(20):
        x = sample_curve_point(model.pencil, rng)
        if x != model.center:
            assert model.backward(model.forward(x)) == x
    assert model.backward(model.center_image) == model.center


def test_lines_meet_the_cubic_in_at_most_three_points(model, fp):
    """Exhaustive count over the F_p-points of random lines."""
    rng = random.Random(12)
    for _ in range(3):
        a = [fp.random(rng) for _ in range(3)]
        b = [fp.random(rng) for _ in range(3)]
        hits = sum(model.evaluate([x + t * y for x, y in zip(a, b)]) == 0 for t in range(fp.p))
        hits += model.evaluate(b) == 0
        assert hits <= 3
    # a chord through two cubic points meets it in a third one
    p, q = curve_points(model, rng, 2)
    assert model.on_cubic(model.third_point(p, q))
    assert model.on_cubic(model.third_point(p, p))


def test_group_law(model):
    rng = random.Random(13)
    pts = curve_points(model, rng, 30)
    o = model.origin
    for p in pts[:10]:
        assert model.add(p, o) == p
        assert model.add(p, model.neg(p)) == o
        assert model.mul(3, p) == model.add(p, model.add(p, p))
        assert model.mul(-2, p) == model.neg(model.add(p, p))
        assert model.mul(0, p) == o
    for _ in range(100):
        p, q, r = rng.sample(pts, 3)
        assert model.add(p, q) == model.add(q, p)
        assert model.add(model.add(p, q), r) == model.add(p, model.add(q, r))
        # doubling goes through the tangent branch
        assert model.add(model.add(p, p), q) == model.add(p, model.add(p, q))


def test_origin_change_is_a_translation(model):
    rng = random.Random(14)
    pts = curve_points(model, rng, 5)
    o2 = pts[0]
    p, q = pts[1], pts[2]
    # P +' Q = P + Q - O' in the group with origin O
    expected = model.add(model.add(p, q), model.neg(o2))
    assert model.add(p, q, origin=o2) == expected
