"""Quadrics through point sets and the base quartic curve of a pencil."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .config import Config, ProjPoint, general_position, random_config
from .fields import PrimeField, element_to_str
from .polys import has_distinct_roots, mono_eval, monomials, roots_mod_p, upoly_add, upoly_mul, upoly_scale

QUAD_MONOMIALS = monomials(4, 2)


class NonGeneric(RuntimeError):
    """The sampled instance is special; resample."""


class RetryBudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadricForm:
    """sum c_m x^m over the ten degree-2 monomials of P^3."""

    field: object
    coeffs: tuple

    def __call__(self, x: Sequence):
        return sum((c * mono_eval(e, x) for e, c in zip(QUAD_MONOMIALS, self.coeffs)), start=self.field.zero)

    def polar(self, x: Sequence, y: Sequence):
        """Q(x + y) - Q(x) - Q(y), i.e. twice the associated bilinear form."""
        acc = self.field.zero
        for e, c in zip(QUAD_MONOMIALS, self.coeffs):
            i, j = [k for k in range(4) for _ in range(e[k])]
            acc = acc + c * (x[i] * y[j] + x[j] * y[i])
        return acc

    def matrix(self) -> list[list]:
        half = self.field.one / 2
        m = [[self.field.zero] * 4 for _ in range(4)]
        for e, c in zip(QUAD_MONOMIALS, self.coeffs):
            i, j = [k for k in range(4) for _ in range(e[k])]
            if i == j:
                m[i][i] = c
            else:
                m[i][j] = m[j][i] = c * half
        return m

    def to_json(self) -> list[str]:
        return [element_to_str(c) for c in self.coeffs]


@dataclass(frozen=True)
class QuadricPencil:
    q1: QuadricForm
    q2: QuadricForm

    def __post_init__(self):
        if linalg.rank([self.q1.coeffs, self.q2.coeffs], self.field) != 2:
            raise ValueError("pencil generators are linearly dependent")

    @property
    def field(self):
        return self.q1.field

    def contains(self, pt: Sequence) -> bool:
        return self.q1(pt) == 0 and self.q2(pt) == 0

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "quadrics": [self.q1.to_json(), self.q2.to_json()]}


def quadrics_through(points: Sequence[ProjPoint], field) -> list[QuadricForm]:
    rows = [[mono_eval(e, p.coords) for e in QUAD_MONOMIALS] for p in points]
    return [QuadricForm(field, tuple(v)) for v in linalg.nullspace(rows, len(QUAD_MONOMIALS), field)]


def pencil_through(c: Config) -> QuadricPencil:
    basis = quadrics_through(c.points, c.field)
    if len(basis) != 2:
        raise NonGeneric(f"quadrics through the configuration form a space of dimension {len(basis)}, not a pencil")
    return QuadricPencil(*basis)


def _require_prime(field) -> int:
    if not isinstance(field, PrimeField):
        raise TypeError("curve point sampling needs a prime field")
    return field.p


def base_curve_is_smooth(pencil: QuadricPencil) -> bool:
    """det(s A + t B) has four distinct roots on P^1."""
    f = pencil.field
    p = _require_prime(f)
    a, b = pencil.q1.matrix(), pencil.q2.matrix()
    values = [int(linalg.det([[x + t * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)], f)) for t in range(5)]
    # Lagrange interpolation of det(A + tB) through t = 0..4
    poly = [0]
    for i in range(5):
        basis, denom = [1], 1
        for j in range(5):
            if j != i:
                basis = upoly_mul(basis, [1, -j % p], p)
                denom = denom * (i - j) % p
        poly = upoly_add(poly, upoly_scale(basis, values[i] * pow(denom, -1, p), p), p)
    while poly and poly[0] == 0:
        poly.pop(0)
    # degree 3 means one simple root at infinity; lower means a multiple one
    return len(poly) >= 4 and has_distinct_roots(poly, p)


def _random_plane(field, rng: random.Random):
    return [[field.random(rng) for _ in range(4)] for _ in range(3)]


def _slice_points(pencil: QuadricPencil, plane) -> list[ProjPoint]:
    """Points of the base curve on the plane A + uB + vC (affine chart)."""
    f = pencil.field
    p = f.p
    a_, b_, c_ = plane
    coeffs = []
    for q in (pencil.q1, pencil.q2):
        lead = int(q(c_))
        lin = [int(q.polar(b_, c_)), int(q.polar(a_, c_))]
        const = [int(q(b_)), int(q.polar(a_, b_)), int(q(a_))]
        coeffs.append((lead, lin, const))
    (a1, b1, c1), (a2, b2, c2) = coeffs
    if a1 == 0 and a2 == 0:
        return []
    # Res_v = (a1 c2 - a2 c1)^2 - (a1 b2 - a2 b1)(b1 c2 - b2 c1)
    e = upoly_add(upoly_scale(c2, a1, p), upoly_scale(c1, -a2, p), p)
    g = upoly_add(upoly_scale(b2, a1, p), upoly_scale(b1, -a2, p), p)
    hh = upoly_add(upoly_mul(b1, c2, p), upoly_scale(upoly_mul(b2, c1, p), -1, p), p)
    res = upoly_add(upoly_mul(e, e, p), upoly_scale(upoly_mul(g, hh, p), -1, p), p)
    if not any(res):
        return []
    points = []
    for u in roots_mod_p(res, p):
        uu = f(u)
        num = -(f(a2) * _ev(c1, uu) - f(a1) * _ev(c2, uu))
        den = f(a2) * _ev(b1, uu) - f(a1) * _ev(b2, uu)
        if den == 0:
            continue
        v = num / den
        x = [ai + uu * bi + v * ci for ai, bi, ci in zip(a_, b_, c_)]
        if all(xi == 0 for xi in x) or not pencil.contains(x):
            continue
        points.append(ProjPoint(tuple(x)))
    return points


def _ev(poly: Sequence[int], x):
    acc = x * 0
    for c in poly:
        acc = acc * x + c
    return acc


def sample_curve_point(pencil: QuadricPencil, rng: random.Random, budget: int = 200) -> ProjPoint:
    _require_prime(pencil.field)
    for _ in range(budget):
        pts = _slice_points(pencil, _random_plane(pencil.field, rng))
        if pts:
            return pts[rng.randrange(len(pts))]
    raise RetryBudgetExhausted(f"no curve point found on {budget} random planes")


def plane_section(pencil: QuadricPencil, rng: random.Random, budget: int = 2000) -> list[ProjPoint]:
    """Four distinct F_p-points cut out by one random plane (a divisor in |H|)."""
    _require_prime(pencil.field)
    for _ in range(budget):
        pts = _slice_points(pencil, _random_plane(pencil.field, rng))
        if len(set(pts)) == 4:
            return pts
    raise RetryBudgetExhausted(f"no completely split plane section in {budget} tries")


def sample_vr_config(r: int, field: PrimeField, rng: random.Random, budget: int = 100,
                     require_smooth: bool = True) -> Config:
    """r points on the base curve of the pencil through 8 random points."""
    if r < 8:
        raise ValueError("V_r sampling needs r >= 8")
    _require_prime(field)
    for _ in range(budget):
        base = random_config(8, field, rng)
        try:
            pencil = pencil_through(base)
        except NonGeneric:
            continue
        if require_smooth and not base_curve_is_smooth(pencil):
            continue
        extra = [sample_curve_point(pencil, rng) for _ in range(r - 8)]
        c = Config(field, base.points + tuple(extra))
        if general_position(c):
            return c
    raise RetryBudgetExhausted(f"no V_{r} configuration in {budget} tries")


def eighth_base_point(seven: Sequence[ProjPoint], field, pencil: QuadricPencil | None = None,
                      rng: random.Random | None = None) -> ProjPoint:
    """The eighth base point of the net of quadrics through seven points.

    With I the ideal of the net, the functionals on quartics killing I_4 are
    spanned by evaluation at the eight base points.  Pairing any of them
    with x_j f, for a cubic f through the seven given points but outside
    I_3, is proportional to the j-th coordinate of the missing point.
    """
    if len(seven) != 7:
        raise ValueError("need exactly seven points")
    net = quadrics_through(seven, field)
    if len(net) != 3:
        raise NonGeneric(f"quadrics through the seven points have dimension {len(net)}, not 3")
    if rng is not None:
        while True:
            mix = [[field.random(rng) for _ in range(3)] for _ in range(3)]
            if linalg.det(mix, field) != 0:
                break
        net = [QuadricForm(field, tuple(sum((m * q.coeffs[k] for m, q in zip(row, net)), start=field.zero)
                                        for k in range(10))) for row in mix]
    quad_polys = [dict(zip(QUAD_MONOMIALS, q.coeffs)) for q in net]

    def times(poly: dict, mono: tuple) -> dict:
        return {tuple(a + b for a, b in zip(e, mono)): c for e, c in poly.items()}

    def vec(poly: dict, basis: list) -> list:
        return [poly.get(e, field.zero) for e in basis]

    cubic_monos, quartic_monos = monomials(4, 3), monomials(4, 4)
    linear_monos = monomials(4, 1)
    ideal3 = [vec(times(q, m), cubic_monos) for q in quad_polys for m in linear_monos]
    ideal4 = [vec(times(q, m), quartic_monos) for q in quad_polys for m in QUAD_MONOMIALS]
    functionals = linalg.nullspace(ideal4, len(quartic_monos), field)
    if len(functionals) != 8:
        raise NonGeneric(f"net is not a complete intersection of 8 points (dimension {len(functionals)})")
    through_seven = linalg.nullspace([[mono_eval(e, p.coords) for e in cubic_monos] for p in seven],
                                     len(cubic_monos), field)
    base_rank = linalg.rank(ideal3, field)
    if rng is not None:
        rng.shuffle(through_seven)
    f = next((v for v in through_seven if linalg.rank(ideal3 + [v], field) > base_rank), None)
    if f is None:
        raise NonGeneric("every cubic through the seven points lies in the net's ideal")
    f_poly = dict(zip(cubic_monos, f))
    candidates = set()
    for lam in functionals:
        lam_of = dict(zip(quartic_monos, lam))
        coords = []
        for m in linear_monos:
            coords.append(sum((lam_of[e] * c for e, c in times(f_poly, m).items()), start=field.zero))
        if any(x != 0 for x in coords):
            candidates.add(ProjPoint(tuple(coords)))
    if len(candidates) != 1:
        raise NonGeneric(f"{len(candidates)} candidate eighth points")
    q8 = candidates.pop()
    if any(q(q8.coords) != 0 for q in net) or q8 in set(seven):
        raise NonGeneric("candidate eighth point fails the net or repeats an input")
    if pencil is not None and not pencil.contains(q8.coords):
        raise NonGeneric("eighth point not on the pencil's base curve")
    return q8
