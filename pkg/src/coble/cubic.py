"""Plane-cubic model of the base quartic curve and its chord-tangent law.

Projecting the quartic C = {Q1 = Q2 = 0} from a point X0 on it gives a
plane cubic.  In coordinates y with X0 = e_0 each quadric reads
y_0 L_k(y') + q_k(y'), so the image is F = L_1 q_2 - L_2 q_1 and the
inverse map is y_0 = -q_k(y') / L_k(y').  X0 itself maps to the common
zero of L_1 and L_2 (its tangent direction).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import linalg
from .config import ProjPoint
from .curve import NonGeneric, QuadricPencil, sample_curve_point
from .polys import monomials, poly_diff, poly_eval, poly_mul, poly_sub


class DegenerateProjection(RuntimeError):
    pass


class SingularPoint(RuntimeError):
    pass


_QUADRATIC = monomials(3, 2)
_CUBIC = monomials(3, 3)


def _cross(a: Sequence, b: Sequence) -> list:
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def _dot(a: Sequence, b: Sequence):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


@dataclass
class CubicModel:
    field: object
    pencil: QuadricPencil
    center: ProjPoint
    basis: list  # columns: center, b1, b2, b3
    basis_inv: list
    linear: tuple  # (L1, L2) as coefficient triples
    quadratic: tuple  # (q1, q2) as dict polynomials in y'
    cubic: dict
    gradient: tuple = dc_field(default=())
    origin: ProjPoint | None = None

    def __post_init__(self):
        zero = self.field.zero
        self.gradient = tuple([poly_diff(self.cubic, i).get(e, zero) for e in _QUADRATIC] for i in range(3))
        self._cubic_vec = [self.cubic.get(e, zero) for e in _CUBIC]

    # -- coordinates --------------------------------------------------------

    def evaluate(self, y: Sequence):
        a, b, c = y
        mv = [a * a * a, a * a * b, a * a * c, a * b * b, a * b * c, a * c * c, b * b * b, b * b * c, b * c * c, c * c * c]
        return sum((k * m for k, m in zip(self._cubic_vec, mv) if k), start=self.field.zero)

    def grad(self, y: Sequence) -> list:
        a, b, c = y
        mv = [a * a, a * b, a * c, b * b, b * c, c * c]
        return [sum((k * m for k, m in zip(g, mv) if k), start=self.field.zero) for g in self.gradient]

    def on_cubic(self, pt: ProjPoint) -> bool:
        return self.evaluate(pt.coords) == 0

    @property
    def center_image(self) -> ProjPoint:
        return ProjPoint(tuple(_cross(*self.linear)))

    def forward(self, x: ProjPoint) -> ProjPoint:
        y = linalg.matvec(self.basis_inv, x.coords)
        if all(c == 0 for c in y[1:]):
            raise DegenerateProjection("the projection centre is not in the domain of the projection")
        return ProjPoint(tuple(y[1:]))

    def backward(self, y: ProjPoint) -> ProjPoint:
        for lin, quad in zip(self.linear, self.quadratic):
            lv = _dot(lin, y.coords)
            if lv != 0:
                y0 = -poly_eval(quad, y.coords, self.field.zero) / lv
                return ProjPoint(tuple(linalg.matvec(self.basis, [y0, *y.coords])))
        if y == self.center_image:
            return self.center
        raise DegenerateProjection(f"{y} has no preimage on the quartic")

    # -- group law ------------------------------------------------------------

    def third_point(self, p: ProjPoint, q: ProjPoint) -> ProjPoint:
        """Third intersection of the line pq (tangent if p = q) with the cubic."""
        if p != q:
            c21 = _dot(self.grad(p.coords), q.coords)
            c12 = _dot(self.grad(q.coords), p.coords)
            if c21 == 0 and c12 == 0:
                raise SingularPoint("line contained in the cubic")
            return ProjPoint(tuple(c12 * a - c21 * b for a, b in zip(p.coords, q.coords)))
        tangent = self.grad(p.coords)
        if all(t == 0 for t in tangent):
            raise SingularPoint(f"cubic is singular at {p}")
        for k in range(3):
            e = [self.field.one if i == k else self.field.zero for i in range(3)]
            d = _cross(tangent, e)
            if any(x != 0 for x in d) and ProjPoint(tuple(d)) != p:
                break
        c03 = self.evaluate(d)
        c12 = _dot(self.grad(d), p.coords)
        if c03 == 0 and c12 == 0:
            raise SingularPoint("tangent line contained in the cubic")
        return ProjPoint(tuple(c03 * a - c12 * b for a, b in zip(p.coords, d)))

    def add(self, p: ProjPoint, q: ProjPoint, origin: ProjPoint | None = None) -> ProjPoint:
        o = origin if origin is not None else self.origin
        return self.third_point(o, self.third_point(p, q))

    def neg(self, p: ProjPoint, origin: ProjPoint | None = None) -> ProjPoint:
        o = origin if origin is not None else self.origin
        return self.third_point(p, self.third_point(o, o))

    def mul(self, n: int, p: ProjPoint, origin: ProjPoint | None = None) -> ProjPoint:
        o = origin if origin is not None else self.origin
        if n < 0:
            return self.mul(-n, self.neg(p, o), o)
        acc, base = o, p
        while n:
            if n & 1:
                acc = self.add(acc, base, o)
            base = self.add(base, base, o)
            n >>= 1
        return acc

    def is_smooth_at(self, p: ProjPoint) -> bool:
        return any(g != 0 for g in self.grad(p.coords))

    def to_json(self) -> dict:
        from .fields import element_to_str

        return {
            "center": [element_to_str(x) for x in self.center.coords],
            "cubic": [[list(e), element_to_str(c)] for e, c in sorted(self.cubic.items())],
            "origin": None if self.origin is None else [element_to_str(x) for x in self.origin.coords],
        }


def project_to_cubic(pencil: QuadricPencil, center: ProjPoint, rng: random.Random | None = None) -> CubicModel:
    f = pencil.field
    if not pencil.contains(center.coords):
        raise ValueError("projection centre is not on the base curve")
    std = [[f.one if i == j else f.zero for i in range(4)] for j in range(4)]
    choices = []
    if rng is not None:
        choices.append([[f.random(rng) for _ in range(4)] for _ in range(3)])
    for skip in range(4):
        choices.append([std[j] for j in range(4) if j != skip])
    for others in choices:
        cols = [list(center.coords)] + others
        basis = [list(row) for row in zip(*cols)]
        if linalg.det(basis, f) != 0:
            break
    else:
        raise DegenerateProjection("could not complete the centre to a basis")
    basis_inv = linalg.inverse(basis, f)
    others = cols[1:]
    linear, quadratic = [], []
    for q in (pencil.q1, pencil.q2):
        linear.append(tuple(q.polar(center.coords, b) for b in others))
        quad = {}
        for e in monomials(3, 2):
            i, j = [k for k in range(3) for _ in range(e[k])]
            quad[e] = q(others[i]) if i == j else q.polar(others[i], others[j])
        quadratic.append({e: c for e, c in quad.items() if c != 0})
    lin_polys = [{e: c for e, c in zip(monomials(3, 1), lin) if c != 0} for lin in linear]
    cubic = poly_sub(poly_mul(lin_polys[0], quadratic[1]), poly_mul(lin_polys[1], quadratic[0]))
    if not cubic:
        raise DegenerateProjection("projected cubic vanishes identically")
    if all(c == 0 for c in _cross(*linear)):
        raise DegenerateProjection("tangent plane data degenerate at the centre (singular base curve?)")
    return CubicModel(f, pencil, center, basis, basis_inv, tuple(linear), tuple(quadratic), cubic)


def build_model(pencil: QuadricPencil, rng: random.Random, screen_points: int = 200) -> CubicModel:
    """Cubic model with a random centre and a random origin, smoothness-screened."""
    center = sample_curve_point(pencil, rng)
    model = project_to_cubic(pencil, center)
    while True:
        aux = sample_curve_point(pencil, rng)
        if aux != center:
            break
    model.origin = model.forward(aux)
    for _ in range(screen_points):
        pt = sample_curve_point(pencil, rng)
        if pt == center:
            continue
        img = model.forward(pt)
        if not model.on_cubic(img):
            raise NonGeneric("projected curve point off the cubic")
        if not model.is_smooth_at(img):
            raise NonGeneric(f"cubic model singular at {img}")
    return model
