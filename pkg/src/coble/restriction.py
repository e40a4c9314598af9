"""The restriction map tr: Pic(X_p) -> Pic(C_p) on the cubic model.

A class of degree d on the genus-one curve is recorded as (d, P) where P
is the group-law sum of its points relative to the model's origin O; a
degree-zero class is principal iff P = O.  Under the basis convention
h_0 = H and h_i = E_i, tr(a_0 h_0 + sum a_i h_i) = a_0 [H|C] + sum a_i [p_i].
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .config import Config, ProjPoint, general_position
from .cubic import CubicModel, build_model
from .curve import NonGeneric, pencil_through, plane_section
from .lattice import LatticeVector


@dataclass(frozen=True)
class PicClass:
    degree: int
    point: ProjPoint

    def is_zero(self, model: CubicModel) -> bool:
        return self.degree == 0 and self.point == model.origin


def pic_add(model: CubicModel, a: PicClass, b: PicClass) -> PicClass:
    return PicClass(a.degree + b.degree, model.add(a.point, b.point))


def divisor_class(model: CubicModel, terms: Sequence[tuple[int, ProjPoint]]) -> PicClass:
    """Class of sum n_i [x_i] for points x_i of the quartic (in P^3)."""
    acc, deg = model.origin, 0
    for n, x in terms:
        if n:
            acc = model.add(acc, model.mul(n, model.forward(x)))
            deg += n
    return PicClass(deg, acc)


@dataclass
class Restriction:
    """tr for one configuration: cubic model plus the images of H and the p_i."""

    config: Config
    model: CubicModel
    hyperplane: ProjPoint  # group-law sum of one plane section
    images: list[ProjPoint] = field(default_factory=list)

    @property
    def origin(self) -> ProjPoint:
        return self.model.origin

    def generator_classes(self) -> list[PicClass]:
        return [PicClass(4, self.hyperplane)] + [PicClass(1, pt) for pt in self.images]

    def tr_class(self, d: LatticeVector) -> PicClass:
        if d.rank != self.config.r:
            raise ValueError(f"divisor of rank {d.rank} on a configuration of {self.config.r} points")
        m = self.model
        acc = m.origin
        for n, pt in zip(d.coeffs, [self.hyperplane] + self.images):
            if n:
                acc = m.add(acc, m.mul(n, pt))
        return PicClass(4 * d[0] + sum(d.coeffs[1:]), acc)

    def is_principal(self, d: LatticeVector) -> bool:
        return self.tr_class(d).is_zero(self.model)


def hyperplane_point(model: CubicModel, rng: random.Random) -> ProjPoint:
    """Sum of a sampled plane section; checked against centre + line section."""
    section = plane_section(model.pencil, rng)
    if model.center in section:
        section = plane_section(model.pencil, rng)
    acc = model.origin
    for x in section:
        acc = model.add(acc, model.forward(x))
    # a plane through the centre meets C in the centre plus a line section
    expected = model.add(model.center_image, model.third_point(model.origin, model.origin))
    if acc != expected:
        raise NonGeneric("plane-section class disagrees with centre + line section")
    return acc


def build_restriction(c: Config, rng: random.Random, screen_points: int = 200) -> Restriction:
    pencil = pencil_through(c)
    model = build_model(pencil, rng, screen_points=screen_points)
    if model.center in c.points:
        raise NonGeneric("projection centre coincides with a configuration point")
    images = [model.forward(p) for p in c.points]
    return Restriction(c, model, hyperplane_point(model, rng), images)


@dataclass
class TrScan:
    checked: int = 0
    checked_even: int = 0
    checked_odd: int = 0
    violations: list[LatticeVector] = field(default_factory=list)


def scan_box(res: Restriction, bound: int) -> TrScan:
    """Every nonzero D with coefficients in [-bound, bound] and tr(D) = 0.

    Depth-first over coefficients with one group addition per node; only
    degree-zero divisors can be principal, so branches that cannot return
    to degree zero are pruned.
    """
    m = res.model
    gens = [res.hyperplane] + res.images
    weights = [4] + [1] * len(res.images)
    multiples = [{n: m.mul(n, g) for n in range(-bound, bound + 1) if n} for g in gens]
    out = TrScan()
    coeffs = [0] * len(gens)

    def visit(j: int, deg: int, acc: ProjPoint) -> None:
        if abs(deg) > bound * (len(gens) - j):
            return
        if j == len(gens):
            if deg != 0 or not any(coeffs):
                return
            out.checked += 1
            if coeffs[0] % 2:
                out.checked_odd += 1
            else:
                out.checked_even += 1
            if acc == m.origin:
                out.violations.append(LatticeVector(tuple(coeffs)))
            return
        for n in range(-bound, bound + 1):
            coeffs[j] = n
            nxt = acc if n == 0 else m.add(acc, multiples[j][n])
            visit(j + 1, deg + weights[j] * n, nxt)
        coeffs[j] = 0

    visit(0, 0, m.origin)
    return out


def plant_collision(res: Restriction) -> tuple[Config, LatticeVector]:
    """Move p_4 so that h_1 + h_2 - h_3 - h_4 restricts to a principal class."""
    m = res.model
    p1, p2, p3 = res.images[:3]
    target = m.add(m.add(p1, p2), m.neg(p3))
    new_p4 = m.backward(target)
    planted = res.config.replace(3, new_p4)
    if not general_position(planted):
        raise NonGeneric("planted configuration is not in general position")
    d = [0] * (res.config.r + 1)
    d[1], d[2], d[3], d[4] = 1, 1, -1, -1
    return planted, LatticeVector(tuple(d))
