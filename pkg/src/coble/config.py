"""Ordered point configurations in P^3 and the Coble action of W_{3,r}.

tau_i swaps points i and i+1.  s is the standard Cremona transformation
centred at p_1..p_4, normalised so that p_5 is fixed: in the frame where
p_1..p_4 = e_1..e_4 and p_5 = [1:1:1:1] it is coordinate-wise reciprocal.
The result is expressed back in the original coordinates, so s is an exact
involution and p_1..p_5 never move.  Equality after a word is only ever
asserted modulo PGL_4 (``pgl_equivalent``).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from . import linalg
from .fields import PrimeField, RationalField, element_to_str, field_from_json
from .weyl import Generator


class DegenerateFrame(ValueError):
    pass


class Indeterminacy(ValueError):
    """A word hit the indeterminacy locus of the Cremona map."""

    def __init__(self, msg: str, letter_index: int | None = None):
        super().__init__(msg)
        self.letter_index = letter_index


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^3, stored with its first nonzero coordinate equal to 1."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        lead = next((x for x in coords if x != 0), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        object.__setattr__(self, "coords", tuple(x / lead for x in coords))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return len(self.coords)


def _integer_coords(pt: ProjPoint) -> list[int]:
    fr = [Fraction(x) for x in pt.coords]
    den = lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = gcd(*ints)
    return [x // g for x in ints]


@dataclass(frozen=True)
class Config:
    field: RationalField | PrimeField
    points: tuple[ProjPoint, ...]

    @classmethod
    def from_coords(cls, field, rows: Sequence[Sequence]) -> "Config":
        return cls(field, tuple(ProjPoint(tuple(field(x) for x in row)) for row in rows))

    @property
    def r(self) -> int:
        return len(self.points)

    def replace(self, i: int, pt: ProjPoint) -> "Config":
        pts = list(self.points)
        pts[i] = pt
        return Config(self.field, tuple(pts))

    def to_json(self) -> dict:
        if isinstance(self.field, RationalField):
            pts = [[str(x) for x in _integer_coords(p)] for p in self.points]
        else:
            pts = [[element_to_str(x) for x in p.coords] for p in self.points]
        return {"field": self.field.to_json(), "points": pts}

    @classmethod
    def from_json(cls, data: dict) -> "Config":
        field = field_from_json(data["field"])
        return cls.from_coords(field, [[field.parse(s) for s in row] for row in data["points"]])


def general_position(c: Config) -> bool:
    """Pairwise distinct and no four points on a common plane."""
    if len(set(c.points)) != len(c.points):
        return False
    for quad in itertools.combinations(c.points, 4):
        if linalg.det([list(p.coords) for p in quad], c.field) == 0:
            return False
    return True


def random_config(r: int, field, rng: random.Random, max_tries: int = 1000) -> Config:
    """Uniformly random points, resampled until in general position."""
    for _ in range(max_tries):
        rows = []
        while len(rows) < r:
            row = [field.random(rng) for _ in range(4)]
            if any(x != 0 for x in row):
                rows.append(row)
        c = Config.from_coords(field, rows)
        if general_position(c):
            return c
    raise RuntimeError(f"no general configuration after {max_tries} draws")


def _scale_convention(m: list[list], field) -> list[list]:
    lead = next(x for row in m for x in row if x != 0)
    inv = field.one / lead
    return [[x * inv for x in row] for row in m]


def frame_matrix(c: Config) -> list[list]:
    """The projectivity A with A p_i = e_i (i <= 4) and A p_5 = [1:1:1:1]."""
    if c.r < 5:
        raise DegenerateFrame("need at least five points to fix a frame")
    cols = [list(p.coords) for p in c.points[:4]]
    basis = [list(row) for row in zip(*cols)]
    try:
        lam = linalg.solve(basis, list(c.points[4].coords), c.field)
    except ZeroDivisionError:
        raise DegenerateFrame("p_1..p_4 are coplanar") from None
    if any(x == 0 for x in lam):
        raise DegenerateFrame("p_5 lies on a plane through three of p_1..p_4")
    b = [[basis[i][j] * lam[j] for j in range(4)] for i in range(4)]
    return _scale_convention(linalg.inverse(b, c.field), c.field)


def transform(c: Config, m: Sequence[Sequence]) -> Config:
    return Config(c.field, tuple(ProjPoint(tuple(linalg.matvec(m, p.coords))) for p in c.points))


def frame_normalize(c: Config) -> tuple[Config, list[list]]:
    a = frame_matrix(c)
    return transform(c, a), a


def pgl_equivalent(c1: Config, c2: Config) -> bool:
    if c1.field != c2.field or c1.r != c2.r:
        return False
    return frame_normalize(c1)[0].points == frame_normalize(c2)[0].points


def cremona(c: Config) -> Config:
    normal, a = frame_normalize(c)
    a_inv = linalg.inverse(a, c.field)
    pts = list(c.points[:5])
    for i, p in enumerate(normal.points[5:], start=5):
        if any(x == 0 for x in p.coords):
            raise Indeterminacy(f"point {i + 1} lies on a coordinate plane of the Cremona frame")
        image = [c.field.one / x for x in p.coords]
        pts.append(ProjPoint(tuple(linalg.matvec(a_inv, image))))
    return Config(c.field, tuple(pts))


def apply_generator(g: Generator, c: Config) -> Config:
    g.check(c.r)
    if g.is_s:
        return cremona(c)
    pts = list(c.points)
    i = g.index - 1
    pts[i], pts[i + 1] = pts[i + 1], pts[i]
    return Config(c.field, tuple(pts))


def apply_word(word: Sequence[Generator], c: Config) -> Config:
    """Rightmost letter acts first, matching ``weyl.word_matrix``."""
    for pos in range(len(word) - 1, -1, -1):
        try:
            c = apply_generator(word[pos], c)
        except (Indeterminacy, DegenerateFrame) as exc:
            raise Indeterminacy(f"letter {pos} ({word[pos]}): {exc}", letter_index=pos) from exc
    return c
