"""Exact fields: the rationals (via Fraction) and prime fields F_p."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Any

from sympy import isprime


class Fp:
    """An element of F_p.  Mixes freely with Python ints."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Fp(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


class RationalField:
    zero = Fraction(0)
    one = Fraction(1)
    char = 0

    def __call__(self, x: Any) -> Fraction:
        return Fraction(x)

    def parse(self, s: str) -> Fraction:
        return Fraction(s)

    def random(self, rng: random.Random, height: int = 50) -> Fraction:
        return Fraction(rng.randint(-height, height))

    def to_json(self):
        return "rational"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p: int):
        p = int(p)
        if p < 3 or not isprime(p):
            raise ValueError(f"{p} is not an odd prime")
        self.p = p
        self.char = p
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def __call__(self, x: Any) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError(f"element of F_{x.p} given to F_{self.p}")
            return x
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.p) / x.denominator
        return Fp(int(x), self.p)

    def parse(self, s: str) -> Fp:
        return self(int(s))

    def random(self, rng: random.Random) -> Fp:
        return Fp(rng.randrange(self.p), self.p)

    def to_json(self):
        return {"prime": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def field_from_json(data) -> RationalField | PrimeField:
    if data == "rational":
        return QQ
    if isinstance(data, dict) and "prime" in data:
        return PrimeField(int(data["prime"]))
    raise ValueError(f"unknown field descriptor {data!r}")


def element_to_str(x) -> str:
    if isinstance(x, Fp):
        return str(x.v)
    return str(x)
