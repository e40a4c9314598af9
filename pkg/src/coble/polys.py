"""Small polynomial helpers.

Univariate polynomials over F_p are int lists, highest degree first (the
sympy galoistools convention).  Multivariate polynomials are dicts mapping
exponent tuples to field elements.
"""
from __future__ import annotations

import random
from itertools import combinations_with_replacement
from typing import Sequence

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_edf_zassenhaus, gf_gcd, gf_monic, gf_pow_mod, gf_strip, gf_sub

# --- univariate, mod p -----------------------------------------------------


def upoly_strip(f: Sequence[int], p: int) -> list[int]:
    return gf_strip([int(c) % p for c in f])


def roots_mod_p(f: Sequence[int], p: int, rng: random.Random | None = None) -> list[int]:
    """Distinct roots in F_p of f (highest degree first), sorted."""
    f = upoly_strip(f, p)
    if len(f) <= 1:
        if not f:
            raise ValueError("zero polynomial has every element as a root")
        return []
    _, f = gf_monic([ZZ(c) for c in f], p, ZZ)
    # g = gcd(f, x^p - x) is the product of the distinct linear factors
    xp = gf_pow_mod([ZZ(1), ZZ(0)], p, f, p, ZZ)
    g = gf_gcd(f, gf_sub(xp, [ZZ(1), ZZ(0)], p, ZZ), p, ZZ)
    if len(g) <= 1:
        return []
    if len(g) == 2:
        factors = [g]
    else:
        factors = gf_edf_zassenhaus(g, 1, p, ZZ)
    return sorted(int(-fac[1]) % p for fac in factors)


def upoly_mul(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return out


def upoly_add(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    f = [0] * (n - len(f)) + list(f)
    g = [0] * (n - len(g)) + list(g)
    return [(a + b) % p for a, b in zip(f, g)]


def upoly_scale(f: Sequence[int], c: int, p: int) -> list[int]:
    return [(a * c) % p for a in f]


def upoly_eval(f: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in f:
        acc = (acc * x + c) % p
    return acc


def has_distinct_roots(f: Sequence[int], p: int) -> bool:
    """True iff f is squarefree (over the algebraic closure)."""
    f = upoly_strip(f, p)
    n = len(f) - 1
    if n <= 1:
        return True
    df = upoly_strip([c * (n - i) for i, c in enumerate(f[:-1])], p)
    if not df:
        return False
    g = gf_gcd([ZZ(c) for c in f], [ZZ(c) for c in df], p, ZZ)
    return len(g) == 1


# --- multivariate ------------------------------------------------------------


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent tuples of the given total degree, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def mono_eval(e: Sequence[int], x: Sequence):
    acc = None
    for xi, k in zip(x, e):
        for _ in range(k):
            acc = xi if acc is None else acc * xi
    return acc if acc is not None else x[0] ** 0


def poly_eval(f: dict, x: Sequence, zero):
    acc = zero
    for e, c in f.items():
        acc = acc + c * mono_eval(e, x)
    return acc


def poly_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out[e] + c1 * c2 if e in out else c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def poly_sub(f: dict, g: dict) -> dict:
    out = dict(f)
    for e, c in g.items():
        out[e] = out[e] - c if e in out else -c
    return {e: c for e, c in out.items() if c != 0}


def poly_diff(f: dict, i: int) -> dict:
    out = {}
    for e, c in f.items():
        if e[i]:
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = c * e[i]
    return {e: c for e, c in out.items() if c != 0}
