"""Triple intersection numbers on the blow-up of P^3 at r points.

Structure constants: H^3 = 1, E_i^3 = 1, all mixed products vanish.  The
E_i^3 = 1 constant is checked at import time against two consequences:
q(D) = D^2 . k on the basis and (-K)^3 = 64 - 8r.
"""
from __future__ import annotations

from .lattice import LatticeVector, RankMismatch, anticanonical, canonical, h, qform


def triple(d1: LatticeVector, d2: LatticeVector, d3: LatticeVector) -> int:
    if not len(d1) == len(d2) == len(d3):
        raise RankMismatch("triple product of classes of different rank")
    return _triple(d1.coeffs, d2.coeffs, d3.coeffs)


def _triple(a, b, c) -> int:
    return sum(x * y * z for x, y, z in zip(a, b, c))


def q_equals_triple(d: LatticeVector) -> bool:
    return qform(d) == triple(d, d, anticanonical(d.rank))


def anticanonical_cube(r: int) -> int:
    """(-K)^3 on the blow-up at r >= 0 points (r = 0 is P^3 itself)."""
    if r == 0:
        return _triple((4,), (4,), (4,))
    minus_k = -canonical(r)
    return triple(minus_k, minus_k, minus_k)


def self_check(max_rank: int = 12) -> None:
    for r in range(1, max_rank + 1):
        for i in range(r + 1):
            if not q_equals_triple(h(r, i)):
                raise AssertionError(f"q(h_{i}) != h_{i}^2.k for r = {r}")
    for r in range(0, max_rank + 1):
        if anticanonical_cube(r) != 64 - 8 * r:
            raise AssertionError(f"(-K)^3 != 64 - 8r for r = {r}")


self_check()
