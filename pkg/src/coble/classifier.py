"""Classification of isometries of the shape E_i -> sigma E_i + L, H -> sigma H + 4L.

For an isometry of H_r fixing k that acts this way, write L = alpha k.
Preserving q forces the linear system

    (E_i, L) = alpha  for all i,      (h_0, L) = 4 alpha,

whose unique solution is L = alpha k, and preserving k forces
1 - sigma = alpha (8 - r).  Candidates are then passed through three
filters: integrality of L, "iota(E_i) + E_i = L cannot be zero" for
sigma = -1, and "an effective L pairs nonnegatively with the movable curve
class H^2" (K . H^2 = -4 < 0).
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .fields import QQ
from .intersection import triple
from .lattice import anticanonical, canonical, gram, h


class Verdict(str, enum.Enum):
    ACCEPTED = "Accepted"
    NON_INTEGRAL = "RejectedNonIntegral"
    EFFECTIVE_CONE = "RejectedEffectiveCone"
    MOVABLE_CURVE = "RejectedMovableCurve"


@dataclass
class ConstrainedSolution:
    sigma: int
    alpha: Fraction
    L: tuple[Fraction, ...]
    verdict: Verdict
    failed_filters: list[Verdict] = field(default_factory=list)
    anticanonical_consistent: bool = True
    alpha_matches_q: bool = True
    justification: str = ""

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.L)

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma,
            "alpha": str(self.alpha),
            "L": [str(x) for x in self.L],
            "verdict": self.verdict.value,
            "failed_filters": [v.value for v in self.failed_filters],
            "anticanonical_consistent": self.anticanonical_consistent,
            "alpha_matches_q": self.alpha_matches_q,
            "justification": self.justification,
        }


def solve_shape(r: int, alpha: Fraction) -> list[Fraction]:
    """Unique L with (E_i, L) = alpha and (h_0, L) = 4 alpha."""
    rhs = [4 * Fraction(alpha)] + [Fraction(alpha)] * r
    return linalg.solve(gram(r), rhs, QQ)


def verify_L_shape(r: int, alpha) -> bool:
    g = gram(r)
    if linalg.det(g, QQ) == 0:
        return False
    k = anticanonical(r)
    return solve_shape(r, Fraction(alpha)) == [Fraction(alpha) * c for c in k.coeffs]


def _q(r: int, v) -> Fraction:
    return 2 * v[0] * v[0] - sum(x * x for x in v[1:])


def _filters(r: int, sigma: int, L: list[Fraction]) -> list[Verdict]:
    failed = []
    if any(x.denominator != 1 for x in L):
        failed.append(Verdict.NON_INTEGRAL)
    is_zero = all(x == 0 for x in L)
    if sigma == -1 and is_zero:
        # L = iota(E_i) + E_i would be zero
        failed.append(Verdict.EFFECTIVE_CONE)
    if sigma == -1 and not is_zero:
        # L = iota(E_i) + E_i must be effective; test it against the movable class H^2
        k = anticanonical(r).coeffs
        ratio = L[0] / k[0]
        if [ratio * c for c in k] == list(L) and ratio < 0:
            KH2 = triple(canonical(r), h(r, 0), h(r, 0))
            if KH2 < 0:
                failed.append(Verdict.MOVABLE_CURVE)
    return failed


def classify(r: int, order: tuple[Verdict, ...] | None = None) -> list[ConstrainedSolution]:
    """Every (sigma, alpha, L) candidate with its verdict; exactly one is Accepted."""
    if r < 8:
        raise ValueError(f"r = {r}: the classification needs r >= 8 (q(k) = {8 - r} > 0 changes the cases)")
    order = order or (Verdict.NON_INTEGRAL, Verdict.EFFECTIVE_CONE, Verdict.MOVABLE_CURVE)
    out = []
    for sigma in (1, -1):
        if r == 8:
            # q(L) = alpha^2 q(k) = 0 and alpha = -q(L) / (2 sigma) force alpha = 0
            alpha = Fraction(0)
        else:
            alpha = Fraction(1 - sigma, 8 - r)
        L = solve_shape(r, alpha)
        qL = _q(r, L)
        if qL != alpha * alpha * (8 - r):
            raise AssertionError("q(L) != alpha^2 (8 - r)")
        failed = _filters(r, sigma, L)
        verdict = next((v for v in order if v in failed), Verdict.ACCEPTED)
        notes = []
        if Verdict.MOVABLE_CURVE in failed:
            notes.append(f"K.H^2 = triple(K, h_0, h_0) = {triple(canonical(r), h(r, 0), h(r, 0))} < 0")
        if Verdict.EFFECTIVE_CONE in failed:
            notes.append("iota(E_i) + E_i = L = 0 is not a nonzero effective class")
        if Verdict.NON_INTEGRAL in failed:
            notes.append(f"L = ({alpha}) k is not integral")
        out.append(ConstrainedSolution(
            sigma=sigma,
            alpha=alpha,
            L=tuple(L),
            verdict=verdict,
            failed_filters=failed,
            anticanonical_consistent=(1 - sigma) == alpha * (8 - r),
            alpha_matches_q=qL == -2 * sigma * alpha,
            justification="; ".join(notes),
        ))
    return out


def filter_order_independent(r: int) -> bool:
    base = [(s.sigma, s.verdict == Verdict.ACCEPTED) for s in classify(r)]
    for order in itertools.permutations((Verdict.NON_INTEGRAL, Verdict.EFFECTIVE_CONE, Verdict.MOVABLE_CURVE)):
        sols = classify(r, order)
        if [(s.sigma, s.verdict == Verdict.ACCEPTED) for s in sols] != base:
            return False
        if any(s.verdict != Verdict.ACCEPTED and s.verdict not in s.failed_filters for s in sols):
            return False
    return True
