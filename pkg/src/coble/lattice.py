"""The hyperbolic lattice H_r with form diag(2, -1, ..., -1).

Index 0 is h_0 (pullback of the hyperplane class), indices 1..r are the
exceptional classes h_i.  Everything here is exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class RankMismatch(ValueError):
    pass


class NotARoot(ValueError):
    pass


class InfiniteRootSystem(ValueError):
    pass


@dataclass(frozen=True)
class LatticeVector:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) < 2:
            raise ValueError("a lattice vector needs at least h_0 and one h_i")

    @classmethod
    def of(cls, *coeffs: int) -> "LatticeVector":
        return cls(tuple(coeffs))

    @classmethod
    def basis(cls, r: int, i: int) -> "LatticeVector":
        c = [0] * (r + 1)
        c[i] = 1
        return cls(tuple(c))

    @classmethod
    def zero(cls, r: int) -> "LatticeVector":
        return cls((0,) * (r + 1))

    @property
    def rank(self) -> int:
        return len(self.coeffs) - 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "LatticeVector") -> None:
        if len(other.coeffs) != len(self.coeffs):
            raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self.coeffs))

    def __mul__(self, n: int) -> "LatticeVector":
        return LatticeVector(tuple(n * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "LatticeVector":
        return cls(tuple(int(x) for x in data))


def h(r: int, i: int) -> LatticeVector:
    """Basis vector h_i of H_r."""
    return LatticeVector.basis(r, i)


def anticanonical(r: int) -> LatticeVector:
    """k = -K/2 = 2h_0 - sum h_i."""
    return LatticeVector((2,) + (-1,) * r)


def canonical(r: int) -> LatticeVector:
    """K = -4h_0 + 2 sum h_i."""
    return LatticeVector((-4,) + (2,) * r)


def gram(r: int) -> list[list[int]]:
    return [[(2 if i == 0 else -1) if i == j else 0 for j in range(r + 1)] for i in range(r + 1)]


def bilinear(u: LatticeVector, v: LatticeVector) -> int:
    u._check(v)
    a, b = u.coeffs, v.coeffs
    return 2 * a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


def qform(u: LatticeVector) -> int:
    return bilinear(u, u)


@dataclass(frozen=True)
class Isometry:
    """Integer matrix acting on column coordinate vectors."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("isometry matrix must be square")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, r: int) -> "Isometry":
        return cls(tuple(tuple(int(i == j) for j in range(r + 1)) for i in range(r + 1)))

    @property
    def rank(self) -> int:
        return len(self.rows) - 1

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")
        cols = list(zip(*other.rows))
        return Isometry(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows)
        )

    def __call__(self, v: LatticeVector) -> LatticeVector:
        if v.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs rank {v.rank}")
        return LatticeVector(tuple(sum(a * x for a, x in zip(row, v.coeffs)) for row in self.rows))

    def __pow__(self, n: int) -> "Isometry":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = Isometry.identity(self.rank)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def transpose(self) -> "Isometry":
        return Isometry(tuple(zip(*self.rows)))

    def is_identity(self) -> bool:
        return all(x == (i == j) for i, row in enumerate(self.rows) for j, x in enumerate(row))

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    @classmethod
    def from_json(cls, data) -> "Isometry":
        return cls(tuple(tuple(int(x) for x in row) for row in data))


def reflection(alpha: LatticeVector) -> Isometry:
    """x -> x + (x, alpha) alpha, for a (-2)-vector alpha."""
    if qform(alpha) != -2:
        raise NotARoot(f"q({alpha.coeffs}) = {qform(alpha)}, expected -2")
    r = alpha.rank
    columns = []
    for j in range(r + 1):
        e = h(r, j)
        columns.append((e + bilinear(e, alpha) * alpha).coeffs)
    return Isometry(tuple(zip(*columns)))


def is_isometry(m: Isometry | Sequence[Sequence[int]]) -> bool:
    if not isinstance(m, Isometry):
        try:
            m = Isometry(tuple(tuple(row) for row in m))
        except ValueError:
            return False
    g = Isometry(tuple(tuple(row) for row in gram(m.rank)))
    return (m.transpose() @ g @ m).rows == g.rows


def _roots_with_bound(r: int, bound: int) -> set[LatticeVector]:
    # (alpha, k) = 4a_0 + sum a_i = 0 and q(alpha) = -2  <=>  sum a_i = -4a_0, sum a_i^2 = 2a_0^2 + 2
    found: set[LatticeVector] = set()

    def extend(prefix: list[int], remaining_sq: int, remaining_sum: int, slots: int) -> Iterator[list[int]]:
        if slots == 0:
            if remaining_sq == 0 and remaining_sum == 0:
                yield prefix
            return
        # Cauchy-Schwarz prune: remaining_sum^2 <= slots * remaining_sq
        if remaining_sum * remaining_sum > slots * remaining_sq:
            return
        for a in range(-bound, bound + 1):
            if a * a <= remaining_sq:
                prefix.append(a)
                yield from extend(prefix, remaining_sq - a * a, remaining_sum - a, slots - 1)
                prefix.pop()

    for a0 in range(-bound, bound + 1):
        for tail in extend([], 2 * a0 * a0 + 2, -4 * a0, r):
            found.add(LatticeVector((a0, *tail)))
    return found


def enumerate_roots(r: int, bound: int = 6) -> set[LatticeVector]:
    """All (-2)-vectors orthogonal to k with coefficients in [-bound, bound].

    Raises if enlarging the box by one finds anything new, so the result is
    the full (finite) root system.
    """
    if r >= 8:
        raise InfiniteRootSystem(f"r = {r}: k is not positive (q(k) = {8 - r}), root system is infinite")
    if r < 1 or bound < 1:
        raise ValueError("need r >= 1 and bound >= 1")
    roots = _roots_with_bound(r, bound)
    if _roots_with_bound(r, bound + 1) != roots:
        raise RuntimeError(f"root enumeration not saturated at bound {bound}")
    return roots


def as_vectors(rows: Iterable[Sequence[int]]) -> list[LatticeVector]:
    return [LatticeVector(tuple(row)) for row in rows]
