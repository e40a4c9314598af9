"""Gaussian elimination over an exact field (Fraction or Fp entries)."""
from __future__ import annotations

from typing import Sequence


def rref(rows: Sequence[Sequence], field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[field(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence], field) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, field) -> list[list]:
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for i, c in enumerate(pivots):
            x[c] = -m[i][f]
        basis.append(x)
    return basis


def solve(a: Sequence[Sequence], b: Sequence, field) -> list:
    """Unique solution of a x = b; raises if a is singular."""
    n = len(a)
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    m, pivots = rref(aug, field)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [m[i][n] for i in range(n)]


def det(a: Sequence[Sequence], field):
    m = [[field(x) for x in row] for row in a]
    n = len(m)
    result = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result = result * m[c][c]
        inv = field.one / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(a: Sequence[Sequence], field) -> list[list]:
    n = len(a)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(a)]
    m, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def matvec(a: Sequence[Sequence], x: Sequence) -> list:
    return [sum((u * v for u, v in zip(row, x)), start=0 * x[0]) for row in a]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b))
    return [[sum((u * v for u, v in zip(row, col)), start=0 * row[0]) for col in cols] for row in a]
