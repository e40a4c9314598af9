"""The Weyl group W_{3,r} of the diagram T_{2,4,r-4} acting on H_r.

Generators are tau_1..tau_{r-1} (the horizontal chain) and s (the extra
vertex, attached to tau_4).  A word w_1 w_2 ... w_n is sent to the matrix
product M(w_1) M(w_2) ... M(w_n); the leftmost letter acts last.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .lattice import Isometry, LatticeVector, reflection


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class Generator:
    """tau_i when ``index`` is an int, s when it is None."""

    index: int | None = None

    def __post_init__(self):
        if self.index is not None and self.index < 1:
            raise ValueError(f"tau index must be >= 1, got {self.index}")

    @property
    def is_s(self) -> bool:
        return self.index is None

    def check(self, r: int) -> None:
        if r < 5:
            raise ValueError(f"W_(3,r) needs r >= 5, got {r}")
        if self.index is not None and self.index > r - 1:
            raise ValueError(f"t{self.index} is not a generator for r = {r}")

    def __str__(self) -> str:
        return "s" if self.index is None else f"t{self.index}"

    def __repr__(self) -> str:
        return "S" if self.index is None else f"Tau({self.index})"

    @classmethod
    def parse(cls, token: str) -> "Generator":
        token = token.strip().lower()
        if token == "s":
            return cls(None)
        if token.startswith("t") and token[1:].isdigit():
            return cls(int(token[1:]))
        raise ValueError(f"bad generator token {token!r}")


S = Generator(None)


def Tau(i: int) -> Generator:
    return Generator(i)


Word = tuple[Generator, ...]


def generators(r: int) -> list[Generator]:
    return [Tau(i) for i in range(1, r)] + [S]


def parse_word(text: str) -> Word:
    return tuple(Generator.parse(tok) for tok in text.split())


def format_word(word: Iterable[Generator]) -> str:
    return " ".join(str(g) for g in word)


def simple_root(g: Generator, r: int) -> LatticeVector:
    g.check(r)
    c = [0] * (r + 1)
    if g.is_s:
        c[0] = 1
        for i in range(1, 5):
            c[i] = -1
    else:
        c[g.index] = 1
        c[g.index + 1] = -1
    return LatticeVector(tuple(c))


def generator_matrix(g: Generator, r: int) -> Isometry:
    return reflection(simple_root(g, r))


def word_matrix(word: Sequence[Generator], r: int) -> Isometry:
    m = Isometry.identity(r)
    for g in word:
        m = m @ generator_matrix(g, r)
    return m


def diagram_edges(r: int) -> set[frozenset[Generator]]:
    """Edges of T_{2,4,r-4}: the tau chain plus s -- tau_4."""
    edges = {frozenset((Tau(i), Tau(i + 1))) for i in range(1, r - 1)}
    edges.add(frozenset((S, Tau(4))))
    return edges


def coxeter_order(g: Generator, h: Generator, r: int) -> int:
    if g == h:
        raise ValueError("coxeter_order needs two distinct generators")
    g.check(r)
    h.check(r)
    return 3 if frozenset((g, h)) in diagram_edges(r) else 2


def verify_relations(r: int, matrices: Mapping[Generator, Isometry] | None = None) -> bool:
    """Check g^2 = 1 and (gh)^m(g,h) = 1 for every generator pair.

    ``matrices`` overrides individual generator matrices (used for negative
    controls).
    """
    mats = {g: generator_matrix(g, r) for g in generators(r)}
    if matrices:
        mats.update(matrices)
    for g, m in mats.items():
        if not (m @ m).is_identity():
            return False
    for g, h in itertools.combinations(generators(r), 2):
        if not ((mats[g] @ mats[h]) ** coxeter_order(g, h, r)).is_identity():
            return False
    return True


def is_identity_element(word: Sequence[Generator], r: int) -> bool:
    return word_matrix(word, r).is_identity()


def enumerate_group(r: int, cap: int = 5_000_000, mem_gb: float = 2.0) -> int:
    """Order of W_{3,r} for the finite types r = 5, 6, 7 (A5, D6, E7).

    Layered breadth-first search on the Cayley graph.  Every generator has
    determinant -1, so layer n holds matrices of determinant (-1)^n and the
    neighbours of layer n lie in layers n - 1 and n + 1; two layers suffice
    for exact deduplication.  Raises CapExceeded past ``cap`` elements or
    when a layer would outgrow ``mem_gb``.
    """
    if not 5 <= r <= 7:
        raise ValueError(f"enumerate_group is for finite types 5 <= r <= 7, got r = {r}")
    n = r + 1
    gens = np.array([generator_matrix(g, r).rows for g in generators(r)], dtype=np.int64)
    budget = mem_gb * 2**30
    prev = np.zeros((0, n, n), dtype=np.int64)
    layer = np.eye(n, dtype=np.int64)[None]
    total = 1
    while len(layer):
        cand = np.concatenate([gens[i] @ layer for i in range(len(gens))])
        if cand.nbytes * 3 > budget:
            raise CapExceeded(f"layer of {len(cand)} candidates exceeds memory budget of {mem_gb} GB")
        cand = np.unique(cand.reshape(len(cand), -1), axis=0)
        if len(prev):
            flat_prev = prev.reshape(len(prev), -1)
            both = np.concatenate([flat_prev, cand])
            _, inverse, counts = np.unique(both, axis=0, return_inverse=True, return_counts=True)
            inverse = inverse.reshape(-1)
            fresh = counts[inverse[len(flat_prev):]] == 1
            cand = cand[fresh]
        prev, layer = layer, cand.reshape(len(cand), n, n)
        total += len(layer)
        if total > cap:
            raise CapExceeded(f"more than {cap} elements (r = {r}); group infinite or cap too small")
    return total
