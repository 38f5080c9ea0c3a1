"""Volume and mixed volumes of the harmonic polytope.

A pair of graphs (G, G') on [n] is reduced to the bipartite multigraph
Gamma whose left vertices are the components of G, right vertices the
components of G', with one edge per element of [n]. Scaled mixed volumes are
lattice-point counts of the trimmed generalized permutahedron of Gamma, and
the volume of H_{n,n} is a weighted sum of these over connected Gamma.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Literal, Sequence

import numpy as np

from .combinatorics import (
    SetPartition,
    cayley,
    enumerate_set_partitions,
    forest_sum,
    iter_set_partitions,
    join_partitions,
    mobius_to_top,
)
from .config import DomainError, LimitError, check_cap, get_limits

Side = Literal["left", "right"]


# ---------------------------------------------------------------------------
# graphs on [n]


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertex set [n]; edges stored as sorted pairs."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        normalized = set()
        for i, j in self.edges:
            if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
                raise DomainError(f"bad edge {i}-{j} on [{self.n}]")
            normalized.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def parse(cls, text: str, n: int) -> "Graph":
        """Parse an edge list such as ``"1-2,3-4"``; an empty string is the edgeless graph."""
        edges = []
        for token in filter(None, (t.strip() for t in text.split(","))):
            try:
                i, j = (int(v) for v in token.split("-"))
            except ValueError:
                raise DomainError(f"bad edge token {token!r}") from None
            if (min(i, j), max(i, j)) in {(min(a, b), max(a, b)) for a, b in edges}:
                raise DomainError(f"repeated edge {token!r}")
            edges.append((i, j))
        return cls(n, frozenset(edges))

    def __str__(self) -> str:
        return ",".join(f"{i}-{j}" for i, j in sorted(self.edges))

    def components(self) -> SetPartition:
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.edges:
            parent[find(i)] = find(j)
        groups: dict[int, list[int]] = {}
        for v in range(1, self.n + 1):
            groups.setdefault(find(v), []).append(v)
        return SetPartition(self.n, tuple(tuple(g) for g in groups.values()))

    def is_acyclic(self) -> bool:
        return len(self.edges) == self.n - len(self.components())

    def is_connected(self) -> bool:
        return len(self.components()) == 1


def enumerate_forests(n: int) -> Iterator[Graph]:
    """All labeled forests on [n], by filtering edge subsets of the complete graph."""
    all_edges = list(itertools.combinations(range(1, n + 1), 2))
    for r in range(n):
        for subset in itertools.combinations(all_edges, r):
            g = Graph(n, frozenset(subset))
            if g.is_acyclic():
                yield g


# ---------------------------------------------------------------------------
# bipartite multigraph and its submodular profile


@dataclass(frozen=True)
class BipartiteMultigraph:
    """Gamma_{I,J}: edge k joins the I-block containing k to the J-block containing k."""

    I: SetPartition
    J: SetPartition

    def __post_init__(self):
        if self.I.n != self.J.n:
            raise DomainError("I and J partition different ground sets")

    @property
    def n(self) -> int:
        return self.I.n

    @property
    def p(self) -> int:
        return len(self.I)

    @property
    def q(self) -> int:
        return len(self.J)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "BipartiteMultigraph":
        try:
            left, right = text.split(";")
        except ValueError:
            raise DomainError(f"expected 'I;J', got {text!r}") from None
        I = SetPartition.parse(left, n)
        return cls(I, SetPartition.parse(right, I.n))

    def __str__(self) -> str:
        return f"{self.I};{self.J}"

    def incidence(self) -> list[list[int]]:
        """Edge multiplicities between left block a and right block b."""
        where = self.J.block_of()
        m = [[0] * self.q for _ in range(self.p)]
        for a, block in enumerate(self.I.blocks):
            for e in block:
                m[a][where[e]] += 1
        return m

    def neighborhoods(self, side: Side = "right") -> list[frozenset[int]]:
        """For side='right', nbr(I_a) within the J-blocks; for 'left', nbr(J_b) within the I-blocks."""
        m = self.incidence()
        if side == "right":
            return [frozenset(b for b in range(self.q) if m[a][b]) for a in range(self.p)]
        return [frozenset(a for a in range(self.p) if m[a][b]) for b in range(self.q)]


def gamma_from_graphs(G: Graph, G_prime: Graph) -> BipartiteMultigraph:
    if G.n != G_prime.n:
        raise DomainError(f"graphs on [{G.n}] and [{G_prime.n}]")
    return BipartiteMultigraph(G.components(), G_prime.components())


def is_connected_gamma(gamma: BipartiteMultigraph) -> bool:
    return len(join_partitions(gamma.I, gamma.J)) == 1


def degree_weight(gamma: BipartiteMultigraph) -> int:
    """prod over vertices of deg^(deg-2); a block's degree in Gamma is its size."""
    return math.prod(cayley(len(b)) for b in gamma.I.blocks + gamma.J.blocks)


@dataclass(frozen=True)
class SubmodularProfile:
    """z(S) = number of neighborhoods meeting S, indexed by bitmask over [q].

    The Minkowski sum of the simplices on the neighborhoods is
    ``{x : x([q]) = z([q]), x(S) <= z(S) for all S}``.
    """

    q: int
    z: tuple[int, ...]

    @classmethod
    def from_neighborhoods(cls, q: int, nbrs: Iterable[Iterable[int]]) -> "SubmodularProfile":
        masks = [sum(1 << j for j in nbr) for nbr in nbrs]
        return cls(q, tuple(sum(1 for m in masks if m & S) for S in range(1 << q)))

    @property
    def p(self) -> int:
        return self.z[(1 << self.q) - 1]

    def is_monotone(self) -> bool:
        return all(self.z[S] <= self.z[S | (1 << j)] for S in range(1 << self.q) for j in range(self.q))

    def is_submodular(self) -> bool:
        full = 1 << self.q
        return all(self.z[S] + self.z[T] >= self.z[S | T] + self.z[S & T]
                   for S in range(full) for T in range(full))

    def contains(self, x: Sequence[int]) -> bool:
        if sum(x) != self.p:
            return False
        for S in range(1, (1 << self.q) - 1):
            if sum(x[j] for j in range(self.q) if S >> j & 1) > self.z[S]:
                return False
        return True


def _compositions(total: int, parts: int) -> np.ndarray:
    """All nonnegative integer vectors of length ``parts`` summing to ``total``."""
    rows = []
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        row = []
        for b in bars:
            row.append(b - prev - 1)
            prev = b
        row.append(total + parts - 2 - prev)
        rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(-1, parts)


def count_trimmed_points(profile: SubmodularProfile) -> int:
    """Lattice points x with x + Delta_[q] inside the profile's polytope.

    Since Delta_[q] is the hull of the unit vectors, it suffices that
    x + e_j lies in the polytope for every j.
    """
    q, p = profile.q, profile.p
    if p == 0:
        return 0
    X = _compositions(p - 1, q)
    proper = np.arange(1, (1 << q) - 1, dtype=np.int64)
    if proper.size == 0:
        return len(X)
    A = ((proper[:, None] >> np.arange(q)) & 1).astype(np.int64)
    z = np.array(profile.z, dtype=np.int64)[proper]
    XS = X @ A.T
    ok = np.ones(len(X), dtype=bool)
    for j in range(q):
        ok &= np.all(XS + A[:, j] <= z, axis=1)
    return int(ok.sum())


def _canonical_support(m: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    # any deterministic reordering of rows/columns is a valid key: the result stays isomorphic
    rows = sorted(tuple(1 if v else 0 for v in r) for r in m)
    for _ in range(3):
        cols = sorted(zip(*rows), reverse=True)
        rows = sorted(zip(*cols), reverse=True)
    return tuple(rows)


@lru_cache(maxsize=None)
def _trimmed_by_support(support: tuple[tuple[int, ...], ...], side: Side) -> int:
    p, q = len(support), len(support[0])
    if side == "right":
        nbrs = [[b for b in range(q) if support[a][b]] for a in range(p)]
        return count_trimmed_points(SubmodularProfile.from_neighborhoods(q, nbrs))
    nbrs = [[a for a in range(p) if support[a][b]] for b in range(q)]
    return count_trimmed_points(SubmodularProfile.from_neighborhoods(p, nbrs))


def trimmed_lattice_count(gamma: BipartiteMultigraph, side: Side = "right") -> int:
    """i(P^-) for side='right' (counting in R^q) or i(Q^-) for side='left' (in R^p)."""
    if side not in ("left", "right"):
        raise DomainError(f"side must be 'left' or 'right', not {side!r}")
    size = gamma.q if side == "right" else gamma.p
    cap = get_limits().trimmed_side
    if size > cap:
        raise LimitError(f"trimmed_side: {size} > {cap}")
    if not is_connected_gamma(gamma):
        return 0
    return _trimmed_by_support(_canonical_support(gamma.incidence()), side)


def toric_degree(gamma: BipartiteMultigraph) -> int:
    """Degree of the toric embedding of Gamma; defined for connected Gamma only."""
    if not is_connected_gamma(gamma):
        raise DomainError(f"{gamma} is disconnected")
    return trimmed_lattice_count(gamma)


def scaled_mixed_volume(G: Graph, G_prime: Graph) -> int:
    """(2n-2)! * MV(G, G')."""
    if not (G.is_acyclic() and G_prime.is_acyclic()):
        return 0
    gamma = gamma_from_graphs(G, G_prime)
    if not is_connected_gamma(gamma):
        return 0
    right = trimmed_lattice_count(gamma, "right")
    left = trimmed_lattice_count(gamma, "left")
    if left != right:
        raise ArithmeticError(f"side counts differ for {gamma}: {left} != {right}")
    return right


# ---------------------------------------------------------------------------
# volume and nonzero count


def volume_term(gamma: BipartiteMultigraph) -> Fraction:
    """Contribution of one side-ordered Gamma to Vol(H_{n,n}); zero when disconnected."""
    count = trimmed_lattice_count(gamma)
    if count == 0:
        return Fraction(0)
    return Fraction(count * degree_weight(gamma), math.factorial(gamma.p + gamma.q - 2))


def _partial_volume(args: tuple[list[SetPartition], list[SetPartition]]) -> Fraction:
    lefts, rights = args
    total = Fraction(0)
    for I in lefts:
        for J in rights:
            total += volume_term(BipartiteMultigraph(I, J))
    return total


def harmonic_volume(n: int, workers: int = 1, shuffle_seed: int | None = None) -> Fraction:
    """Vol(H_{n,n}) as a sum over ordered partition pairs (I, J) with I v J = 1.

    ``shuffle_seed`` permutes the summation order; the exact result must not move.
    """
    check_cap("volume", n)
    partitions = list(enumerate_set_partitions(n))
    if shuffle_seed is not None:
        pairs = [(I, J) for I in partitions for J in partitions]
        random.Random(shuffle_seed).shuffle(pairs)
        return sum((volume_term(BipartiteMultigraph(I, J)) for I, J in pairs), Fraction(0))
    if workers <= 1:
        return _partial_volume((partitions, partitions))
    chunks = [(partitions[i::workers * 4], partitions) for i in range(workers * 4)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_partial_volume, chunks), Fraction(0))


def nonzero_mixed_volume_count(n: int) -> int:
    """a_n = sum over sigma of mu(sigma, 1) * s(sigma)^2 in the Mobius algebra of the partition lattice."""
    check_cap("nonzero_count", n)
    return sum(mobius_to_top(sigma) * forest_sum(sigma) ** 2 for sigma in iter_set_partitions(n))
