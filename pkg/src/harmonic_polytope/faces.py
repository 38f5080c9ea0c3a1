"""Faces, vertices, facets and f-vectors of the harmonic polytope H_{n,n}.

Faces are labelled by harmonic triples ``(K; pi1, pi2)``: a nonempty subset K
of [n] and two ordered set partitions of [n] whose restrictions to K are
mutually reverse, and such that no element outside K sits weakly after some
``k in K`` in both partitions.

Two dimension conventions appear here. ``fan_face_dim`` is the dimension of the
cone in the normal fan; ``polytope_face_dim`` is the dimension of the face of
the polytope itself, its complement in 2n-2.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .combinatorics import (
    OrderedSetPartition,
    enumerate_ordered_set_partitions,
    format_set,
    fubini,
    is_adjacent_refinement,
    parse_set,
    restrict_osp,
    reverse_osp,
    stirling2,
)
from .config import DomainError, check_cap


@dataclass(frozen=True)
class HarmonicTriple:
    n: int
    K: frozenset[int]
    pi1: OrderedSetPartition
    pi2: OrderedSetPartition

    def __str__(self) -> str:
        return f"{format_set(self.K, self.n)};{self.pi1};{self.pi2}"

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "HarmonicTriple":
        try:
            k_text, p1, p2 = text.strip().strip("()").split(";")
        except ValueError:
            raise DomainError(f"expected 'K;pi1;pi2', got {text!r}") from None
        pi1 = OrderedSetPartition.parse(p1, n)
        pi2 = OrderedSetPartition.parse(p2, n)
        size = n if n is not None else max(pi1.ground)
        return cls(size, parse_set(k_text, size), pi1, pi2)

    def is_fine(self) -> bool:
        return len(self.K) == 1 and self.pi1.is_fine() and self.pi2.is_fine()

    def __le__(self, other: "HarmonicTriple") -> bool:
        return (self.K <= other.K
                and is_adjacent_refinement(self.pi1, other.pi1)
                and is_adjacent_refinement(self.pi2, other.pi2))


def _check_shape(n: int, K: frozenset[int], pi1: OrderedSetPartition, pi2: OrderedSetPartition) -> None:
    ground = frozenset(range(1, n + 1))
    if pi1.ground != ground or pi2.ground != ground:
        raise DomainError(f"({pi1}, {pi2}) are not ordered set partitions of [{n}]")
    if not K or not K <= ground:
        raise DomainError(f"K={sorted(K)} must be a nonempty subset of [{n}]")


def _crossing_ok(pos1: dict[int, int], pos2: dict[int, int], K: Iterable[int], outside: Iterable[int]) -> bool:
    # j weakly after k in one partition forces j strictly before k in the other
    K = list(K)
    for j in outside:
        for k in K:
            if pos1[j] >= pos1[k] and pos2[j] >= pos2[k]:
                return False
    return True


def is_harmonic_triple(t: HarmonicTriple) -> bool:
    _check_shape(t.n, t.K, t.pi1, t.pi2)
    if restrict_osp(t.pi1, t.K) != reverse_osp(restrict_osp(t.pi2, t.K)):
        return False
    outside = [j for j in range(1, t.n + 1) if j not in t.K]
    return _crossing_ok(t.pi1.position(), t.pi2.position(), t.K, outside)


def fan_face_dim(t: HarmonicTriple) -> int:
    if not is_harmonic_triple(t):
        raise DomainError(f"{t} is not a harmonic triple")
    return len(t.pi1) + len(t.pi2) - len(restrict_osp(t.pi1, t.K)) - 1


def polytope_face_dim(t: HarmonicTriple) -> int:
    return 2 * t.n - 2 - fan_face_dim(t)


def _subsets(n: int) -> Iterator[frozenset[int]]:
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            yield frozenset(combo)


def enumerate_triples(n: int) -> Iterator[HarmonicTriple]:
    """Every harmonic triple on [n], by generate-and-test over (K, pi1, pi2).

    Candidates are grouped per K and pi2 is looked up by its restriction to K,
    so only pairs passing condition (a) reach the full predicate.
    """
    check_cap("triples", n)
    osps = list(enumerate_ordered_set_partitions(range(1, n + 1)))
    for K in _subsets(n):
        yield from _triples_for(n, K, osps)


def _triples_for(n: int, K: frozenset[int], osps: list[OrderedSetPartition]) -> Iterator[HarmonicTriple]:
    by_restriction: dict[OrderedSetPartition, list[OrderedSetPartition]] = {}
    for pi in osps:
        by_restriction.setdefault(restrict_osp(pi, K), []).append(pi)
    for pi1 in osps:
        opposite = reverse_osp(restrict_osp(pi1, K))
        for pi2 in by_restriction.get(opposite, ()):
            t = HarmonicTriple(n, K, pi1, pi2)
            if is_harmonic_triple(t):
                yield t


def fine_triples(n: int) -> Iterator[HarmonicTriple]:
    """Harmonic triples with |K| = 1 and both partitions permutations (the vertex labels)."""
    check_cap("triples", n)
    perms = [OrderedSetPartition.from_permutation(p) for p in itertools.permutations(range(1, n + 1))]
    for k in range(1, n + 1):
        for pi1 in perms:
            for pi2 in perms:
                t = HarmonicTriple(n, frozenset({k}), pi1, pi2)
                if is_harmonic_triple(t):
                    yield t


def sorted_triples(triples: Iterable[HarmonicTriple]) -> list[HarmonicTriple]:
    return sorted(triples, key=lambda t: (polytope_face_dim(t), str(t)))


# ---------------------------------------------------------------------------
# vertices and facets


@dataclass(frozen=True)
class VertexPoint:
    x: tuple[int, ...]
    y: tuple[int, ...]

    def to_json(self) -> list[list[int]]:
        return [list(self.x), list(self.y)]


def vertex_coordinates(t: HarmonicTriple) -> VertexPoint:
    if not t.is_fine():
        raise DomainError(f"{t} is not a fine triple")
    (k,) = t.K
    x = t.pi1.inverse_word(t.n)
    y = t.pi2.inverse_word(t.n)
    x[k - 1] += 1
    y[k - 1] += 1
    return VertexPoint(tuple(x), tuple(y))


def vertex_count_formula(n: int) -> int:
    if n < 1:
        raise DomainError("n must be positive")
    value = math.factorial(n) ** 2 * sum(Fraction(1, i) for i in range(1, n + 1))
    assert value.denominator == 1
    return value.numerator


def coordinate_sum(n: int) -> int:
    """Common value of sum(x) and sum(y) on H_{n,n}."""
    return n * (n + 1) // 2 + 1


@dataclass(frozen=True)
class FacetInequality:
    """sum_{s in S} x_s + sum_{t in T} y_t >= rhs."""

    S: frozenset[int]
    T: frozenset[int]
    rhs: int

    def lhs(self, point: VertexPoint) -> int:
        return sum(point.x[s - 1] for s in self.S) + sum(point.y[t - 1] for t in self.T)

    def holds(self, point: VertexPoint) -> bool:
        return self.lhs(point) >= self.rhs

    def is_tight(self, point: VertexPoint) -> bool:
        return self.lhs(point) == self.rhs

    def to_json(self) -> dict:
        return {"S": sorted(self.S), "T": sorted(self.T), "rhs": self.rhs}


def facet_rhs(s: int, t: int) -> int:
    return (s * (s + 1) + t * (t + 1)) // 2 + 1


def facet_system(n: int) -> list[FacetInequality]:
    """One inequality per bisubset S|T of [n]; empty for n = 1 (H_{1,1} is a point)."""
    if n < 1:
        raise DomainError("n must be positive")
    full = frozenset(range(1, n + 1))
    facets = []
    # 0: S only, 1: T only, 2: both
    for labels in itertools.product(range(3), repeat=n):
        S = frozenset(i + 1 for i, c in enumerate(labels) if c != 1)
        T = frozenset(i + 1 for i, c in enumerate(labels) if c != 0)
        if not S or not T or (S == full and T == full):
            continue
        facets.append(FacetInequality(S, T, facet_rhs(len(S), len(T))))
    return sorted(facets, key=lambda f: (sorted(f.S), sorted(f.T)))


def satisfies_equalities(n: int, point: VertexPoint) -> bool:
    return sum(point.x) == coordinate_sum(n) and sum(point.y) == coordinate_sum(n)


# ---------------------------------------------------------------------------
# harmonic tables and f-vectors


@lru_cache(maxsize=None)
def table_cells(size: int) -> tuple[tuple[int, int], ...]:
    """Admissible (level in pi1, level in pi2) slots for an element outside K.

    Levels run 0..2*size. Odd level 2i-1 means "in the block of K_i" and even
    level 2i means "strictly between K_i and K_{i+1}"; pi2 lists the K-blocks
    in reverse, so K_i sits at level 2(size-i)+1 there.
    """
    cells = []
    for a in range(2 * size + 1):
        for b in range(2 * size + 1):
            if all(a < 2 * i - 1 or b < 2 * (size - i) + 1 for i in range(1, size + 1)):
                cells.append((a, b))
    return tuple(cells)


@dataclass(frozen=True)
class HarmonicTable:
    """Implicit harmonic table: ordered partition of K plus a cell for each element outside K."""

    n: int
    k_blocks: tuple[tuple[int, ...], ...]
    cells: tuple[tuple[int, tuple[int, int]], ...]

    @property
    def size(self) -> int:
        return len(self.k_blocks)

    def column_counts(self) -> list[int]:
        counts = Counter(a for _, (a, _) in self.cells if a % 2 == 0)
        return [counts[2 * i] for i in range(self.size + 1)]

    def row_counts(self) -> list[int]:
        counts = Counter(b for _, (_, b) in self.cells if b % 2 == 0)
        return [counts[2 * i] for i in range(self.size + 1)]

    def face_count(self) -> int:
        return math.prod(fubini(c) for c in self.column_counts() + self.row_counts())


def table_of_triple(t: HarmonicTriple) -> HarmonicTable:
    """The harmonic table recording where each element outside K sits relative to K's blocks."""
    k_osp = restrict_osp(t.pi1, t.K)
    size = len(k_osp)
    cells = []
    for j in range(1, t.n + 1):
        if j in t.K:
            continue
        cells.append((j, (_level(t.pi1, k_osp.blocks, j), _level(t.pi2, k_osp.blocks[::-1], j))))
    return HarmonicTable(t.n, k_osp.blocks, tuple(cells))


def _level(pi: OrderedSetPartition, k_blocks, j: int) -> int:
    pos = pi.position()
    k_pos = [pos[b[0]] for b in k_blocks]
    level = 0
    for i, p in enumerate(k_pos, start=1):
        if pos[j] == p:
            return 2 * i - 1
        if pos[j] > p:
            level = 2 * i
    return level


def enumerate_tables(n: int) -> Iterator[HarmonicTable]:
    check_cap("tables", n)
    for K in _subsets(n):
        outside = [j for j in range(1, n + 1) if j not in K]
        for k_osp in enumerate_ordered_set_partitions(K):
            cells = table_cells(len(k_osp))
            for placement in itertools.product(cells, repeat=len(outside)):
                yield HarmonicTable(n, k_osp.blocks, tuple(zip(outside, placement)))


def _ordered_length_poly(m: int) -> list[int]:
    """Coefficient of u^a: ordered set partitions of an m-set into a blocks."""
    return [stirling2(m, a) * math.factorial(a) for a in range(m + 1)]


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


@lru_cache(maxsize=None)
def _placement_sums(size: int, outside: int) -> tuple[tuple[int, ...], int]:
    """Summed length polynomial and Fubini weight over all cell placements of ``outside`` elements."""
    poly = [0]
    total = 0
    cells = table_cells(size)
    for placement in itertools.product(cells, repeat=outside):
        cols = Counter(a for a, _ in placement if a % 2 == 0)
        rows = Counter(b for _, b in placement if b % 2 == 0)
        term = [1]
        weight = 1
        for c in list(cols.values()) + list(rows.values()):
            term = _poly_mul(term, _ordered_length_poly(c))
            weight *= fubini(c)
        if len(term) > len(poly):
            poly += [0] * (len(term) - len(poly))
        for i, v in enumerate(term):
            poly[i] += v
        total += weight
    return tuple(poly), total


@dataclass(frozen=True)
class FVector:
    """(f_{-1}, f_0, ..., f_{2n-2}) with f_{-1} = 1 for the empty face."""

    n: int
    entries: tuple[int, ...]

    def __getitem__(self, d: int) -> int:
        return self.entries[d + 1]

    def to_json(self) -> dict:
        return {"n": self.n, "fvector": list(self.entries)}


def f_vector_via_tables(n: int) -> FVector:
    """f_d = sum over tables of the ordered-length products with sum(a)+sum(b)+l = 2n-d-1."""
    check_cap("tables", n)
    f = [0] * (2 * n - 1)
    for K in _subsets(n):
        outside = n - len(K)
        for k_osp in enumerate_ordered_set_partitions(K):
            size = len(k_osp)
            poly, _ = _placement_sums(size, outside)
            for s, count in enumerate(poly):
                d = 2 * n - 1 - size - s
                f[d] += count
    return FVector(n, (1, *f))


def total_face_count(n: int) -> int:
    """Number of nonempty faces: sum over tables of prod F(c_i) F(r_i)."""
    check_cap("tables", n)
    total = 0
    for K in _subsets(n):
        for k_osp in enumerate_ordered_set_partitions(K):
            total += _placement_sums(len(k_osp), n - len(K))[1]
    return total


@dataclass(frozen=True)
class TableCount:
    n: int
    closed_form: int
    enumerated: int

    @property
    def differs(self) -> bool:
        return self.closed_form != self.enumerated


def harmonic_table_count(n: int) -> TableCount:
    """Closed-form sum over k = 1..n-1, alongside a direct count over (K, ordered K-partition, cells)."""
    check_cap("tables", n)
    closed_form = sum(
        math.comb(n, k) * stirling2(k, l) * math.factorial(l) * (2 * l * l + 2 * l + 1) ** (n - k)
        for k in range(1, n)
        for l in range(1, k + 1)
    )
    enumerated = 0
    for K in _subsets(n):
        for k_osp in enumerate_ordered_set_partitions(K):
            enumerated += len(table_cells(len(k_osp))) ** (n - len(K))
    return TableCount(n, closed_form, enumerated)
