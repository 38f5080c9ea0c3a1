"""Brute-force cross-checks for the formula-based computations.

Each oracle reaches its answer by a route that shares no formula with the
code it checks: face counts by binning enumerated triples, volume by Ehrhart
interpolation of lattice-point counts, nonzero mixed volumes by counting
forest pairs, and trimmed lattice counts by the edge polytope's Ehrhart
polynomial.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .combinatorics import iter_set_partitions
from .config import DomainError, LimitError, check_cap, get_limits
from .faces import (
    FVector,
    coordinate_sum,
    enumerate_triples,
    f_vector_via_tables,
    facet_system,
    fine_triples,
    polytope_face_dim,
    satisfies_equalities,
    vertex_coordinates,
    vertex_count_formula,
)
from .linalg import evaluate, fit_polynomial
from .volume import (
    BipartiteMultigraph,
    Graph,
    enumerate_forests,
    harmonic_volume,
    is_connected_gamma,
    nonzero_mixed_volume_count,
    scaled_mixed_volume,
    trimmed_lattice_count,
)

KNOWN_F_VECTORS = {
    1: (1, 1),
    2: (1, 6, 6, 1),
    3: (1, 66, 144, 102, 24, 1),
    4: (1, 1200, 4008, 5124, 3072, 834, 78, 1),
}
KNOWN_VOLUMES = {1: Fraction(1), 2: Fraction(3), 3: Fraction(33), 4: Fraction(2848, 3)}
KNOWN_NONZERO_COUNTS = {1: 1, 2: 3, 3: 39, 4: 1242}


class FitError(ArithmeticError):
    """Lattice counts are not matched by a polynomial of the expected degree."""


@dataclass(frozen=True)
class EhrhartSample:
    dilate: int
    count: int


def _ehrhart_leading(samples: list[EhrhartSample], degree: int) -> Fraction:
    """Fit through the first degree+1 samples; the remaining samples are residual checks."""
    fit = samples[: degree + 1]
    coeffs = fit_polynomial([s.dilate for s in fit], [s.count for s in fit])
    for s in samples:
        if evaluate(coeffs, s.dilate) != s.count:
            raise FitError(f"nonzero residual at t={s.dilate}")
    return coeffs[-1]


# ---------------------------------------------------------------------------
# f-vector


def f_vector_brute(n: int) -> FVector:
    if n > 4:
        raise LimitError(f"f_vector_brute: n={n} > 4")
    check_cap("triples", n)
    counts = Counter(polytope_face_dim(t) for t in enumerate_triples(n))
    return FVector(n, (1, *(counts[d] for d in range(2 * n - 1))))


# ---------------------------------------------------------------------------
# volume by lattice-point counting


def _side_points(n: int, t: int) -> np.ndarray:
    """Integer vectors (v_1..v_n) with v_2..v_n in [t, t(n+1)] and v_1 fixed by the coordinate sum."""
    lo, hi = t, t * (n + 1)
    rows = (hi - lo + 1) ** (n - 1)
    free = np.array(list(itertools.product(range(lo, hi + 1), repeat=n - 1)), dtype=np.int64).reshape(rows, n - 1)
    first = t * coordinate_sum(n) - free.sum(axis=1)
    return np.column_stack([first, free])


def lattice_count(n: int, t: int, chunk: int = 4096) -> int:
    """Lattice points of t*H_{n,n}, from the scaled equality/inequality description."""
    X = _side_points(n, t)
    Y = _side_points(n, t)
    facets = facet_system(n)
    xs = [X[:, sorted(s - 1 for s in f.S)].sum(axis=1) for f in facets]
    ys = [Y[:, sorted(u - 1 for u in f.T)].sum(axis=1) for f in facets]
    total = 0
    for start in range(0, len(X), chunk):
        ok = np.ones((min(chunk, len(X) - start), len(Y)), dtype=bool)
        for f, xv, yv in zip(facets, xs, ys):
            ok &= (xv[start:start + chunk, None] + yv[None, :]) >= t * f.rhs
        total += int(ok.sum())
    return total


def ehrhart_samples(n: int, extra: int = 1) -> list[EhrhartSample]:
    dim = 2 * n - 2
    return [EhrhartSample(t, lattice_count(n, t)) for t in range(dim + 1 + extra)]


def ehrhart_volume(n: int) -> Fraction:
    """Normalized volume of H_{n,n} as the leading Ehrhart coefficient."""
    check_cap("ehrhart", n)
    return _ehrhart_leading(ehrhart_samples(n), 2 * n - 2)


# ---------------------------------------------------------------------------
# forest pairs and expansion


def forest_pairs_brute(n: int) -> int:
    """Pairs of labeled forests on [n] whose union is connected."""
    check_cap("forest_pairs", n)
    forests = list(enumerate_forests(n))
    return sum(1 for f1 in forests for f2 in forests if Graph(n, f1.edges | f2.edges).is_connected())


def expansion_sum(n: int) -> Fraction:
    """sum over forest pairs of (2n-2)!/k! * (2n-2)! MV(G, G'); equals (2n-2)! * Vol(H_{n,n})."""
    check_cap("forest_pairs", n)
    d = 2 * n - 2
    forests = list(enumerate_forests(n))
    total = Fraction(0)
    for g1 in forests:
        for g2 in forests:
            k = d - len(g1.edges) - len(g2.edges)
            total += Fraction(math.factorial(d), math.factorial(k)) * scaled_mixed_volume(g1, g2)
    return total


# ---------------------------------------------------------------------------
# edge polytope


def edge_polytope_samples(gamma: BipartiteMultigraph, extra: int = 1) -> list[EhrhartSample]:
    """|t R_Gamma cap Z^(p+q)|, generating t-fold sums of vertices (R_Gamma is normal)."""
    p, q = gamma.p, gamma.q
    left, right = gamma.I.block_of(), gamma.J.block_of()
    vertices = {(left[k], p + right[k]) for k in range(1, gamma.n + 1)}
    dim = p + q - 2
    layer = {tuple([0] * (p + q))}
    samples = [EhrhartSample(0, 1)]
    for t in range(1, dim + 1 + extra):
        nxt = set()
        for point in layer:
            for a, b in vertices:
                v = list(point)
                v[a] += 1
                v[b] += 1
                nxt.add(tuple(v))
        layer = nxt
        samples.append(EhrhartSample(t, len(layer)))
    return samples


def edge_polytope_ehrhart(gamma: BipartiteMultigraph) -> Fraction:
    """(p+q-2)! times the normalized volume of the edge polytope of a connected Gamma."""
    if not is_connected_gamma(gamma):
        raise DomainError(f"{gamma} is disconnected; the edge polytope is not full-dimensional")
    cap = get_limits().edge_polytope_vertices
    if gamma.p + gamma.q > cap:
        raise LimitError(f"edge_polytope_vertices: p+q={gamma.p + gamma.q} > {cap}")
    dim = gamma.p + gamma.q - 2
    return _ehrhart_leading(edge_polytope_samples(gamma), dim) * math.factorial(dim)


# ---------------------------------------------------------------------------
# verification report


@dataclass
class CheckResult:
    check: str
    n: int
    expected: object
    actual: object

    @property
    def status(self) -> str:
        return "pass" if self.expected == self.actual else "fail"

    def to_json(self) -> dict:
        def plain(v):
            if isinstance(v, Fraction):
                return str(v)
            if isinstance(v, tuple):
                return list(v)
            return v

        return {"check": self.check, "n": self.n, "expected": plain(self.expected),
                "actual": plain(self.actual), "status": self.status}


def _vertices_in_facets(n: int) -> bool:
    facets = facet_system(n)
    for t in fine_triples(n):
        v = vertex_coordinates(t)
        if not satisfies_equalities(n, v) or not all(f.holds(v) for f in facets):
            return False
    return True


def _side_symmetric(n: int) -> bool:
    parts = list(iter_set_partitions(n))
    return all(trimmed_lattice_count(BipartiteMultigraph(I, J), "left")
               == trimmed_lattice_count(BipartiteMultigraph(I, J), "right")
               for I in parts for J in parts)


def _edge_polytope_agrees(n: int) -> bool:
    parts = list(iter_set_partitions(n))
    for I in parts:
        for J in parts:
            gamma = BipartiteMultigraph(I, J)
            if is_connected_gamma(gamma) and edge_polytope_ehrhart(gamma) != trimmed_lattice_count(gamma):
                return False
    return True


def verify(n: int, slow: bool = False, workers: int = 1) -> list[CheckResult]:
    """Run every oracle that applies at size n."""
    checks: list[tuple[str, Callable[[], object], Callable[[], object]]] = []
    if n in KNOWN_F_VECTORS:
        checks.append(("fvector_tables_vs_known", lambda: KNOWN_F_VECTORS[n], lambda: f_vector_via_tables(n).entries))
    if n <= 4:
        checks.append(("fvector_brute_vs_tables", lambda: f_vector_via_tables(n).entries, lambda: f_vector_brute(n).entries))
        checks.append(("vertices_satisfy_facets", lambda: True, lambda: _vertices_in_facets(n)))
        checks.append(("edge_polytope_vs_trimmed", lambda: True, lambda: _edge_polytope_agrees(n)))
    if n <= 5:
        checks.append(("fine_triples_vs_formula", lambda: vertex_count_formula(n), lambda: sum(1 for _ in fine_triples(n))))
        checks.append(("trimmed_side_symmetry", lambda: True, lambda: _side_symmetric(n)))
    checks.append(("facet_count", lambda: max(3 ** n - 3, 0), lambda: len(facet_system(n))))
    if n in KNOWN_VOLUMES:
        checks.append(("volume_vs_known", lambda: KNOWN_VOLUMES[n], lambda: harmonic_volume(n, workers=workers)))
    if n <= get_limits().ehrhart:
        checks.append(("ehrhart_volume_vs_formula", lambda: harmonic_volume(n), lambda: ehrhart_volume(n)))
    if n <= 3 or (slow and n <= 4):
        checks.append(("expansion_consistency",
                       lambda: math.factorial(2 * n - 2) * harmonic_volume(n), lambda: expansion_sum(n)))
    if n in KNOWN_NONZERO_COUNTS:
        checks.append(("nonzero_count_vs_known", lambda: KNOWN_NONZERO_COUNTS[n], lambda: nonzero_mixed_volume_count(n)))
    if n <= 4 or (slow and n <= 5):
        checks.append(("nonzero_count_vs_forest_pairs", lambda: nonzero_mixed_volume_count(n), lambda: forest_pairs_brute(n)))
    return [CheckResult(name, n, expected(), actual()) for name, expected, actual in checks]
