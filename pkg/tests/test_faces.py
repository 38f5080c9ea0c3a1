from collections import Counter

import pytest

from harmonic_polytope.combinatorics import OrderedSetPartition
from harmonic_polytope.config import DomainError, LimitError
from harmonic_polytope.faces import (
    FVector,
    HarmonicTriple,
    VertexPoint,
    enumerate_tables,
    enumerate_triples,
    f_vector_via_tables,
    facet_rhs,
    facet_system,
    fan_face_dim,
    fine_triples,
    harmonic_table_count,
    is_harmonic_triple,
    polytope_face_dim,
    satisfies_equalities,
    table_cells,
    table_of_triple,
    total_face_count,
    vertex_coordinates,
    vertex_count_formula,
)
from harmonic_polytope.linalg import affine_dimension

T = HarmonicTriple.parse


def fine(k, w1, w2):
    n = len(w1)
    return HarmonicTriple(n, frozenset({k}), OrderedSetPartition.from_permutation(w1),
                          OrderedSetPartition.from_permutation(w2))


@pytest.fixture(scope="module")
def triples_by_n():
    return {n: list(enumerate_triples(n)) for n in range(1, 5)}


class TestHarmonicTriple:
    def test_example_harmonic(self):
        assert is_harmonic_triple(T("3467;45|8|2|1379|6;6|1|59|237|8|4"))

    def test_example_not_harmonic(self):
        t = T("3467;45|8|2|1379|6;6|5|237|89|14")
        assert not is_harmonic_triple(t)
        pos1, pos2 = t.pi1.position(), t.pi2.position()
        # the offending pair: 1 sits weakly after 3 in both partitions
        assert pos1[1] >= pos1[3] and pos2[1] >= pos2[3]

    @pytest.mark.parametrize("n", range(1, 6))
    def test_top(self, n):
        full = "".join(str(i) for i in range(1, n + 1))
        assert is_harmonic_triple(T(f"{full};{full};{full}"))

    def test_malformed(self):
        with pytest.raises(DomainError):
            is_harmonic_triple(HarmonicTriple(3, frozenset({1}), OrderedSetPartition.parse("1|2"),
                                              OrderedSetPartition.parse("12|3")))
        with pytest.raises(DomainError):
            is_harmonic_triple(HarmonicTriple(2, frozenset(), OrderedSetPartition.parse("1|2"),
                                              OrderedSetPartition.parse("12")))

    def test_roundtrip(self):
        t = T("3467;45|8|2|1379|6;6|1|59|237|8|4")
        assert T(str(t)) == t


class TestDimensions:
    def test_vertex_of_hexagon(self):
        assert polytope_face_dim(T("2;1|2;1|2")) == 0

    def test_whole_hexagon(self):
        assert polytope_face_dim(T("12;12;12")) == 2

    @pytest.mark.parametrize("n", range(1, 5))
    def test_fine_triples_are_vertices(self, n):
        assert {polytope_face_dim(t) for t in fine_triples(n)} == {0}

    def test_non_harmonic_rejected(self):
        with pytest.raises(DomainError):
            fan_face_dim(T("3467;45|8|2|1379|6;6|5|237|89|14"))

    def test_poset_order_n3(self, triples_by_n):
        triples = triples_by_n[3]
        dims = {t: fan_face_dim(t) for t in triples}
        for a in triples:
            for b in triples:
                if a <= b:
                    assert dims[a] >= dims[b]
                    assert (dims[a] == dims[b]) == (a == b)


class TestEnumeration:
    def test_n1(self):
        assert [str(t) for t in enumerate_triples(1)] == ["1;1;1"]

    def test_n2(self, triples_by_n):
        assert len(triples_by_n[2]) == 13

    def test_n3(self, triples_by_n):
        # f_0 + ... + f_4 of the n=3 f-vector: 66 + 144 + 102 + 24 + 1
        assert len(triples_by_n[3]) == 337

    def test_cap(self):
        with pytest.raises(LimitError):
            next(enumerate_triples(6))

    @pytest.mark.parametrize("n", range(1, 5))
    def test_bijection_with_tables(self, n, triples_by_n):
        fv = f_vector_via_tables(n)
        counts = Counter(polytope_face_dim(t) for t in triples_by_n[n])
        assert all(counts[d] == fv[d] for d in range(2 * n - 1))

    @pytest.mark.parametrize("n", range(1, 5))
    def test_fine_filter_matches(self, n, triples_by_n):
        filtered = {t for t in triples_by_n[n] if t.is_fine()}
        assert filtered == set(fine_triples(n))
        assert len(filtered) == vertex_count_formula(n)

    def test_fine_count_n5(self):
        assert sum(1 for _ in fine_triples(5)) == vertex_count_formula(5)

    @pytest.mark.slow
    def test_total_faces_n5(self):
        assert sum(1 for _ in enumerate_triples(5)) == total_face_count(5)


class TestVertices:
    def test_n5_example(self):
        v = vertex_coordinates(fine(4, [5, 3, 4, 1, 2], [1, 4, 3, 5, 2]))
        assert v == VertexPoint((4, 5, 2, 4, 1), (1, 5, 3, 3, 4))

    def test_hexagon_table(self):
        table = {
            "2;1|2;1|2": ((1, 3), (1, 3)),
            "2;1|2;2|1": ((1, 3), (2, 2)),
            "2;2|1;1|2": ((2, 2), (1, 3)),
            "1;1|2;2|1": ((2, 2), (3, 1)),
            "1;2|1;1|2": ((3, 1), (2, 2)),
            "1;2|1;2|1": ((3, 1), (3, 1)),
        }
        assert {str(t) for t in fine_triples(2)} == set(table)
        for text, (x, y) in table.items():
            assert vertex_coordinates(T(text)) == VertexPoint(x, y)

    def test_point(self):
        assert vertex_coordinates(T("1;1;1")) == VertexPoint((2,), (2,))

    def test_non_fine(self):
        with pytest.raises(DomainError):
            vertex_coordinates(T("12;12;12"))

    def test_formula(self):
        assert [vertex_count_formula(n) for n in (1, 2, 3, 4)] == [1, 6, 66, 1200]

    @pytest.mark.parametrize("n", range(1, 5))
    def test_injective(self, n):
        points = [vertex_coordinates(t) for t in fine_triples(n)]
        assert len(set(points)) == len(points)


class TestFacets:
    @pytest.mark.parametrize("n", range(2, 9))
    def test_count(self, n):
        facets = facet_system(n)
        assert len(facets) == 3 ** n - 3
        assert len({(f.S, f.T) for f in facets}) == len(facets)

    def test_point_has_none(self):
        assert facet_system(1) == []

    def test_example_rhs(self):
        f = next(f for f in facet_system(2) if f.S == {1} and f.T == {1, 2})
        assert f.rhs == facet_rhs(1, 2) == 5
        assert f.is_tight(VertexPoint((1, 3), (1, 3)))

    def test_n4_count(self):
        assert len(facet_system(4)) == 78

    @pytest.mark.parametrize("n", range(1, 6))
    def test_vertices_satisfy(self, n):
        facets = facet_system(n)
        for t in fine_triples(n):
            v = vertex_coordinates(t)
            assert satisfies_equalities(n, v)
            assert all(f.holds(v) for f in facets)

    @pytest.mark.parametrize("n", range(2, 5))
    def test_tight_sets_are_facets(self, n):
        vertices = [vertex_coordinates(t) for t in fine_triples(n)]
        for f in facet_system(n):
            tight = [v.x + v.y for v in vertices if f.is_tight(v)]
            assert tight
            assert affine_dimension(tight) == 2 * n - 3


class TestTables:
    def test_cell_counts(self):
        assert [len(table_cells(l)) for l in range(1, 6)] == [2 * l * l + 2 * l + 1 for l in range(1, 6)]

    @pytest.mark.parametrize("n", range(1, 4))
    def test_triples_to_tables(self, n, triples_by_n):
        groups = Counter(table_of_triple(t) for t in triples_by_n[n])
        tables = list(enumerate_tables(n))
        assert set(groups) == set(tables)
        assert all(groups[tab] == tab.face_count() for tab in tables)

    def test_example_table(self):
        tab = table_of_triple(T("3467;45|8|2|1379|6;6|1|59|237|8|4"))
        assert tab.size == 3
        assert sorted(c for c in tab.column_counts() if c) == [2]
        assert sorted(r for r in tab.row_counts() if r) == [1, 3]

    def test_table_count_reports_both(self):
        assert harmonic_table_count(2).enumerated == 13
        assert harmonic_table_count(2).closed_form == 10
        for n in range(1, 5):
            counted = harmonic_table_count(n)
            assert counted.enumerated == sum(1 for _ in enumerate_tables(n))
            assert counted.differs

    @pytest.mark.parametrize("n,expected", [
        (1, (1, 1)),
        (2, (1, 6, 6, 1)),
        (3, (1, 66, 144, 102, 24, 1)),
        (4, (1, 1200, 4008, 5124, 3072, 834, 78, 1)),
    ])
    def test_f_vector(self, n, expected):
        assert f_vector_via_tables(n).entries == expected

    @pytest.mark.parametrize("n", range(1, 7))
    def test_f_vector_invariants(self, n):
        fv = f_vector_via_tables(n)
        assert fv[-1] == 1 and fv[0] == vertex_count_formula(n) and fv[2 * n - 2] == 1
        if n >= 2:
            assert fv[2 * n - 3] == 3 ** n - 3
        assert sum(fv.entries) - 1 == total_face_count(n)

    def test_face_totals(self):
        assert [total_face_count(n) for n in (1, 2, 3)] == [1, 13, 337]

    def test_fvector_json(self):
        assert FVector(3, (1, 66, 144, 102, 24, 1)).to_json() == {"n": 3, "fvector": [1, 66, 144, 102, 24, 1]}
