"""Print f-vectors from harmonic tables, checked against the 3^n-3 facet count and the vertex formula.

    python3 scripts/fvector_table.py --max-n 6
"""

import argparse

from harmonic_polytope import f_vector_via_tables, vertex_count_formula
from harmonic_polytope.faces import harmonic_table_count, total_face_count


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=6)
    args = parser.parse_args()

    for n in range(1, args.max_n + 1):
        fv = f_vector_via_tables(n)
        facets_ok = n == 1 or fv[2 * n - 3] == 3 ** n - 3
        vertices_ok = fv[0] == vertex_count_formula(n)
        tables = harmonic_table_count(n)
        print(f"n={n}  faces={total_face_count(n)}  f={list(fv.entries)}")
        print(f"     vertex formula {'ok' if vertices_ok else 'MISMATCH'}, facet count {'ok' if facets_ok else 'MISMATCH'}, "
              f"tables: closed sum {tables.closed_form}, enumerated {tables.enumerated}")


if __name__ == "__main__":
    main()
