"""Command-line interface.

    harmonic fvector --n 3
    harmonic volume --n 4
    harmonic mixed-volume --n 6 --g "1-2,3-4,5-6" --gp "1-4,4-5,5-6,2-3"
    harmonic verify --n 3

Exit codes: 0 success, 2 usage/parse error, 3 size cap exceeded,
4 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import faces, oracles, volume
from .combinatorics import format_set
from .config import DomainError, LimitError, get_limits, restore_limits, set_limits

EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_fvector(args) -> tuple[str, int]:
    fv = faces.f_vector_via_tables(args.n)
    if args.format == "csv":
        return _csv(["d", "f_d"], [[d - 1, f] for d, f in enumerate(fv.entries)]), 0
    return _dump(fv.to_json()), 0


def cmd_vertices(args) -> tuple[str, int]:
    triples = sorted(faces.fine_triples(args.n), key=str)
    points = [(t, faces.vertex_coordinates(t)) for t in triples]
    if args.format == "csv":
        n = args.n
        header = ["triple"] + [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)]
        return _csv(header, [[str(t), *v.x, *v.y] for t, v in points]), 0
    return _dump({"n": args.n, "vertices": [v.to_json() for _, v in points]}), 0


def cmd_facets(args) -> tuple[str, int]:
    facets = faces.facet_system(args.n)
    if args.format == "csv":
        rows = [[format_set(f.S, args.n), format_set(f.T, args.n), f.rhs] for f in facets]
        return _csv(["S", "T", "rhs"], rows), 0
    return _dump({"n": args.n, "facets": [f.to_json() for f in facets]}), 0


def cmd_triples(args) -> tuple[str, int]:
    triples = faces.sorted_triples(faces.enumerate_triples(args.n))
    rows = [(str(t), faces.polytope_face_dim(t)) for t in triples]
    if args.format == "csv":
        return _csv(["triple", "dim"], [list(r) for r in rows]), 0
    return _dump({"n": args.n, "triples": [{"triple": s, "dim": d} for s, d in rows]}), 0


def cmd_volume(args) -> tuple[str, int]:
    vol = volume.harmonic_volume(args.n, workers=args.threads)
    if args.format == "csv":
        return _csv(["n", "volume"], [[args.n, str(vol)]]), 0
    return _dump({"n": args.n, "volume": str(vol)}), 0


def _graphs(args) -> tuple[volume.Graph, volume.Graph]:
    if args.g is None or args.gp is None:
        raise DomainError("both --g and --gp are required")
    return volume.Graph.parse(args.g, args.n), volume.Graph.parse(args.gp, args.n)


def cmd_mixed_volume(args) -> tuple[str, int]:
    value = volume.scaled_mixed_volume(*_graphs(args))
    if args.format == "csv":
        return _csv(["scaled_mv"], [[value]]), 0
    return _dump({"scaled_mv": value}), 0


def cmd_nonzero_count(args) -> tuple[str, int]:
    value = volume.nonzero_mixed_volume_count(args.n)
    if args.format == "csv":
        return _csv(["n", "a_n"], [[args.n, value]]), 0
    return _dump({"n": args.n, "a_n": value}), 0


def cmd_gamma(args) -> tuple[str, int]:
    if args.gamma is not None:
        gamma = volume.BipartiteMultigraph.parse(args.gamma, args.n)
    else:
        gamma = volume.gamma_from_graphs(*_graphs(args))
    record = {"gamma": str(gamma), "i_trimmed": volume.trimmed_lattice_count(gamma),
              "weight": volume.degree_weight(gamma)}
    if args.format == "csv":
        return _csv(list(record), [list(record.values())]), 0
    return _dump(record), 0


def cmd_verify(args) -> tuple[str, int]:
    results = oracles.verify(args.n, slow=args.slow, workers=args.threads)
    records = [r.to_json() for r in results]
    status = EXIT_MISMATCH if any(r.status != "pass" for r in results) else 0
    if args.format == "csv":
        keys = ["check", "n", "expected", "actual", "status"]
        return _csv(keys, [[_dump(r[k]) if isinstance(r[k], list) else r[k] for k in keys] for r in records]), status
    return _dump(records), status


COMMANDS = {
    "fvector": cmd_fvector,
    "vertices": cmd_vertices,
    "facets": cmd_facets,
    "triples": cmd_triples,
    "volume": cmd_volume,
    "mixed-volume": cmd_mixed_volume,
    "nonzero-count": cmd_nonzero_count,
    "gamma": cmd_gamma,
    "verify": cmd_verify,
}


def _cap(text: str) -> tuple[str, int]:
    name, _, value = text.partition("=")
    try:
        return name.strip().replace("-", "_"), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NAME=INT, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmonic", description="Exact combinatorics of the harmonic polytope H_{n,n}.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--threads", type=int, default=1, help="worker processes for the volume sum")
        p.add_argument("--slow", action="store_true", help="include slow oracle checks")
        p.add_argument("--cap", type=_cap, action="append", default=[], metavar="NAME=INT",
                       help="override a size cap, e.g. --cap volume=8")
        if name in ("mixed-volume", "gamma"):
            p.add_argument("--g", help="edge list of G, e.g. '1-2,3-4'")
            p.add_argument("--gp", help="edge list of G'")
        if name == "gamma":
            p.add_argument("--gamma", help="Gamma as 'I;J', e.g. '12|34|56;1456|23'")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    previous = get_limits()
    try:
        if args.cap:
            set_limits(**dict(args.cap))
        text, status = COMMANDS[args.command](args)
    except LimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (DomainError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        restore_limits(previous)
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
