"""Command-line front end for the whole pipeline.

Subcommands mirror the computation stack: coset tables, coefficient
evaluation, multiplication-by-divisor matrices, circle-bundle cohomology
tables, ring presentations, Giambelli polynomials, relation deficiencies,
rational homotopy degrees, and cache administration. Output is deterministic:
identical configuration and cache state give byte-identical JSON.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .cache import DiskCache, default_cache_dir
from .cartan import PRESETS
from .cosets import table_to_json
from .engine import billey_restriction
from .gysin import render_report, report_to_json
from .intlinalg import to_json as matrix_to_json
from .pipeline import Pipeline
from .polynomials import basis_size, parse_poly
from .presentation import (
    deficiency as relation_deficiency,
    giambelli,
    rational_homotopy,
)

SCHEMA_VERSION = 1


class CliError(RuntimeError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schubert",
        description="Schubert calculus on generalized Grassmannians from Cartan data",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, degree=False):
        p.add_argument("--preset", help=f"named configuration ({', '.join(sorted(PRESETS))})")
        p.add_argument("--type", dest="type_label", help="simple type letter, e.g. E")
        p.add_argument("--rank", type=int, help="rank of the simple type")
        p.add_argument("--nodes", help="comma-separated defining nodes, e.g. 1 or 1,3")
        p.add_argument("--out", choices=("json", "text"), default="text")
        p.add_argument("--cache-dir", default=default_cache_dir())
        p.add_argument("--jobs", type=int, default=1)
        if degree:
            p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("cosets", help="dump the minimal coset representative table")
    common(p)
    p.add_argument("--max-length", type=int)

    p = sub.add_parser("coeff", help="Schubert-basis coefficient of a polynomial")
    common(p)
    p.add_argument("-f", "--poly", required=True,
                   help="polynomial in the configuration's generators, e.g. 'y1^8+2*y4^2'")
    p.add_argument("-w", "--target", required=True,
                   help="target class 'degree,index', e.g. '8,1'")

    p = sub.add_parser("chevalley", help="matrix of multiplication by the degree-1 class")
    common(p, degree=True)

    p = sub.add_parser("cohomology", help="integral cohomology of the circle-bundle space")
    common(p)

    p = sub.add_parser("present", help="generators-and-relations ring presentation")
    common(p)

    p = sub.add_parser("giambelli", help="polynomials expressing the classes of one degree")
    common(p, degree=True)

    p = sub.add_parser("deficiency", help="unit invariant factors of the relation products")
    common(p, degree=True)

    p = sub.add_parser("rational-homotopy", help="rational homotopy degrees")
    common(p)

    p = sub.add_parser("cache", help="administer the on-disk cache")
    p.add_argument("action", choices=("list", "verify", "purge"))
    p.add_argument("--cache-dir", default=default_cache_dir())
    p.add_argument("--sample", type=int, default=3)
    p.add_argument("--out", choices=("json", "text"), default="text")
    return parser


def _pipeline(args) -> Pipeline:
    cache = DiskCache(args.cache_dir) if args.cache_dir else None
    if args.preset:
        return Pipeline.for_preset(args.preset, cache=cache, jobs=args.jobs)
    if args.type_label and args.rank and args.nodes:
        nodes = tuple(int(x) for x in args.nodes.split(","))
        return Pipeline.for_type(args.type_label, args.rank, nodes, cache=cache, jobs=args.jobs)
    raise CliError("need --preset or all of --type/--rank/--nodes")


def _emit(args, payload: dict, text: str) -> None:
    if args.out == "json":
        print(json.dumps(dict(payload, schema=SCHEMA_VERSION), sort_keys=True,
                         separators=(",", ":")))
    else:
        print(text)


def cmd_cosets(args) -> int:
    pl = _pipeline(args)
    table = pl.table(max_length=args.max_length)
    data = table_to_json(table)
    lines = [f"{len(table.reps)} representatives for {pl.name}"
             + (" (truncated)" if table.truncated else "")]
    for rep in table.reps:
        word = ",".join(map(str, rep.word))
        lines.append(f"  s[{rep.length},{rep.index}]  sigma[{word}]")
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_coeff(args) -> int:
    pl = _pipeline(args)
    engine = pl.engine()
    from .presentation import full_binding

    binding = full_binding(engine, pl.gysin())
    poly = parse_poly(binding.ring, args.poly)
    degree, index = (int(x) for x in args.target.split(","))
    value = engine.eval_coefficient(binding, poly, (degree, index))
    payload = {
        "space": pl.name,
        "poly": poly.render(),
        "target": [degree, index],
        "coefficient": value,
    }
    _emit(args, payload, f"a_({degree},{index})({poly.render()}) = {value}")
    return 0


def cmd_chevalley(args) -> int:
    pl = _pipeline(args)
    A = pl.engine().chevalley_matrix(args.degree)
    payload = {"space": pl.name, "degree": args.degree, "matrix": matrix_to_json(A)}
    text = "\n".join(" ".join(f"{x:4d}" for x in row) for row in A) or "(no rows)"
    _emit(args, payload, text)
    return 0


def cmd_cohomology(args) -> int:
    pl = _pipeline(args)
    report = pl.gysin()
    _emit(args, report_to_json(report), render_report(report))
    return 0


def cmd_present(args) -> int:
    pl = _pipeline(args)
    pres = pl.presentation()
    _emit(args, pres.to_json(), pres.render())
    return 0


def cmd_giambelli(args) -> int:
    pl = _pipeline(args)
    engine = pl.engine()
    pres = pl.presentation()
    polys = giambelli(engine, pres.binding, args.degree)
    payload = {
        "space": pl.name,
        "degree": args.degree,
        "polynomials": [p.render() for p in polys],
    }
    text = "\n".join(
        f"G[{args.degree},{i + 1}] = {p.render()}" for i, p in enumerate(polys)
    ) or "(no classes in this degree)"
    _emit(args, payload, text)
    return 0


def cmd_deficiency(args) -> int:
    pl = _pipeline(args)
    pres = pl.presentation()
    m = args.degree
    if m % 2:
        raise CliError("--degree must be an even topological degree")
    relations = pres.relations + pres.appended
    value = relation_deficiency(relations, m)
    b = basis_size(pres.ring, m)
    beta = pl.table().counts_by_degree()
    rank = beta[m // 2] if m // 2 < len(beta) else 0
    payload = {
        "space": pl.name,
        "degree": m,
        "b": b,
        "deficiency": value,
        "schubert_rank": rank,
    }
    _emit(args, payload, f"b({m}) = {b}, delta_{m} = {value}, rank = {rank}")
    return 0


def cmd_rational_homotopy(args) -> int:
    pl = _pipeline(args)
    degrees = rational_homotopy(pl.presentation())
    payload = {"space": pl.name, "degrees": degrees}
    _emit(args, payload, f"pi_r (x) Q = Q exactly for r in {degrees}")
    return 0


def cmd_cache(args) -> int:
    if not args.cache_dir:
        raise CliError("no cache directory (set --cache-dir or SCHUBERT_CACHE_DIR)")
    cache = DiskCache(args.cache_dir)
    if args.action == "list":
        entries = cache.entries()
        payload = {"entries": entries}
        text = "\n".join(
            f"{e['file']}  {'ok' if e['intact'] else 'CORRUPT'}  "
            f"{(e['key'] or {}).get('kind', '?')}"
            for e in entries
        ) or "(empty cache)"
        _emit(args, payload, text)
        return 0
    if args.action == "purge":
        count = cache.purge()
        _emit(args, {"purged": count}, f"purged {count} entries")
        return 0
    report = cache.verify(sample=args.sample)
    payload = {"verified": report}
    text = "\n".join(
        f"{e['file']}  {'ok' if e['ok'] else 'FAIL: ' + e['reason']}" for e in report
    ) or "(nothing to verify)"
    _emit(args, payload, text)
    return 0 if all(e["ok"] for e in report) else 1


COMMANDS = {
    "cosets": cmd_cosets,
    "coeff": cmd_coeff,
    "chevalley": cmd_chevalley,
    "cohomology": cmd_cohomology,
    "present": cmd_present,
    "giambelli": cmd_giambelli,
    "deficiency": cmd_deficiency,
    "rational-homotopy": cmd_rational_homotopy,
    "cache": cmd_cache,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except Exception as exc:  # machine-readable diagnostic on any module error
        diagnostic = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(diagnostic, sort_keys=True), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
