"""Command-line front end.

Every subcommand writes one JSON record per line (keys sorted) so output is
byte-stable; ``trace --csv`` writes flat CSV instead. Exit codes: 0 success,
1 an identity failed, 2 bad parameters.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, TextIO

from .embeddings import QuaternionSpec
from .errors import ParameterError
from .quatorder import (
    QuatElement,
    check_example,
    example_q,
    has_integer_coords,
    in_suborder,
    reduced_norm,
    reduced_trace,
    search_norm,
)
from .trace import TERM_NAMES, TraceQuery
from .verify import (
    DEFAULT_SPECS,
    POINT_CHECKS,
    Check,
    SweepConfig,
    verify_convolutions,
    verify_goal_identity,
)

JOBS_ENV = "JLTRACE_JOBS"
CSV_COLUMNS = ("space", "D", "N", "level", "k", "n", "trace") + TERM_NAMES


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def record(command: str, parameters: dict, result, breakdown: dict | None = None) -> str:
    rec = {"command": command, "parameters": parameters, "result": result}
    if breakdown is not None:
        rec["breakdown"] = breakdown
    return json.dumps(_jsonable(rec), sort_keys=True, separators=(",", ":"))


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _ordered_map(fn, items: list, jobs: int) -> Iterator:
    """Map preserving input order, so output does not depend on ``jobs``."""
    if jobs <= 1 or len(items) < 2:
        yield from map(fn, items)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(fn, items, chunksize=max(1, len(items) // (8 * jobs)))


def _range_or_single(single: int | None, upper: int | None, name: str, step: int = 1, start: int = 1) -> list[int]:
    if single is not None and upper is not None:
        raise UsageError(f"give either --{name} or --{name}-max, not both")
    if single is not None:
        return [single]
    if upper is not None:
        return list(range(start, upper + 1, step))
    raise UsageError(f"one of --{name} or --{name}-max is required")


# -- trace -------------------------------------------------------------------

def _trace_queries(args) -> list[TraceQuery]:
    ks = _range_or_single(args.k, args.k_max, "k", step=2, start=2)
    explicit_n = args.n is not None
    ns = _range_or_single(args.n, args.n_max, "n")
    spec = None
    if args.space.startswith("quat"):
        if args.D is None:
            raise UsageError(f"--space {args.space} needs --D")
        spec = QuaternionSpec(args.D, args.N)
        level = spec.DN
    else:
        if args.level is None:
            raise UsageError(f"--space {args.space} needs --level")
        level = args.level
    part = args.part if args.part is not None else level
    queries = []
    for k in ks:
        for n in ns:
            if gcd(n, level) != 1:
                if explicit_n:
                    raise ParameterError(f"gcd(n={n}, level={level}) != 1")
                continue
            queries.append(TraceQuery(args.space, k, n, level=level, part=part, spec=spec))
    return queries


def _run_query(query: TraceQuery):
    return query.run()


def _trace_params(q: TraceQuery) -> dict:
    params = {"space": q.space, "k": q.k, "n": q.n}
    if q.spec is not None:
        params.update(D=q.spec.D, N=q.spec.N, level=q.spec.DN)
    else:
        params["level"] = q.level
        if q.space == "new":
            params["part"] = q.part
    return params


def cmd_trace(args, out: TextIO) -> int:
    queries = _trace_queries(args)
    # validate everything before streaming so a bad point fails cleanly
    results = list(_ordered_map(_run_query, queries, args.jobs))
    if args.csv:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for q, res in zip(queries, results):
            p = _trace_params(q)
            writer.writerow(
                [q.space, p.get("D", ""), p.get("N", ""), p["level"], q.k, q.n, res.value]
                + [str(res.terms[name]) for name in TERM_NAMES]
            )
        return 0
    for q, res in zip(queries, results):
        out.write(record("trace", _trace_params(q), res.value, res.terms) + "\n")
    return 0


# -- verify ------------------------------------------------------------------

def _specs(args) -> list[QuaternionSpec]:
    if args.D is not None:
        return [QuaternionSpec(args.D, args.N)]
    if args.N != 1:
        raise UsageError("--N requires --D")
    return [QuaternionSpec(D, N) for D, N in DEFAULT_SPECS]


def _run_point(item) -> Check:
    name, spec, k, n = item
    return POINT_CHECKS[name](spec, k, n)


def _check_lines(checks: Iterable[Check]) -> Iterator[tuple[str, bool]]:
    for c in checks:
        result = {"left": c.left, "right": c.right, "pass": c.passed}
        yield record(f"verify:{c.identity}", c.params, result), c.passed


def cmd_verify(args, out: TextIO) -> int:
    identity = args.identity
    if identity in POINT_CHECKS:
        cfg = SweepConfig(tuple(_specs(args)), args.k_max, args.n_max)
        items = [(identity, *p) for p in cfg.points()]
        checks = _ordered_map(_run_point, items, args.jobs)
    elif identity == "goal":
        ns = _range_or_single(args.n, args.n_max if args.n is None else None, "n")
        checks = (
            c
            for spec in _specs(args)
            for n in ns
            if gcd(n, spec.DN) == 1 or args.n is not None
            for c in verify_goal_identity(spec, n).checks
        )
    else:
        specs = _specs(args) if args.D is not None else None
        checks = verify_convolutions(args.bound, specs, args.disc_bound).checks
    total = failed = 0
    for line, ok in _check_lines(checks):
        total += 1
        failed += not ok
        if not args.quiet or not ok:
            out.write(line + "\n")
    summary = {"checks": total, "failed": failed, "all_pass": failed == 0}
    out.write(record("verify", {"identity": identity}, summary) + "\n")
    return 0 if failed == 0 else 1


# -- quat --------------------------------------------------------------------

def _element_str(a: QuatElement) -> dict:
    return {"coords": [str(v) for v in a.values], "str": str(a)}


def cmd_quat(args, out: TextIO) -> int:
    q = example_q(args.D)
    if args.action == "check-example":
        ok = True
        for name, passed in check_example(args.D):
            ok &= passed
            out.write(record("quat:check-example", {"D": args.D, "relation": name}, passed) + "\n")
        return 0 if ok else 1
    if args.action == "search-norm":
        hits = search_norm(q, args.target, args.height, args.suborder)
        if args.limit is not None:
            hits = hits[: args.limit]
        params = {"D": args.D, "target": args.target, "height": args.height, "suborder": args.suborder}
        for a in hits:
            out.write(record("quat:search-norm", params, _element_str(a)) + "\n")
        out.write(record("quat:search-norm", params, {"count": len(hits)}) + "\n")
        return 0
    coords = [Fraction(c) for c in args.element.split(",")]
    if len(coords) != 4:
        raise UsageError(f"--element needs 4 coordinates, got {len(coords)}")
    a = QuatElement.from_coords(*coords, q)
    result = {
        "nrd": reduced_norm(a),
        "trd": reduced_trace(a),
        "in_suborder": in_suborder(a),
        "integer_coords": has_integer_coords(a),
    }
    out.write(record("quat:membership", {"D": args.D, "element": _element_str(a)}, result) + "\n")
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jltrace", description=__doc__.splitlines()[0])
    parser.add_argument("--out", help="write records to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("trace", help="exact Hecke traces")
    tr.add_argument("--space", required=True, choices=["gamma0", "new", "quat-eichler", "quat-suborder"])
    tr.add_argument("--level", type=int)
    tr.add_argument("--part", type=int, help="new-part divisor for --space new (default: the level)")
    tr.add_argument("--D", type=int)
    tr.add_argument("--N", type=int, default=1)
    tr.add_argument("--k", type=int)
    tr.add_argument("--k-max", type=int)
    tr.add_argument("--n", type=int)
    tr.add_argument("--n-max", type=int)
    tr.add_argument("--csv", action="store_true")
    tr.add_argument("--jobs", type=int, default=_default_jobs())
    tr.set_defaults(func=cmd_trace)

    ve = sub.add_parser("verify", help="exact identity sweeps")
    ve.add_argument("--identity", required=True, choices=["jl", "goal", "classical-jl", "jl1-sum", "convolutions"])
    ve.add_argument("--D", type=int)
    ve.add_argument("--N", type=int, default=1)
    ve.add_argument("--k-max", type=int, default=12)
    ve.add_argument("--n-max", type=int, default=100)
    ve.add_argument("--n", type=int)
    ve.add_argument("--bound", type=int, default=10_000)
    ve.add_argument("--disc-bound", type=int, default=400)
    ve.add_argument("--jobs", type=int, default=_default_jobs())
    ve.add_argument("-q", "--quiet", action="store_true", help="only emit failing checks and the summary")
    ve.set_defaults(func=cmd_verify)

    qu = sub.add_parser("quat", help="desk checks in the explicit order model")
    qu.add_argument("--D", type=int, required=True)
    qsub = qu.add_subparsers(dest="action", required=True)
    qsub.add_parser("check-example")
    sn = qsub.add_parser("search-norm")
    sn.add_argument("--target", type=int, required=True)
    sn.add_argument("--height", type=int, default=3)
    sn.add_argument("--suborder", action="store_true")
    sn.add_argument("--limit", type=int)
    mb = qsub.add_parser("membership")
    mb.add_argument(
        "--element",
        required=True,
        help="comma-separated coordinates over 1, i, j, ij, e.g. --element=1/2,-3/2,1/2,-1/2",
    )
    qu.set_defaults(func=cmd_quat)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        return args.func(args, out)
    except (ParameterError, UsageError, ValueError) as exc:
        err = {"command": args.command, "error": type(exc).__name__, "message": str(exc)}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return 2
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
