"""Command-line front end.

Thin wrappers over the library: every computation lives in the sibling
modules.  Reports are JSON documents with sorted keys, so identical
inputs and flags produce byte-identical output regardless of worker
count; volatile diagnostics (wall time, cost estimates) go to stderr.

Exit codes: 0 success, 1 unexpected error, 2 usage error, 3 input parse
error, 4 capacity error, 5 precondition or conformance violation,
6 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from math import inf
from pathlib import Path

from . import bounds, expansion, fixtures, girth, oracle
from .codeword import QcCodeword, build_rowremoved_codeword, violated_rows
from .errors import (
    CapacityError,
    ConformanceError,
    DomainError,
    ModulusMismatchError,
    ParseError,
    PreconditionError,
    QcError,
    ShapeError,
)
from .qc_matrix import PolyMatrix, WeightMatrix

EXIT_UNEXPECTED = 1
EXIT_PARSE = 3
EXIT_CAPACITY = 4
EXIT_PRECONDITION = 5
EXIT_VERIFY_FAILED = 6

THEOREMS = ("poly", "weight", "poly-rowremoval", "weight-rowremoval", "best")


def _emit(doc: dict, output: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if output:
        Path(output).write_text(text)


def _note(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _resolve(spec: str, kind: str):
    """A matrix from a file path or a fixture name.

    Returns (matrix, default puncture).  Files carry no default
    puncture; fixtures carry their conventional one.
    """
    path = Path(spec)
    if path.exists():
        text = path.read_text()
        if kind == "weight":
            return expansion.parse_weight_matrix(text), ()
        return expansion.parse_poly_matrix(text), ()
    if spec in fixtures.fixture_names():
        fx = fixtures.get_fixture(spec)
        if fx.kind != kind:
            raise PreconditionError(
                f"fixture {spec!r} is a {fx.kind} matrix, expected {kind}"
            )
        return fx.matrix(), fx.puncture
    raise ParseError(f"no such file or fixture: {spec!r}")


def _parse_puncture_flag(value: str | None) -> tuple[int, ...] | None:
    if value is None:
        return None
    value = value.strip()
    if value in ("", "none", "-"):
        return ()
    try:
        return tuple(sorted({int(p) for p in value.replace(",", " ").split()}))
    except ValueError:
        raise ParseError(f"bad puncture list {value!r}") from None


def _puncture_for(args, default: tuple[int, ...]) -> tuple[int, ...]:
    if getattr(args, "puncture_file", None):
        return expansion.parse_puncture_set(Path(args.puncture_file).read_text())
    explicit = _parse_puncture_flag(args.puncture)
    return default if explicit is None else explicit


# ---------------------------------------------------------------------------
# bound


def cmd_bound(args) -> int:
    if args.weight and args.poly:
        raise PreconditionError("give either --weight or --poly, not both")
    if args.weight:
        matrix, default_p = _resolve(args.weight, "weight")
        spec = args.weight
        if args.theorem in ("poly", "poly-rowremoval"):
            raise PreconditionError(
                "polynomial theorems need a polynomial matrix input"
            )
    else:
        matrix, default_p = _resolve(args.poly, "poly")
        spec = args.poly
    puncture = _puncture_for(args, default_p)
    workers = args.workers or os.cpu_count() or 1
    weight_view = (
        matrix.weight_matrix() if isinstance(matrix, PolyMatrix) else matrix
    )
    max_removed = (
        args.max_removed_rows
        if args.max_removed_rows is not None
        else weight_view.J - 1
    )

    if args.budget is None:
        est = bounds.estimate_cost(matrix, puncture)
        if est.total_seconds > 5:
            _note(
                f"estimated cost: (J+1) * C(L, J+1) = {est.permanents} permanents"
                f" at ~{est.seconds_per_permanent * 1e6:.0f} us each"
                f" -> ~{est.total_seconds:.0f} s per scan"
            )

    start = time.perf_counter()
    if args.theorem == "best":
        report = bounds.bound_best(matrix, puncture, max_removed, args.budget, workers)
    elif args.theorem == "weight":
        report = bounds.bound_weight(weight_view, puncture, args.budget, workers)
    elif args.theorem == "weight-rowremoval":
        report = bounds.bound_weight_rowremoval(
            weight_view, puncture, max_removed, args.budget, workers
        )
    elif args.theorem == "poly":
        report = bounds.bound_poly(matrix, puncture, args.budget, workers)
    else:
        report = bounds.bound_poly_rowremoval(
            matrix, puncture, max_removed, args.budget, workers
        )
    elapsed = time.perf_counter() - start
    _note(f"wall time: {elapsed:.3f} s")

    doc = report.to_dict()
    doc["input"] = spec
    doc["puncture"] = list(puncture)
    doc["budget"] = args.budget
    doc["max_removed_rows"] = max_removed if "rowremoval" in args.theorem or args.theorem == "best" else 0
    _emit(doc, args.output)

    if args.witness_out:
        if not isinstance(matrix, PolyMatrix):
            raise PreconditionError(
                "--witness-out needs a polynomial matrix input"
            )
        if report.bound == inf or report.witness_S is None:
            raise PreconditionError("no finite witness to write")
        cw = build_rowremoved_codeword(
            matrix, report.witness_S, report.witness_T, puncture
        )
        Path(args.witness_out).write_text(cw.to_text())
        _note(f"witness codeword written to {args.witness_out}")
    return 0


# ---------------------------------------------------------------------------
# expand


def cmd_expand(args) -> int:
    proto, _ = _resolve(args.proto, "weight")
    if args.shifts:
        first = expansion.parse_shift_assignment(Path(args.shifts).read_text())
    elif args.random_factor:
        first = expansion.random_shift_assignment(proto, args.random_factor, args.seed)
    else:
        raise PreconditionError("need --shifts or --random-factor")

    written = []
    if args.shifts2 or args.random_factor2:
        if args.shifts2:
            second = expansion.parse_shift_assignment(Path(args.shifts2).read_text())
            final, intermediate = expansion.expand_two_step(proto, first, second)
        else:
            middle = expansion.to_binary(expansion.expand(proto, first))
            intermediate = WeightMatrix.from_rows(middle.tolist())
            second = expansion.random_shift_assignment(
                intermediate, args.random_factor2, args.seed + 1
            )
            final = expansion.expand(intermediate, second)
        if args.intermediate_out:
            Path(args.intermediate_out).write_text(
                expansion.serialize_weight_matrix(intermediate)
            )
            written.append(args.intermediate_out)
    else:
        final = expansion.expand(proto, first)
        if args.intermediate_out:
            raise PreconditionError("--intermediate-out needs a two-step expansion")

    Path(args.out).write_text(expansion.serialize_poly_matrix(final))
    written.append(args.out)
    if args.binary_out:
        Path(args.binary_out).write_text(
            expansion.serialize_binary_matrix(expansion.to_binary(final))
        )
        written.append(args.binary_out)
    _emit(
        {
            "written": written,
            "rows": final.J,
            "cols": final.L,
            "modulus_degree": final.n,
        },
        None,
    )
    return 0


# ---------------------------------------------------------------------------
# girth


def cmd_girth(args) -> int:
    modes = [m for m in ("limit", "tree", "measure_poly", "measure_binary") if getattr(args, m)]
    if len(modes) != 1:
        raise PreconditionError(
            "give exactly one of --limit, --tree, --measure-poly, --measure-binary"
        )
    mode = modes[0]
    if mode == "limit":
        a, _ = _resolve(args.limit, "weight")
        limit = girth.qc_girth_limit(a)
        _emit({"input": args.limit, "qc_girth_limit": limit if limit else "none"}, args.output)
    elif mode == "tree":
        a, default_p = _resolve(args.tree, "weight")
        if args.block_length is None:
            raise PreconditionError("--tree needs --block-length")
        puncture = _puncture_for(args, default_p)
        bound = girth.tree_girth_bound(a, args.block_length, puncture)
        _emit(
            {
                "input": args.tree,
                "block_length": args.block_length,
                "puncture": list(puncture),
                "expansion_factor": args.block_length // (a.L - len(puncture)),
                "tree_girth_bound": bound if bound != inf else "unbounded",
            },
            args.output,
        )
    else:
        if mode == "measure_poly":
            h, _ = _resolve(args.measure_poly, "poly")
            binary = expansion.to_binary(h)
            spec = args.measure_poly
        else:
            binary = expansion.parse_binary_matrix(Path(args.measure_binary).read_text())
            spec = args.measure_binary
        g = girth.measure_girth(binary)
        _emit({"input": spec, "girth": g if g != inf else "unbounded"}, args.output)
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    h, _ = _resolve(args.poly, "poly")
    cw = QcCodeword.parse(Path(args.codeword).read_text(), h.n)
    bad = violated_rows(h, cw)
    _emit(
        {
            "input": args.poly,
            "codeword": args.codeword,
            "valid": not bad,
            "violated_rows": list(bad),
            "hamming_weight": cw.hamming_weight,
        },
        args.output,
    )
    return 0 if not bad else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# oracle


def cmd_oracle(args) -> int:
    if bool(args.poly) == bool(args.binary):
        raise PreconditionError("give exactly one of --poly or --binary")
    if args.poly:
        h, default_p = _resolve(args.poly, "poly")
        puncture = _puncture_for(args, default_p)
        binary = expansion.to_binary(h)
        punct_cols = expansion.expand_puncture(puncture, h.n)
        spec = args.poly
    else:
        binary = expansion.parse_binary_matrix(Path(args.binary).read_text())
        puncture = _puncture_for(args, ())
        punct_cols = puncture
        spec = args.binary
    distance = oracle.exact_min_distance(
        binary, punct_cols, args.max_dimension, args.method
    )
    preserved = oracle.dimensionality_preserved(binary, punct_cols, args.max_dimension)
    _emit(
        {
            "input": spec,
            "punctured_columns": list(punct_cols),
            "method": args.method,
            "dimension": oracle.code_dimension(binary),
            "distance": distance if distance != inf else "infinite",
            "dimensionality_preserved": preserved,
        },
        args.output,
    )
    return 0


# ---------------------------------------------------------------------------
# fixtures


def cmd_fixtures(args) -> int:
    if args.action == "list":
        docs = []
        for name in fixtures.fixture_names():
            fx = fixtures.get_fixture(name)
            m = fx.matrix()
            docs.append(
                {
                    "name": fx.name,
                    "kind": fx.kind,
                    "rows": m.J,
                    "cols": m.L,
                    "puncture": list(fx.puncture),
                    "description": fx.description,
                }
            )
        _emit({"fixtures": docs}, None)
        return 0
    fx = fixtures.get_fixture(args.name)
    m = fx.matrix()
    if fx.kind == "weight":
        text = expansion.serialize_weight_matrix(m)
    else:
        text = expansion.serialize_poly_matrix(m)
    if args.action == "show":
        sys.stdout.write(text)
        return 0
    Path(args.path).write_text(text)
    written = [args.path]
    if args.puncture_out:
        Path(args.puncture_out).write_text(
            expansion.serialize_puncture_set(fx.puncture)
        )
        written.append(args.puncture_out)
    _emit({"written": written}, None)
    return 0


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcdist",
        description="Minimum-distance bounds, lifting, and girth tools for"
        " punctured quasi-cyclic LDPC codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--puncture", help="comma separated column indices, or 'none'")
        p.add_argument("--puncture-file", help="file with a puncture set line")
        p.add_argument("--output", help="also write the JSON report to this path")

    b = sub.add_parser("bound", help="minimum-distance upper bounds")
    b.add_argument("--weight", help="weight-matrix file or fixture name")
    b.add_argument("--poly", help="polynomial-matrix file or fixture name")
    b.add_argument("--theorem", choices=THEOREMS, default="best")
    b.add_argument("--max-removed-rows", type=int, default=None)
    b.add_argument("--budget", type=int, default=None,
                   help="max candidates per scan; enables the heuristic ordering")
    b.add_argument("--workers", type=int, default=None,
                   help="parallel workers (default: available cores)")
    b.add_argument("--witness-out", help="write the witness codeword (poly input)")
    add_common(b)
    b.set_defaults(func=cmd_bound)

    e = sub.add_parser("expand", help="lift a protomatrix")
    e.add_argument("--proto", required=True, help="weight-matrix file or fixture")
    e.add_argument("--shifts", help="shift-assignment file for step one")
    e.add_argument("--shifts2", help="shift-assignment file for step two")
    e.add_argument("--random-factor", type=int, help="random step-one lift factor")
    e.add_argument("--random-factor2", type=int, help="random step-two lift factor")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", required=True, help="output polynomial-matrix file")
    e.add_argument("--intermediate-out", help="write the intermediate weight matrix")
    e.add_argument("--binary-out", help="write the dense binary expansion")
    e.set_defaults(func=cmd_expand)

    g = sub.add_parser("girth", help="girth measurement and limits")
    g.add_argument("--limit", help="QC structural limit of this weight matrix")
    g.add_argument("--tree", help="tree bound of this weight matrix")
    g.add_argument("--block-length", type=int)
    g.add_argument("--measure-poly", help="measure girth of this polynomial matrix")
    g.add_argument("--measure-binary", help="measure girth of this binary matrix file")
    add_common(g)
    g.set_defaults(func=cmd_girth)

    v = sub.add_parser("verify", help="check a codeword against H(x)")
    v.add_argument("--poly", required=True)
    v.add_argument("--codeword", required=True)
    v.add_argument("--output")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact minimum distance of small codes")
    o.add_argument("--poly", help="polynomial-matrix file or fixture")
    o.add_argument("--binary", help="binary-matrix file")
    o.add_argument("--method", choices=oracle.METHODS, default="nullspace-gray")
    o.add_argument("--max-dimension", type=int, default=oracle.MAX_DIMENSION)
    add_common(o)
    o.set_defaults(func=cmd_oracle)

    f = sub.add_parser("fixtures", help="built-in matrices")
    f.add_argument("action", choices=("list", "show", "write"))
    f.add_argument("name", nargs="?")
    f.add_argument("path", nargs="?")
    f.add_argument("--puncture-out", help="also write the fixture's puncture set")
    f.set_defaults(func=cmd_fixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "fixtures" and args.action in ("show", "write"):
        if not args.name or (args.action == "write" and not args.path):
            parser.error("fixtures show NAME | fixtures write NAME PATH")
    try:
        return args.func(args)
    except ParseError as exc:
        _note(f"parse error: {exc}")
        return EXIT_PARSE
    except CapacityError as exc:
        _note(f"capacity error: {exc}")
        return EXIT_CAPACITY
    except (
        PreconditionError,
        ConformanceError,
        DomainError,
        ShapeError,
        ModulusMismatchError,
    ) as exc:
        _note(f"precondition violated: {exc}")
        return EXIT_PRECONDITION
    except QcError as exc:  # pragma: no cover - safety net
        _note(f"error: {exc}")
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
