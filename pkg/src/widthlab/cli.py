"""Command-line front door.

One subcommand per library operation; matrices travel in the shared text
format, sequence models in the ``geom(q) / pow(p) / supergeom(b) / shift /
scale / samples / spectrum(file)`` grammar.  ``--json`` switches to a JSON
report whose reals are decimal strings with 17 significant digits, making
output byte-identical across runs for identical argv.

Exit codes: 0 when a verdict was produced (even a negative one), 1 on input
errors, 2 on internal errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

import numpy as np

from . import (
    ClassificationError,
    InfeasibleError,
    InputError,
    NotCoverableError,
    UnsolvableError,
    WidthlabError,
    classify_WCG,
    classify_WE,
    classify_WG,
    covers,
    ellipsoid,
    expanding_dual_check,
    factor_pair,
    find_separating_projection,
    is_expanding,
    is_lacunary,
    is_weakly_full,
    kolmogorov_widths,
    match_invertible,
    parse_model,
    range_equiv,
    read_matrix,
    rigid_cover_search,
    schmidt_cover,
    section_spectrum,
    singular_spectrum,
    solve_xay,
    wot_density_experiment,
    write_matrix,
)
from .rigid import RigidCompactSpec

__all__ = ["run", "main"]


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _jsonify(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return _fmt(obj)
    if isinstance(obj, np.ndarray):
        if obj.ndim == 1:
            return [_fmt(v) for v in obj]
        return [[_fmt(v) for v in row] for row in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: _jsonify(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return _fmt(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    raise WidthlabError(f"internal: cannot serialize {type(obj)!r}")


def _emit(args, payload: dict, human_lines) -> None:
    if args.json:
        print(json.dumps(_jsonify(payload), indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


class _ArgumentParser(argparse.ArgumentParser):
    """argparse variant that reports bad usage as an input error (exit 1)."""

    def error(self, message):
        raise InputError(message)


def _dims(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InputError(f"dimension list must be comma-separated integers, got {text!r}") from None


def _codim(text: str):
    if text.strip().lower() in {"inf", "infinity"}:
        return math.inf
    try:
        return int(text)
    except ValueError:
        raise InputError(f"codimension must be an integer or 'inf', got {text!r}") from None


def _columns_of(path: str) -> list[np.ndarray]:
    mat = read_matrix(path)
    return [mat[:, j] for j in range(mat.shape[1])]


def _tag_line(verdict) -> str:
    if verdict.tag == "KDim":
        return f"KDim({verdict.k})"
    return verdict.tag


def _build_parser() -> _ArgumentParser:
    top = _ArgumentParser(prog="widthlab", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    def cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit a JSON report (default: human-readable)")
        return p

    p = cmd("widths", "s-numbers and Kolmogorov widths of a matrix")
    p.add_argument("matrix", help="matrix file")

    p = cmd("section", "spectrum of the section of an ellipsoid by a subspace")
    p.add_argument("matrix", help="generator matrix file")
    p.add_argument("subspace", help="orthonormal columns of the subspace being cut out")

    p = cmd("classify-seq", "lacunarity verdict for a sequence model")
    p.add_argument("--model", required=True, help="sequence model expression")
    p.add_argument("--tau", type=float, default=1e-3, help="windowed ratio threshold (default 1e-3)")
    p.add_argument("--window", type=int, default=64, help="surrogate window length (default 64)")

    p = cmd("cover-test", "does T map one ellipsoid over another?")
    p.add_argument("--t", required=True, help="operator matrix file")
    p.add_argument("--e1", required=True, help="source generator file")
    p.add_argument("--e2", required=True, help="target generator file")
    p.add_argument("--tol", type=float, default=1e-9, help="PSD slack (default 1e-9)")

    p = cmd("cover-make", "minimal-norm covering operator between ellipsoids")
    p.add_argument("--e1", required=True, help="source generator file")
    p.add_argument("--e2", required=True, help="target generator file")
    p.add_argument("--out", help="write the covering operator to this matrix file")

    for name, help_text in (
        ("classify-wg", "closure of the two-ellipsoid covering set"),
        ("classify-wcg", "compact-operator covering closure (strict variant)"),
    ):
        p = cmd(name, help_text)
        p.add_argument("--a", required=True, help="width model of the source ellipsoid")
        p.add_argument("--b", required=True, help="width model of the target ellipsoid")
        p.add_argument("--k-max", type=int, default=16, help="shift budget for sampled models (default 16)")

    p = cmd("range-equiv", "are two operator ranges equal, and between which scalings?")
    p.add_argument("matrix1", help="first generator file")
    p.add_argument("matrix2", help="second generator file")

    p = cmd("weakly-full", "weak fullness of the algebra preserving an operator range")
    p.add_argument("--model", required=True, help="width model of a generating ellipsoid")
    p.add_argument("--codim", required=True, type=_codim, help="codimension of the range closure (integer or 'inf')")

    p = cmd("dichotomy", "constrained-cover yield across a dimension tower")
    p.add_argument("--model", required=True, help="sequence model expression")
    p.add_argument("--m", required=True, type=int, help="number of interpolation constraints")
    p.add_argument("--dims", required=True, type=_dims, help="comma-separated dimensions, e.g. 4,8,16")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")

    p = cmd("solve-xay", "solve X A Y = B")
    p.add_argument("--a", required=True, help="matrix file for A")
    p.add_argument("--b", required=True, help="matrix file for B")
    p.add_argument("--out-x", help="write X to this matrix file")
    p.add_argument("--out-y", help="write Y to this matrix file")

    p = cmd("factor", "exact factorization X Y = B through a doubled space")
    p.add_argument("--b", required=True, help="matrix file for B")
    p.add_argument("--out-x", help="write X to this matrix file")
    p.add_argument("--out-y", help="write Y to this matrix file")

    p = cmd("match-inv", "invertible V matching vector constraints on V and V^-1")
    p.add_argument("--xs", required=True, help="constraint vectors for V, as matrix columns")
    p.add_argument("--xs-target", required=True, help="target vectors for V, as matrix columns")
    p.add_argument("--ys", required=True, help="constraint vectors for V^-1, as matrix columns")
    p.add_argument("--ys-target", required=True, help="target vectors for V^-1, as matrix columns")
    p.add_argument("--eps", required=True, type=float, help="constraint tolerance")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--out", help="write V to this matrix file")

    p = cmd("separate", "projection keeping a family of operators independent in trace duality")
    p.add_argument("matrices", nargs="+", help="operator matrix files")
    p.add_argument("--out", help="write the projection to this matrix file")

    p = cmd("expanding", "does T expand the seminorm x -> ||A x||?")
    p.add_argument("--t", required=True, help="matrix file for T")
    p.add_argument("--a", required=True, help="matrix file for A")
    p.add_argument("--tol", type=float, default=1e-9, help="PSD slack (default 1e-9)")
    p.add_argument("--dual-check", action="store_true", help="also run the transposed covering cross-check")

    p = cmd("classify-we", "closure of the expanding set from the s-number model of A")
    p.add_argument("--model", required=True, help="s-number model of A")
    p.add_argument("--kernel-trivial", action="store_true", help="assert ker A = {0} (default: nontrivial)")

    p = cmd("rigid", "exhaustive rigidity certificate for the two-points-per-axis compact")
    p.add_argument("--spec", required=True, help="JSON file with fields n, alphas, betas")
    p.add_argument("--norm-bound", required=True, type=float, help="norm cap for admissible covers")

    return top


def _run_command(args) -> None:
    if args.command == "widths":
        spec = singular_spectrum(read_matrix(args.matrix))
        widths = kolmogorov_widths(ellipsoid(read_matrix(args.matrix)))
        _emit(args,
              {"s_numbers": spec.values, "widths": widths.values, "rank": spec.rank},
              [f"s-numbers: {' '.join(_fmt(v) for v in spec.values)}",
               f"widths:    {' '.join(_fmt(v) for v in widths.values)}",
               f"rank:      {spec.rank}"])

    elif args.command == "section":
        e = ellipsoid(read_matrix(args.matrix))
        spec = section_spectrum(e, read_matrix(args.subspace))
        _emit(args,
              {"section_s_numbers": spec.values, "rank": spec.rank},
              [f"section s-numbers: {' '.join(_fmt(v) for v in spec.values)}",
               f"rank:              {spec.rank}"])

    elif args.command == "classify-seq":
        verdict = is_lacunary(parse_model(args.model), tau=args.tau, window=args.window)
        _emit(args, verdict,
              [f"lacunary:      {verdict.lacunary}",
               f"witness ratio: {_fmt(verdict.witness_ratio)}",
               f"exact:         {verdict.exact}"])

    elif args.command == "cover-test":
        cert = covers(read_matrix(args.t), ellipsoid(read_matrix(args.e1)),
                      ellipsoid(read_matrix(args.e2)), tol=args.tol)
        _emit(args, cert,
              [f"covers:     {cert.holds}",
               f"psd margin: {_fmt(cert.psd_margin)}"]
              + ([f"norm:       {_fmt(cert.norm)}"] if cert.norm is not None else []))

    elif args.command == "cover-make":
        d, c = schmidt_cover(ellipsoid(read_matrix(args.e1)), ellipsoid(read_matrix(args.e2)))
        if args.out:
            write_matrix(args.out, d)
        _emit(args, {"norm": c, "operator": d},
              [f"norm: {_fmt(c)}"] + ([f"operator written to {args.out}"] if args.out else []))

    elif args.command in ("classify-wg", "classify-wcg"):
        classify = classify_WG if args.command == "classify-wg" else classify_WCG
        verdict = classify(parse_model(args.a), parse_model(args.b), k_max=args.k_max)
        _emit(args, verdict, [_tag_line(verdict)])

    elif args.command == "range-equiv":
        eq = range_equiv(read_matrix(args.matrix1), read_matrix(args.matrix2))
        lines = [f"same range: {eq.same_range}"]
        if eq.same_range:
            lines.append(f"c: {_fmt(eq.c)}  C: {_fmt(eq.C)}")
        _emit(args, eq, lines)

    elif args.command == "weakly-full":
        verdict = is_weakly_full(parse_model(args.model), args.codim)
        _emit(args, verdict,
              [f"weakly full: {verdict.weakly_full}",
               f"case:        {verdict.case}"])

    elif args.command == "dichotomy":
        report = wot_density_experiment(parse_model(args.model), args.m, args.dims, args.seed)
        lines = ["dim  rho"] + [f"{d:<4d} {_fmt(r)}" for d, r in zip(report.dims, report.rho)]
        lines.append(f"model lacunary: {report.model_lacunary}")
        _emit(args, report, lines)

    elif args.command == "solve-xay":
        pair = solve_xay(read_matrix(args.a), read_matrix(args.b))
        if args.out_x:
            write_matrix(args.out_x, np.asarray(pair.X))
        if args.out_y:
            write_matrix(args.out_y, np.asarray(pair.Y))
        _emit(args, {"residual": pair.residual, "X": pair.X, "Y": pair.Y},
              [f"residual: {_fmt(pair.residual)}"])

    elif args.command == "factor":
        pair = factor_pair(read_matrix(args.b))
        if args.out_x:
            write_matrix(args.out_x, np.asarray(pair.X))
        if args.out_y:
            write_matrix(args.out_y, np.asarray(pair.Y))
        _emit(args, {"residual": pair.residual, "X": pair.X, "Y": pair.Y},
              [f"residual: {_fmt(pair.residual)}"])

    elif args.command == "match-inv":
        cert = match_invertible(_columns_of(args.xs), _columns_of(args.xs_target),
                                _columns_of(args.ys), _columns_of(args.ys_target),
                                eps=args.eps, seed=args.seed)
        if args.out:
            write_matrix(args.out, np.asarray(cert.operator))
        _emit(args, cert,
              [f"condition:   {_fmt(cert.condition)}",
               f"x residuals: {' '.join(_fmt(r) for r in cert.x_residuals)}",
               f"y residuals: {' '.join(_fmt(r) for r in cert.y_residuals)}"])

    elif args.command == "separate":
        p = find_separating_projection([read_matrix(f) for f in args.matrices])
        if args.out:
            write_matrix(args.out, p)
        _emit(args, {"projection": p, "rank": int(round(np.trace(p)))},
              [f"projection rank: {int(round(np.trace(p)))}"])

    elif args.command == "expanding":
        t, a = read_matrix(args.t), read_matrix(args.a)
        verdict = is_expanding(t, a, tol=args.tol)
        payload = {"expanding": verdict.expanding, "margin": verdict.margin}
        lines = [f"expanding: {verdict.expanding}", f"margin:    {_fmt(verdict.margin)}"]
        if args.dual_check:
            agree = expanding_dual_check(t, a)
            payload["dual_agreement"] = agree
            lines.append(f"dual agreement: {agree}")
        _emit(args, payload, lines)

    elif args.command == "classify-we":
        verdict = classify_WE(parse_model(args.model), kernel_trivial=args.kernel_trivial)
        _emit(args, verdict, [_tag_line(verdict)] + ([verdict.note] if verdict.note else []))

    elif args.command == "rigid":
        try:
            with open(args.spec, "r", encoding="ascii") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise InputError(f"{args.spec}: cannot read: {exc.strerror or exc}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.spec}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        try:
            spec = RigidCompactSpec(n=int(raw["n"]), alphas=tuple(raw["alphas"]),
                                    betas=tuple(raw["betas"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"{args.spec}: expected fields n, alphas, betas ({exc})") from None
        report = rigid_cover_search(spec, norm_bound=args.norm_bound)
        _emit(args, report,
              [f"identity only:   {report.identity_only}",
               f"admissible maps: {report.admissible_maps}",
               f"norm threshold:  {_fmt(report.max_norm_bound)}",
               f"edge graph:      out-degree min {report.edge_graph_stats.out_degree_min}, "
               f"in-degree max {report.edge_graph_stats.in_degree_max}"])

    else:  # pragma: no cover - argparse enforces the choice
        raise InputError(f"unknown command {args.command!r}")


def run(argv) -> int:
    """Dispatch one command; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _run_command(args)
        return 0
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (InputError, NotCoverableError, ClassificationError,
            UnsolvableError, InfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except WidthlabError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))
