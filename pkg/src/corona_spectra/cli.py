"""Command-line interface.

Exit codes: 0 success, 2 input/validation error, 3 closed form
inapplicable, 4 closed form and oracle disagree beyond tolerance.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import List, Optional, Sequence

import numpy as np

from .closed_form import spectrum_closed
from .corona_ops import CoronaKind, CoronaOperands, build_corona, random_regular_operands
from .errors import (ClosedFormInapplicableError, ConsistencyError, CoronaSpectraError,
                     GraphValidationError, InvalidParameterError, UndefinedMatrixError)
from .graph_core import FAMILIES, format_edge_list, make_named_graph, read_graph
from .graph_invariants import COSPECTRAL_TOL, invariant_report, is_cospectral
from .matrix_engine import (DEFAULT_GROUPING_TOL, MATRIX_KINDS, assemble_block_normalized_laplacian,
                            matrix_of, symmetric_eigenvalues)

EXIT_OK, EXIT_INPUT, EXIT_CLOSED, EXIT_CONSISTENCY = 0, 2, 3, 4

SEED_ENV = "CORONA_SPECTRA_SEED"


class UsageError(CoronaSpectraError):
    pass


# -- deterministic JSON ---------------------------------------------------------

def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    s = format(x, ".17g")
    if "e" not in s and "." not in s and "inf" not in s:
        s += ".0"
    return s


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with sorted keys and floats printed to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}"{k}": {dumps(obj[k], indent, _level + 1)}' for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# -- helpers ----------------------------------------------------------------------

def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _positive(value: str) -> float:
    x = float(value)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"tolerance must be strictly positive, got {value}")
    return x


def _load_inputs(paths: Sequence[str], kind: Optional[str]):
    """Return ``(graph, kind, ops)``; ``ops`` is None for a bare graph."""
    if len(paths) == 1:
        if kind is not None:
            raise UsageError("--kind needs three operand files G1 G2 G3")
        return read_graph(paths[0]), None, None
    if len(paths) == 3:
        if kind is None:
            raise UsageError("three inputs given: pass --kind svev|svee")
        ops = CoronaOperands(*(read_graph(p) for p in paths))
        k = CoronaKind.parse(kind)
        return build_corona(k, ops), k, ops
    raise UsageError(f"expected one graph file or three operand files, got {len(paths)}")


def _spectrum_table(entries) -> str:
    lines = [f"{'value':>22}  multiplicity"]
    lines += [f"{v:22.15g}  {k}" for v, k in entries]
    return "\n".join(lines) + "\n"


# -- commands ---------------------------------------------------------------------

def cmd_gen(args) -> int:
    G = make_named_graph(args.family, args.k)
    _emit(format_edge_list(G), args.out)
    return EXIT_OK


def cmd_corona(args) -> int:
    inputs = [args.g1, args.g2, args.g3]
    if args.out:
        target = os.path.realpath(args.out)
        if any(os.path.realpath(p) == target for p in inputs):
            raise UsageError(f"refusing to overwrite input file {args.out}")
    ops = CoronaOperands(*(read_graph(p) for p in inputs))
    G = build_corona(args.kind, ops)
    _emit(format_edge_list(G), args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    G, kind, ops = _load_inputs(args.inputs, args.kind)
    gtol = args.grouping_tol
    status = EXIT_OK
    oracle = closed = None
    if args.method in ("closed", "both"):
        if ops is None:
            raise ClosedFormInapplicableError("closed form needs corona operands (--kind and G1 G2 G3)")
        if args.matrix != "normalized_laplacian":
            raise ClosedFormInapplicableError("closed form is only available for the normalized Laplacian")
        closed = spectrum_closed(kind, ops, grouping_tol=gtol)
    if args.method in ("oracle", "both"):
        oracle = symmetric_eigenvalues(matrix_of(G, args.matrix), gtol)

    if args.method == "both":
        dev = closed.max_deviation(oracle)
        report = closed.to_dict("closed-form", max_deviation_vs_oracle=dev)
        if not dev <= args.tol:
            status = EXIT_CONSISTENCY
        spec = closed
    elif closed is not None:
        report, spec = closed.to_dict("closed-form"), closed
    else:
        report, spec = oracle.to_dict("oracle"), oracle

    if args.plain:
        text = _spectrum_table(spec.entries)
        if "max_deviation_vs_oracle" in report:
            text += f"max deviation vs oracle: {report['max_deviation_vs_oracle']:.3e}\n"
    else:
        text = dumps(report) + "\n"
    _emit(text, args.out)
    if status:
        print(f"error: closed form deviates from oracle by {report['max_deviation_vs_oracle']:.3e} "
              f"> tol {args.tol:g}", file=sys.stderr)
    return status


def cmd_invariants(args) -> int:
    G, kind, ops = _load_inputs(args.inputs, args.kind)
    report = invariant_report(G, kind, ops, grouping_tol=args.grouping_tol)
    d = report.to_dict()
    if args.plain:
        lines = [f"n = {report.n}, m = {report.m}"]
        for name in ("tau", "kf_star", "kemeny"):
            if name in d:
                for method, value in sorted(d[name].items()):
                    lines.append(f"{name:8s} {method:11s} {value}")
        for name, reason in sorted(report.omitted.items()):
            lines.append(f"{name:8s} omitted     {reason}")
        lines.append(f"max relative deviation {report.max_rel_dev:.3e}")
        text = "\n".join(lines) + "\n"
    else:
        text = dumps(d) + "\n"
    _emit(text, args.out)
    if not report.max_rel_dev <= args.tol:
        print(f"error: methods disagree, max relative deviation {report.max_rel_dev:.3e}", file=sys.stderr)
        return EXIT_CONSISTENCY
    return EXIT_OK


def cmd_cospectral(args) -> int:
    a, b = read_graph(args.a), read_graph(args.b)
    sa = symmetric_eigenvalues(matrix_of(a, args.matrix), args.grouping_tol)
    sb = symmetric_eigenvalues(matrix_of(b, args.matrix), args.grouping_tol)
    same = is_cospectral(sa, sb, args.tol)
    dev = sa.max_deviation(sb)
    report = {"cospectral": same, "order_a": sa.order, "order_b": sb.order,
              "max_deviation": dev if math.isfinite(dev) else None, "tol": args.tol,
              "matrix": args.matrix}
    text = (("cospectral" if same else "not cospectral") + "\n") if args.plain else dumps(report) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    """Closed form versus oracle on random regular operand triples."""
    seed = int(os.environ.get(SEED_ENV, "0"))
    rng = np.random.default_rng(seed)
    rows = []
    worst = 0.0
    for _ in range(args.trials):
        ops = random_regular_operands(rng, args.max_n1, args.max_n)
        G = build_corona(args.kind, ops)
        L = matrix_of(G, "normalized_laplacian")
        oracle = symmetric_eigenvalues(L, args.grouping_tol)
        closed = spectrum_closed(args.kind, ops, grouping_tol=args.grouping_tol)
        dev = closed.max_deviation(oracle)
        block = float(np.max(np.abs(assemble_block_normalized_laplacian(args.kind, ops) - L)))
        worst = max(worst, dev)
        rows.append({"n": [ops.n1, ops.n2, ops.n3], "r": [ops.r1, ops.r2, ops.r3],
                     "order": G.n, "spectrum_dev": dev, "block_dev": block})
    ok = worst <= args.tol
    report = {"kind": CoronaKind.parse(args.kind).value, "seed": seed, "trials": rows,
              "max_spectrum_dev": worst, "tol": args.tol, "ok": ok}
    if args.plain:
        text = "".join(f"{r['n']} r={r['r']} order={r['order']} dev={r['spectrum_dev']:.2e}\n" for r in rows)
        text += f"max deviation {worst:.3e} ({'ok' if ok else 'FAIL'})\n"
    else:
        text = dumps(report) + "\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_CONSISTENCY


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="corona-spectra",
                                description="SVEV/SVEE corona graphs and their normalized Laplacian spectra.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, tol_default):
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--plain", action="store_true", help="human-readable output instead of JSON")
        sp.add_argument("--tol", type=_positive, default=tol_default)
        sp.add_argument("--grouping-tol", type=_positive, default=DEFAULT_GROUPING_TOL)

    sp = sub.add_parser("gen", help="write a named graph")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("k", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("corona", help="build an SVEV or SVEE corona from three graph files")
    sp.add_argument("--kind", required=True, choices=[k.value for k in CoronaKind])
    sp.add_argument("g1")
    sp.add_argument("g2")
    sp.add_argument("g3")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_corona)

    sp = sub.add_parser("spectrum", help="spectrum of a graph, or of a corona given by its operands")
    sp.add_argument("inputs", nargs="+", metavar="FILE")
    sp.add_argument("--kind", choices=[k.value for k in CoronaKind])
    sp.add_argument("--method", choices=("closed", "oracle", "both"), default="oracle")
    sp.add_argument("--matrix", choices=MATRIX_KINDS, default="normalized_laplacian")
    common(sp, 1e-8)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("invariants", help="spanning trees, Kf* and Kemeny's constant")
    sp.add_argument("inputs", nargs="+", metavar="FILE")
    sp.add_argument("--kind", choices=[k.value for k in CoronaKind])
    common(sp, 1e-6)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("cospectral", help="compare the spectra of two graphs")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--matrix", choices=MATRIX_KINDS, default="normalized_laplacian")
    common(sp, COSPECTRAL_TOL)
    sp.set_defaults(func=cmd_cospectral)

    sp = sub.add_parser("verify", help=f"closed form vs oracle on random operands (seed from ${SEED_ENV})")
    sp.add_argument("--kind", required=True, choices=[k.value for k in CoronaKind])
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--max-n1", type=int, default=10)
    sp.add_argument("--max-n", type=int, default=4)
    common(sp, 1e-8)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ClosedFormInapplicableError as exc:
        print(f"error: closed form inapplicable: {exc}", file=sys.stderr)
        return EXIT_CLOSED
    except ConsistencyError as exc:
        print(f"error: consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (GraphValidationError, InvalidParameterError, UndefinedMatrixError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CoronaSpectraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
