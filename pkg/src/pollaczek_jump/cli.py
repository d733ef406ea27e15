"""Command-line front end.

    pollaczek-jump forward --pair power-law --beta 1 -N 64 -o a.json
    pollaczek-jump reconstruct a.json -M 24 --geometry x -o F.csv
    pollaczek-jump sweep a.json --pair power-law --noise 1e-3 --m-range 2:40
    pollaczek-jump check-hausdorff a.json --exact
    pollaczek-jump diagnose --pair exponential --sigma -0.5 --sigma 0

Exit codes: 0 success (a failing diagnostic is data, not an error),
2 malformed input, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from fractions import Fraction

import numpy as np

from . import hausdorff
from .forward import (PAIRS, AnalyticPair, jump_bound_check, make_pair,
                      plancherel_check)
from .quadrature import QuadratureError
from .samples import MomentSequence, default_grid
from .transform import (CONVENTION, DEFAULT_M, DEFAULT_N, ReconstructionConfig,
                        TruncationWarning, add_noise, evaluate_expansion,
                        expansion_interpolant, pollaczek_coefficients,
                        pollaczek_coefficients_integral, reconstruct, truncation_sweep)

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3
DEFAULT_SIGMAS = (-0.5, 0.0, 0.5, 1.0)
UNVERIFIED = "unverified moment hypothesis"


class InputError(Exception):
    pass


# --- file formats ---------------------------------------------------------

def coefficient_document(seq: MomentSequence, provenance: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "label": seq.label,
        "coefficients": [float(v) for v in seq.values],
        "epsilon": seq.noise_level,
        "provenance": provenance,
    }


def parse_coefficients(doc) -> MomentSequence:
    if not isinstance(doc, dict):
        raise InputError("coefficient file must hold a JSON object")
    if str(doc.get("schema_version")) != SCHEMA_VERSION:
        raise InputError(f"unsupported schema_version {doc.get('schema_version')!r}")
    coeffs = doc.get("coefficients")
    if not isinstance(coeffs, list) or not coeffs:
        raise InputError("'coefficients' must be a non-empty array")
    if not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in coeffs):
        raise InputError("'coefficients' must contain numbers only")
    eps = doc.get("epsilon")
    if eps is not None and (not isinstance(eps, (int, float)) or not eps >= 0):
        raise InputError("'epsilon' must be a non-negative number or null")
    try:
        return MomentSequence(np.array(coeffs, dtype=float), eps, str(doc.get("label", "")))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def read_coefficients(path: str) -> MomentSequence:
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return parse_coefficients(doc)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc.strerror}") from exc


def _dump_json(doc: dict) -> str:
    return json.dumps(_jsonable(doc), indent=2) + "\n"


def _csv(header: str, columns: str, rows) -> str:
    lines = [f"# {header}", columns]
    lines += [",".join(repr(float(v)) if not isinstance(v, int) else str(v) for v in row)
              for row in rows]
    return "\n".join(lines) + "\n"


# --- argument helpers -----------------------------------------------------

def parse_grid(text: str | None, geometry: str) -> np.ndarray:
    if text is None:
        return default_grid(geometry)
    try:
        lo, hi, count = text.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError:
        raise InputError(f"grid must be min:max:count, got {text!r}") from None
    if count < 2 or not lo < hi:
        raise InputError("grid needs min < max and count >= 2")
    if geometry == "x":
        if lo <= 1.0:
            raise InputError("x-grid must lie in x > 1")
        return np.geomspace(lo, hi, count)
    if lo <= 0.0:
        raise InputError("v-grid must lie in v > 0")
    return np.linspace(lo, hi, count)


def parse_m_range(text: str) -> list[int]:
    """'a:b' inclusive, or '' for an empty sweep."""
    if text.strip() == "":
        return []
    try:
        lo, hi = (int(s) for s in text.split(":"))
    except ValueError:
        raise InputError(f"M-range must be lo:hi, got {text!r}") from None
    if lo < 0:
        raise InputError("M-range must be non-negative")
    return list(range(lo, hi + 1))


def _pair(args) -> AnalyticPair:
    try:
        return make_pair(args.pair, args.beta)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _input_sequence(args) -> tuple[MomentSequence, AnalyticPair | None]:
    if getattr(args, "input", None):
        return read_coefficients(args.input), None
    if getattr(args, "pair", None):
        pair = _pair(args)
        return pair.coefficients(args.num_coeffs), pair
    raise InputError("give an input file or --pair")


def _hausdorff_flag(seq: MomentSequence) -> bool:
    report = hausdorff.hausdorff_report(seq.values, n_max=min(seq.N, 30))
    if report.unbounded_trend:
        print(f"warning: {UNVERIFIED}: {report.verdict}", file=sys.stderr)
    return report.unbounded_trend


# --- commands -------------------------------------------------------------

def cmd_forward(args) -> int:
    if args.num_coeffs < 0:
        raise InputError("-N must be non-negative")
    pair = _pair(args)
    seq = pair.coefficients(args.num_coeffs)
    provenance = f"closed-form coefficients of {pair.label}"
    if args.noise:
        seq = add_noise(seq, args.noise, args.seed)
        provenance += f"; uniform noise eps={args.noise!r} seed={args.seed}"
    _emit(_dump_json(coefficient_document(seq, provenance)), args.output)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    seq, _ = _input_sequence(args)
    grid = parse_grid(args.grid, args.geometry)
    M = args.degree
    if M < 0:
        raise InputError("-M must be non-negative")
    flagged = _hausdorff_flag(seq)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationWarning)
        coeffs = pollaczek_coefficients(seq, M)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    cfg = ReconstructionConfig(seq.N, M, args.geometry, grid)
    F = reconstruct(coeffs, cfg)
    header = (f"N={seq.N} M={M} geometry={args.geometry} label={seq.label or '-'} "
              f"convention={CONVENTION}" + (f" note={UNVERIFIED}" if flagged else ""))
    _emit(_csv(header, "abscissa,value", zip(F.abscissa, F.values)), args.output)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not args.pair:
        raise InputError("sweep needs a reference --pair")
    pair = _pair(args)
    if args.input:
        seq = read_coefficients(args.input)
    else:
        seq = pair.coefficients(args.num_coeffs)
    degrees = parse_m_range(args.m_range)
    grid = parse_grid(args.grid, args.geometry)
    cfg = ReconstructionConfig(seq.N, max(degrees, default=0), args.geometry, grid)
    reference = pair.sample(args.geometry, grid)
    noisy = add_noise(seq, args.noise, args.seed)
    clean = truncation_sweep(seq, reference, degrees, cfg)
    dirty = truncation_sweep(noisy, reference, degrees, cfg)
    header = (f"reference={pair.label} N={seq.N} geometry={args.geometry} "
              f"epsilon={args.noise!r} seed={args.seed}")
    rows = [(int(M), e0, e1) for M, e0, e1 in zip(degrees, clean.errors, dirty.errors)]
    _emit(_csv(header, "M,l2_error_noiseless,l2_error_noisy", rows), args.output)
    return EXIT_OK


def cmd_check_hausdorff(args) -> int:
    seq, _ = _input_sequence(args)
    values = hausdorff.rationalize(seq.values) if args.exact else seq.values
    n_max = seq.N if args.n_max is None else min(args.n_max, seq.N)
    try:
        report = hausdorff.hausdorff_report(values, n_max=n_max, exact=args.exact)
    except OverflowError as exc:
        raise InputError(f"{exc} (pass --exact)") from exc
    doc = {
        "label": seq.label,
        "mode": "exact" if args.exact else "float",
        "S": report.per_n_statistic,
        "T": report.per_n_watanabe,
        "max_S": report.max_statistic,
        "cauchy_schwarz_ok": report.cauchy_schwarz_ok,
        "unbounded_trend": report.unbounded_trend,
        "verdict": report.verdict,
    }
    _emit(_dump_json(doc), args.output)
    return EXIT_OK


def _dual_route(atilde, A, M: int) -> float:
    d_series = A.d()
    return max(abs(pollaczek_coefficients_integral(atilde, m) - d_series[m])
               for m in range(M + 1))


def cmd_diagnose(args) -> int:
    sigmas = args.sigma or list(DEFAULT_SIGMAS)
    if any(s < -0.5 for s in sigmas):
        raise InputError("sigma must be >= -1/2")
    sigmas = sorted(set(sigmas))
    seq, pair = _input_sequence(args)
    M = min(args.degree, 10)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        coeffs = pollaczek_coefficients(seq, M)
    if pair is not None:
        atilde, geometry, full = pair.interpolant, pair.geometry, False
        F = pair.jump
        grid = default_grid(geometry)
        source = f"closed-form pair {pair.label}"
    else:
        _hausdorff_flag(seq)
        # the truncated expansion, which also lives on v < 0
        atilde, geometry, full = expansion_interpolant(coeffs), "v", True
        F = lambda v: evaluate_expansion(coeffs, "v", v)  # noqa: E731
        grid = default_grid("v")
        source = f"degree-{M} expansion of {seq.label or 'input file'}"
    rows = []
    for s in sigmas:
        pl = plancherel_check(atilde, F, s, geometry, full_line=full)
        jb = jump_bound_check(atilde, F, s, grid, geometry)
        rows.append({"sigma": s, "hardy_norm": pl.lhs, "jump_energy": pl.rhs,
                     "plancherel_residual": pl.residual, "jump_bound": jb.status,
                     "l1_norm": jb.l1_norm})
    norms = [r["hardy_norm"] for r in rows]
    doc = {
        "source": source,
        "geometry": geometry,
        "sigma_table": rows,
        "hardy_non_increasing": all(b <= a * (1 + 1e-9) + 1e-300
                                    for a, b in zip(norms, norms[1:])),
        "dual_route_max_abs_diff": _dual_route(atilde, coeffs, M),
        "dual_route_degree": M,
    }
    _emit(_dump_json(doc), args.output)
    return EXIT_OK


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pollaczek-jump",
                                description="Jump-function reconstruction from series coefficients.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, input_file=True, pair=True):
        if input_file:
            sp.add_argument("input", nargs="?", help="coefficient JSON file ('-' for stdin)")
        if pair:
            sp.add_argument("--pair", choices=sorted(PAIRS))
            sp.add_argument("--beta", type=float)
            sp.add_argument("-N", "--num-coeffs", type=int, default=DEFAULT_N,
                            help="highest coefficient index for built-in pairs")
        sp.add_argument("-o", "--output", help="output path (default stdout)")

    sp = sub.add_parser("forward", help="write the coefficient file of a built-in pair")
    common(sp, input_file=False)
    sp.add_argument("--noise", type=float, default=0.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_forward)

    sp = sub.add_parser("reconstruct", help="sample the reconstructed jump (CSV)")
    common(sp)
    sp.add_argument("-M", "--degree", type=int, default=DEFAULT_M)
    sp.add_argument("--geometry", choices=("v", "x"), default="x")
    sp.add_argument("--grid", help="min:max:count")
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("sweep", help="relative L2 error against a reference pair over M")
    common(sp)
    sp.add_argument("--noise", type=float, default=1e-3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--m-range", default="2:40", help="lo:hi inclusive, '' for none")
    sp.add_argument("--geometry", choices=("v", "x"), default="x")
    sp.add_argument("--grid", help="min:max:count")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("check-hausdorff", help="S_n and T_n statistics (JSON)")
    common(sp)
    sp.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    sp.add_argument("--n-max", type=int)
    sp.set_defaults(func=cmd_check_hausdorff)

    sp = sub.add_parser("diagnose", help="Hardy norms, Plancherel and jump bounds (JSON)")
    common(sp)
    sp.add_argument("--sigma", type=float, action="append")
    sp.add_argument("-M", "--degree", type=int, default=10)
    sp.set_defaults(func=cmd_diagnose)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "noise", 0.0) is not None and getattr(args, "noise", 0.0) < 0:
        print("error: --noise must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except QuadratureError as exc:
        print(f"error: numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
