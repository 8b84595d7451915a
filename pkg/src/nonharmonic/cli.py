"""Command line front end: synthesize, reconstruct, and compare models.

Exit codes: 0 success/converged, 2 not converged (or model mismatch in
``compare``), 3 input error, 4 numerical pipeline error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import errors
from .fourier import coefficients, read_coefficients_csv, write_coefficients_csv
from .model import Kind, SignalModel, load_model, save_model
from .recovery import reconstruct

EXIT_OK = 0
EXIT_NOT_CONVERGED = 2
EXIT_INPUT_ERROR = 3
EXIT_NUMERICAL_ERROR = 4


def parse_indices(spec: str) -> list[int]:
    """Parse '1..40' ranges and comma lists like '0,1..8,10'."""
    out: list[int] = []
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ".." in chunk:
            lo_str, hi_str = chunk.split("..", 1)
            lo, hi = int(lo_str), int(hi_str)
            if hi < lo:
                raise ValueError(f"empty range {chunk!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(chunk))
    if not out:
        raise ValueError(f"no indices in {spec!r}")
    if len(set(out)) != len(out):
        raise ValueError(f"duplicate indices in {spec!r}")
    return out


def _add_pipeline_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=1e-13, help="rational fit residual tolerance")
    parser.add_argument("--mmax", type=int, default=None, help="maximum rational support size")
    parser.add_argument("--weight-eps", type=float, default=1e-8, help="weight pruning threshold")
    parser.add_argument("--residue-eps", type=float, default=1e-8, help="Froissart residue threshold")
    parser.add_argument("--periodic-eps", type=float, default=1e-6, help="periodic spike threshold")
    parser.add_argument("--imag-eps", type=float, default=1e-8, help="pole imaginary-part tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nonharmonic",
        description="Recover sparse cosine/cosh sums from classical Fourier coefficients.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser(
        "synth",
        aliases=["coeffs"],
        help="compute Fourier coefficients of a model file",
    )
    synth.add_argument("model", help="model JSON file")
    synth.add_argument("--period", type=float, default=None, help="override the model file period")
    synth.add_argument("--indices", required=True, help="e.g. '1..20' or '0,1,4..9'")
    synth.add_argument("--include-c0", action="store_true", help="also emit the n=0 coefficient")
    synth.add_argument("--out", required=True, help="output coefficient CSV")

    rec = sub.add_parser("reconstruct", help="recover a model from a coefficient CSV")
    rec.add_argument("coeffs", help="coefficient CSV file (header n,re,im)")
    rec.add_argument("--period", type=float, required=True, help="analysis interval length P")
    rec.add_argument("--out", required=True, help="output report JSON")
    rec.add_argument("--model-out", default=None, help="also write the recovered model JSON here")
    _add_pipeline_flags(rec)

    cmp_ = sub.add_parser("compare", help="sup-norm parameter errors between two model files")
    cmp_.add_argument("truth", help="reference model JSON")
    cmp_.add_argument("recovered", help="model JSON to evaluate")
    cmp_.add_argument("--out", default=None, help="write the error table as JSON (default: stdout)")
    return parser


def _phase_distance(b1: float, b2: float, kind: Kind) -> float:
    if kind is Kind.HYPERBOLIC:
        return abs(b1 - b2)
    d = abs(b1 - b2) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def compare_models(truth: SignalModel, recovered: SignalModel) -> dict:
    """Match terms by kind and nearest frequency; report sup-norm errors.

    Raises TermCountMismatchError (carrying the partial table in args[1])
    when the per-kind term counts differ.
    """
    rows = []
    mismatch = False
    for kind in (Kind.TRIG, Kind.HYPERBOLIC):
        a = [u for u in truth.terms if u.kind is kind]
        b = [u for u in recovered.terms if u.kind is kind]
        if len(a) != len(b):
            mismatch = True
        unmatched = list(b)
        for t in a:
            if not unmatched:
                break
            r = min(unmatched, key=lambda u: abs(u.freq - t.freq))
            unmatched.remove(r)
            rows.append(
                {
                    "kind": kind.value,
                    "freq_true": t.freq,
                    "freq_recovered": r.freq,
                    "d_freq": abs(r.freq - t.freq),
                    "d_gamma": abs(r.gamma - t.gamma),
                    "d_phase": _phase_distance(t.phase, r.phase, kind),
                }
            )
    table = {
        "terms": rows,
        "max_d_freq": max((row["d_freq"] for row in rows), default=0.0),
        "max_d_phase": max((row["d_phase"] for row in rows), default=0.0),
        "max_d_gamma": max((row["d_gamma"] for row in rows), default=0.0),
        "d_constant": abs(truth.constant - recovered.constant),
    }
    if mismatch:
        raise errors.TermCountMismatchError(
            f"term counts differ: {len(truth.terms)} vs {len(recovered.terms)}", table
        )
    return table


def _cmd_synth(args: argparse.Namespace) -> int:
    model, file_period = load_model(args.model)
    period = args.period if args.period is not None else file_period
    indices = parse_indices(args.indices)
    if args.include_c0 and 0 not in indices:
        indices = [0] + indices
    data = coefficients(model, period, indices)
    write_coefficients_csv(data, args.out)
    return EXIT_OK


def _cmd_reconstruct(args: argparse.Namespace) -> int:
    data = read_coefficients_csv(args.coeffs, args.period)
    report = reconstruct(
        data,
        tol=args.tol,
        mmax=args.mmax,
        weight_eps=args.weight_eps,
        residue_eps=args.residue_eps,
        periodic_eps=args.periodic_eps,
        imag_eps=args.imag_eps,
    )
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(args.period), fh, indent=2)
        fh.write("\n")
    if args.model_out:
        save_model(report.model, args.period, args.model_out)
    return EXIT_OK if report.aaa.converged else EXIT_NOT_CONVERGED


def _cmd_compare(args: argparse.Namespace) -> int:
    truth, _ = load_model(args.truth)
    recovered, _ = load_model(args.recovered)
    code = EXIT_OK
    try:
        table = compare_models(truth, recovered)
    except errors.TermCountMismatchError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        table = exc.args[1]
        code = EXIT_NOT_CONVERGED
    text = json.dumps(table, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "synth": _cmd_synth,
        "coeffs": _cmd_synth,
        "reconstruct": _cmd_reconstruct,
        "compare": _cmd_compare,
    }[args.command]
    try:
        return handler(args)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except errors.InsufficientDataError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except errors.NonharmonicError as exc:
        print(f"pipeline error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
