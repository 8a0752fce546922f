"""Command-line front end emitting canonical, machine-readable reports.

Subcommands::

    entrobound distances     --pmf-a A --pmf-b B
    entrobound bounds        --pmf-a A --pmf-b B
    entrobound coupling      --pmf-a A --pmf-b B --samples N --seed S
    entrobound poisson-approx --n N --p P [--exact-gap] [--tail-tol T]
    entrobound reproduce     [--case ID ...]

Distribution files are text: one ``label<TAB>probability`` record per line,
``#`` starts a comment, probabilities in decimal or scientific notation.
``-`` reads a pmf from stdin. Reports are JSON with every float printed at 17
significant digits, so a rerun with the same inputs and seed is byte-identical
and every number round-trips to the exact double. Exit codes: 0 success,
1 reference-case failure, 2 validation error, 3 applicability error,
4 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from . import __version__, coupling, distances, finite_bounds, poisson_stein
from .core_dist import FiniteDistribution
from .errors import (
    ApplicabilityError,
    CapabilityError,
    InternalCheckError,
    ValidationError,
)
from .reference import run_reference_cases

EXIT_OK = 0
EXIT_CASE_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_APPLICABILITY = 3
EXIT_INTERNAL = 4


def _format_scalar(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if x != x or x in (float("inf"), float("-inf")):
            raise InternalCheckError(f"non-finite number {x!r} in report")
        return format(x, ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    raise InternalCheckError(f"unserializable value of type {type(value).__name__}")


def canonical_json(obj, indent: int = 0) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [
            f"{inner}{json.dumps(str(k))}: {canonical_json(v, indent + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(rows) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        rows = [f"{inner}{canonical_json(v, indent + 1)}" for v in seq]
        return "[\n" + ",\n".join(rows) + f"\n{pad}]"
    return _format_scalar(obj)


def load_pmf(path: str, stream=None) -> FiniteDistribution:
    """Parse a ``label<TAB>probability`` file (or stdin for ``-``)."""
    name = "<stdin>" if path == "-" else path
    if path == "-":
        lines = (stream or sys.stdin).read().splitlines()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise ValidationError(f"{name}: cannot read pmf file: {exc}") from exc
    symbols = []
    probs = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        label, sep, prob_text = line.partition("\t")
        if not sep:
            raise ValidationError(
                f"{name}:{lineno}: expected 'label<TAB>probability', got {raw!r}"
            )
        label = label.strip()
        if not label:
            raise ValidationError(f"{name}:{lineno}: empty symbol label")
        try:
            prob = float(prob_text.strip())
        except ValueError as exc:
            raise ValidationError(
                f"{name}:{lineno}: probability field {prob_text.strip()!r} is not a number"
            ) from exc
        symbols.append(label)
        probs.append(prob)
    if not symbols:
        raise ValidationError(f"{name}: no records found")
    try:
        return FiniteDistribution(symbols, probs)
    except ValidationError as exc:
        raise ValidationError(f"{name}: {exc}") from exc


def _echo_pmf(dist: FiniteDistribution) -> dict:
    return {"symbols": list(dist.symbols), "probs": list(map(float, dist.probs))}


def _envelope(command: str, inputs: dict, results: dict, seed=None) -> dict:
    report = {
        "command": command,
        "tool_version": __version__,
        "inputs": inputs,
        "results": results,
    }
    if seed is not None:
        report["seed"] = int(seed)
    return report


def _load_pair(args) -> tuple[FiniteDistribution, FiniteDistribution]:
    if args.pmf_a == "-" and args.pmf_b == "-":
        raise ValidationError("only one of --pmf-a/--pmf-b may read from stdin")
    return load_pmf(args.pmf_a), load_pmf(args.pmf_b)


def cmd_distances(args) -> tuple[dict, int]:
    p_a, p_b = _load_pair(args)
    pair = distances.distance_pair(p_a, p_b)
    results = {
        "d_loc": pair.d_loc,
        "d_tv": pair.d_tv,
        "ratio": pair.alpha,
        "alphabet_size": len(distances.unify_support(p_a, p_b)[0]),
    }
    inputs = {"pmf_a": _echo_pmf(p_a), "pmf_b": _echo_pmf(p_b)}
    return _envelope("distances", inputs, results), EXIT_OK


def cmd_bounds(args) -> tuple[dict, int]:
    p_a, p_b = _load_pair(args)
    report = finite_bounds.entropy_gap_report(p_a, p_b)
    inputs = {"pmf_a": _echo_pmf(p_a), "pmf_b": _echo_pmf(p_b)}
    return _envelope("bounds", inputs, asdict(report)), EXIT_OK


def cmd_coupling(args) -> tuple[dict, int]:
    p_a, p_b = _load_pair(args)
    if args.samples < 1:
        raise ValidationError("--samples must be positive")
    parts = coupling.build_maximal_coupling(p_a, p_b)
    rng = np.random.default_rng(args.seed)
    x_idx, y_idx = coupling.sample_coupling_many(parts, args.samples, rng)
    symbols = parts.symbols
    m = len(symbols)
    x_freq = np.bincount(x_idx, minlength=m) / args.samples
    y_freq = np.bincount(y_idx, minlength=m) / args.samples
    _, pa, qa = distances.unify_support(p_a, p_b)
    results = {
        "equal_probability": parts.p,
        "empirical_equal_fraction": float(np.mean(x_idx == y_idx)),
        "samples": int(args.samples),
        "symbols": list(symbols),
        "marginal_deviation_x": list(map(float, x_freq - pa)),
        "marginal_deviation_y": list(map(float, y_freq - qa)),
    }
    inputs = {"pmf_a": _echo_pmf(p_a), "pmf_b": _echo_pmf(p_b)}
    return _envelope("coupling", inputs, results, seed=args.seed), EXIT_OK


def cmd_poisson_approx(args) -> tuple[dict, int]:
    report = poisson_stein.poisson_binomial_gap_bounds(
        args.n, args.p, with_exact_gap=args.exact_gap, tail_tol=args.tail_tol
    )
    inputs = {
        "n": int(args.n),
        "p": float(args.p),
        "exact_gap": bool(args.exact_gap),
        "tail_tol": float(args.tail_tol),
    }
    return _envelope("poisson-approx", inputs, asdict(report)), EXIT_OK


def cmd_reproduce(args) -> tuple[dict, int]:
    results = run_reference_cases(args.case or None)
    rows = [asdict(r) for r in results]
    all_passed = all(r.passed for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(
            f"{status} {r.case_id}: {r.description} "
            f"(expected {r.expected:.6g}, got {r.actual:.6g}, tol {r.tol:.1g})",
            file=sys.stderr,
        )
    report = _envelope(
        "reproduce",
        {"case": list(args.case) if args.case else None},
        {"n_cases": len(rows), "all_passed": all_passed, "cases": rows},
    )
    return report, EXIT_OK if all_passed else EXIT_CASE_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrobound",
        description="Entropy-difference bounds, maximal couplings, and "
        "Poisson-approximation envelopes for discrete distributions.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p):
        p.add_argument("--out", help="write the report here instead of stdout")

    def add_pair(p):
        p.add_argument("--pmf-a", required=True, help="first pmf file ('-' for stdin)")
        p.add_argument("--pmf-b", required=True, help="second pmf file ('-' for stdin)")

    p = sub.add_parser("distances", help="local and total-variation distances")
    add_pair(p)
    add_common(p)
    p.set_defaults(func=cmd_distances)

    p = sub.add_parser("bounds", help="exact entropy gap and every applicable bound")
    add_pair(p)
    add_common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("coupling", help="build and sample the maximal coupling")
    add_pair(p)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True,
                   help="PCG64 seed; required, no ambient entropy")
    add_common(p)
    p.set_defaults(func=cmd_coupling)

    p = sub.add_parser("poisson-approx",
                       help="entropy-gap bounds for Binomial(n, p) vs Poisson(np)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--exact-gap", action="store_true",
                   help="also evaluate both entropies exactly")
    p.add_argument("--tail-tol", type=float, default=1e-13)
    add_common(p)
    p.set_defaults(func=cmd_poisson_approx)

    p = sub.add_parser("reproduce", help="recompute all frozen reference values")
    p.add_argument("--case", action="append", help="run only this case id (repeatable)")
    add_common(p)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ApplicabilityError, CapabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_APPLICABILITY
    except (InternalCheckError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    text = canonical_json(report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
