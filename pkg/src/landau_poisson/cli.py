"""Command-line front end.

Every subcommand prints one envelope ``{"command", "params", "payload",
"version"}`` as JSON, or a plain table with ``--format csv``.  Floats are
written with 17 significant digits so that output is byte-stable.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from .decomp import (
    convolve_reconstruct,
    gamma_coeffs,
    gamma_coeffs_quadrature,
    measure_decomposition,
)
from .dist import (
    DistParams,
    cdf,
    cdf_charlier,
    char_fn,
    char_fn_series,
    moments,
    pmf_range,
    pmf_table,
    sample,
    support_bound,
    PmfTable,
)
from .divisibility import (
    CfVanishesAt,
    log_deriv_coeffs,
    theorem_verdict,
)
from .errors import DomainError, LandauPoissonError
from .specfun import laguerre_zeros

# ---------------------------------------------------------------------------
# serialization


def format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj: Any) -> str:
    """JSON with 17-significant-digit floats; keys keep insertion order."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def csv_table(header: Sequence[str], rows) -> str:
    def cell(v):
        if isinstance(v, (float, np.floating)):
            return format_float(float(v))
        if isinstance(v, bool):
            return "true" if v else "false"
        return str(v)
    lines = [",".join(header)]
    lines += [",".join(cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands
#
# Each handler returns (payload, csv_header, csv_rows).


def _table(args, params: DistParams) -> PmfTable:
    if args.jmax is not None:
        probs = pmf_range(params, args.jmax + 1)
        return PmfTable(params, probs, max(0.0, 1.0 - math.fsum(probs.tolist())))
    return pmf_table(params, args.mass_target)


def cmd_pmf(args, params):
    table = _table(args, params)
    payload = {"probs": table.probs.tolist(), "tail_bound": table.tail_bound}
    return payload, ["j", "p_j"], list(enumerate(table.probs.tolist()))


def cmd_cdf(args, params):
    table = _table(args, params)
    j = np.arange(len(table))
    direct = cdf(params, j).tolist()
    charl = [cdf_charlier(params, float(x)) for x in j]
    payload = {"cdf": direct, "cdf_charlier": charl}
    return payload, ["j", "cdf", "cdf_charlier"], list(zip(j.tolist(), direct, charl))


def cmd_cf(args, params):
    u = np.linspace(0.0, 2.0 * np.pi, args.u_grid)
    closed = char_fn(params, u)
    series = char_fn_series(params, u)
    err = float(np.max(np.abs(closed - series)))
    payload = {"u": u.tolist(), "re": closed.real.tolist(), "im": closed.imag.tolist(),
               "abs": np.abs(closed).tolist(), "max_series_error": err}
    rows = list(zip(u.tolist(), closed.real.tolist(), closed.imag.tolist(),
                    np.abs(closed).tolist()))
    return payload, ["u", "re", "im", "abs"], rows


def cmd_moments(args, params):
    payload = moments(params).to_dict()
    return payload, ["key", "value"], list(payload.items())


def cmd_sample(args, params):
    draws = sample(params, args.seed, args.n)
    payload = {"seed": args.seed, "n": args.n, "draws": draws.tolist(),
               "sample_mean": float(draws.mean()),
               "sample_variance": float(draws.var(ddof=1)) if args.n > 1 else 0.0}
    return payload, ["x"], [(int(x),) for x in draws]


def cmd_zeros(args, params):
    if args.m < 1:
        raise DomainError("zeros needs --m >= 1")
    zeros = list(laguerre_zeros(args.m).zeros)
    payload = {"zeros": zeros, "sum": math.fsum(zeros),
               "sum_squares": math.fsum(x * x for x in zeros)}
    return payload, ["k", "x_k"], list(enumerate(zeros, start=1))


def cmd_divisibility(args, params):
    report = theorem_verdict(params, args.K)
    payload = report.to_dict()
    if params.m >= 1:
        r = log_deriv_coeffs(params, min(args.K, 64)).coeffs
        payload["log_deriv_coeffs"] = list(r)
        if isinstance(report.certificate, CfVanishesAt):
            payload["cf_modulus"] = [abs(char_fn(params, u)) for u in report.certificate.points]
    else:
        r = (params.lam,)
    return payload, ["k", "r_k"], list(enumerate(r))


def cmd_decompose(args, params):
    coeffs = gamma_coeffs(params)
    poisson, shift, nu = measure_decomposition(params)
    payload = {"c": list(coeffs.c), "poisson_lambda": poisson.lam, "shift": shift,
               "atoms": nu.to_dict()["atoms"], "total_mass": nu.total_mass()}
    return payload, ["atom", "weight"], list(nu.atoms.items())


def run_checks(params: DistParams) -> list[dict[str, Any]]:
    """The oracle battery behind ``verify``."""
    checks = []

    def record(name, err, tol):
        checks.append({"check": name, "error": err, "tolerance": tol,
                       "passed": bool(err < tol)})

    probs = pmf_range(params, 2 * support_bound(params))
    record("normalization", abs(math.fsum(probs.tolist()) - 1.0), 1e-12)
    j = np.arange(len(probs))
    mean = math.fsum((j * probs).tolist())
    var = math.fsum(((j - mean) ** 2 * probs).tolist())
    record("mean", abs(mean / params.mean - 1.0), 1e-9)
    record("variance", abs(var / params.variance - 1.0), 1e-9)
    u = np.linspace(0.0, 2.0 * np.pi, 256)
    record("cf_duality", float(np.max(np.abs(char_fn(params, u) - char_fn_series(params, u)))),
           1e-10)
    closed = gamma_coeffs(params).c
    quad = gamma_coeffs_quadrature(params).c
    # quadrature rounding scales with the coefficients, which reach ~1e11 at lam = 20
    scale = max(1.0, max(abs(a) for a in closed))
    record("coefficient_duality",
           max(abs(a - b) for a, b in zip(closed + (0.0,), quad)) / scale, 1e-9)
    try:
        rec = convolve_reconstruct(params)
        err = float(np.max(np.abs(rec.probs - pmf_range(params, len(rec)))))
    except LandauPoissonError:
        err = math.inf
    record("convolution_reconstruction", err, 1e-10)
    return checks


def cmd_verify(args, params):
    checks = run_checks(params)
    payload = {"passed": all(c["passed"] for c in checks), "checks": checks}
    rows = [(c["check"], c["passed"], c["error"], c["tolerance"]) for c in checks]
    return payload, ["check", "passed", "error", "tolerance"], rows


COMMANDS: dict[str, Callable] = {
    "pmf": cmd_pmf,
    "cdf": cmd_cdf,
    "cf": cmd_cf,
    "moments": cmd_moments,
    "sample": cmd_sample,
    "zeros": cmd_zeros,
    "divisibility": cmd_divisibility,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# parser


def _positive_real(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}")
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"must be a positive real: {text!r}")
    return x


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
    return n


def _positive_int(text: str) -> int:
    n = _nonneg_int(text)
    if n == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="landau-poisson",
        description="Photon-counting laws of Euclidean Landau levels.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--lambda", dest="lam", type=_positive_real,
                       required=name != "zeros")
        p.add_argument("--m", type=_nonneg_int, required=True)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if name in ("pmf", "cdf"):
            grp = p.add_mutually_exclusive_group()
            grp.add_argument("--jmax", type=_nonneg_int)
            grp.add_argument("--mass-target", type=float, default=1.0 - 1e-12)
        if name == "sample":
            p.add_argument("--seed", type=int, required=True)
            p.add_argument("--n", type=_positive_int, required=True)
        if name == "divisibility":
            p.add_argument("--K", type=_nonneg_int, default=64)
        if name == "cf":
            p.add_argument("--u-grid", type=_positive_int, default=256)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    echo = {"lambda": args.lam, "m": args.m}
    try:
        params = DistParams(args.lam if args.lam is not None else 1.0, args.m)
        payload, header, rows = COMMANDS[args.command](args, params)
    except (LandauPoissonError, OverflowError) as exc:
        err = {"command": args.command, "params": echo,
               "error": {"type": type(exc).__name__, "message": str(exc)},
               "version": __version__}
        stdout.write(dumps(err) + "\n")
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    if args.format == "csv":
        stdout.write(csv_table(header, rows))
    else:
        envelope = {"command": args.command, "params": echo, "payload": payload,
                    "version": __version__}
        stdout.write(dumps(envelope) + "\n")
    if args.command == "verify" and not payload["passed"]:
        stderr.write("verify: tolerance breach\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())
