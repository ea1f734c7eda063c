"""Command-line front end.

Exit status: 0 on success (verdicts are data), 1 when an identity check
fails (the residual is written to the report), 2 on usage errors.

Environment overrides: ``NSTREN_TOL`` and ``NSTREN_SEED`` supply defaults
for ``--tol`` and ``--seed``; ``NSTREN_FORMAT`` for ``--format``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, List, Optional

from .algebra import AlphaPoly, Scalar
from .errors import ContractFailure, NSTError
from .harmdec import decompose, harmonic_basis, harmonic_dim
from .nstgate import NSTReport, analyze_amplitude, analyze_expr
from .poly4 import Poly4, parse_poly
from .powerlog import DEFAULT_ALPHAS, Expr, check_R4_offorigin, riesz_shift_check

EXIT_OK, EXIT_CONTRACT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jsonable(obj: Any) -> Any:
    """Deterministic JSON view of engine objects."""
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, Expr):
        return obj.to_json()
    if isinstance(obj, (Poly4, AlphaPoly, Scalar)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return _jsonable(obj.to_dict())
    return repr(obj)


def _positive(kind: Callable[[str], Any]) -> Callable[[str], Any]:
    def parse(text: str):
        try:
            value = kind(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
        if not value > 0:
            raise argparse.ArgumentTypeError(f"{text} must be positive")
        return value
    return parse


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} must be >= 0")
    return value


def _read_expr(path: str) -> Expr:
    try:
        return Expr.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path} is not a valid expression file: {exc}") from None


def _read_poly(text: str) -> Poly4:
    if os.path.exists(text):
        text = Path(text).read_text().strip()
    try:
        return parse_poly(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check(name: str, anchor: str, ok: bool, **extra) -> dict:
    return {"check": name, "identity": anchor, "passed": bool(ok), **extra}


# commands ---------------------------------------------------------------------

def cmd_harmdim(args) -> dict:
    return {"k": args.k, "dim": harmonic_dim(args.k)}


def cmd_decompose(args) -> dict:
    p = _read_poly(args.poly)
    return decompose(p).to_dict(p)


def cmd_nst(args) -> dict:
    report = analyze_expr(_read_expr(args.expr))
    out = report.to_dict()
    out["table"] = report.table()
    return out


def cmd_amplitude(args) -> dict:
    from .tensoramp import (all_components_harmonic, amplitude, proca_cancellation,
                            riemann_term_count)
    from .tensors import span_rank

    tf = amplitude(args.helicity, args.massive)
    report: NSTReport = analyze_amplitude(tf)
    checks = {"harmonic": all_components_harmonic(tf), "rank": span_rank(tf), "symmetry": True}
    if args.helicity == 2:
        checks["term_count"] = riemann_term_count(args.massive)
    if args.helicity == 1 and args.massive:
        proca_cancellation()  # raises on failure
        checks["mass_terms_cancel"] = True
    Ds = sorted({v.D for v in report.verdicts})
    out = {
        "amplitude": "riemann" if args.helicity == 2 else "maxwell",
        "helicity": args.helicity,
        "massive": args.massive,
        "checks": checks,
        "harmonic": checks["harmonic"],
        "rank": checks["rank"],
        "nst": {"convergent": report.overall_convergent,
                "naive_divergent": report.naive_divergent,
                "D": Ds[0] if len(Ds) == 1 else Ds},
        "prefactor": str(tf.prefactor),
    }
    if "term_count" in checks:
        out["term_count"] = checks["term_count"]
    if not checks["harmonic"]:
        raise ContractFailure("amplitude has non-harmonic components")
    return out


def cmd_riesz_check(args) -> dict:
    results = []
    for k in range(args.kmax + 1):
        for h in harmonic_basis(k):
            riesz_shift_check(k, h, DEFAULT_ALPHAS, args.rtol)
        results.append(_check(f"pushback k={k}", "box((x^2)^a H_k) = 4a(a+k+1)(x^2)^(a-1) H_k",
                              True, basis_size=len(harmonic_basis(k))))
    return {"checks": results, "alphas": list(DEFAULT_ALPHAS)}


def cmd_r4_check(args) -> dict:
    ok4, ok6 = check_R4_offorigin()
    checks = [
        _check("R4[x^-4] off origin", "-1/4 box(x^-2 log(x^2/l^2)) = x^-4", ok4),
        _check("R4[x^-6] off origin", "-1/32 box^2(x^-2 log(x^2/l^2)) = x^-6", ok6),
    ]
    if not (ok4 and ok6):
        raise ContractFailure("off-origin identity failed", residual=checks)
    return {"checks": checks}


def cmd_massive_sum(args) -> dict:
    from .massive import BranchChoice, SpacelikePoint, series_vs_bessel

    try:
        cmp = series_vs_bessel(args.m, SpacelikePoint.at_radius(args.r), args.nterms,
                               BranchChoice[args.branch])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = cmp.to_dict()
    out["branch"] = args.branch
    if cmp.rel_error_of_modulus > args.tol:
        raise ContractFailure("partial sum does not match the Bessel oracle", residual=out)
    return out


def _distribution(name: str):
    from .numdist import NAMED, EuclideanDistribution

    if name in NAMED:
        return NAMED[name]()
    return EuclideanDistribution.from_expr(_read_expr(name))


def _family(args):
    from .numdist import DEFAULT_SIGMAS, default_family

    return default_family(args.sigmas or DEFAULT_SIGMAS)


def cmd_pair(args) -> dict:
    from .numdist import TestFunction, pair

    phi = TestFunction.gaussian(args.sigma)
    res = pair(_distribution(args.dist), phi, args.tol)
    return {"dist": args.dist, "sigma": args.sigma, **res.to_dict()}


def cmd_delta_coeff(args) -> dict:
    from .numdist import delta_coefficient

    fit = delta_coefficient(_distribution(args.dist), _family(args), args.tol)
    return {"dist": args.dist, **fit.to_dict()}


def cmd_loghom(args) -> dict:
    from .numdist import NATURAL_DEGREE, defect_per_origin_value

    degree = args.degree if args.degree is not None else NATURAL_DEGREE.get(args.dist)
    if degree is None:
        raise UsageError("--degree is required for expression files")
    fit = defect_per_origin_value(_distribution(args.dist), degree, _family(args), args.tol,
                                  laplacians=args.laplacians)
    return {"dist": args.dist, "degree": degree, "normalized_by_laplacian_power": args.laplacians,
            **fit.to_dict()}


# parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    env = os.environ
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=env.get("NSTREN_FORMAT", "json"))
    common.add_argument("--tol", type=_positive(float), default=float(env.get("NSTREN_TOL", "1e-8")))
    common.add_argument("--seed", type=int, default=int(env.get("NSTREN_SEED", "0")),
                        help="recorded in the report; all quadratures are deterministic")

    parser = argparse.ArgumentParser(prog="nstren",
                                     description="Harmonic decomposition and extension checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("harmdim", parents=[common], help="dimension of degree-k harmonic polynomials")
    p.add_argument("--k", type=_nonneg_int, required=True)
    p.set_defaults(func=cmd_harmdim)

    p = sub.add_parser("decompose", parents=[common], help="harmonic decomposition of a polynomial")
    p.add_argument("poly", help="polynomial text or a file containing it")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("nst", parents=[common], help="extension verdicts for an expression file")
    p.add_argument("expr")
    p.set_defaults(func=cmd_nst)

    p = sub.add_parser("amplitude", parents=[common], help="field-strength two-point amplitude")
    p.add_argument("--helicity", type=int, choices=(1, 2), required=True)
    mass = p.add_mutually_exclusive_group()
    mass.add_argument("--massive", action="store_true")
    mass.add_argument("--massless", dest="massive", action="store_false")
    p.set_defaults(func=cmd_amplitude)

    p = sub.add_parser("riesz-check", parents=[common], help="push-back identity on harmonic bases")
    p.add_argument("--kmax", type=_nonneg_int, default=6)
    p.add_argument("--rtol", type=_positive(float), default=1e-10)
    p.set_defaults(func=cmd_riesz_check)

    p = sub.add_parser("r4-check", parents=[common], help="off-origin identities of the log extensions")
    p.set_defaults(func=cmd_r4_check)

    p = sub.add_parser("massive-sum", parents=[common], help="massive series against the Bessel form")
    p.add_argument("--m", type=_positive(float), required=True)
    p.add_argument("--r", type=_positive(float), required=True)
    p.add_argument("--nterms", type=int, default=20)
    p.add_argument("--branch", choices=("PLUS_I0", "MINUS_I0"), default="PLUS_I0")
    p.set_defaults(func=cmd_massive_sum)

    for name, func, helptext in (("pair", cmd_pair, "pair a distribution with a Gaussian"),
                                 ("delta-coeff", cmd_delta_coeff, "fit c in Lap u = c delta"),
                                 ("loghom", cmd_loghom, "homogeneity defect per origin value")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--dist", required=True, help="one, inv_r, inv_r2, r4_ext, r6_ext or an expression file")
        if name == "pair":
            p.add_argument("--sigma", type=_positive(float), default=1.0)
        else:
            p.add_argument("--sigmas", type=_positive(float), nargs="+")
        if name == "loghom":
            p.add_argument("--degree", type=int)
            p.add_argument("--laplacians", type=_nonneg_int, default=0,
                           help="divide by (Lap^n phi)(0) instead of phi(0)")
        p.set_defaults(func=func)
    return parser


def _render_table(doc: dict) -> str:
    if "table" in doc:
        return doc["table"]
    lines = []
    for key, value in doc.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def run(argv: Optional[List[str]] = None, stream=None) -> int:
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    status = EXIT_OK
    start = time.perf_counter()
    try:
        doc = args.func(args)
    except UsageError as exc:
        print(f"nstren: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractFailure as exc:
        status = EXIT_CONTRACT
        doc = {"error": type(exc).__name__, "message": str(exc), "residual": _jsonable(exc.residual)}
    except ValueError as exc:
        print(f"nstren: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NSTError as exc:
        status = EXIT_CONTRACT
        doc = {"error": type(exc).__name__, "message": str(exc)}
    doc = {"command": args.command, "seed": args.seed, **doc}
    doc["passed"] = status == EXIT_OK
    if args.format == "table":
        print(_render_table(doc), file=stream)
    else:
        print(json.dumps(_jsonable(doc), sort_keys=True, indent=2), file=stream)
    print(f"elapsed {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return status


def main() -> None:
    sys.exit(run())
