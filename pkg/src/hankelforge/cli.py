"""Command-line front end: ``hankelforge <subcommand> [flags]``.

Exit status: 0 success, 1 invalid input, 2 a certification invariant
failed, 3 two computations that must agree did not.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional

from . import __version__
from .caratheodory import CaratheodoryCoeffs, SchurParams, coeffs_from_schur
from .certify import BOUNDS, GridSpec, extremal_check, search_max, worker_count
from .classes import FunctionClass, coeff_map
from .errors import HankelforgeError
from .hankel import h21_all_forms, h21_from_a, h21_from_gammas, h21_from_series, h21_in_c, max_pairwise_spread
from .report import FORMATS, certification_record, emit_records, extremal_record
from .selftest import run_all
from .series import gamma_closed_form, inverse_closed_form, inverse_log_coefficients, invert_series, normalized
from .ymax import y_eval, y_oracle_batch

EXIT_OK, EXIT_INPUT, EXIT_CERT, EXIT_INCONSISTENT = 0, 1, 2, 3
CONSISTENCY_TOL = 1e-12
ORACLE_TOL = 1e-5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _finite(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number: {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"number must be finite: {text!r}")
    return x


def _resolution(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return n


def _class_arg(text: str) -> FunctionClass:
    try:
        return FunctionClass.parse(text)
    except (ValueError, KeyError):
        names = ", ".join(c.value for c in FunctionClass)
        raise argparse.ArgumentTypeError(f"unknown class {text!r} (choose from {names})") from None


def _complex_flag(p, name, help_text):
    p.add_argument(f"--{name}", type=_finite, metavar="RE", help=f"{help_text} (real part)")
    p.add_argument(f"--{name}-im", type=_finite, default=0.0, metavar="IM", help=f"{help_text} (imaginary part)")


def _value(args, name) -> Optional[complex]:
    re = getattr(args, name)
    if re is None:
        if getattr(args, f"{name}_im") != 0.0:
            raise UsageError(f"--{name}-im given without --{name}")
        return None
    return complex(re, getattr(args, f"{name}_im"))


def _require(args, names) -> list[complex]:
    vals = [_value(args, n) for n in names]
    missing = [f"--{n}" for n, v in zip(names, vals) if v is None]
    if missing:
        raise UsageError(f"missing required flag(s): {' '.join(missing)}")
    return vals


def _schur_from_args(args) -> SchurParams:
    if args.tau1 is None:
        raise UsageError("missing required flag: --tau1")
    t2 = complex(args.tau2_re or 0.0, args.tau2_im)
    t3 = complex(args.tau3_re or 0.0, args.tau3_im)
    try:
        return SchurParams(args.tau1, t2, t3)
    except HankelforgeError as exc:
        flag = "--tau1"
        if abs(t2) > 1:
            flag = "--tau2-re/--tau2-im"
        elif abs(t3) > 1:
            flag = "--tau3-re/--tau3-im"
        raise UsageError(f"{flag}: {exc}") from None


def _add_schur_flags(p):
    p.add_argument("--tau1", type=_finite, help="tau1 in [0, 1]")
    p.add_argument("--tau2-re", type=_finite, help="Re tau2")
    p.add_argument("--tau2-im", type=_finite, default=0.0, help="Im tau2")
    p.add_argument("--tau3-re", type=_finite, help="Re tau3")
    p.add_argument("--tau3-im", type=_finite, default=0.0, help="Im tau3")


def _add_output_flags(p):
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--output", metavar="PATH", help="write here instead of standard output")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hankelforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND", parser_class=_Parser)
    sub.required = True
    classes = ", ".join(c.value for c in FunctionClass)

    p = sub.add_parser("coeffs", help="Caratheodory and class coefficients from Schur parameters")
    _add_schur_flags(p)
    p.add_argument("--class", dest="cls", type=_class_arg, help=classes)
    _add_output_flags(p)

    for name, text in (("invert", "inverse coefficients A2..A5"), ("logcoeffs", "inverse log coefficients")):
        p = sub.add_parser(name, help=text)
        for k in range(2, 6):
            _complex_flag(p, f"a{k}", f"a{k}")
        p.add_argument("--order", type=_resolution, default=8, help="truncation order (default 8)")
        _add_output_flags(p)

    p = sub.add_parser("hankel", help="H21 of the inverse log coefficients")
    p.add_argument("--class", dest="cls", type=_class_arg, help=classes)
    for k in range(1, 4):
        _complex_flag(p, f"c{k}", f"c{k}")
    for k in range(2, 5):
        _complex_flag(p, f"a{k}", f"a{k}")
    for k in range(1, 4):
        _complex_flag(p, f"g{k}", f"Gamma_{k}")
    _add_schur_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("ymax", help="max over the closed disk of |A + Bz + Cz^2| + 1 - |z|^2")
    for k in "ABC":
        p.add_argument(f"--{k}", type=_finite, required=True)
    p.add_argument("--oracle", action="store_true", help="also maximize numerically and compare")
    _add_output_flags(p)

    p = sub.add_parser("certify", help="grid search for the maximum of |H21|")
    p.add_argument("--class", dest="cls", type=_class_arg, help=f"{classes} (default: all)")
    defaults = GridSpec()
    p.add_argument("--n-tau1", type=_resolution, default=defaults.n_tau1)
    p.add_argument("--n-tau2-modulus", type=_resolution, default=defaults.n_tau2_modulus)
    p.add_argument("--n-tau2-phase", type=_resolution, default=defaults.n_tau2_phase)
    p.add_argument("--n-tau3-phase", type=_resolution, default=defaults.n_tau3_phase)
    p.add_argument("--rounds", type=int, default=3, help="refinement rounds (default 3)")
    p.add_argument("--no-diagnostics", action="store_true", help="omit per-slice diagnostics")
    _add_output_flags(p)

    p = sub.add_parser("extremal", help="rebuild extremal functions and check membership")
    p.add_argument("--class", dest="cls", type=_class_arg, help=f"{classes} (default: all)")
    _add_output_flags(p)

    p = sub.add_parser("selftest", help="run the oracle-equivalence suites")
    p.add_argument("--scale", type=_finite, default=1.0, help="sample-count multiplier")
    _add_output_flags(p)
    return parser


# ------------------------------------------------------------------ commands

def _cmd_coeffs(args):
    prm = _schur_from_args(args)
    c = coeffs_from_schur(prm)
    rec = {"tau1": prm.tau1, "tau2": prm.tau2, "tau3": prm.tau3,
           "c1": c.c1, "c2": c.c2, "c3": c.c3}
    if args.cls is not None:
        a2, a3, a4 = coeff_map(args.cls, c)
        rec.update({"class": args.cls.value, "a2": a2, "a3": a3, "a4": a4})
    return [rec], EXIT_OK


def _series_args(args):
    a = _require(args, ["a2", "a3", "a4", "a5"])
    if args.order < 5:
        raise UsageError("--order must be at least 5")
    return a, normalized(a, args.order)


def _cmd_invert(args):
    a, f = _series_args(args)
    F = invert_series(f).coeffs
    closed = inverse_closed_form(*a)
    rec = {f"A{k}": F[k] for k in range(2, 6)}
    rec.update({f"A{k}_closed_form": v for k, v in zip(range(2, 6), closed)})
    diff = max(abs(F[k] - v) for k, v in zip(range(2, 6), closed))
    rec["max_difference"] = diff
    return [rec], _consistency(diff, a)


def _cmd_logcoeffs(args):
    a, f = _series_args(args)
    G = inverse_log_coefficients(f)
    closed = gamma_closed_form(*a)
    rec = {f"Gamma{k}": G[k - 1] for k in range(1, 5)}
    rec.update({f"Gamma{k}_closed_form": v for k, v in zip(range(1, 5), closed)})
    diff = max(abs(G[k - 1] - v) for k, v in zip(range(1, 5), closed))
    rec["max_difference"] = diff
    return [rec], _consistency(diff, a)


def _consistency(diff, scale_values) -> int:
    # polynomial closed forms lose relative precision for large inputs
    scale = max(1.0, max(abs(x) for x in scale_values)) ** 4
    return EXIT_OK if diff <= CONSISTENCY_TOL * scale else EXIT_INCONSISTENT


def _cmd_hankel(args):
    groups = {
        "c": [args.c1, args.c2, args.c3],
        "a": [args.a2, args.a3, args.a4],
        "gamma": [args.g1, args.g2, args.g3],
        "tau": [args.tau1],
    }
    given = [k for k, v in groups.items() if any(x is not None for x in v)]
    if len(given) != 1:
        raise UsageError("give exactly one of --c1..--c3, --a2..--a4, --g1..--g3 or --tau1 (with --tau2-*/--tau3-*)")
    system = given[0]
    rec = {"coordinate_system": system}
    if system in ("c", "tau") and args.cls is None:
        raise UsageError(f"--class is required with {system} inputs")
    if args.cls is not None:
        rec["class"] = args.cls.value
    if system == "gamma":
        g = _require(args, ["g1", "g2", "g3"])
        forms = {"gamma": h21_from_gammas(*g).value}
    elif system == "a":
        a = _require(args, ["a2", "a3", "a4"])
        forms = {"a": h21_from_a(*a).value, "gamma": h21_from_series(normalized(a, 8)).value}
    elif system == "c":
        c = CaratheodoryCoeffs(*_require(args, ["c1", "c2", "c3"]))
        if not c.within_bound():
            raise UsageError("--c1/--c2/--c3: Caratheodory coefficients satisfy |c_n| <= 2")
        a = coeff_map(args.cls, c)
        forms = {
            "c": h21_in_c(args.cls, c).value,
            "a": h21_from_a(*a).value,
            "gamma": h21_from_series(normalized(a, 8)).value,
        }
    else:
        forms = h21_all_forms(args.cls, _schur_from_args(args))
    value = forms[system]
    rec.update({"value": value, "abs": abs(value)})
    if args.cls is not None:
        rec["bound_exact"] = BOUNDS[args.cls]
    spread = max_pairwise_spread(forms) if len(forms) > 1 else 0.0
    rec["forms"] = forms
    rec["cross_form_spread"] = spread
    return [rec], EXIT_OK if spread <= CONSISTENCY_TOL * max(1.0, abs(value)) else EXIT_INCONSISTENT


def _cmd_ymax(args):
    y = y_eval(args.A, args.B, args.C)
    rec = {"A": args.A, "B": args.B, "C": args.C, "value": y.value,
           "branch": y.branch.value, "consistent": y.consistent}
    if y.argmax_hint is not None:
        rec["argmax_hint"] = y.argmax_hint
    code = EXIT_OK if y.consistent else EXIT_INCONSISTENT
    if args.oracle:
        v, z = y_oracle_batch([args.A], [args.B], [args.C])
        rec.update({"oracle_value": float(v[0]), "oracle_argmax": complex(z[0]),
                    "oracle_difference": abs(float(v[0]) - y.value)})
        if rec["oracle_difference"] > ORACLE_TOL:
            code = EXIT_INCONSISTENT
    return [rec], code


def _classes(args):
    return [args.cls] if args.cls is not None else list(FunctionClass)


def _cmd_certify(args):
    try:
        grid = GridSpec(args.n_tau1, args.n_tau2_modulus, args.n_tau2_phase, args.n_tau3_phase)
    except HankelforgeError as exc:
        raise UsageError(str(exc)) from None
    if args.rounds < 0:
        raise UsageError("--rounds must be >= 0")
    recs, code = [], EXIT_OK
    for cls in _classes(args):
        try:
            r = search_max(cls, grid, refinement_rounds=args.rounds, diagnostics=not args.no_diagnostics)
        except HankelforgeError as exc:
            raise UsageError(f"--n-tau*: {exc}") from None
        recs.append(certification_record(r))
        if r.cross_form_spread > CONSISTENCY_TOL:
            code = max(code, EXIT_INCONSISTENT)
        elif not r.ok:
            code = max(code, EXIT_CERT)
    return recs, code


def _cmd_extremal(args):
    recs, code = [], EXIT_OK
    for cls in _classes(args):
        r = extremal_check(cls)
        recs.append(extremal_record(r))
        for c in r.candidates:
            if abs(c.h21 - c.h21_gamma_path) > 1e-9:
                code = EXIT_INCONSISTENT
    return recs, code


def _cmd_selftest(args):
    if args.scale <= 0:
        raise UsageError("--scale must be positive")
    results = run_all(seed=args.seed, scale=args.scale)
    recs = [{"suite": r.name, "ok": r.ok, "samples": r.samples,
             "max_error": r.max_error, "tolerance": r.tolerance} for r in results]
    return recs, EXIT_OK if all(r.ok for r in results) else EXIT_INCONSISTENT


COMMANDS = {
    "coeffs": _cmd_coeffs,
    "invert": _cmd_invert,
    "logcoeffs": _cmd_logcoeffs,
    "hankel": _cmd_hankel,
    "ymax": _cmd_ymax,
    "certify": _cmd_certify,
    "extremal": _cmd_extremal,
    "selftest": _cmd_selftest,
}


def run(args: argparse.Namespace) -> int:
    """Dispatch a parsed namespace; returns the exit status."""
    try:
        worker_count()
        recs, code = COMMANDS[args.subcommand](args)
    except (UsageError, ValueError) as exc:
        print(f"hankelforge {args.subcommand}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    payload = emit_records(recs, args.format)
    if args.output:
        try:
            with open(args.output, "wb") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"hankelforge: error: --output: cannot write {args.output!r}: {exc.strerror}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
