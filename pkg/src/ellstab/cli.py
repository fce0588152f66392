"""``ellstab`` command line.

JSON goes to stdout (CSV for ``trajectory``), diagnostics to stderr.  Exit
codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Sequence, TextIO

from . import checks
from .charges import (
    DAxis,
    GeneralRDV,
    KernelClass,
    Origin,
    RayParam,
    Regime,
    RescaledVD,
    Todd,
    ToddSpecial,
    VAxis,
    eval_charge,
    limit_phase,
    phase,
    slope,
)
from .fm import CCEInput, cce_residual, fm_transform, solve_cce
from .inequalities import classify_kernel, classify_kernel_after_fm_bruteforce
from .lattice import ChernVector, DomainError, SurfaceParams, as_fraction, fmt
from .trajectory import to_csv, trajectory

DEFAULT_TOL = 1e-10

CHARGES = {
    "general": (GeneralRDV, ("R_omega", "D_omega", "R_B", "D_B")),
    "rescaled": (RescaledVD, ("V", "D")),
    "origin": (Origin, ()),
    "v-axis": (VAxis, ("V",)),
    "d-axis": (DAxis, ("D",)),
    "todd": (Todd, ("R_omega", "D_omega", "R_B", "D_B")),
    "todd-special": (ToddSpecial, ()),
}


class UsageError(Exception):
    pass


def tolerance() -> float:
    raw = os.environ.get("ELLSTAB_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"ELLSTAB_TOL must be a number, got {raw!r}") from None
    if not tol > 0:
        raise UsageError("ELLSTAB_TOL must be positive")
    return tol


def _typed(parse, what):
    # argparse reports ValueError/TypeError from a type function as a usage error
    def conv(text):
        try:
            return parse(text)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise argparse.ArgumentTypeError(f"bad {what} {text!r}: {exc}") from None

    conv.__name__ = what
    return conv


rational = _typed(as_fraction, "rational")
chern = _typed(ChernVector.parse, "class")
ray_arg = _typed(RayParam.parse, "ray")
regime_arg = _typed(Regime.parse, "regime")


def _mults(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(":"))


mults_arg = _typed(_mults, "kernel")


def _surface_options(p: argparse.ArgumentParser, repeated: bool = False) -> None:
    # after the verb the flags may be repeated; SUPPRESS keeps the top-level value otherwise
    e, d = (argparse.SUPPRESS, argparse.SUPPRESS) if repeated else (2, 0)
    p.add_argument("--e", type=int, default=e, help="e = -Theta^2 (default 2, the K3 case)")
    p.add_argument("--d-alpha", dest="d_alpha", type=int, default=d,
                   help="d_alpha for the after-FM regime (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ellstab", description="Exact stability-condition calculator.")
    _surface_options(parser)
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, help):
        p = sub.add_parser(name, help=help)
        _surface_options(p, repeated=True)
        return p

    p = verb("eval", "evaluate a central charge on a class")
    p.add_argument("--charge", choices=sorted(CHARGES), required=True)
    p.add_argument("--class", dest="cls", type=chern, required=True, metavar="r:a:b:s")
    p.add_argument("--R-omega", dest="R_omega", type=rational)
    p.add_argument("--D-omega", dest="D_omega", type=rational)
    p.add_argument("--RB", dest="R_B", type=rational)
    p.add_argument("--DB", dest="D_B", type=rational)
    p.add_argument("--V", dest="V", type=rational)
    p.add_argument("--D", dest="D", type=rational)

    p = verb("phase-limit", "limit phase of a kernel class")
    p.add_argument("--regime", type=regime_arg, required=True)
    p.add_argument("--kernel", type=mults_arg, required=True, metavar="n0:n1")
    p.add_argument("--ray", type=ray_arg, metavar="p:q", help="ray [V:D] (origin and after-fm)")

    p = verb("kernel", "kernel generators of a regime")
    p.add_argument("--regime", type=regime_arg, required=True)
    p.add_argument("--bruteforce", type=int, metavar="BOUND",
                   help="also search line-bundle classes with |a|, |b| <= BOUND (after-fm)")

    p = verb("fm", "Fourier-Mukai transform of a class")
    p.add_argument("--class", dest="cls", type=chern, required=True, metavar="r:a:b:s")

    p = verb("cce", "solve the central charge equation")
    p.add_argument("--D", dest="D", type=rational, required=True)
    p.add_argument("--V", dest="V", type=rational, required=True)
    p.add_argument("--RB", dest="R_B", type=rational, required=True)
    p.add_argument("--DB", dest="D_B", type=rational, required=True)
    p.add_argument("--variant", choices=["plain", "todd", "td"], default="todd")

    p = verb("trajectory", "CSV of phases along a ray towards V = D = 0")
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--kernel", type=mults_arg, metavar="n0:n1")
    what.add_argument("--class", dest="cls", type=chern, metavar="r:a:b:s")
    p.add_argument("--regime", type=regime_arg, default=Regime.ORIGIN)
    p.add_argument("--ray", type=ray_arg, required=True, metavar="p:q")
    p.add_argument("--steps", type=int, default=6)

    verb("selftest", "run the verification suite")
    return parser


def _dump(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _cmd_eval(args, surface, out):
    cls, names = CHARGES[args.charge]
    if cls is ToddSpecial:
        spec = ToddSpecial(surface.d_alpha)
    else:
        missing = [n for n in names if getattr(args, n) is None]
        if missing:
            raise UsageError(f"--charge {args.charge} needs " + ", ".join(f"--{n}" for n in missing))
        spec = cls(*(getattr(args, n) for n in names))
    z = eval_charge(spec, args.cls, surface)
    result = {"charge": args.charge, "class": str(args.cls), "Z": z.to_json()}
    if z.is_zero():
        result["phase"] = None
        result["slope"] = None
    else:
        result["phase"] = phase(z).to_json()
        s = slope(z)
        result["slope"] = "inf" if s == math.inf else fmt(s)
    _dump(result, out)


def _cmd_phase_limit(args, surface, out):
    k = KernelClass(args.regime, args.kernel)
    ph = limit_phase(k, args.ray)
    result = {"regime": k.regime.value, "kernel": ":".join(map(str, k.mults))}
    if args.ray is not None:
        result["ray"] = f"{fmt(args.ray.p)}:{fmt(args.ray.q)}"
    result.update(ph.to_json())
    _dump(result, out)


def _cmd_kernel(args, surface, out):
    result = classify_kernel(args.regime, surface).to_json()
    if args.bruteforce is not None:
        if args.regime is not Regime.AFTER_FM:
            raise UsageError("--bruteforce only applies to the after-fm regime")
        found = classify_kernel_after_fm_bruteforce(surface.d_alpha, args.bruteforce, surface)
        result["bruteforce"] = [str(v) for v in found]
    _dump(result, out)


def _cmd_fm(args, surface, out):
    _dump({"class": str(fm_transform(args.cls, surface))}, out)


def _cmd_cce(args, surface, out):
    inp = CCEInput(args.D, args.V, args.R_B, args.D_B, surface.e, args.variant)
    sol = solve_cce(inp)
    res = cce_residual(inp, sol)
    result = sol.to_json()
    result["exact_zero"] = res.exact_zero
    if sol.T_exists:
        result["float_residual"] = float(f"{res.float_residual:.3g}")
        result["float_ok"] = res.float_residual < tolerance()
    _dump(result, out)


def _cmd_trajectory(args, surface, out):
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    obj = KernelClass(args.regime, args.kernel) if args.kernel is not None else args.cls
    out.write(to_csv(trajectory(obj, args.ray, args.steps, args.regime, surface)))


def _cmd_selftest(args, surface, out):
    report = checks.run_all(surface)
    passed = all(c.passed for c in report)
    _dump({"passed": passed, "checks": [c.to_json() for c in report]}, out)
    return 0 if passed else 1


COMMANDS = {
    "eval": _cmd_eval,
    "phase-limit": _cmd_phase_limit,
    "kernel": _cmd_kernel,
    "fm": _cmd_fm,
    "cce": _cmd_cce,
    "trajectory": _cmd_trajectory,
    "selftest": _cmd_selftest,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        old_err, sys.stderr = sys.stderr, err
        try:
            args = parser.parse_args(argv)
        finally:
            sys.stderr = old_err
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        surface = SurfaceParams(args.e, args.d_alpha)
        code = COMMANDS[args.verb](args, surface, out)
    except UsageError as exc:
        err.write(f"ellstab: error: {exc}\n")
        return 2
    except DomainError as exc:
        err.write(f"ellstab: domain error: {exc}\n")
        return 1
    return code or 0


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
