"""``lctconv`` command line.

Exit status: 0 success, 1 domain error (or a failed verification), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

from .convolution import OPERATORS, Realization
from .core import LctParams, SampleGrid, Spectrum, lct_forward, lct_inverse
from .errors import LctError
from .signals import (
    generate,
    parse_signal_spec,
    read_signal,
    write_plot_data,
    write_signal,
)
from .solver import EquationProblem, solve
from .theorems import (
    YoungExponents,
    verify_all,
    verify_associativity,
    verify_commutativity,
    verify_convolution_theorem,
    verify_deng,
    verify_distributivity,
    verify_l1_bound,
    verify_oracle,
    verify_realizations,
    verify_round_trip,
    verify_shi,
    verify_spectral,
    verify_young,
)

DEFAULT_GRID = SampleGrid(-8.0, 1 / 32, 512)


class UsageError(Exception):
    pass


def parse_matrix(text: str) -> LctParams:
    """``a,b,c,d`` or ``frft:ALPHA`` (fractional Fourier angle in radians)."""
    text = text.strip()
    if text.lower().startswith("frft:"):
        return LctParams.fractional(float(text[5:]))
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"--matrix needs four numbers a,b,c,d, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--matrix entries must be numbers: {text!r}") from None


def parse_grid(text: str) -> SampleGrid:
    try:
        start, step, count = text.split(",")
        return SampleGrid(float(start), float(step), int(count))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--grid expects start,step,count: {exc}") from None


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"--lambda expects re[,im], got {text!r}")


def split_signal_specs(text: str) -> list[str]:
    """``gaussian:width=2,chirp:rate=1,width=3,rect`` -> three specs."""
    specs: list[str] = []
    for token in text.split(","):
        if specs and "=" in token and ":" not in token:
            specs[-1] += "," + token
        else:
            specs.append(token)
    return specs


def _params(args) -> LctParams:
    if args.matrix is None:
        raise UsageError("--matrix is required")
    if isinstance(args.matrix, LctParams):
        return args.matrix
    return LctParams(*args.matrix)


def _emit(obj, args):
    text = json.dumps(obj, indent=2)
    if getattr(args, "report", None):
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _save(signal, args):
    if args.out:
        write_signal(signal, args.out, args.format)
    if getattr(args, "plot", None):
        write_plot_data(signal, args.plot)


def _inputs(args, n):
    paths = args.inputs or []
    if len(paths) != n:
        raise UsageError(f"expected {n} --in file(s), got {len(paths)}")
    return [read_signal(p) for p in paths]


def cmd_transform(args):
    (sig,) = _inputs(args, 1)
    if args.inverse:
        if args.matrix is not None:
            sig = Spectrum(sig.grid, sig.values, _params(args))
        elif not isinstance(sig, Spectrum):
            raise UsageError("inverse transform needs --matrix or a spectrum file with params")
        out = lct_inverse(sig, args.grid)
    else:
        out = lct_forward(sig, _params(args))
    _save(out, args)
    return 0


def cmd_convolve(args):
    f, g = _inputs(args, 2)
    A = _params(args)
    op = OPERATORS[args.op]
    if args.op in ("new", "dual"):
        h = op(f, g, A, Realization(args.realization), crop=args.crop)
    else:
        h = op(f, g, A, crop=args.crop)
    _save(h, args)
    return 0


def cmd_solve(args):
    f, g = _inputs(args, 2)
    prob = EquationProblem(args.lam, f, g, _params(args))
    try:
        phi, diag = solve(prob, args.tol if args.tol is not None else 1e-6)
    except LctError as exc:
        diag = getattr(exc, "diagnostics", None)
        if diag is not None:
            _emit(diag.to_dict(), args)
        raise
    _save(phi, args)
    _emit(diag.to_dict(), args)
    return 0


def _verify_signals(args):
    if args.inputs:
        sigs = [read_signal(p) for p in args.inputs]
    else:
        specs = split_signal_specs(args.signals)
        sigs = [generate(parse_signal_spec(s, args.grid or DEFAULT_GRID)) for s in specs]
    if len(sigs) < 2:
        raise UsageError("verify needs at least two signals")
    if len(sigs) == 2:
        grid = sigs[1].grid
        sigs.append(generate(parse_signal_spec("gaussian:center=-0.5,width=0.7", grid)))
    return sigs[:3]


IDENTITIES = {
    "conv-theorem": lambda f, g, h, A, x: verify_convolution_theorem(f, g, A),
    "conv-theorem-dual": lambda f, g, h, A, x: verify_convolution_theorem(f, g, A, dual=True),
    "realizations": lambda f, g, h, A, x: verify_realizations(f, g, A),
    "commutativity": lambda f, g, h, A, x: verify_commutativity(f, g, A),
    "associativity": lambda f, g, h, A, x: verify_associativity(f, g, h, A),
    "distributivity": lambda f, g, h, A, x: verify_distributivity(f, g, h, A),
    "l1-bound": lambda f, g, h, A, x: verify_l1_bound(f, g, A),
    "young": lambda f, g, h, A, x: verify_young(f, g, x, A),
    "deng": lambda f, g, h, A, x: verify_deng(f, g, A),
    "shi": lambda f, g, h, A, x: verify_shi(f, g, A),
    "spectral": lambda f, g, h, A, x: verify_spectral(f, g, A),
    "round-trip": lambda f, g, h, A, x: verify_round_trip(f, A),
    "oracle": lambda f, g, h, A, x: verify_oracle(f, A),
}


def cmd_verify(args):
    A = _params(args)
    f, g, h = _verify_signals(args)
    x = YoungExponents.from_pq(*args.exponents)
    if args.identity == "all":
        reports = verify_all(f, g, h, A, x)
    else:
        reports = [IDENTITIES[args.identity](f, g, h, A, x)]
    if args.tol is not None:
        for r in reports:
            r.tolerance = args.tol
    passed = all(r.passed for r in reports)
    _emit({"passed": passed, "reports": [r.to_dict() for r in reports]}, args)
    return 0 if passed else 1


def cmd_generate(args):
    if not args.signal:
        raise UsageError("generate needs --signal")
    sig = generate(parse_signal_spec(args.signal, args.grid or DEFAULT_GRID))
    if not args.out:
        raise UsageError("generate needs --out")
    _save(sig, args)
    return 0


def _exponents(text):
    try:
        p, q = (math.inf if s.strip() in ("inf", "∞") else float(s) for s in text.split(","))
        return p, q
    except ValueError:
        raise argparse.ArgumentTypeError(f"--exponents expects p,q, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--matrix", type=parse_matrix, help="a,b,c,d or frft:ALPHA")
    common.add_argument("--in", dest="inputs", action="extend", nargs="+", metavar="PATH")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--report", metavar="PATH")
    common.add_argument("--tol", type=float)
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--plot", metavar="PATH", help="CSV of axis, |value|, phase")
    common.add_argument("--grid", type=parse_grid, help="start,step,count")

    parser = argparse.ArgumentParser(prog="lctconv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", parents=[common], help="forward or inverse LCT")
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("convolve", parents=[common], help="canonical convolution of two signals")
    p.add_argument("--op", choices=sorted(OPERATORS), default="new")
    p.add_argument("--realization", choices=[r.value for r in Realization], default="chirp1")
    p.add_argument("--crop", action="store_true", help="resample onto the first input's grid")
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("solve", parents=[common], help="solve lam*phi + g (x)_A phi = f")
    p.add_argument("--lambda", dest="lam", type=parse_complex, default=1 + 0j, metavar="RE,IM")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="check identities numerically")
    p.add_argument("--identity", choices=["all", *IDENTITIES], default="all")
    p.add_argument("--signals", default="gaussian,gaussian:center=1,width=0.7")
    p.add_argument("--exponents", type=_exponents, default=(1.0, 1.0), metavar="P,Q")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", parents=[common], help="write a test signal")
    p.add_argument("--signal", help="e.g. gaussian:center=0,width=1")
    p.set_defaults(func=cmd_generate)
    return parser


VALUE_FLAGS = ("--matrix", "--grid", "--lambda", "--exponents", "--tol")
NEGATIVE = re.compile(r"^-\.?\d")


def _glue_negative_values(argv):
    """``--grid -8,0.1,160`` -> ``--grid=-8,0.1,160``; argparse would read the
    value as an option."""
    out = []
    for token in argv:
        if out and out[-1] in VALUE_FLAGS and NEGATIVE.match(token):
            out[-1] += "=" + token
        else:
            out.append(token)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (LctError, ValueError, OSError) as exc:
        print(f"lctconv: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
