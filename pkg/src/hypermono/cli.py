"""
Command-line front end.

    hypermono classify --alpha 0,0,0,0 --beta 1/5,2/5,3/5,4/5
    hypermono classify --f C1^4 --g C5
    hypermono closure --f C4 --g C1*C2 --cap 100000
    hypermono monodromy --alpha 1/4,3/4 --beta 1,1/2 --tol 1e-6
    hypermono batch requests.txt

Exit status: 0 on success, 1 on a domain error (reported as a JSON document
with the error class name), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import classify as cl
from .errors import GrammarError, HypermonoError
from .exactmatrix import ExactMatrix
from .exactpoly import ParameterList, parameters_from_poly, parse_angles, parse_poly, poly_from_parameters
from .levelt import build_group, levelt_normal_form

GRAMMAR = """\
input grammar:
  angles       comma-separated rationals, e.g. 0,0,0,0 or 1/5,2/5,3/5,4/5
               (numeric commands also accept complex literals such as 0.3+0.1j)
  polynomials  cyclotomic products C<m>[^e][*C<m>[^e]...], e.g. C1^4, C2^2*C4,
               or ascending integer coefficients, e.g. [1,-4,6,-4,1]
  matrices     JSON row-major arrays of integers or rational strings, e.g. [[0,-1],[1,0]]
  paths        semicolon-separated complex points, e.g. "0.5;0.5+0.5j;0.2"
"""


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def _exact_pair(args) -> tuple[ParameterList, ParameterList]:
    angles = args.alpha is not None or args.beta is not None
    polys = getattr(args, "f", None) is not None or getattr(args, "g", None) is not None
    if angles and polys:
        raise UsageError("give either --alpha/--beta or --f/--g, not both")
    if angles:
        if args.alpha is None or args.beta is None:
            raise UsageError("--alpha and --beta must be given together")
        return ParameterList(parse_angles(args.alpha)), ParameterList(parse_angles(args.beta))
    if polys:
        if args.f is None or args.g is None:
            raise UsageError("--f and --g must be given together")
        return parameters_from_poly(parse_poly(args.f)), parameters_from_poly(parse_poly(args.g))
    raise UsageError("missing input: --alpha/--beta or --f/--g")


def _numeric_params(text: str) -> list:
    out = []
    for t in text.split(","):
        t = t.strip()
        if not t:
            raise GrammarError(f"bad parameter list {text!r}")
        try:
            out.append(Fraction(t))
        except (ValueError, ZeroDivisionError):
            try:
                out.append(complex(t))
            except ValueError:
                raise GrammarError(f"bad parameter {t!r} in {text!r}") from None
    return out


def _complex(text: str) -> complex:
    try:
        return complex(text.strip().replace(" ", ""))
    except ValueError:
        raise GrammarError(f"bad complex number {text!r}") from None


def _matrix(text: str) -> ExactMatrix:
    if not text.lstrip().startswith("["):
        with open(text) as fh:
            text = fh.read()
    try:
        data = json.loads(text)
        return ExactMatrix(data)
    except (json.JSONDecodeError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise GrammarError(f"bad matrix: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands; each returns a JSON-able dict
# ---------------------------------------------------------------------------


def cmd_classify(args) -> dict[str, Any]:
    alpha, beta = _exact_pair(args)
    report = cl.zariski_classification(alpha, beta)
    out = report.to_json(generators=args.emit_generators)
    out["alpha"] = str(alpha)
    out["beta"] = str(beta)
    return out


def cmd_interlace(args) -> dict[str, Any]:
    alpha, beta = _exact_pair(args)
    ok, pattern = cl.interlace_check(alpha, beta)
    return {"alpha": str(alpha), "beta": str(beta), "interlacing": ok, "pattern": pattern}


def cmd_families(args) -> dict[str, Any]:
    fams = cl.fourteen_families()
    return {"f": "C1^4", "count": len(fams), "families": [e.to_json() for e in fams], "catalog": cl.catalog_metadata()}


def cmd_closure(args) -> dict[str, Any]:
    alpha, beta = _exact_pair(args)
    H = build_group(poly_from_parameters(alpha), poly_from_parameters(beta))
    res = cl.finite_closure(H, cap=args.cap)
    if isinstance(res, cl.FiniteOrder):
        return {"result": "FiniteOrder", "order": res.order, "cap": args.cap}
    return {"result": "ExceededCap", "order": None, "cap": args.cap}


def cmd_normal_form(args) -> dict[str, Any]:
    if args.a is None or args.b is None:
        raise UsageError("normal-form needs --a and --b")
    nf = levelt_normal_form(_matrix(args.a), _matrix(args.b))
    return {
        "P": nf.P.to_json(),
        "A": nf.A.to_json(),
        "B": nf.B.to_json(),
        "cyclic_vector": [f"{x.numerator}/{x.denominator}" for x in nf.cyclic_vector],
    }


def cmd_monodromy(args) -> dict[str, Any]:
    from .odeflow import cross_validate, numeric_monodromy

    if args.alpha is None or args.beta is None:
        raise UsageError("monodromy needs --alpha and --beta")
    alpha, beta = _numeric_params(args.alpha), _numeric_params(args.beta)
    if len(alpha) != len(beta):
        raise UsageError("--alpha and --beta must have the same length")
    bp = _complex(args.basepoint)
    if args.validate:
        if not all(isinstance(x, Fraction) for x in alpha + beta):
            raise UsageError("--validate needs rational parameters")
        cv = cross_validate(alpha, beta, tol=args.tol, basepoint=bp, max_order=args.max_order)
        out = cv.monodromy.to_json()
        out["validation"] = cv.to_json()
        return out
    return numeric_monodromy(alpha, beta, basepoint=bp, tol=args.tol, max_order=args.max_order).to_json()


def cmd_continue(args) -> dict[str, Any]:
    from .odeflow import PathSpec, continue_along, hypergeometric_system

    if args.alpha is None or args.beta is None or args.path is None:
        raise UsageError("continue needs --alpha, --beta and --path")
    alpha, beta = _numeric_params(args.alpha), _numeric_params(args.beta)
    if len(alpha) != len(beta):
        raise UsageError("--alpha and --beta must have the same length")
    pts = [_complex(t) for t in args.path.split(";") if t.strip()]
    if len(pts) < 2 and not args.closed:
        raise UsageError("--path needs at least two points")
    path = PathSpec(pts[0], tuple(pts[1:]), closed=args.closed)
    res = continue_along(hypergeometric_system(alpha, beta).system(), path, tol=args.tol, max_order=args.max_order)
    return {
        "transport": [[[float(x.real), float(x.imag)] for x in row] for row in res.matrix],
        "steps": res.steps,
        "max_order_used": res.max_order_used,
        "tail_estimate": res.tail_estimate,
    }


def cmd_batch(args) -> dict[str, Any]:
    results = []
    with open(args.file) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            code, doc = execute(shlex.split(line))
            results.append({"request": line, "exit": code, "result": doc})
    return {"results": results}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_exact_inputs(p: argparse.ArgumentParser, polys: bool = True) -> None:
    p.add_argument("--alpha", help="angles of f (comma-separated rationals)")
    p.add_argument("--beta", help="angles of g (comma-separated rationals)")
    if polys:
        p.add_argument("--f", help="polynomial f, e.g. C1^4 or [1,-4,6,-4,1]")
        p.add_argument("--g", help="polynomial g, e.g. C5")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hypermono",
        description="Monodromy of hypergeometric equations",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--output", choices=["json", "text"], default="json")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("classify", help="classify H(f, g)")
    _add_exact_inputs(p)
    p.add_argument("--emit-generators", action="store_true", help="include A and B in the output")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("interlace", help="interlacing test on the angles")
    _add_exact_inputs(p)
    p.set_defaults(func=cmd_interlace)

    p = sub.add_parser("families", help="the fourteen families with f = (x-1)^4")
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("closure", help="enumerate H(f, g) up to a cap")
    _add_exact_inputs(p)
    p.add_argument("--cap", type=int, default=100_000)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("normal-form", help="companion normal form of a pair (a, b)")
    p.add_argument("--a", help="matrix a (JSON or file path)")
    p.add_argument("--b", help="matrix b (JSON or file path)")
    p.set_defaults(func=cmd_normal_form)

    for name, func in (("monodromy", cmd_monodromy), ("continue", cmd_continue)):
        p = sub.add_parser(name, help="numeric monodromy" if name == "monodromy" else "transport along a path")
        _add_exact_inputs(p, polys=False)
        p.add_argument("--tol", type=float, default=1e-6 if name == "monodromy" else 1e-12)
        p.add_argument("--max-order", type=int, default=None)
        if name == "monodromy":
            p.add_argument("--basepoint", default="0.5")
            p.add_argument("--validate", action="store_true", help="compare with the exact f, g")
        else:
            p.add_argument("--path", help="semicolon-separated points")
            p.add_argument("--closed", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("batch", help="run newline-delimited requests from a file")
    p.add_argument("file")
    p.set_defaults(func=cmd_batch)
    for sp in sub.choices.values():
        sp.add_argument("--output", choices=["json", "text"], default=argparse.SUPPRESS)
    return parser


def execute(argv: Sequence[str]) -> tuple[int, dict[str, Any]]:
    """Run one request; returns ``(exit_code, document)`` without printing."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command is None:
            raise UsageError("missing subcommand")
        return 0, args.func(args)
    except (UsageError, GrammarError) as exc:
        return 2, {"error": "UsageError", "message": str(exc), "grammar": GRAMMAR}
    except HypermonoError as exc:
        return 1, {"error": exc.name, "message": str(exc)}
    except ValueError as exc:
        return 1, {"error": "ValueError", "message": str(exc)}
    except OSError as exc:
        return 2, {"error": "UsageError", "message": str(exc), "grammar": GRAMMAR}


def _text(doc: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(doc, dict):
        lines = []
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
        return "\n".join(lines)
    if isinstance(doc, list):
        return "\n".join(_text(x, indent) if isinstance(x, dict) else f"{pad}{json.dumps(x, ensure_ascii=False)}" for x in doc)
    return f"{pad}{doc}"


def _is_flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if "-h" in argv or "--help" in argv:
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:  # argparse prints help and exits
            return int(exc.code or 0)
        except UsageError:
            pass
    code, doc = execute(argv)
    try:
        fmt = argv[argv.index("--output") + 1]
    except (ValueError, IndexError):
        fmt = "json"
    print(_text(doc) if fmt == "text" else json.dumps(doc, ensure_ascii=False, indent=2))
    if code == 2:
        print(f"hypermono: {doc['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
