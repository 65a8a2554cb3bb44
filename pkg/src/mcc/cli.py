"""Command-line interface: ``mcc <subcommand> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 internal consistency failure.  Errors are reported as one JSON line on
stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from . import acceptance
from .cohomology import dimension, poincare
from .dsl import format_space, load_msd, parse_space
from .errors import InvalidDimension, MccError, NotPolynomial, ParseError
from .gitwalls import (
    LinearizedSetup,
    candidate_walls,
    classify_point,
    parse_factors,
    parse_point,
)
from .ratpoly import IntPoly, format_ratfun
from .sheafstab import (
    LineSum,
    classify,
    format_linear,
    format_sheaf,
    hilb_line_sum,
    hilb_monomial,
    parse_ideal,
    parse_sheaf,
)
from .tower import (
    center_space,
    evaluate_terms_at,
    poincare_M,
    poincare_S,
    reconstruct_term,
)

SCHEMA_VERSION = "1"


class UsageError(Exception):
    pass


class ConsistencyError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not an exact rational: {text!r}") from None
    return value


def _coefficients(p: IntPoly) -> list[int]:
    return list(p.coeffs)


def _poly_payload(p: IntPoly) -> dict[str, Any]:
    return {
        "coefficients": _coefficients(p),
        "degree": p.degree,
        "euler": p(1),
        "palindromic": p.is_palindromic(),
        "polynomial": str(p),
    }


def _require_r(args, minimum: int) -> int:
    r = getattr(args, "r", None)
    if r is None:
        raise UsageError("--r is required")
    if r < minimum:
        raise UsageError(f"--r must be >= {minimum}, got {r}")
    return r


# -- subcommands ---------------------------------------------------------

def cmd_betti(args) -> dict:
    if args.space == "S":
        r = _require_r(args, 3)
        rep = poincare_S(r)
        payload = _poly_payload(rep.pS)
        payload["nonnegative"] = rep.nonnegative
    else:
        r = _require_r(args, 1)
        payload = _poly_payload(poincare_M(r))
    payload["space"] = args.space
    return {"command": "betti", "r": r, "payload": payload}


def cmd_terms(args) -> dict:
    r = _require_r(args, 3)
    rep = poincare_S(r)
    terms = []
    mismatch = False
    for term in rep.terms:
        entry = {
            "index": term.index,
            "kind": term.kind,
            "center": term.center_label,
            "center_poincare": format_ratfun(term.center),
            "factor": format_ratfun(term.factor),
            "exponent": term.exponent,
            "expression": format_ratfun(term.literal),
        }
        if args.reconstruct:
            if term.index == 3:
                entry["reconstruction"] = "literal-only"
            else:
                same = reconstruct_term(term.index, r) == term.literal
                entry["reconstruction"] = "ok" if same else "mismatch"
                entry["geometry"] = format_space(center_space(term.index))
                mismatch |= not same
        terms.append(entry)
    # symbolic total against an unsimplified numeric evaluation at t = 2
    pm, vals = evaluate_terms_at(r, 2)
    numeric = pm + sum(vals[:3]) - sum(vals[3:])
    sum_ok = numeric == rep.pS(2)
    payload = {
        "pM": str(rep.pM),
        "pS": str(rep.pS),
        "sum_check": "ok" if sum_ok else "mismatch",
        "terms": terms,
    }
    record = {"command": "terms", "r": r, "payload": payload}
    if mismatch or not sum_ok:
        raise ConsistencyError(json.dumps(record, sort_keys=True))
    return record


def cmd_eval(args) -> dict:
    if (args.expr is None) == (args.expr_file is None):
        raise UsageError("give exactly one of --expr or --expr-file")
    r = _require_r(args, 1)
    space = parse_space(args.expr) if args.expr is not None else load_msd(args.expr_file)
    p = poincare(space, r)
    payload = _poly_payload(p)
    payload["expression"] = format_space(space)
    payload["dimension"] = dimension(space, r)
    return {"command": "eval", "r": r, "payload": payload}


def _setup(args, with_lambda: bool):
    factors = parse_factors(args.factors)
    slot = len(factors) - 1 if args.free_slot is None else args.free_slot
    if not 0 <= slot < len(factors):
        raise UsageError(f"--free-slot must be in 0..{len(factors) - 1}")
    weights: list[Fraction | None] = [Fraction(1)] * len(factors)
    if args.weights:
        parts = args.weights.split(",")
        if len(parts) != len(factors):
            raise UsageError("--weights needs one entry per factor")
        weights = [None if p.strip() in ("*", "lambda") else _parse_fraction(p) for p in parts]
    weights[slot] = _parse_fraction(args.lam) if with_lambda else None
    if any(w is not None and w <= 0 for w in weights):
        raise UsageError("linearization weights must be positive")
    return factors, LinearizedSetup(factors, weights), slot


def cmd_walls(args) -> dict:
    _, setup, slot = _setup(args, with_lambda=False)
    walls = candidate_walls(setup, slot)
    return {"command": "walls", "payload": {"free_slot": slot, "walls": [_frac(w) for w in walls]}}


def cmd_classify(args) -> dict:
    factors, setup, slot = _setup(args, with_lambda=True)
    points = parse_point(args.point, factors)
    verdict = classify_point(points, setup)
    payload: dict[str, Any] = {
        "lambda": _frac(setup.lin_weights[slot]),
        "min_mu": _frac(verdict.min_mu),
        "verdict": verdict.verdict.value,
        "witness": None,
    }
    if verdict.witness is not None:
        payload["witness"] = {
            "locus": verdict.witness.locus,
            "mu": _frac(verdict.witness.mu),
            "orders": list(verdict.witness.orders),
        }
    return {"command": "classify", "payload": payload}


def cmd_stab(args) -> dict:
    model = parse_sheaf(args.sheaf)
    verdict = classify(model)
    hilb = hilb_line_sum(model.twists) if isinstance(model, LineSum) else model.hilb
    payload: dict[str, Any] = {
        "sheaf": format_sheaf(model),
        "hilbert_polynomial": str(hilb),
        "verdict": verdict.verdict.value,
        "destabilizer": None,
        "destabilizer_hilbert_polynomial": None,
    }
    if verdict.destabilizer is not None:
        d = verdict.destabilizer
        payload["destabilizer"] = format_sheaf(d) if isinstance(d, LineSum) else str(d)
        payload["destabilizer_hilbert_polynomial"] = str(verdict.destabilizer_hilb)
    return {"command": "stab", "payload": payload}


def cmd_hilb(args) -> dict:
    ideal = parse_ideal(args.ideal, args.vars)
    res = hilb_monomial(ideal)
    payload = {
        "coefficients": [_frac(c) for c in res.hilb],
        "dimension": res.dimension,
        "generators": [list(g) for g in ideal.gens],
        "hilbert_function": [res.hilbert_function(m) for m in range(11)],
        "hilbert_polynomial": format_linear(res.hilb),
        "series_numerator": str(res.numerator).replace("t", "q"),
    }
    return {"command": "hilb", "payload": payload}


def cmd_verify(args) -> dict:
    if args.rmax < 3:
        raise UsageError("--rmax must be >= 3")
    table = acceptance.EPS_R3
    if args.eps_table:
        try:
            with open(args.eps_table) as fh:
                table = [int(x) for x in json.load(fh)]
        except (OSError, ValueError, TypeError) as exc:
            raise UsageError(f"cannot read --eps-table: {exc}") from None
    outcomes = acceptance.run_all(acceptance.Context(rmax=args.rmax, eps_table=table))
    payload = {
        "criteria": [
            {"detail": o.detail, "name": o.name, "passed": o.passed, "title": o.title}
            for o in outcomes
        ],
        "passed": all(o.passed for o in outcomes),
        "rmax": args.rmax,
    }
    return {"command": "verify", "payload": payload}


COMMANDS = {
    "betti": cmd_betti,
    "terms": cmd_terms,
    "eval": cmd_eval,
    "walls": cmd_walls,
    "classify": cmd_classify,
    "stab": cmd_stab,
    "hilb": cmd_hilb,
    "verify": cmd_verify,
}


# -- rendering -----------------------------------------------------------

def _styled() -> bool:
    mode = os.environ.get("MCC_COLOR", "auto")
    if mode == "always":
        return True
    if mode == "never":
        return False
    return sys.stdout.isatty()


def _bold(text: str) -> str:
    return f"\x1b[1m{text}\x1b[0m" if _styled() else text


def render_json(record: dict) -> str:
    full = {"schema_version": SCHEMA_VERSION, "r": record.get("r"), **record}
    return json.dumps(full, sort_keys=True, ensure_ascii=False)


def render_table(record: dict) -> str:
    cmd, payload = record["command"], record["payload"]
    lines: list[str] = []
    if cmd in ("betti", "eval"):
        title = f"P_t({payload.get('space', payload.get('expression'))})"
        if record.get("r") is not None:
            title += f", r={record['r']}"
        lines.append(_bold(title))
        lines.append(f"{'degree':>6}  {'betti':>8}")
        for i, c in enumerate(payload["coefficients"]):
            if i % 2 == 0 or c:
                lines.append(f"{i:>6}  {c:>8}")
        lines.append(f"euler characteristic {payload['euler']}, "
                     f"palindromic {'yes' if payload['palindromic'] else 'no'}")
    elif cmd == "terms":
        lines.append(_bold(f"correction terms, r={record['r']}"))
        for t in payload["terms"]:
            sign = "+" if t["kind"] == "blowup" else "-"
            extra = f"  [{t['reconstruction']}]" if "reconstruction" in t else ""
            lines.append(f"{sign} term {t['index']} ({t['kind']} {t['center']}, exponent {t['exponent']}){extra}")
            lines.append(f"    {t['expression']}")
        lines.append(f"P_t(S) = {payload['pS']}")
        lines.append(f"sum check {payload['sum_check']}")
    elif cmd == "verify":
        for c in payload["criteria"]:
            lines.append(f"{'PASS' if c['passed'] else 'FAIL'} {c['name']} {c['title']}: {c['detail']}")
        lines.append(_bold("ALL PASS" if payload["passed"] else "FAILED"))
    else:
        for key in sorted(payload):
            value = payload[key]
            if value is None:
                value = "none"
            elif isinstance(value, (list, dict)):
                value = json.dumps(value, sort_keys=True)
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _latex_poly(coeffs: Sequence[int]) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else "t" if i == 1 else f"t^{{{i}}}"
        body = (str(abs(c)) if abs(c) != 1 or not mono else "") + mono
        parts.append(("-" if c < 0 else "+") + body)
    text = "".join(parts).lstrip("+") or "0"
    return text.replace("+", " + ").replace("-", " - ").strip()


def render_latex(record: dict) -> str:
    payload = record["payload"]
    if "coefficients" in payload and record["command"] in ("betti", "eval"):
        return f"$P_t = {_latex_poly(payload['coefficients'])}$"
    rows = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (list, dict)):
            value = json.dumps(value, sort_keys=True)
        value = str(value).replace("_", r"\_")
        rows.append(f"{key.replace('_', chr(92) + '_')} & \\verb|{value}| \\\\")
    return "\\begin{tabular}{ll}\n" + "\n".join(rows) + "\n\\end{tabular}"


RENDERERS = {"json": render_json, "table": render_table, "latex": render_latex}


# -- argument parsing ----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=sorted(RENDERERS), default=argparse.SUPPRESS)
    common.add_argument("--r", type=int, default=argparse.SUPPRESS)

    parser = _Parser(prog="mcc", description="Betti numbers and stability checks for moduli of rational cubics.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("betti", parents=[common], help="Betti numbers of S or M")
    p.add_argument("--space", choices=["S", "M"], required=True)

    p = sub.add_parser("terms", parents=[common], help="the six blow-up/blow-down corrections")
    p.add_argument("--reconstruct", action="store_true")

    p = sub.add_parser("eval", parents=[common], help="Poincaré polynomial of a space expression")
    p.add_argument("--expr")
    p.add_argument("--expr-file")

    for name, help_text in (("walls", "candidate GIT walls"), ("classify", "Hilbert-Mumford classification")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--factors", required=True)
        p.add_argument("--free-slot", type=int)
        p.add_argument("--weights")
        if name == "classify":
            p.add_argument("--point", required=True)
            p.add_argument("--lambda", dest="lam", required=True)

    p = sub.add_parser("stab", parents=[common], help="slope stability of a sheaf model")
    p.add_argument("--sheaf", required=True)

    p = sub.add_parser("hilb", parents=[common], help="Hilbert polynomial of a monomial ideal")
    p.add_argument("--ideal", required=True)
    p.add_argument("--vars", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance battery")
    p.add_argument("--rmax", type=int, default=12)
    p.add_argument("--eps-table", help="JSON list overriding the r=3 reference Betti numbers")
    return parser


def _error(kind: str, message: str, **extra) -> None:
    record = {"error": kind, "message": message, **extra}
    print(json.dumps(record, sort_keys=True), file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required: " + ", ".join(COMMANDS))
        fmt = getattr(args, "format", "table")
        record = COMMANDS[args.command](args)
    except UsageError as exc:
        _error("UsageError", str(exc))
        return 2
    except ParseError as exc:
        _error("ParseError", str(exc), offset=exc.offset, expected=list(exc.expected))
        return 2
    except NotPolynomial as exc:
        _error("NotPolynomial", str(exc))
        return 3
    except ConsistencyError as exc:
        _error("ConsistencyError", "reconstruction or sum check failed", record=json.loads(str(exc)))
        return 3
    except (InvalidDimension, MccError, ValueError) as exc:
        _error(type(exc).__name__, str(exc))
        return 2
    except OSError as exc:
        _error("IOError", str(exc))
        return 2
    print(RENDERERS[fmt](record))
    if args.command == "verify" and not record["payload"]["passed"]:
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
