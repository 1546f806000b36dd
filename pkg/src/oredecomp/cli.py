"""Command-line front end: an expression parser for differential operators
over GF(q)(t), one subcommand per pipeline stage, and deterministic JSON
reports.

Grammar (EBNF), evaluated left-to-right in the Ore ring so that "D*t"
reduces through the commutation rule:

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := base ("^" uint)?
    base   := "D" | "t" | "g" | uint | "(" expr ")"

"/" requires an order-0 right operand; "^" takes a nonnegative integer;
juxtaposition is not multiplication.  Invariant chains use the same grammar
with "Y" in place of "D" (and commutative multiplication).

Serialized values (operators, polynomials in Y, rational functions) re-parse
to equal objects; constants of GF(q)(t^p) are printed in t^p form, never
through an explicit second variable.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .decomp import DecompositionReport, lclm_decompose, nice_repr
from .errors import (
    ConstantFieldViolation,
    DegreeMismatch,
    DivisionByOperator,
    DivisionByZero,
    ExprSyntaxError,
    InseparableFactor,
    NotPrime,
    ReducibleModulus,
    RetryExhausted,
    VerificationFailed,
)
from .fieldkit import FqField, Poly, RatFuncField, fq_make
from .ore import OrePoly, gcrd, lclm, apply_to, operator_degree, ore_pow
from .pcurv import frobenius_invariants, pcurv_data


# ---------------------------------------------------------------------------
# Tokenizer and parser
# ---------------------------------------------------------------------------

_SYMBOLS = ("D", "t", "g", "Y")


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("uint", int(text[i:j]), i))
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(("sym", ch, i))
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ExprSyntaxError("unexpected character %r" % ch, i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    """Recursive-descent parser over an evaluation algebra.

    The algebra supplies the symbol values and the ring operations; the same
    parser therefore serves noncommutative operators (D) and commutative
    polynomials in Y."""

    def __init__(self, text, algebra):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.algebra = algebra

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ExprSyntaxError("expected %r, found %r" % (kind, tok[1]), tok[2])
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError("trailing input %r" % tok[1], tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.next()
            rhs = self.factor()
            if op == "*":
                value = self.algebra.mul(value, rhs)
            else:
                value = self.algebra.div(value, rhs, pos)
        return value

    def factor(self):
        value = self.base()
        if self.peek()[0] == "^":
            self.next()
            tok = self.next()
            if tok[0] != "uint":
                raise ExprSyntaxError("exponent must be a nonnegative integer", tok[2])
            value = self.algebra.pow(value, tok[1])
        return value

    def base(self):
        tok = self.next()
        kind, val, pos = tok
        if kind == "uint":
            return self.algebra.from_int(val)
        if kind == "sym":
            return self.algebra.symbol(val, pos)
        if kind == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ExprSyntaxError("unexpected token %r" % val, pos)


class _OreAlgebra:
    """Evaluation into GF(q)(t)<D>."""

    def __init__(self, ratfield: RatFuncField):
        self.ratfield = ratfield

    def from_int(self, k):
        return OrePoly.const(self.ratfield, self.ratfield.from_int(k))

    def symbol(self, name, pos):
        if name == "D":
            return OrePoly.partial(self.ratfield)
        if name == "t":
            return OrePoly.const(self.ratfield, self.ratfield.t)
        if name == "g":
            base = self.ratfield.base
            if base.n == 1:
                raise ExprSyntaxError("symbol g is undefined over a prime field", pos)
            return OrePoly.const(self.ratfield, self.ratfield.from_base(base.gen()))
        raise ExprSyntaxError("symbol %r not allowed here" % name, pos)

    def mul(self, a, b):
        return a * b

    def div(self, a, b, pos):
        if b.order > 0:
            raise DivisionByOperator("division by an operator of order %d" % b.order)
        if not b:
            raise DivisionByZero("division by zero")
        return a.scale(b.coeff(0).inv())

    def pow(self, a, e):
        return ore_pow(a, e)


class _YAlgebra:
    """Evaluation into the commutative polynomial ring GF(q)(t)[Y]."""

    def __init__(self, ratfield: RatFuncField):
        self.ratfield = ratfield

    def from_int(self, k):
        return Poly.const(self.ratfield, self.ratfield.from_int(k))

    def symbol(self, name, pos):
        if name == "Y":
            return Poly.x(self.ratfield)
        if name == "t":
            return Poly.const(self.ratfield, self.ratfield.t)
        if name == "g":
            base = self.ratfield.base
            if base.n == 1:
                raise ExprSyntaxError("symbol g is undefined over a prime field", pos)
            return Poly.const(self.ratfield, self.ratfield.from_base(base.gen()))
        raise ExprSyntaxError("symbol %r not allowed here" % name, pos)

    def mul(self, a, b):
        return a * b

    def div(self, a, b, pos):
        if b.degree > 0:
            raise DivisionByOperator("division by a polynomial of positive degree")
        if not b:
            raise DivisionByZero("division by zero")
        return a.scale(b.coeff(0).inv())

    def pow(self, a, e):
        return a ** e


def parse_operator(text: str, field: FqField) -> OrePoly:
    """Parse an operator expression over GF(q)(t)."""
    return _Parser(text, _OreAlgebra(RatFuncField(field))).parse()


def parse_ypoly(text: str, field: FqField) -> Poly:
    """Parse a commutative polynomial in Y over GF(q)(t)."""
    return _Parser(text, _YAlgebra(RatFuncField(field))).parse()


# deterministic serialization (inverse of the grammar above) lives in
# serialize.py; re-exported here as part of the CLI surface
from .serialize import (  # noqa: E402
    fq_str,
    operator_str,
    poly_str,
    ratfunc_str,
    spoly_str,
    ypoly_str,
)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _build_field(args) -> FqField:
    modulus = None
    if args.modulus:
        modulus = [int(x) for x in args.modulus.split(",")]
    return fq_make(args.p, args.n, modulus)


def _read_expr(raw: str) -> str:
    if raw == "-":
        return sys.stdin.read()
    return raw


def _factor_entry(op, degree, label=None, indecomposable=None):
    entry = {
        "expr": operator_str(op),
        "order": op.order,
        "degree": degree,
    }
    if label is not None:
        entry["invariant"] = label
    if indecomposable is not None:
        entry["indecomposable"] = indecomposable
    return entry


def _report_json(report: DecompositionReport, field: FqField, args, elapsed_ms):
    factors = []
    for i, op in enumerate(report.factors):
        label = report.labels[i]
        indec = None
        if report.flags is not None:
            indec = report.flags.indecomposable_ok[i]
        factors.append(_factor_entry(
            op,
            report.degrees[i],
            label=ypoly_str(label.n_star ** label.nu),
            indecomposable=indec,
        ))
    doc = {
        "input": operator_str(report.input),
        "field": {"p": field.p, "n": field.n, "modulus": list(field.modulus)},
        "monic_input": operator_str(report.monic_input),
        "char_poly": spoly_str(report.charpoly),
        "invariants": [spoly_str(P) for P in report.invariants],
        "invariant_roots": [ypoly_str(Q) for Q in report.invariant_roots],
        "factors": factors,
        "iso_witness": operator_str(report.iso_witness) if report.iso_witness else None,
        "verified": report.verified,
        "seed": report.seed,
    }
    if not args.no_timings:
        doc["timings_ms"] = elapsed_ms
    return doc


def _cmd_decompose(args, field):
    L = parse_operator(_read_expr(args.expr[0]), field)
    start = time.perf_counter()
    report = lclm_decompose(L, seed=args.seed, verify=not args.no_verify)
    elapsed = round((time.perf_counter() - start) * 1000.0, 3)
    return _report_json(report, field, args, elapsed)


def _cmd_pcurvature(args, field):
    L = parse_operator(_read_expr(args.expr[0]), field)
    start = time.perf_counter()
    data = pcurv_data(L.monic())
    elapsed = round((time.perf_counter() - start) * 1000.0, 3)
    doc = {
        "input": operator_str(L),
        "field": {"p": field.p, "n": field.n, "modulus": list(field.modulus)},
        "monic_input": operator_str(L.monic()),
        "matrix": [[ratfunc_str(e) for e in row] for row in data.matrix.rows],
        "matrix_in_constant_field": data.matrix_constants is not None,
        "char_poly": spoly_str(data.charpoly),
        "invariants": [spoly_str(P) for P in data.invariants],
        "invariant_roots": [ypoly_str(Q) for Q in data.invariant_roots],
        "seed": args.seed,
    }
    if not args.no_timings:
        doc["timings_ms"] = elapsed
    return doc


def _cmd_gcrd(args, field):
    ops = [parse_operator(_read_expr(e), field) for e in args.expr]
    if len(ops) < 2:
        raise ExprSyntaxError("gcrd needs at least two --expr operands", 0)
    acc = ops[0]
    for op in ops[1:]:
        acc = gcrd(acc, op)
    return {
        "inputs": [operator_str(op) for op in ops],
        "field": {"p": field.p, "n": field.n, "modulus": list(field.modulus)},
        "result": operator_str(acc),
        "order": acc.order,
    }


def _cmd_lclm(args, field):
    ops = [parse_operator(_read_expr(e), field) for e in args.expr]
    if len(ops) < 2:
        raise ExprSyntaxError("lclm needs at least two --expr operands", 0)
    acc = lclm(ops)
    return {
        "inputs": [operator_str(op) for op in ops],
        "field": {"p": field.p, "n": field.n, "modulus": list(field.modulus)},
        "result": operator_str(acc),
        "order": acc.order,
    }


def _cmd_apply(args, field):
    if len(args.expr) != 2:
        raise ExprSyntaxError("apply needs --expr OPERATOR --expr FUNCTION", 0)
    L = parse_operator(_read_expr(args.expr[0]), field)
    fop = parse_operator(_read_expr(args.expr[1]), field)
    if fop.order > 0:
        raise DivisionByOperator("the second operand must have order 0")
    f = fop.coeff(0)
    return {
        "operator": operator_str(L),
        "argument": ratfunc_str(f),
        "field": {"p": field.p, "n": field.n, "modulus": list(field.modulus)},
        "result": ratfunc_str(apply_to(L, f)),
    }


def _cmd_equivalent(args, field):
    if len(args.expr) != 2:
        raise ExprSyntaxError("equivalent needs exactly two --expr operands", 0)
    L1 = parse_operator(_read_expr(args.expr[0]), field)
    L2 = parse_operator(_read_expr(args.expr[1]), field)
    inv1 = frobenius_invariants(L1.monic())
    inv2 = frobenius_invariants(L2.monic())
    from .pcurv import check_separable_factors

    check_separable_factors(L1.monic())
    check_separable_factors(L2.monic())
    return {
        "inputs": [operator_str(L1), operator_str(L2)],
        "field": {"p": field.p, "n": field.n, "modulus": list(field.modulus)},
        "invariants": [[spoly_str(P) for P in inv1], [spoly_str(P) for P in inv2]],
        "equivalent": inv1 == inv2,
    }


def _cmd_repr(args, field):
    if not args.invariants:
        raise ExprSyntaxError("repr needs --invariants \"Q1;Q2;...\"", 0)
    chain = [parse_ypoly(part, field) for part in args.invariants.split(";")]
    start = time.perf_counter()
    rep = nice_repr(chain)
    roundtrip = frobenius_invariants(rep.l_star)
    from .pcurv import ypoly_pth_power

    expected = [ypoly_pth_power(q) for q in chain if q.degree > 0]
    elapsed = round((time.perf_counter() - start) * 1000.0, 3)
    doc = {
        "invariants_requested": [ypoly_str(q) for q in chain],
        "field": {"p": field.p, "n": field.n, "modulus": list(field.modulus)},
        "l_star": operator_str(rep.l_star),
        "factors": [
            _factor_entry(op, operator_degree(op),
                          label=ypoly_str(lab.n_star ** lab.nu))
            for op, lab in zip(rep.pieces, rep.labels)
        ],
        "roundtrip_invariants": [spoly_str(P) for P in roundtrip],
        "verified": roundtrip == expected,
        "seed": args.seed,
    }
    if not args.no_timings:
        doc["timings_ms"] = elapsed
    return doc


_COMMANDS = {
    "decompose": _cmd_decompose,
    "pcurvature": _cmd_pcurvature,
    "gcrd": _cmd_gcrd,
    "lclm": _cmd_lclm,
    "apply": _cmd_apply,
    "equivalent": _cmd_equivalent,
    "repr": _cmd_repr,
}


def _make_argparser():
    parser = argparse.ArgumentParser(
        prog="oredecomp",
        description="LCLM-decomposition of linear differential operators "
                    "over GF(p^n)(t) in characteristic p.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--p", type=int, required=True, help="characteristic")
        sp.add_argument("--n", type=int, default=1, help="extension degree")
        sp.add_argument("--modulus", type=str, default=None,
                        help="defining polynomial c0,c1,...,1")
        sp.add_argument("--expr", action="append", default=[],
                        help="operator expression ('-' reads stdin)")
        sp.add_argument("--invariants", type=str, default=None,
                        help="semicolon-separated chain Q1;Q2;...")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json-out", type=str, default=None)
        sp.add_argument("--no-timings", action="store_true")
        sp.add_argument("--no-verify", action="store_true")
    return parser


def run(argv) -> int:
    parser = _make_argparser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        field = _build_field(args)
        doc = _COMMANDS[args.command](args, field)
    except (ExprSyntaxError, DivisionByOperator, DivisionByZero,
            NotPrime, ReducibleModulus, DegreeMismatch, ValueError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    except InseparableFactor as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 3
    except (VerificationFailed, ConstantFieldViolation) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 4
    except RetryExhausted as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 5
    text = json.dumps(doc, indent=2)
    print(text)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
