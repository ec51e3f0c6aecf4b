"""Command-line interface: expression parsing over F_p(s), exact
square-freeness validation, and the analyze/hull/respoly/factor commands.

Exit codes: 0 success, 2 input error, 3 precision exhausted,
4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (
    CharTooSmall,
    DegreeTooSmall,
    HypellvalError,
    InputError,
    InternalInconsistency,
    NotAPolynomialInX,
    NotPrime,
    NotSquareFree,
    PolySyntaxError,
    PrecisionExhausted,
    XInDenominator,
)
from .ffield import (
    _zp_divmod,
    _zp_gcd_clean,
    _zp_mul,
    _zp_trim,
    fq_factor,
    fq_field_make,
    FqPolynomial,
    is_prime,
)
from .newton import critical_segments
from .reduction import (
    base_field,
    build_local_poly,
    certificate_to_json,
    certify,
)
from .respoly import build_residue_poly


# ---------------------------------------------------------------------------
# rational functions over F_p[s] (exact, canonical: reduced, monic denominator)


class RatFunc:
    __slots__ = ("p", "num", "den")

    def __init__(self, p, num, den, reduce=True):
        num = _zp_trim([c % p for c in num])
        den = _zp_trim([c % p for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator in F_p(s)")
        if reduce and num:
            g = _zp_gcd_clean(num, den, p)
            if len(g) > 1:
                num, _ = _zp_divmod(num, g, p)
                den, _ = _zp_divmod(den, g, p)
        if not num:
            den = [1]
        lcinv = pow(den[-1], p - 2, p)
        if lcinv != 1:
            num = [c * lcinv % p for c in num]
            den = [c * lcinv % p for c in den]
        self.p = p
        self.num = num
        self.den = den

    @classmethod
    def const(cls, p, n):
        return cls(p, [n], [1], reduce=False)

    @classmethod
    def s_var(cls, p):
        return cls(p, [0, 1], [1], reduce=False)

    def is_zero(self):
        return not self.num

    def __add__(self, o):
        p = self.p
        num = [
            a + b
            for a, b in _pad(
                _zp_mul(self.num, o.den, p), _zp_mul(o.num, self.den, p)
            )
        ]
        return RatFunc(p, num, _zp_mul(self.den, o.den, p))

    def __neg__(self):
        return RatFunc(self.p, [-c for c in self.num], self.den, reduce=False)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        return RatFunc(
            self.p, _zp_mul(self.num, o.num, self.p), _zp_mul(self.den, o.den, self.p)
        )

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero in F_p(s)")
        return RatFunc(self.p, self.den, self.num, reduce=False)

    def __eq__(self, o):
        return self.p == o.p and self.num == o.num and self.den == o.den

    def __str__(self):
        n = _spoly_str(self.num)
        if self.den == [1]:
            return n
        return f"({n})/({_spoly_str(self.den)})"


def _pad(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _spoly_str(coeffs):
    if not coeffs:
        return "0"
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append("s" if c == 1 else f"{c}*s")
        else:
            parts.append(f"s^{i}" if c == 1 else f"{c}*s^{i}")
    return " + ".join(parts) or "0"


# ---------------------------------------------------------------------------
# values during expression evaluation: polynomials in X over F_p(s)


class XPoly:
    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs):
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.p = p
        self.coeffs = coeffs

    @classmethod
    def const(cls, p, r: RatFunc):
        return cls(p, [r])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RatFunc.const(self.p, 0)

    def __add__(self, o):
        n = max(len(self.coeffs), len(o.coeffs))
        return XPoly(self.p, [self.coeff(i) + o.coeff(i) for i in range(n)])

    def __neg__(self):
        return XPoly(self.p, [-c for c in self.coeffs])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not self.coeffs or not o.coeffs:
            return XPoly(self.p, [])
        out = [RatFunc.const(self.p, 0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return XPoly(self.p, out)

    def __pow__(self, e):
        out = XPoly.const(self.p, RatFunc.const(self.p, 1))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out


# ---------------------------------------------------------------------------
# tokenizer + recursive-descent parser


def _tokenize(text):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch in "xX":
            toks.append(("x", None, i))
        elif ch == "s":
            toks.append(("s", None, i))
        elif ch in "+-*/^()":
            toks.append((ch, None, i))
        else:
            raise PolySyntaxError(f"unexpected character {ch!r}", i)
        i += 1
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, p):
        self.toks = _tokenize(text)
        self.pos = 0
        self.p = p

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise PolySyntaxError(f"expected {kind!r}, got {tok[0]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self):
        v = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolySyntaxError(f"unexpected trailing {tok[0]!r}", tok[2])
        return v

    def expr(self):
        kind = self.peek()[0]
        neg = False
        while kind in ("+", "-"):
            if kind == "-":
                neg = not neg
            self.take()
            kind = self.peek()[0]
        v = self.term()
        if neg:
            v = -v
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            v = v - t if op == "-" else v + t

        return v

    def term(self):
        v = self.power()
        while self.peek()[0] in ("*", "/"):
            op, _, at = self.take()
            rhs = self.power()
            if op == "*":
                v = v * rhs
            else:
                if rhs.degree > 0:
                    raise XInDenominator(
                        f"division by an expression involving X at position {at}"
                    )
                if rhs.degree < 0:
                    raise PolySyntaxError("division by zero", at)
                v = v * XPoly.const(self.p, rhs.coeff(0).inv())
        return v

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            _, _, at = self.take()
            neg = False
            while self.peek()[0] == "-":
                neg = not neg
                self.take()
            _, e, _ = self.take("int")
            if neg:
                if base.degree > 0:
                    raise XInDenominator(
                        f"negative power of an expression involving X at position {at}"
                    )
                if base.degree < 0:
                    raise PolySyntaxError("zero to a negative power", at)
                base = XPoly.const(self.p, base.coeff(0).inv())
            return base ** e
        return base

    def atom(self):
        kind, val, at = self.take()
        if kind == "int":
            return XPoly.const(self.p, RatFunc.const(self.p, val))
        if kind == "s":
            return XPoly.const(self.p, RatFunc.s_var(self.p))
        if kind == "x":
            return XPoly(self.p, [RatFunc.const(self.p, 0), RatFunc.const(self.p, 1)])
        if kind == "-":
            return -self.atom()
        if kind == "(":
            v = self.expr()
            self.take(")")
            return v
        raise PolySyntaxError(f"unexpected token {kind!r}", at)


def parse_poly(text: str, p: int) -> XPoly:
    """Exact polynomial in X with coefficients in F_p(s)."""
    try:
        f = _Parser(text, p).parse()
    except ZeroDivisionError as exc:
        raise PolySyntaxError(str(exc), 0) from exc
    for c in f.coeffs:
        if len(c.den) > 1 and f.degree < 0:
            raise NotAPolynomialInX("input is not a polynomial in X")
    return f


# ---------------------------------------------------------------------------
# validation


def _xpoly_derivative(f: XPoly) -> XPoly:
    return XPoly(
        f.p,
        [c * RatFunc.const(f.p, i) for i, c in enumerate(f.coeffs)][1:],
    )


def _xpoly_gcd_degree(a: XPoly, b: XPoly) -> int:
    """Degree of gcd(a, b) in F_p(s)[X], exact Euclid with RatFunc
    coefficients."""
    while b.degree >= 0:
        # remainder of a by b
        r = a
        binv = b.coeffs[-1].inv()
        while r.degree >= b.degree >= 0 and r.degree >= 0:
            q = r.coeffs[-1] * binv
            shift = r.degree - b.degree
            sub = XPoly(
                a.p,
                [RatFunc.const(a.p, 0)] * shift + [c * q for c in b.coeffs],
            )
            r = r - sub
        a, b = b, r
    return a.degree


def validate(f: XPoly, p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    n = f.degree
    if n < 2:
        raise DegreeTooSmall(f"deg f = {n}, need at least 2")
    if p <= n:
        raise CharTooSmall(f"p = {p} must exceed deg f = {n}")
    if _xpoly_gcd_degree(f, _xpoly_derivative(f)) != 0:
        raise NotSquareFree("gcd(f, f') is not a unit: f is not square-free")


def rational_coeff_lists(f: XPoly):
    """(numerator, denominator) integer lists per power of X, the exact-entry
    format of the local-field layer."""
    return [(list(c.num) or [0], list(c.den)) for c in f.coeffs]


# ---------------------------------------------------------------------------
# reporting


def _fqpoly_str(q: FqPolynomial) -> str:
    parts = []
    for i, c in enumerate(q.coeffs):
        if c.is_zero():
            continue
        cs = str(c)
        if i == 0:
            parts.append(cs)
        else:
            var = "t" if i == 1 else f"t^{i}"
            parts.append(var if cs == "1" else f"({cs})*{var}")
    return " + ".join(parts) or "0"


def _print_node(node, indent, out):
    pad = "  " * indent
    fd = node.field_desc
    out.write(
        f"{pad}node (depth {node.depth}) over residue F_{fd['p']}^{fd['residueDegree']}, "
        f"ramification e = {fd['ramification']}\n"
    )
    if node.sdata is None:
        out.write(f"{pad}  no candidate index set: overt extensions only\n")
    else:
        sd = node.sdata
        out.write(
            f"{pad}  S = {{{', '.join(map(str, sd.S))}}}, mu = {sd.mu}, "
            f"e_S = {sd.eS}, c_S = PI^{sd.cS.lead}\n"
        )
        out.write(f"{pad}  residue polynomial: {_fqpoly_str(node.respoly.poly)}\n")
        facs = ", ".join(f"({_fqpoly_str(q)})^{m}" for q, m in node.factors)
        out.write(f"{pad}  factors: {facs}\n")
    out.write(f"{pad}  branch: {node.branch}, overt bound: {node.overt_bound}\n")
    for child in node.children:
        _print_node(child, indent + 1, out)


def _report(cert, out):
    out.write(
        f"certificate: totalBound = {cert.total_bound}, "
        f"covertLeafCount = {cert.covert_leaf_count}, depth = {cert.depth}\n"
    )
    for node in cert.roots:
        _print_node(node, 0, out)


# ---------------------------------------------------------------------------
# commands


def _prepared(args):
    f = parse_poly(args.f, args.p)
    validate(f, args.p)
    return rational_coeff_lists(f)


def cmd_analyze(args, out):
    coeffs = _prepared(args)
    cert = certify(
        args.p, coeffs, precision=args.precision, max_precision=args.max_precision
    )
    out.write(f"p = {args.p}, f = {args.f}, precision = {cert.precision}\n")
    _report(cert, out)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(certificate_to_json(cert) + "\n")
        out.write(f"certificate written to {args.json}\n")
    return 0


def _local_poly(args):
    field = base_field(args.p, args.precision)
    return field, build_local_poly(field, _prepared(args))


def cmd_hull(args, out):
    _, f = _local_poly(args)
    for sd in critical_segments(f, "all"):
        out.write(
            f"S = {{{', '.join(map(str, sd.S))}}}  mu = {sd.mu}  e_S = {sd.eS}  "
            f"c_S = PI^{sd.cS.lead}\n"
        )
    return 0


def cmd_respoly(args, out):
    _, f = _local_poly(args)
    for sd in critical_segments(f, "all"):
        rp = build_residue_poly(f, sd)
        facs = ", ".join(f"({_fqpoly_str(q)})^{m}" for q, m in rp.factor_list())
        out.write(
            f"S = {{{', '.join(map(str, sd.S))}}}  mu = {sd.mu}: "
            f"{_fqpoly_str(rp.poly)}  =  {facs}\n"
        )
    return 0


def cmd_factor(args, out):
    if not is_prime(args.p):
        raise NotPrime(f"{args.p} is not prime")
    f = parse_poly(args.f, args.p)
    field = fq_field_make(args.p, 1)
    ints = []
    for c in f.coeffs:
        if len(c.den) > 1 or len(c.num) > 1:
            raise NotAPolynomialInX(
                "factor works over F_p: coefficients must be integers"
            )
        ints.append(c.num[0] if c.num else 0)
    poly = FqPolynomial.from_ints(field, ints)
    for q, m in fq_factor(poly):
        out.write(f"({_fqpoly_str(q)})^{m}\n")
    return 0


def build_arg_parser():
    ap = argparse.ArgumentParser(
        prog="hypellval",
        description="Finiteness certificates for residually transcendental "
        "valuations on hyperelliptic function fields over F_p(s).",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name, fn in (
        ("analyze", cmd_analyze),
        ("hull", cmd_hull),
        ("respoly", cmd_respoly),
        ("factor", cmd_factor),
    ):
        sp = sub.add_parser(name)
        sp.add_argument("-p", type=int, required=True, help="prime p")
        sp.add_argument("-f", type=str, required=True, help="polynomial expression")
        sp.add_argument("--precision", type=int, default=64)
        sp.add_argument("--max-precision", type=int, default=1024)
        if name == "analyze":
            sp.add_argument("--json", type=str, default=None)
        sp.set_defaults(fn=fn)
    return ap


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return args.fn(args, sys.stdout)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return 3
    except (HypellvalError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
