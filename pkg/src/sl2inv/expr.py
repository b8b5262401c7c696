"""Covariant expressions: trees of symbols, products, powers and transvectants.

Grammar (canonical output uses only the first forms of each rule)::

    expr     := term (("+" | "-") term)*
    term     := ["-"] factor (("." | "*" | <juxtaposition>) factor)*
    factor   := atom ("^" INT)?
    atom     := "(" expr "," expr ")" "_" INT        transvectant
              | "(" expr ")"                         grouping
              | "discr" "(" expr ")"                 discriminant
              | "res" "(" expr "," expr ")"          resultant
              | SYMBOL                               letter + optional digits
              | CHAIN "_" DIGITS                     e.g. cce_13 = (c,(c,e)_1)_3
              | INT ("/" INT)?                       rational scalar

A chain of k letters carries k-1 single-digit indices listed from the
innermost transvectant outwards.  Aliases (``u = (c,q^2)_3``) expand at
parse time.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import Poly, normalize
from .forms import BinaryForm, ModuleSpec, symbolic_point
from .transvect import discriminant, mul_coeffs, pow_coeffs, sylvester_resultant, transvect_coeffs


class ExprError(ValueError):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, msg, pos, text):
        super().__init__(f"{msg} at position {pos}: {text[:pos]}<<here>>{text[pos:]}")
        self.pos = pos


class OrderError(ExprError):
    pass


class UnboundSymbol(ExprError):
    pass


# ---------------------------------------------------------------------------
# nodes

class Expr:
    __slots__ = ()

    def __str__(self):
        return print_expr(self)


@dataclass(frozen=True)
class Symbol(Expr):
    name: str


@dataclass(frozen=True)
class Scalar(Expr):
    value: Fraction


@dataclass(frozen=True)
class Product(Expr):
    factors: tuple


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    k: int


@dataclass(frozen=True)
class Transvect(Expr):
    left: Expr
    right: Expr
    p: int


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple


@dataclass(frozen=True)
class Discr(Expr):
    arg: Expr


@dataclass(frozen=True)
class Res(Expr):
    left: Expr
    right: Expr


def product(*factors) -> Expr:
    """Smart constructor: flattens, merges scalars into one leading Scalar."""
    flat = []
    coef = Fraction(1)
    for f in factors:
        parts = f.factors if isinstance(f, Product) else (f,)
        for g in parts:
            if isinstance(g, Scalar):
                coef *= g.value
            else:
                flat.append(g)
    if coef == 0:
        return Scalar(Fraction(0))
    if coef != 1:
        flat.insert(0, Scalar(coef))
    if not flat:
        return Scalar(Fraction(1))
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def negate(e: Expr) -> Expr:
    return product(Scalar(Fraction(-1)), e)


def esum(*terms) -> Expr:
    flat = []
    for t in terms:
        flat.extend(t.terms if isinstance(t, Sum) else (t,))
    return flat[0] if len(flat) == 1 else Sum(tuple(flat))


# ---------------------------------------------------------------------------
# printing

def _fmt_scalar(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def print_expr(e: Expr) -> str:
    if isinstance(e, Symbol):
        return e.name
    if isinstance(e, Scalar):
        return _fmt_scalar(e.value)
    if isinstance(e, Transvect):
        return f"({print_expr(e.left)},{print_expr(e.right)})_{e.p}"
    if isinstance(e, Discr):
        return f"discr({print_expr(e.arg)})"
    if isinstance(e, Res):
        return f"res({print_expr(e.left)},{print_expr(e.right)})"
    if isinstance(e, Power):
        b = print_expr(e.base)
        if not isinstance(e.base, (Symbol, Transvect, Discr, Res)):
            b = f"({b})"
        return f"{b}^{e.k}"
    if isinstance(e, Product):
        out = []
        for i, f in enumerate(e.factors):
            s = print_expr(f)
            if isinstance(f, (Sum,)) or (isinstance(f, Scalar) and f.value < 0 and i):
                s = f"({s})"
            if i == 0:
                out.append(s)
            elif isinstance(e.factors[i - 1], Scalar):
                out.append("*" + s)
            else:
                out.append("." + s)
        return "".join(out)
    if isinstance(e, Sum):
        out = print_expr(e.terms[0])
        for t in e.terms[1:]:
            if isinstance(t, Product) and isinstance(t.factors[0], Scalar) and t.factors[0].value < 0:
                pos = product(Scalar(-t.factors[0].value), *t.factors[1:])
                out += " - " + print_expr(pos)
            elif isinstance(t, Scalar) and t.value < 0:
                out += " - " + _fmt_scalar(-t.value)
            else:
                out += " + " + print_expr(t)
        return out
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# parsing

_TOK = re.compile(
    r"\s*(?:"
    r"(?P<chain>[A-Za-z]{2,}_\d+)"
    r"|(?P<kw>(?:discr|res)(?=\s*\())"
    r"|(?P<word>[A-Za-z]+\d*)"
    r"|(?P<num>\d+)"
    r"|(?P<op>[-+.*^(),/_])"
    r")"
)


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOK.match(text, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError("unexpected character", pos, text)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "word":
            # a run of letters: each letter is its own symbol, trailing digits
            # index the final letter (l1l2 is split by the regex already)
            letters = re.match(r"[A-Za-z]+", val).group(0)
            digits = val[len(letters):]
            for i, ch in enumerate(letters):
                sym = ch + (digits if i == len(letters) - 1 else "")
                toks.append(("sym", sym, start + i))
        elif kind == "chain":
            letters, digits = val.split("_")
            k = len(letters)
            if len(digits) > k - 1:
                raise ExprSyntaxError("too many chain indices", start, text)
            # leading letters beyond the chain length are juxtaposed symbols
            lead = letters[: k - 1 - len(digits)]
            for i, ch in enumerate(lead):
                toks.append(("sym", ch, start + i))
            toks.append(("chain", (letters[len(lead):], digits), start + len(lead)))
        elif kind == "kw":
            toks.append(("kw", val, start))
        elif kind == "num":
            toks.append(("num", int(val), start))
        else:
            toks.append(("op", val, start))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, text, aliases, orders):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.aliases = aliases or {}
        self.orders = orders

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[0] != "op" or t[1] != val:
            raise ExprSyntaxError(f"expected {val!r}", t[2], self.text)
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(msg, tok[2], self.text)

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "end":
            self.error("trailing input")
        return e

    def expr(self):
        terms = [self.term()]
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            terms.append(negate(t) if op == "-" else t)
        return esum(*terms)

    def _starts_factor(self, t):
        return t[0] in ("sym", "chain", "num", "kw") or (t[0] == "op" and t[1] == "(")

    def term(self):
        neg = False
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            neg = True
        factors = [self.factor()]
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in ".*":
                self.take()
                factors.append(self.factor())
            elif self._starts_factor(t):
                factors.append(self.factor())
            else:
                break
        e = product(*factors)
        return negate(e) if neg else e

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "num":
                self.error("expected integer exponent", t)
            base = Power(base, t[1]) if t[1] != 1 else base
        return base

    def sub_index(self):
        t = self.peek()
        if not (t[0] == "op" and t[1] == "_"):
            self.error("expected '_' and transvectant index")
        self.take()
        t = self.take()
        if t[0] != "num":
            self.error("expected transvectant index", t)
        return t[1]

    def transvect(self, left, right, p, tok):
        if self.orders is not None:
            a, b = order(left, self.orders), order(right, self.orders)
            if p > min(a, b):
                raise OrderError(
                    f"transvectant index {p} exceeds orders {a}, {b} at position {tok[2]}")
        return Transvect(left, right, p)

    def atom(self):
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            v = Fraction(val)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num" or d[1] == 0:
                    self.error("expected nonzero denominator", d)
                v = Fraction(val, d[1])
            return Scalar(v)
        if kind == "sym":
            if val in self.aliases:
                return self.aliases[val]
            if self.orders is not None and val not in self.orders:
                raise UnboundSymbol(f"unknown symbol {val!r} at position {pos}")
            return Symbol(val)
        if kind == "chain":
            letters, digits = val
            syms = []
            for ch in letters:
                if ch in self.aliases:
                    syms.append(self.aliases[ch])
                else:
                    if self.orders is not None and ch not in self.orders:
                        raise UnboundSymbol(f"unknown symbol {ch!r} at position {pos}")
                    syms.append(Symbol(ch))
            e = syms[-1]
            for s, d in zip(reversed(syms[:-1]), digits):
                e = self.transvect(s, e, int(d), t)
            return e
        if kind == "kw":
            self.expect("(")
            a = self.expr()
            if val == "discr":
                self.expect(")")
                return Discr(a)
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return Res(a, b)
        if kind == "op" and val == "(":
            a = self.expr()
            nxt = self.take()
            if nxt[0] == "op" and nxt[1] == ",":
                b = self.expr()
                self.expect(")")
                p = self.sub_index()
                return self.transvect(a, b, p, t)
            if nxt[0] == "op" and nxt[1] == ")":
                return a
            self.error("expected ',' or ')'", nxt)
        self.error("unexpected token", t)


def parse_expr(text: str, aliases: dict | None = None, orders: dict | None = None) -> Expr:
    """Parse covariant-expression text.

    ``orders`` maps symbol names to form degrees; when given, unknown
    symbols and infeasible transvectant indices are rejected.
    """
    return _Parser(text, aliases, orders).parse()


def parse_aliases(defs: dict, orders=None) -> dict:
    """Parse ``{name: text}`` alias definitions in order (later may use earlier)."""
    out: dict = {}
    for name, text in defs.items():
        out[name] = parse_expr(text, aliases=out, orders=orders)
    return out


# ---------------------------------------------------------------------------
# grading

def order(e: Expr, orders: dict) -> int:
    if isinstance(e, Symbol):
        if e.name not in orders:
            raise UnboundSymbol(f"unbound symbol {e.name!r}")
        return orders[e.name]
    if isinstance(e, Scalar):
        return 0
    if isinstance(e, Product):
        return sum(order(f, orders) for f in e.factors)
    if isinstance(e, Power):
        return e.k * order(e.base, orders)
    if isinstance(e, Transvect):
        a, b = order(e.left, orders), order(e.right, orders)
        if e.p > min(a, b):
            raise OrderError(f"transvectant index {e.p} exceeds orders {a}, {b}")
        return a + b - 2 * e.p
    if isinstance(e, Sum):
        os = {order(t, orders) for t in e.terms}
        if len(os) != 1:
            raise OrderError("sum of covariants of different orders")
        return os.pop()
    if isinstance(e, (Discr, Res)):
        return 0
    raise TypeError(e)


def multidegree(e: Expr, names: tuple, orders: dict | None = None):
    """Degree in each form, as a tuple aligned with ``names``; None if a sum is not multihomogeneous."""
    idx = {n: i for i, n in enumerate(names)}
    zero = (0,) * len(names)

    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    def mul(a, k):
        return tuple(x * k for x in a)

    def go(e):
        if isinstance(e, Symbol):
            v = [0] * len(names)
            v[idx[e.name]] = 1
            return tuple(v)
        if isinstance(e, Scalar):
            return zero
        if isinstance(e, Product):
            out = zero
            for f in e.factors:
                out = add(out, go(f))
            return out
        if isinstance(e, Power):
            return mul(go(e.base), e.k)
        if isinstance(e, Transvect):
            return add(go(e.left), go(e.right))
        if isinstance(e, Sum):
            ds = {go(t) for t in e.terms}
            if len(ds) != 1:
                raise _NotMultihomogeneous
            return ds.pop()
        if isinstance(e, Discr):
            n = order(e.arg, orders)
            return mul(go(e.arg), 2 * n - 2)
        if isinstance(e, Res):
            a, b = order(e.left, orders), order(e.right, orders)
            return add(mul(go(e.left), b), mul(go(e.right), a))
        raise TypeError(e)

    try:
        return go(e)
    except _NotMultihomogeneous:
        return None


class _NotMultihomogeneous(Exception):
    pass


def total_degree(e: Expr, names: tuple, orders: dict | None = None) -> int:
    md = multidegree(e, names, orders)
    if md is not None:
        return sum(md)
    degs = {total_degree(t, names, orders) for t in e.terms}
    if len(degs) != 1:
        raise ExprError("sum is not homogeneous")
    return degs.pop()


def symbols(e: Expr) -> set:
    if isinstance(e, Symbol):
        return {e.name}
    if isinstance(e, Scalar):
        return set()
    if isinstance(e, (Product, Sum)):
        out = set()
        for f in (e.factors if isinstance(e, Product) else e.terms):
            out |= symbols(f)
        return out
    if isinstance(e, Power):
        return symbols(e.base)
    if isinstance(e, (Transvect, Res)):
        return symbols(e.left) | symbols(e.right)
    if isinstance(e, Discr):
        return symbols(e.arg)
    raise TypeError(e)


def rename(e: Expr, mapping: dict) -> Expr:
    """Substitute symbol names (used to permute forms of equal degree)."""
    if isinstance(e, Symbol):
        return Symbol(mapping.get(e.name, e.name))
    if isinstance(e, Scalar):
        return e
    if isinstance(e, Product):
        return Product(tuple(rename(f, mapping) for f in e.factors))
    if isinstance(e, Sum):
        return Sum(tuple(rename(f, mapping) for f in e.terms))
    if isinstance(e, Power):
        return Power(rename(e.base, mapping), e.k)
    if isinstance(e, Transvect):
        return Transvect(rename(e.left, mapping), rename(e.right, mapping), e.p)
    if isinstance(e, Res):
        return Res(rename(e.left, mapping), rename(e.right, mapping))
    if isinstance(e, Discr):
        return Discr(rename(e.arg, mapping))
    raise TypeError(e)


# ---------------------------------------------------------------------------
# evaluation

def _add_lists(a, b):
    if len(a) != len(b):
        raise OrderError("sum of covariants of different orders")
    return [x + y for x, y in zip(a, b)]


def eval_coeffs(e: Expr, bindings: dict, memo: dict | None = None) -> list:
    """Dense coefficient list of the covariant ``e`` under ``bindings``.

    ``bindings`` maps symbol names to BinaryForm or raw coefficient lists.
    The coefficient ring is whatever the bound forms use.
    """
    if memo is None:
        memo = {}
    key = e
    if key in memo:
        return memo[key]
    if isinstance(e, Symbol):
        if e.name not in bindings:
            raise UnboundSymbol(f"unbound symbol {e.name!r}")
        b = bindings[e.name]
        out = list(b.coeffs) if isinstance(b, BinaryForm) else list(b)
    elif isinstance(e, Scalar):
        out = [normalize(Fraction(e.value))]
    elif isinstance(e, Product):
        out = [1]
        for f in e.factors:
            out = mul_coeffs(out, eval_coeffs(f, bindings, memo))
    elif isinstance(e, Power):
        out = pow_coeffs(eval_coeffs(e.base, bindings, memo), e.k)
    elif isinstance(e, Transvect):
        a = eval_coeffs(e.left, bindings, memo)
        b = eval_coeffs(e.right, bindings, memo)
        if e.p > min(len(a), len(b)) - 1:
            raise OrderError(f"transvectant index {e.p} exceeds orders {len(a) - 1}, {len(b) - 1}")
        out = transvect_coeffs(a, b, e.p)
    elif isinstance(e, Sum):
        out = eval_coeffs(e.terms[0], bindings, memo)
        for t in e.terms[1:]:
            out = _add_lists(out, eval_coeffs(t, bindings, memo))
    elif isinstance(e, Discr):
        out = [discriminant(eval_coeffs(e.arg, bindings, memo))]
    elif isinstance(e, Res):
        out = [sylvester_resultant(eval_coeffs(e.left, bindings, memo),
                                   eval_coeffs(e.right, bindings, memo))]
    else:
        raise TypeError(e)
    memo[key] = out
    return out


def eval_expr(e: Expr, bindings: dict) -> Poly:
    """Value of ``e`` as a polynomial in x, y (and any symbolic coefficients)."""
    coeffs = eval_coeffs(e, bindings)
    n = len(coeffs) - 1
    return BinaryForm(n, tuple(coeffs)).as_poly()


def eval_invariant(e: Expr, bindings: dict, memo: dict | None = None):
    """Value of an order-0 expression (a scalar or a Poly in coefficient variables)."""
    coeffs = eval_coeffs(e, bindings, memo)
    if len(coeffs) != 1:
        raise OrderError(f"expression has order {len(coeffs) - 1}, not 0")
    return coeffs[0]


def symbolic_invariant(e: Expr, spec: ModuleSpec) -> Poly:
    v = eval_invariant(e, symbolic_point(spec))
    return v if isinstance(v, Poly) else Poly.const(v)
