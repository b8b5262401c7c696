"""Binary forms, module specs, the SL2 action and the nullcone test.

A binary form of degree n is stored by its raw coefficients
``(a_0, ..., a_n)`` of ``x^(n-i) y^i``; no binomial weights.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from .exactalg import Poly, X_ID, Y_ID, normalize, var, var_id

DEFAULT_NAMES = {1: "lmn", 2: "qrs", 3: "cd"}
DEFAULT_NAMES_HIGH = "fgh"


@dataclass(frozen=True)
class ModuleSpec:
    """V = V_{n_1} + ... + V_{n_p}, with one symbol name per summand."""

    degrees: tuple
    names: tuple = ()

    def __post_init__(self):
        degs = tuple(int(d) for d in self.degrees)
        if not degs or any(d < 1 for d in degs):
            raise ValueError(f"invalid module degrees {self.degrees!r}")
        object.__setattr__(self, "degrees", degs)
        names = tuple(self.names) if self.names else default_names(degs)
        if len(names) != len(degs) or len(set(names)) != len(names):
            raise ValueError(f"need {len(degs)} distinct names, got {names!r}")
        object.__setattr__(self, "names", names)

    @classmethod
    def parse(cls, text: str, names=None) -> "ModuleSpec":
        """Parse ``"1,2,4"``, ``"V(1,2,4)"``, ``"12"`` or ``"1^6"`` style input."""
        t = text.strip()
        m = re.fullmatch(r"V?\(?([0-9,\s^x*]+)\)?", t)
        if not m:
            raise ValueError(f"cannot parse module spec {text!r}")
        degs = []
        for part in m.group(1).split(","):
            part = part.strip()
            if not part:
                continue
            rep = re.fullmatch(r"(\d+)\s*(?:\^|x|\*)\s*(\d+)", part)
            if rep:
                degs.extend([int(rep.group(1))] * int(rep.group(2)))
            elif part.isdigit():
                degs.append(int(part))
            else:
                raise ValueError(f"cannot parse module spec {text!r}")
        return cls(tuple(degs), tuple(names) if names else ())

    @property
    def p(self):
        return len(self.degrees)

    @property
    def param_count(self) -> int:
        """m = sum(n_i + 1) - 3, clamped at 0."""
        return max(0, sum(n + 1 for n in self.degrees) - 3)

    @property
    def krull_dim(self) -> int:
        """dim of the quotient; differs from param_count only for V_2 (generic stabilizer SO_2)."""
        if self.degrees == (2,):
            return 1
        return self.param_count

    def key(self) -> str:
        return ",".join(map(str, self.degrees))

    def __str__(self):
        return f"V({self.key()})"

    def sorted(self) -> "ModuleSpec":
        order = sorted(range(self.p), key=lambda i: self.degrees[i])
        return ModuleSpec(tuple(self.degrees[i] for i in order), tuple(self.names[i] for i in order))

    def index(self, name: str) -> int:
        return self.names.index(name)

    def symbol_degrees(self) -> dict:
        return dict(zip(self.names, self.degrees))

    def coefficient_vars(self):
        return [coeff_name(s, i) for s, n in zip(self.names, self.degrees) for i in range(n + 1)]


def default_names(degrees) -> tuple:
    """l,m,n / q,r,s / c,d / f,g,h by degree; indexed names when exhausted."""
    counts: dict = {}
    for d in degrees:
        counts[d] = counts.get(d, 0) + 1
    used: dict = {}
    out = []
    for d in degrees:
        pool = DEFAULT_NAMES.get(d, DEFAULT_NAMES_HIGH)
        k = used.get(d, 0)
        used[d] = k + 1
        if counts[d] <= len(pool) and not _pool_clash(d, counts):
            out.append(pool[k])
        else:
            out.append(f"{pool[0]}{k + 1}")
    # degree >= 4 all share f,g,h; disambiguate if several distinct high degrees
    if len(set(out)) != len(out):
        out = [f"{n}{i}" for i, n in enumerate(out)]
    return tuple(out)


def _pool_clash(d, counts):
    if d < 4:
        return False
    high = sum(c for k, c in counts.items() if k >= 4)
    return high > len(DEFAULT_NAMES_HIGH)


def coeff_name(symbol: str, i: int) -> str:
    return f"{symbol}_{i}"


@dataclass(frozen=True)
class BinaryForm:
    """f = sum_i coeffs[i] x^(n-i) y^i; coefficients numeric or Poly."""

    degree: int
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if len(coeffs) != self.degree + 1:
            raise ValueError("coefficient list length must be degree + 1")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def symbolic(cls, symbol: str, degree: int) -> "BinaryForm":
        return cls(degree, tuple(var(coeff_name(symbol, i)) for i in range(degree + 1)))

    @classmethod
    def from_poly(cls, p: Poly, degree: int | None = None) -> "BinaryForm":
        degs = p.degree_in((X_ID, Y_ID))
        if p.is_zero():
            if degree is None:
                raise ValueError("degree of the zero form must be given")
            return cls(degree, (0,) * (degree + 1))
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous in x, y")
        n = degs.pop()
        if degree is not None and degree != n:
            raise ValueError(f"expected degree {degree}, got {n}")
        coeffs = [Poly() for _ in range(n + 1)]
        for m, c in p.terms.items():
            ey = dict(m).get(Y_ID, 0)
            rest = tuple((v, e) for v, e in m if v not in (X_ID, Y_ID))
            coeffs[ey] = coeffs[ey] + Poly({rest: c})
        coeffs = [c.constant_value() if c.is_constant() else c for c in coeffs]
        return cls(n, tuple(coeffs))

    def as_poly(self) -> Poly:
        n = self.degree
        out = Poly()
        for i, c in enumerate(self.coeffs):
            mono = tuple(t for t in ((X_ID, n - i), (Y_ID, i)) if t[1])
            base = Poly({mono: 1})
            out = out + (base * c if isinstance(c, Poly) else base.scale(c))
        return out

    def is_zero(self):
        return all((c.is_zero() if isinstance(c, Poly) else c == 0) for c in self.coeffs)

    def __str__(self):
        return str(self.as_poly())


@dataclass(frozen=True)
class PointInV:
    spec: ModuleSpec
    forms: tuple

    def __post_init__(self):
        forms = tuple(self.forms)
        if len(forms) != self.spec.p:
            raise ValueError("wrong number of forms for the module")
        for f, n in zip(forms, self.spec.degrees):
            if f.degree != n:
                raise ValueError(f"form of degree {f.degree} where {n} expected")
        object.__setattr__(self, "forms", forms)

    def bindings(self) -> dict:
        return dict(zip(self.spec.names, self.forms))

    def __str__(self):
        body = "; ".join(f"{s}={f}" for s, f in zip(self.spec.names, self.forms))
        return f"{self.spec}: {body}"


def symbolic_point(spec: ModuleSpec) -> dict:
    return {s: BinaryForm.symbolic(s, n) for s, n in zip(spec.names, spec.degrees)}


# ---------------------------------------------------------------------------
# group action

def _check_sl2(g):
    (a, b), (c, d) = g
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")


def _binomial_expand(u, v, n):
    """Coefficient lists of (u0 x + u1 y)^(n-k) (v0 x + v1 y)^k for k = 0..n."""
    def power(lin, k):
        out = [1]
        for _ in range(k):
            nxt = [0] * (len(out) + 1)
            for i, c in enumerate(out):
                nxt[i] += c * lin[0]
                nxt[i + 1] += c * lin[1]
            out = nxt
        return out

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return out

    return [mul(power(u, n - k), power(v, k)) for k in range(n + 1)]


def act(g, f: BinaryForm) -> BinaryForm:
    """g.f with g = [[a,b],[c,d]] acting by x -> d x - b y, y -> -c x + a y."""
    _check_sl2(g)
    (a, b), (c, d) = g
    n = f.degree
    basis = _binomial_expand((d, -b), (-c, a), n)
    out = [0] * (n + 1)
    for k, coef in enumerate(f.coeffs):
        for j, e in enumerate(basis[k]):
            if e:
                out[j] = out[j] + coef * e
    return BinaryForm(n, tuple(normalize(c) if not isinstance(c, Poly) else c for c in out))


def act_point(g, v: PointInV) -> PointInV:
    return PointInV(v.spec, tuple(act(g, f) for f in v.forms))


def matmul(g, h):
    return tuple(tuple(sum(g[i][k] * h[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def random_sl2(rng: random.Random, size: int = 5):
    """Random rational SL2 element (product of unipotents and a torus element)."""
    s = Fraction(rng.randint(1, size), rng.randint(1, size)) * rng.choice((1, -1))
    u1 = Fraction(rng.randint(-size, size), rng.randint(1, 3))
    u2 = Fraction(rng.randint(-size, size), rng.randint(1, 3))
    g = ((s, 0), (0, 1 / s))
    g = matmul(g, ((1, u1), (0, 1)))
    g = matmul(g, ((1, 0), (u2, 1)))
    return g


# ---------------------------------------------------------------------------
# infinitesimal invariance

def raising(I: Poly, spec: ModuleSpec) -> Poly:
    """Apply the derivation induced by x d/dy: delta a_j = (j+1) a_{j+1}."""
    out = Poly()
    for s, n in zip(spec.names, spec.degrees):
        for j in range(n):
            dI = I.partial(var_id(coeff_name(s, j)))
            if dI:
                out = out + dI * var(coeff_name(s, j + 1)).scale(j + 1)
    return out


def lowering(I: Poly, spec: ModuleSpec) -> Poly:
    """Apply the derivation induced by y d/dx: delta a_j = (n-j+1) a_{j-1}."""
    out = Poly()
    for s, n in zip(spec.names, spec.degrees):
        for j in range(1, n + 1):
            dI = I.partial(var_id(coeff_name(s, j)))
            if dI:
                out = out + dI * var(coeff_name(s, j - 1)).scale(n - j + 1)
    return out


def infinitesimal_invariance(I: Poly, spec: ModuleSpec) -> bool:
    allowed = {var_id(v) for v in spec.coefficient_vars()}
    if not I.variables() <= allowed:
        raise ValueError("invariant candidate must only involve coefficient variables")
    return raising(I, spec).is_zero() and lowering(I, spec).is_zero()


# ---------------------------------------------------------------------------
# univariate helpers over Q (coefficient lists, highest degree first)

def _ustrip(p):
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return p[i:]


def _uderiv(p):
    n = len(p) - 1
    return _ustrip([c * (n - i) for i, c in enumerate(p[:-1])])


def _umod(a, b):
    a = [Fraction(c) for c in a]
    while len(a) >= len(b) and a:
        f = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= f * b[i]
        a = _ustrip(a)
    return a


def _ugcd(a, b):
    a, b = _ustrip(list(a)), _ustrip(list(b))
    while b:
        a, b = b, _umod(a, b)
    return a


def root_multiplicity(f: BinaryForm, root) -> int:
    """Multiplicity of the linear factor vanishing at the projective point ``root``.

    ``root = (u, v)`` means the factor ``v x - u y``.  The zero form returns
    its degree by convention.
    """
    u, v = (Fraction(t) for t in root)
    if u == 0 and v == 0:
        raise ValueError("(0:0) is not a projective point")
    c = [Fraction(t) for t in f.coeffs]
    n = f.degree
    if all(t == 0 for t in c):
        return n
    if v == 0:
        return _y_power(c)
    x0 = u / v
    g = _ustrip(c)  # f(x, 1) as polynomial in x, highest power first
    mult = 0
    while g and _ueval(g, x0) == 0:
        g = _udiv_linear(g, x0)
        mult += 1
    return mult


def _y_power(c):
    # y^k | f  iff  coefficients of x^n .. x^(n-k+1) y^(k-1) vanish
    k = 0
    while k < len(c) and c[k] == 0:
        k += 1
    return k


def _ueval(p, x):
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def _udiv_linear(p, x0):
    out = []
    acc = Fraction(0)
    for c in p[:-1]:
        acc = acc * x0 + c
        out.append(acc)
    return out


def in_nullcone(v: PointInV) -> bool:
    """Hilbert-Mumford test: common root of multiplicity > n_i/2 in every f_i.

    Exact: the finite roots of multiplicity >= k in f(x,1) are the roots of
    gcd(f, f', ..., f^(k-1)); the point at infinity (factor y) is checked
    directly.  Zero forms impose no condition.
    """
    active = [(f, f.degree // 2 + 1) for f in v.forms if not f.is_zero()]
    if not active:
        return True
    # root (1:0), i.e. the factor y
    if all(_y_power([Fraction(t) for t in f.coeffs]) >= k for f, k in active):
        return True
    common = None
    for f, k in active:
        g = _ustrip([Fraction(t) for t in f.coeffs])
        h = g
        d = g
        for _ in range(k - 1):
            d = _uderiv(d)
            h = _ugcd(h, d)
            if len(h) <= 1:
                return False
        common = h if common is None else _ugcd(common, h)
        if len(common) <= 1:
            return False
    return len(common) > 1


# ---------------------------------------------------------------------------
# text format for points:  V(1,2,4): l=x; q=0; f=4*x*y^3

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z]\w*)|(\*\*|[-+*/^()]))")


def parse_xy(text: str) -> Poly:
    """Parse a polynomial in x, y with rational coefficients."""
    return parse_poly(text, ("x", "y"))


def parse_poly(text: str, variables=None) -> Poly:
    """Parse a rational polynomial; ``variables`` restricts the allowed names."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad character at position {pos} in {text!r}")
        pos = m.end()
        if m.group(1):
            toks.append(("num", Fraction(m.group(1))))
        elif m.group(2):
            if variables is not None and m.group(2) not in variables:
                raise ValueError(f"unknown variable {m.group(2)!r} in {text!r}")
            toks.append(("var", m.group(2)))
        else:
            toks.append(("op", "^" if m.group(3) == "**" else m.group(3)))
    toks.append(("end", None))
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        val = term().scale(sign)
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            val = val + t if op == "+" else val - t
        return val

    def term():
        val = factor()
        while True:
            t = peek()
            if t == ("op", "*"):
                take()
                val = val * factor()
            elif t == ("op", "/"):
                take()
                d = factor()
                if not d.is_constant() or d.is_zero():
                    raise ValueError("division only by nonzero constants")
                val = val.scale(Fraction(1) / Fraction(d.constant_value()))
            elif t[0] in ("num", "var") or t == ("op", "("):
                val = val * factor()
            else:
                return val

    def factor():
        base = atom()
        if peek() == ("op", "^"):
            take()
            t = take()
            if t[0] != "num" or t[1].denominator != 1:
                raise ValueError("exponent must be an integer")
            base = base ** int(t[1])
        return base

    def atom():
        t = take()
        if t[0] == "num":
            return Poly.const(t[1])
        if t[0] == "var":
            return var(t[1])
        if t == ("op", "("):
            v = expr()
            if take() != ("op", ")"):
                raise ValueError("missing ')'")
            return v
        if t == ("op", "-"):
            return -factor()
        raise ValueError(f"unexpected token {t[1]!r}")

    val = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return val


def parse_point(text: str) -> PointInV:
    """Parse ``V(1,2,4): l=x; q=0; f=4*x*y^3``."""
    head, _, body = text.partition(":")
    assigns = [a.strip() for a in body.split(";") if a.strip()]
    names, exprs = [], []
    for a in assigns:
        name, eq, rhs = a.partition("=")
        if not eq:
            raise ValueError(f"expected name=form in {a!r}")
        names.append(name.strip())
        exprs.append(rhs.strip())
    spec = ModuleSpec.parse(head, names=names or None)
    if len(exprs) != spec.p:
        raise ValueError("number of forms does not match the module")
    forms = tuple(BinaryForm.from_poly(parse_xy(e), n) for e, n in zip(exprs, spec.degrees))
    return PointInV(spec, forms)


# ---------------------------------------------------------------------------
# random points

def random_form(rng: random.Random, n: int, size: int = 9, den: int = 3) -> BinaryForm:
    return BinaryForm(n, tuple(normalize(Fraction(rng.randint(-size, size), rng.randint(1, den)))
                               for _ in range(n + 1)))


def random_point(spec: ModuleSpec, rng: random.Random, size: int = 9, den: int = 3) -> PointInV:
    return PointInV(spec, tuple(random_form(rng, n, size, den) for n in spec.degrees))


def _lin_power_times(u, v, k, rest: BinaryForm) -> BinaryForm:
    # (v x - u y)^k * rest
    lin = [v, -u]
    out = list(rest.coeffs)
    for _ in range(k):
        nxt = [0] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i] += c * lin[0]
            nxt[i + 1] += c * lin[1]
        out = nxt
    return BinaryForm(rest.degree + k, tuple(normalize(Fraction(c)) for c in out))


def random_nullcone_point(spec: ModuleSpec, rng: random.Random, zero_prob: float = 0.15) -> PointInV:
    """Random point with a common rational root of multiplicity > n_i/2 in each form."""
    u = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    v = Fraction(rng.choice((0, 1, 1, 1, 2)))
    if u == 0 and v == 0:
        v = Fraction(1)
    forms = []
    for n in spec.degrees:
        if rng.random() < zero_prob:
            forms.append(BinaryForm(n, (0,) * (n + 1)))
            continue
        k = n // 2 + 1 + rng.randint(0, n - n // 2 - 1)
        forms.append(_lin_power_times(u, v, k, random_form(rng, n - k)))
    return PointInV(spec, tuple(forms))
