"""Exact arithmetic: sparse multivariate polynomials over Q and exact rank.

Coefficients are Python ints where possible and ``fractions.Fraction``
otherwise.  Monomials are tuples of ``(var_id, exponent)`` pairs sorted by
variable id; variable ids come from a process-wide registry so that ``x``
and ``y`` always get ids 0 and 1.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import numpy as np

__all__ = [
    "Fraction", "VariableRegistry", "REGISTRY", "var", "var_id", "var_name",
    "Poly", "poly_arith", "partial", "normalize",
    "rank", "rank_bareiss", "rank_mod_p", "rank_multimodular", "nullspace",
    "det", "PRIMES",
]


def normalize(c):
    """Return ``c`` as an int if it is an integral Fraction."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class VariableRegistry:
    """Stable name <-> integer id map."""

    def __init__(self, names=("x", "y")):
        self._ids: dict[str, int] = {}
        self._names: list[str] = []
        for n in names:
            self.id(n)

    def id(self, name: str) -> int:
        i = self._ids.get(name)
        if i is None:
            i = len(self._names)
            self._ids[name] = i
            self._names.append(name)
        return i

    def name(self, i: int) -> str:
        return self._names[i]

    def __contains__(self, name):
        return name in self._ids


REGISTRY = VariableRegistry()
X_ID = REGISTRY.id("x")
Y_ID = REGISTRY.id("y")


def var_id(name: str) -> int:
    return REGISTRY.id(name)


def var_name(i: int) -> str:
    return REGISTRY.name(i)


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_key(m: tuple):
    # graded lex: total degree first, then larger exponent of smaller id first
    deg = sum(e for _, e in m)
    return (deg, tuple((-v, e) for v, e in m))


class Poly:
    """Sparse polynomial with exact rational coefficients.

    >>> x, y = var("x"), var("y")
    >>> (x + y) * (x - y) == x**2 - y**2
    True
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {m: normalize(c) for m, c in terms.items() if c != 0}

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def const(cls, c):
        c = normalize(Fraction(c)) if not isinstance(c, int) else c
        return cls._raw({(): c} if c != 0 else {})

    @classmethod
    def variable(cls, name, power=1):
        return cls._raw({((var_id(name), power),): 1})

    # -- structure -----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self):
        return self.terms.get((), 0)

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def degree_in(self, ids) -> set:
        """Set of total degrees in the variables ``ids`` over all terms."""
        ids = set(ids)
        return {sum(e for v, e in m if v in ids) for m in self.terms}

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def coefficient(self, mono):
        return self.terms.get(tuple(sorted(mono)), 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]), reverse=True)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m, 0) + c
            if s == 0:
                t.pop(m, None)
            else:
                t[m] = normalize(s)
        return Poly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if c == 0:
            return Poly()
        if c == 1:
            return self
        return Poly._raw({m: normalize(v * c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        t: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = _mono_mul(ma, mb)
                t[m] = t.get(m, 0) + ca * cb
        return Poly({m: c for m, c in t.items() if c != 0})

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(c))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus and evaluation ---------------------------------------
    def partial(self, v, k: int = 1):
        if isinstance(v, str):
            v = var_id(v)
        if k < 0:
            raise ValueError("derivative order must be >= 0")
        if k == 0:
            return self
        t = {}
        for m, c in self.terms.items():
            e = dict(m).get(v, 0)
            if e < k:
                continue
            coef = c * math.perm(e, k)
            nm = tuple((w, f - k) if w == v else (w, f) for w, f in m if w != v or f > k)
            t[nm] = t.get(nm, 0) + coef
        return Poly(t)

    def subs(self, values: dict):
        """Substitute variables (by id or name) with Polys or numbers."""
        vals = {}
        for k, v in values.items():
            vals[var_id(k) if isinstance(k, str) else k] = v if isinstance(v, Poly) else Poly.const(v)
        out = Poly()
        cache: dict = {}
        for m, c in self.terms.items():
            term = Poly.const(c)
            rest = []
            for v, e in m:
                if v in vals:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = vals[v] ** e
                    term = term * cache[key]
                else:
                    rest.append((v, e))
            if rest:
                term = term * Poly._raw({tuple(rest): 1})
            out = out + term
        return out

    def evaluate(self, values: dict):
        """Evaluate at a full numeric assignment (keys: names or ids)."""
        vals = {var_id(k) if isinstance(k, str) else k: v for k, v in values.items()}
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t = t * vals[v] ** e
            total += t
        return normalize(total)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def var(name: str) -> Poly:
    return Poly.variable(name)


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def partial(p: Poly, v, k: int = 1) -> Poly:
    return p.partial(v, k)


# ---------------------------------------------------------------------------
# linear algebra over Q

PRIMES = (2147483647, 2147483629, 2147483587, 2147483579)


def _integer_rows(M):
    rows = []
    for row in M:
        row = [Fraction(c) for c in row]
        den = 1
        for c in row:
            den = den * c.denominator // math.gcd(den, c.denominator)
        rows.append([int(c * den) for c in row])
    return rows


def rank_bareiss(M) -> int:
    """Exact rank by fraction-free Gaussian elimination."""
    A = _integer_rows(M)
    if not A or not A[0]:
        return 0
    nr, nc = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(nc):
        piv = next((i for i in range(r, nr) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pr = A[r]
        for i in range(r + 1, nr):
            ai = A[i]
            f = ai[c]
            a = pr[c]
            A[i] = [(a * ai[j] - f * pr[j]) // prev for j in range(nc)]
        prev = pr[c]
        r += 1
        if r == nr:
            break
    return r


def rank_mod_p(M, p: int = PRIMES[0]) -> int:
    """Rank of an integer (or residue) matrix over GF(p), p < 2**31."""
    A = np.array(M, dtype=object) if not isinstance(M, np.ndarray) else M
    if A.size == 0:
        return 0
    A = np.array([[int(v) % p for v in row] for row in A.tolist()], dtype=np.int64)
    if A.shape[0] > A.shape[1]:
        A = A.T.copy()
    nr, nc = A.shape
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        below = A[r + 1:, c].copy()
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + r + 1
            A[idx] = (A[idx] - np.outer(below[mask], A[r]) % p) % p
        r += 1
    return r


def rank_multimodular(M, primes=PRIMES[:2]):
    """Rank via reductions modulo several primes.

    Returns ``(rank, certified)``.  Each modular rank is a lower bound for
    the rank over Q; the result is certified when it reaches
    ``min(rows, cols)`` or when two independent primes agree.
    """
    A = _integer_rows(M)
    if not A or not A[0]:
        return 0, True
    full = min(len(A), len(A[0]))
    ranks = []
    for p in primes:
        ranks.append(rank_mod_p(A, p))
        if ranks[-1] == full:
            return full, True
    best = max(ranks)
    return best, ranks.count(best) >= 2


def rank(M) -> int:
    """Exact rank of a rational matrix (list of rows)."""
    r, ok = rank_multimodular(M)
    if ok:
        return r
    return rank_bareiss(M)


def nullspace(M) -> list:
    """Basis of the right kernel of ``M`` over Q (reduced row echelon)."""
    A = [[Fraction(c) for c in row] for row in M]
    if not A:
        return []
    nr, nc = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(nr):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc]
        basis.append([normalize(c) for c in v])
    return basis


def det(M):
    """Determinant over any commutative ring by cofactor expansion.

    Works for Poly entries (no division); cost is O(n 2^n).
    """
    n = len(M)
    if n == 0:
        return 1
    # memo over the set of columns still free, processing rows top-down
    memo = {}

    def minor(row, cols):
        if row == n:
            return 1
        key = cols
        if key in memo:
            return memo[key]
        total = 0
        sign = 1
        for idx, c in enumerate(cols):
            entry = M[row][c]
            if entry != 0 and not (isinstance(entry, Poly) and entry.is_zero()):
                sub = minor(row + 1, cols[:idx] + cols[idx + 1:])
                term = entry * sub
                total = term + total if sign > 0 else (-term) + total
            sign = -sign
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def _all_minors_rank(M) -> int:
    """Rank by brute-force minor search; tiny matrices only (test oracle)."""
    nr, nc = len(M), len(M[0]) if M else 0
    for k in range(min(nr, nc), 0, -1):
        for rs in combinations(range(nr), k):
            for cs in combinations(range(nc), k):
                sub = [[Fraction(M[i][j]) for j in cs] for i in rs]
                if det(sub) != 0:
                    return k
    return 0
