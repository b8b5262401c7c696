"""Transvectants, classical resultant and discriminant identities, Clebsch-Gordan, polarization.

Two independent routes compute ``(g,h)_p``:

* :func:`transvectant` works on :class:`Poly` in ``x, y`` through repeated
  partial derivatives, exactly as the defining formula reads;
* :func:`transvect_coeffs` works on dense coefficient lists over any
  commutative ring and is what expression evaluation uses.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import product as iproduct

from .exactalg import Poly, X_ID, Y_ID, det, normalize, rank, var, var_id
from .forms import BinaryForm, coeff_name

__all__ = [
    "transvectant", "transvect_coeffs", "mul_coeffs", "pow_coeffs",
    "sylvester_resultant", "discriminant", "classical", "LEMMA1_CONSTANTS",
    "clebsch_gordan_check", "polarize",
]


def _scale(c, s):
    if s == 1:
        return c
    if isinstance(c, Poly):
        return c.scale(s)
    return normalize(c * s)


def _is_zero(c):
    return c.is_zero() if isinstance(c, Poly) else c == 0


def _xy_degree(p: Poly) -> int:
    degs = p.degree_in((X_ID, Y_ID))
    if len(degs) != 1:
        raise ValueError("input is not homogeneous in x, y")
    return degs.pop()


def transvectant(g: Poly, h: Poly, p: int, m: int | None = None, n: int | None = None) -> Poly:
    """(g,h)_p for forms given as polynomials in x, y.

    ``m`` and ``n`` are the degrees; they are read off the inputs unless
    an input is zero.
    """
    if m is None:
        m = _xy_degree(g)
    if n is None:
        n = _xy_degree(h)
    if not 0 <= p <= min(m, n):
        raise ValueError(f"transvectant index {p} out of range for degrees {m}, {n}")
    total = Poly()
    for i in range(p + 1):
        dg = g.partial(X_ID, p - i).partial(Y_ID, i)
        dh = h.partial(X_ID, i).partial(Y_ID, p - i)
        term = dg * dh
        total = total + term.scale((-1) ** i * math.comb(p, i))
    c = Fraction(math.factorial(m - p) * math.factorial(n - p), math.factorial(m) * math.factorial(n))
    return total.scale(c)


def transvect_coeffs(g, h, p: int):
    """(g,h)_p on raw coefficient lists ``g[i]`` of ``x^(m-i) y^i``."""
    m, n = len(g) - 1, len(h) - 1
    if not 0 <= p <= min(m, n):
        raise ValueError(f"transvectant index {p} out of range for orders {m}, {n}")
    out = [0] * (m + n - 2 * p + 1)
    for k in range(p + 1):
        sign = (-1) ** k * math.comb(p, k)
        # d^p g / dx^(p-k) dy^k : coefficient list of degree m-p
        dg = []
        for i in range(k, m - (p - k) + 1):
            if _is_zero(g[i]):
                continue
            w = math.perm(m - i, p - k) * math.perm(i, k)
            dg.append((i - k, g[i], w))
        if not dg:
            continue
        dh = []
        for j in range(p - k, n - k + 1):
            if _is_zero(h[j]):
                continue
            w = math.perm(n - j, k) * math.perm(j, p - k)
            dh.append((j - (p - k), h[j], w))
        for a, ga, wa in dg:
            for b, hb, wb in dh:
                out[a + b] = out[a + b] + _scale(ga * hb, sign * wa * wb)
    c = Fraction(math.factorial(m - p) * math.factorial(n - p), math.factorial(m) * math.factorial(n))
    return [_scale(v, c) for v in out]


def mul_coeffs(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if _is_zero(ca):
            continue
        for j, cb in enumerate(b):
            if _is_zero(cb):
                continue
            out[i + j] = out[i + j] + ca * cb
    return out


def pow_coeffs(a, k: int):
    out = [1]
    for _ in range(k):
        out = mul_coeffs(out, a)
    return out


# ---------------------------------------------------------------------------
# resultants and discriminants (Sylvester matrix oracles)

def sylvester_matrix(a, b):
    """Sylvester matrix of binary forms with raw coefficient lists a, b."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(a) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(b) + [0] * (size - n - 1 - i))
    return rows


def sylvester_resultant(a, b):
    """Res(a, b) = det of the Sylvester matrix (coefficients in x-descending order)."""
    if len(a) == 1:
        return a[0] ** (len(b) - 1)
    if len(b) == 1:
        return b[0] ** (len(a) - 1)
    return det(sylvester_matrix(a, b))


def discriminant(a):
    """Discriminant of a binary form of degree n >= 2.

    disc(f) = (-1)^(n(n-1)/2) Res(f_x, f_y) / n^(n-2); this is the usual
    polynomial discriminant of f(x, 1) when the leading coefficient is nonzero.
    """
    n = len(a) - 1
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    fx = [_scale(a[i], n - i) for i in range(n)]
    fy = [_scale(a[i], i) for i in range(1, n + 1)]
    r = sylvester_resultant(fx, fy)
    c = Fraction((-1) ** (n * (n - 1) // 2), n ** (n - 2))
    return _scale(r, c)


# transvectant side = constant * (resultant or discriminant side).  The
# constants are fixed by the raw-coefficient convention and the transvectant
# normalisation used here; tests re-derive them from the oracles.
LEMMA1_CONSTANTS = {
    "res_11": Fraction(1),        # (l,m)_1 = res(l,m)
    "discr_2": Fraction(-1, 2),   # (q,q)_2 = -1/2 discr(q)
    "res_12": Fraction(1),        # (q,l^2)_2 = res(l,q)
    "res_22": Fraction(1),        # (q,r)_2^2 - (q,q)_2 (r,r)_2 = res(q,r)
    "discr_3": Fraction(2, 27),   # (f,(f,(f,f)_2)_1)_3 = 2/27 discr(f)
    "res_13": Fraction(-1),       # (f,l^3)_3 = -res(l,f) = res(f,l)
}

_KIND_DEGREES = {
    "res_11": (1, 1), "discr_2": (2,), "res_12": (1, 2),
    "res_22": (2, 2), "discr_3": (3,), "res_13": (1, 3),
}


def classical(kind: str, *args):
    """Transvectant side of the classical identity ``kind``.

    Arguments are coefficient lists (numeric or Poly) or BinaryForms.
    """
    if kind not in _KIND_DEGREES:
        raise ValueError(f"unknown kind {kind!r}")
    args = [list(a.coeffs) if isinstance(a, BinaryForm) else list(a) for a in args]
    want = _KIND_DEGREES[kind]
    if tuple(len(a) - 1 for a in args) != want:
        raise ValueError(f"{kind} expects degrees {want}")
    T = transvect_coeffs
    if kind == "res_11":
        l, m = args
        return T(l, m, 1)[0]
    if kind == "discr_2":
        (q,) = args
        return T(q, q, 2)[0]
    if kind == "res_12":
        l, q = args
        return T(q, pow_coeffs(l, 2), 2)[0]
    if kind == "res_22":
        q, r = args
        qr = T(q, r, 2)[0]
        return qr * qr - T(q, q, 2)[0] * T(r, r, 2)[0]
    if kind == "discr_3":
        (f,) = args
        return T(f, T(f, T(f, f, 2), 1), 3)[0]
    l, f = args
    return T(f, pow_coeffs(l, 3), 3)[0]


def classical_oracle(kind: str, *args):
    """Resultant/discriminant side of the same identity, via Sylvester matrices."""
    args = [list(a.coeffs) if isinstance(a, BinaryForm) else list(a) for a in args]
    if kind.startswith("discr"):
        return discriminant(args[0])
    return sylvester_resultant(args[0], args[1])


# ---------------------------------------------------------------------------

def clebsch_gordan_check(m: int, n: int) -> bool:
    """dim V_m (x) V_n = sum_p dim V_{m+n-2p} and g(x)h -> ((g,h)_p)_p is injective."""
    if not m >= n >= 0:
        raise ValueError("need m >= n >= 0")
    if (m + 1) * (n + 1) != sum(m + n - 2 * p + 1 for p in range(n + 1)):
        return False
    cols = []
    for i, j in iproduct(range(m + 1), range(n + 1)):
        g = [0] * (m + 1)
        h = [0] * (n + 1)
        g[i] = 1
        h[j] = 1
        col = []
        for p in range(n + 1):
            col.extend(transvect_coeffs(g, h, p))
        cols.append(col)
    matrix = [list(r) for r in zip(*cols)]
    return rank(matrix) == (m + 1) * (n + 1)


def polarize(I: Poly, s: int, source: str, degree: int, targets=None, lam="lam"):
    """i-polarizations of an invariant ``I`` of one form ``source`` of ``degree``.

    Substitutes ``source = sum_k lam_k * target_k`` and returns a list of
    ``(index tuple, Poly)`` sorted by index, descending lexicographically.
    """
    if targets is None:
        targets = [source] + [f"{source}{k}" for k in range(2, s + 1)] if s > 1 else [source]
    if len(targets) != s:
        raise ValueError("need one target symbol per copy")
    lam_names = [f"{lam}{k}" for k in range(1, s + 1)]
    lam_ids = [var_id(n) for n in lam_names]
    sub = {}
    for i in range(degree + 1):
        expr = Poly()
        for k in range(s):
            expr = expr + var(lam_names[k]) * var(coeff_name(targets[k], i))
        sub[coeff_name(source, i)] = expr
    full = I.subs(sub)
    groups: dict = {}
    for mono, c in full.terms.items():
        d = dict(mono)
        idx = tuple(d.get(li, 0) for li in lam_ids)
        rest = tuple((v, e) for v, e in mono if v not in lam_ids)
        groups.setdefault(idx, {})[rest] = c
    return sorted(((idx, Poly(t)) for idx, t in groups.items()), reverse=True)
