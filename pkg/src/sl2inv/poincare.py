"""Poincare series of invariant rings of binary forms by weight counting.

For one form of degree n, the degree-d monomials in its coefficients
a_0..a_n, weighted by index sum, are counted by the Gaussian binomial
[n+d choose d]_q.  The invariants of multidegree (d_1..d_p) have dimension
c(W) - c(W-1) where c(w) counts products with total index weight w and
W = sum(d_i n_i) / 2 (zero if that sum is odd).
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, product as iproduct
from pathlib import Path

from .forms import ModuleSpec

CACHE_VERSION = 1
CACHE_ENV = "SL2INV_CACHE_DIR"


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, d: int) -> tuple:
    """Coefficients of [n+d choose d]_q: degree-d monomials in n+1 variables by weight."""
    # DP over the number of variables: g_k(d) = sum_j q^(j*k) g_{k-1}(d - j)
    # simpler: recurrence [a choose b] = [a-1 choose b-1] + q^b [a-1 choose b]
    return tuple(_gauss(n + d, d))


@lru_cache(maxsize=None)
def _gauss(a: int, b: int) -> tuple:
    if b < 0 or b > a:
        return ()
    if b == 0 or b == a:
        return (1,)
    x = _gauss(a - 1, b - 1)
    y = _gauss(a - 1, b)
    out = [0] * (b * (a - b) + 1)
    for i, c in enumerate(x):
        out[i] += c
    for i, c in enumerate(y):
        out[i + b] += c
    return tuple(out)


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def dim_invariants(spec: ModuleSpec, multidegree) -> int:
    """Dimension of invariants of the given multidegree."""
    md = tuple(multidegree)
    if len(md) != spec.p:
        raise ValueError("multidegree length must equal the number of forms")
    if any(d < 0 for d in md):
        return 0
    s = sum(d * n for d, n in zip(md, spec.degrees))
    if s % 2:
        return 0
    W = s // 2
    poly = [1]
    for d, n in zip(md, spec.degrees):
        poly = _polymul(poly, gaussian_binomial(n, d))
    at = poly[W] if W < len(poly) else 0
    below = poly[W - 1] if 0 <= W - 1 < len(poly) else 0
    return at - below


def dim_invariants_enum(spec: ModuleSpec, multidegree) -> int:
    """Same count by explicit monomial enumeration (oracle for small cases)."""
    md = tuple(multidegree)
    s = sum(d * n for d, n in zip(md, spec.degrees))
    if s % 2:
        return 0
    W = s // 2
    weights = []
    for d, n in zip(md, spec.degrees):
        ws: dict = {}
        for mono in combinations_with_replacement(range(n + 1), d):
            w = sum(mono)
            ws[w] = ws.get(w, 0) + 1
        weights.append(ws)
    count = {0: 1}
    for ws in weights:
        nxt: dict = {}
        for a, ca in count.items():
            for b, cb in ws.items():
                nxt[a + b] = nxt.get(a + b, 0) + ca * cb
        count = nxt
    return count.get(W, 0) - count.get(W - 1, 0)


def compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass
class TruncSeries:
    """Truncated power series sum a_d t^d, d <= trunc (graded by total degree)."""

    coeffs: list
    trunc: int = field(default=-1)

    def __post_init__(self):
        self.coeffs = list(self.coeffs)
        if self.trunc < 0:
            self.trunc = len(self.coeffs) - 1
        self.coeffs = (self.coeffs + [0] * (self.trunc + 1))[: self.trunc + 1]

    def __getitem__(self, d):
        if d < 0 or d > self.trunc:
            return 0
        return self.coeffs[d]

    def mul_poly(self, poly) -> "TruncSeries":
        """Multiply by a polynomial given as a coefficient list; same truncation."""
        out = [0] * (self.trunc + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                for j, e in enumerate(poly):
                    if i + j > self.trunc:
                        break
                    out[i + j] += c * e
        return TruncSeries(out, self.trunc)

    def div_one_minus(self, d: int) -> "TruncSeries":
        """Divide by (1 - t^d)."""
        out = list(self.coeffs)
        for i in range(d, self.trunc + 1):
            out[i] += out[i - d]
        return TruncSeries(out, self.trunc)

    def truncate(self, D: int) -> "TruncSeries":
        return TruncSeries(self.coeffs[: D + 1], min(D, self.trunc))

    def prefix(self):
        return list(self.coeffs)

    def __str__(self):
        terms = []
        for d, c in enumerate(self.coeffs):
            if c:
                t = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
                terms.append(str(c) if d == 0 else (t if c == 1 else f"{c}{t}"))
        return " + ".join(terms).replace("+ -", "- ") + " + ..."


def default_trunc(spec: ModuleSpec) -> int:
    return 20 if spec.p == 1 else 18


# ---------------------------------------------------------------------------
# graded series: bivariate DP in (total degree, weight) per form

def _form_table(n: int, D: int):
    """For d = 0..D, weight distribution of degree-d monomials, centred: weight 2i - n d."""
    return [gaussian_binomial(n, d) for d in range(D + 1)]


def _series_compute(spec: ModuleSpec, D: int) -> list:
    # state: dict (degree) -> dict(centred weight -> count), weights in sl2
    # convention so that sums of forms just add
    acc = {0: {0: 1}}
    for n in spec.degrees:
        table = _form_table(n, D)
        nxt: dict = {}
        for d0, wd in acc.items():
            for d in range(D - d0 + 1):
                gb = table[d]
                shift = -n * d
                tgt = nxt.setdefault(d0 + d, {})
                for w, c in wd.items():
                    for i, g in enumerate(gb):
                        if g:
                            key = w + shift + 2 * i
                            tgt[key] = tgt.get(key, 0) + c * g
        acc = nxt
    out = []
    for d in range(D + 1):
        wd = acc.get(d, {})
        out.append(wd.get(0, 0) - wd.get(2, 0))
    return out


def _cache_dir(cache_dir):
    if cache_dir is False:
        return None
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV)
        if not cache_dir:
            return None
    return Path(cache_dir)


def _cache_path(root: Path, spec: ModuleSpec, D: int) -> Path:
    return root / f"series-v{CACHE_VERSION}-{spec.key().replace(',', '_')}-{D}.json"


def _cache_read(root: Path, spec: ModuleSpec, D: int):
    # any cached file with truncation >= D for the same spec serves
    best = None
    for path in root.glob(f"series-v{CACHE_VERSION}-{spec.key().replace(',', '_')}-*.json"):
        try:
            data = json.loads(path.read_text())
            if (data.get("version") == CACHE_VERSION and data.get("spec") == spec.key()
                    and data.get("trunc", -1) >= D and len(data["coeffs"]) == data["trunc"] + 1
                    and all(isinstance(c, int) for c in data["coeffs"])):
                if best is None or data["trunc"] < best["trunc"]:
                    best = data
        except (OSError, ValueError, KeyError, TypeError):
            continue
    return best["coeffs"][: D + 1] if best else None


def _cache_write(root: Path, spec: ModuleSpec, D: int, coeffs):
    root.mkdir(parents=True, exist_ok=True)
    path = _cache_path(root, spec, D)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps({"version": CACHE_VERSION, "spec": spec.key(), "trunc": D,
                               "coeffs": coeffs}))
    tmp.replace(path)


@lru_cache(maxsize=256)
def _series_cached(degrees: tuple, D: int) -> tuple:
    return tuple(_series_compute(ModuleSpec(tuple(sorted(degrees))), D))


def series(spec: ModuleSpec, D: int | None = None, cache_dir=None) -> TruncSeries:
    """Poincare series through degree D.

    ``cache_dir``: directory for the on-disk cache; None uses the
    ``SL2INV_CACHE_DIR`` environment variable if set; False disables it.
    """
    if D is None:
        D = default_trunc(spec)
    if D < 0:
        raise ValueError("truncation must be >= 0")
    spec = ModuleSpec(tuple(sorted(spec.degrees)))
    root = _cache_dir(cache_dir)
    if root is not None:
        hit = _cache_read(root, spec, D)
        if hit is not None:
            return TruncSeries(hit, D)
    coeffs = list(_series_cached(spec.degrees, D))
    if root is not None:
        try:
            _cache_write(root, spec, D, coeffs)
        except OSError:
            pass
    return TruncSeries(coeffs, D)


def multigraded_series(spec: ModuleSpec, D: int) -> dict:
    """{multidegree: dim} for all multidegrees of total degree <= D with nonzero dimension."""
    out = {}
    for d in range(D + 1):
        for md in compositions(d, spec.p):
            a = dim_invariants(spec, md)
            if a:
                out[md] = a
    return out


# ---------------------------------------------------------------------------
# hsop numerators

@dataclass
class Numerator:
    coeffs: list
    trunc: int
    nonnegative: bool
    complete: bool

    def support(self):
        return [d for d, c in enumerate(self.coeffs) if c]

    def __str__(self):
        return " + ".join(f"{c}t^{d}" for d, c in enumerate(self.coeffs) if c)


def hsop_numerator(P: TruncSeries, degs) -> Numerator:
    """P(t) * prod(1 - t^d_i), truncated at P's truncation.

    The numerator is a polynomial of degree < sum(degs); ``complete`` says
    whether the truncation reaches that far.
    """
    out = P
    for d in degs:
        poly = [0] * (d + 1)
        poly[0] = 1
        poly[d] = -1
        out = out.mul_poly(poly)
    coeffs = out.prefix()
    complete = P.trunc >= sum(degs)
    # trailing zeros beyond the last nonzero coefficient are kept to D
    return Numerator(coeffs, P.trunc, all(c >= 0 for c in coeffs), complete)


class InsufficientTruncation(ValueError):
    pass


def generator_degree_bound(P: TruncSeries, degs) -> int:
    """max(d_1..d_m, e_1..e_s) where sum t^e_j is the hsop numerator."""
    num = hsop_numerator(P, degs)
    if not num.complete:
        raise InsufficientTruncation(
            f"series truncated at {P.trunc}; need at least {sum(degs)} for these hsop degrees")
    if not num.nonnegative:
        raise ValueError("numerator has negative coefficients: not hsop degrees")
    return max(list(degs) + num.support())


# ---------------------------------------------------------------------------
# closed forms for m V_1 + n V_2, and the bounds used to classify

def r_one_two(m: int, n: int) -> int:
    if m < 0 or n < 0:
        raise ValueError("m, n must be >= 0")
    C = math.comb
    return C(n, 3) + C(m + 1, 2) * C(n + 1, 2) + C(m, 2) + C(n + 1, 2)


def hd_one_two(m: int, n: int) -> int:
    if m + n <= 1:
        raise ValueError("hd formula needs m + n > 1")
    return r_one_two(m, n) - (3 * n + 2 * m - 3)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) via Euler's pentagonal number recurrence."""
    if n < 0:
        return 0
    p = [1] + [0] * n
    for k in range(1, n + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > k:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[k - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= k:
                total += sign * p[k - g2]
            j += 1
        p[k] = total
    return p[n]


def totient(n: int) -> int:
    if n < 1:
        raise ValueError("totient needs n >= 1")
    result = n
    k = n
    f = 2
    while f * f <= k:
        if k % f == 0:
            while k % f == 0:
                k //= f
            result -= result // f
        f += 1
    if k > 1:
        result -= result // k
    return result


def kac_bound(n: int) -> int:
    """Lower bound r >= p(n-2) + phi(n-2) - 1 for odd n >= 3."""
    if n < 3 or n % 2 == 0:
        raise ValueError("kac_bound needs odd n >= 3")
    return partition_count(n - 2) + totient(n - 2) - 1


def popov_b(degrees) -> int:
    """b = 3 + sum over the other summands of floor((n_i + 1)/2), with one V_8 removed."""
    degs = list(degrees)
    degs.remove(8)
    return 3 + sum((n + 1) // 2 for n in degs)


def popov_c(degrees) -> int:
    degs = list(degrees)
    degs.remove(2)
    return sum((n + 1) // 2 for n in degs)


def popov_case1_bound(b: int) -> int:
    """hd >= (b-1)(b-2)/2 when some summand is V_8."""
    return (b - 1) * (b - 2) // 2


def popov_case2_bound(c: int) -> int:
    """hd >= (c-1)^2 when some summand is V_2."""
    return (c - 1) ** 2
