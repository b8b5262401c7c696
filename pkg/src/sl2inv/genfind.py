"""Evaluation-based linear algebra in the invariant ring.

Invariants are evaluated exactly at seeded random rational points and the
values reduced modulo word-size primes.  A modular rank never exceeds the
rank over Q, and the span of degree-d products never exceeds a_d, so a
modular rank equal to a_d is a certificate.  Ranks below that bound are
accepted only when two primes and a fresh set of points agree.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations

from .catalog import (GeneratorTable, covariant_bases, generator_table, hsop_catalog,
                      reference_values)
from .exactalg import PRIMES, Poly, det, rank_mod_p, var
from .expr import (Expr, Power, Symbol, Transvect, eval_invariant, multidegree, order,
                   parse_expr, print_expr, product, total_degree)
from .forms import (BinaryForm, ModuleSpec, PointInV, act_point, in_nullcone, parse_point, parse_poly,
                    random_nullcone_point, random_point, random_sl2)
from .poincare import compositions, dim_invariants, generator_degree_bound, hsop_numerator, series


class Inconclusive(RuntimeError):
    """A rank could not be certified: fresh points gave a different answer."""


@dataclass
class GeneratorRecord:
    expr: Expr
    degree: int
    multidegree: tuple
    provenance: str = "constructed"
    status: dict = field(default_factory=dict)

    @property
    def text(self) -> str:
        return print_expr(self.expr)


def make_record(e: Expr, spec: ModuleSpec, provenance="constructed") -> GeneratorRecord:
    orders = spec.symbol_degrees()
    if order(e, orders) != 0:
        raise ValueError(f"{print_expr(e)} is not an invariant expression")
    md = multidegree(e, spec.names, orders)
    return GeneratorRecord(e, sum(md), md, provenance)


def table_records(table: GeneratorTable) -> list:
    return [GeneratorRecord(c.expr, c.degree, c.multidegree, "table") for c in table.entries]


# ---------------------------------------------------------------------------
# evaluation at random points

def _residue(v, p: int) -> int:
    v = Fraction(v)
    return v.numerator * pow(v.denominator, -1, p) % p


class PointPool:
    """Seeded rational points of V with cached exact generator values."""

    def __init__(self, spec: ModuleSpec, exprs, seed: int = 0, size: int = 9, den: int = 3):
        self.spec = spec
        self.exprs = list(exprs)
        self.rng = random.Random(seed)
        self.size, self.den = size, den
        self.points: list = []
        self.values: list = []
        self.residues = {p: [] for p in PRIMES[:2]}

    def ensure(self, n: int):
        while len(self.points) < n:
            pt = random_point(self.spec, self.rng, self.size, self.den)
            b = pt.bindings()
            memo: dict = {}
            vals = [eval_invariant(e, b, memo) for e in self.exprs]
            self.points.append(pt)
            self.values.append(vals)
            for p, res in self.residues.items():
                res.append([_residue(v, p) for v in vals])


def monomials(mds, target: tuple, max_index: int | None = None):
    """Multisets of indices into ``mds`` whose multidegrees sum to ``target``."""
    n = len(mds) if max_index is None else max_index
    out = []
    p = len(target)

    def rec(start, rem, cur):
        if not any(rem):
            out.append(tuple(cur))
            return
        for i in range(start, n):
            md = mds[i]
            if all(md[k] <= rem[k] for k in range(p)):
                cur.append(i)
                rec(i, tuple(rem[k] - md[k] for k in range(p)), cur)
                cur.pop()

    rec(0, tuple(target), [])
    return out


def _mono_matrix(residues, monos, p, rows):
    M = []
    for k in range(rows):
        vals = residues[k]
        row = []
        for mono in monos:
            acc = 1
            for i in mono:
                acc = acc * vals[i] % p
            row.append(acc)
        M.append(row)
    return M


@dataclass
class RankResult:
    rank: int
    certified: bool
    columns: int
    bound: int


class SpanEngine:
    """Span dimensions of products of generator records, per multidegree."""

    def __init__(self, spec: ModuleSpec, records, seed: int = 0, margin: int = 4):
        self.spec = spec
        self.records = list(records)
        self.mds = [r.multidegree for r in self.records]
        self.seed = seed
        self.margin = margin
        self.pool = PointPool(spec, [r.expr for r in self.records], seed)
        self._fresh = None

    def _rank_on(self, pool, monos, rows):
        pool.ensure(rows)
        ranks = [rank_mod_p(_mono_matrix(pool.residues[p], monos, p, rows), p) for p in PRIMES[:2]]
        return max(ranks), ranks[0] == ranks[1]

    def rank(self, monos, bound: int) -> RankResult:
        """Rank of the evaluation matrix of ``monos``; ``bound`` is a_mu."""
        if not monos or bound == 0:
            return RankResult(0, True, len(monos), bound)
        rows = min(bound, len(monos)) + self.margin
        r, agree = self._rank_on(self.pool, monos, rows)
        if r in (bound, len(monos)):
            return RankResult(r, True, len(monos), bound)
        if self._fresh is None:
            self._fresh = PointPool(self.spec, [x.expr for x in self.records], self.seed + 7919)
        r2, agree2 = self._rank_on(self._fresh, monos, rows)
        if r2 != r:
            raise Inconclusive(f"rank changed from {r} to {r2} on fresh points")
        return RankResult(r, False, len(monos), bound)

    def span_dimension(self, mu: tuple, below: int | None = None) -> RankResult:
        """Span at multidegree ``mu`` of products of records (of degree < ``below`` if given)."""
        allowed = [i for i, r in enumerate(self.records) if below is None or r.degree < below]
        sub = [self.mds[i] for i in allowed]
        monos = [tuple(allowed[j] for j in m) for m in monomials(sub, mu)]
        return self.rank(monos, dim_invariants(self.spec, mu))

    def count_new(self, mu: tuple) -> int:
        """a_mu minus the span of products of lower-degree records at mu."""
        return dim_invariants(self.spec, mu) - self.span_dimension(mu, below=sum(mu)).rank


def _block_sorted(spec: ModuleSpec, mu) -> bool:
    for i in range(spec.p - 1):
        if spec.degrees[i] == spec.degrees[i + 1] and mu[i] < mu[i + 1]:
            return False
    return True


def _orbit_size(spec: ModuleSpec, mu) -> int:
    size = 1
    i = 0
    while i < spec.p:
        j = i
        while j < spec.p and spec.degrees[j] == spec.degrees[i]:
            j += 1
        block = mu[i:j]
        size *= math.factorial(len(block))
        for v in set(block):
            size //= math.factorial(block.count(v))
        i = j
    return size


def multidegrees(spec: ModuleSpec, d: int, symmetric: bool = False):
    """Multidegrees of total degree d with nonzero invariants (block-sorted if symmetric)."""
    out = []
    for mu in compositions(d, spec.p):
        if symmetric and not _block_sorted(spec, mu):
            continue
        if dim_invariants(spec, mu):
            out.append(mu)
    return out


def _is_symmetric(spec: ModuleSpec, records) -> bool:
    """Whether the multidegree census is stable under permuting equal-degree forms."""
    census: dict = {}
    for r in records:
        census[r.multidegree] = census.get(r.multidegree, 0) + 1
    blocks = {}
    for i, n in enumerate(spec.degrees):
        blocks.setdefault(n, []).append(i)
    for md, c in census.items():
        for idx in blocks.values():
            for perm in permutations(idx):
                img = list(md)
                for a, b in zip(idx, perm):
                    img[b] = md[a]
                if census.get(tuple(img), 0) != c:
                    return False
    return all(spec.degrees[i] <= spec.degrees[i + 1] for i in range(spec.p - 1))


def span_dimension(gens, spec: ModuleSpec, d, trials: int | None = None, seed: int = 0) -> int:
    """Span of all products of ``gens`` at multidegree d, or summed over multidegrees if d is an int."""
    mus = multidegrees(spec, d) if isinstance(d, int) else [tuple(d)]
    total = 0
    for mu in mus:
        a = dim_invariants(spec, mu)
        margin = 4 if trials is None else max(0, trials - a)
        total += SpanEngine(spec, gens, seed, margin).span_dimension(mu).rank
    return total


def count_new_generators(gens, spec: ModuleSpec, d: int, seed: int = 0) -> int:
    """a_d minus the span of products of generators of degree < d."""
    eng = SpanEngine(spec, gens, seed)
    sym = _is_symmetric(spec, gens)
    return sum(eng.count_new(mu) * (_orbit_size(spec, mu) if sym else 1)
               for mu in multidegrees(spec, d, sym))


# ---------------------------------------------------------------------------
# graded verification reports

@dataclass
class DegreeRow:
    degree: int
    a: int
    products: int
    new_needed: int
    listed: int
    full_span: int
    certified: bool

    @property
    def ok(self) -> bool:
        return self.new_needed == self.listed and self.full_span == self.a


@dataclass
class GradedBasisReport:
    spec: ModuleSpec
    r: int
    cap: int
    rows: list
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches and all(row.ok for row in self.rows)

    def census(self) -> dict:
        return {row.degree: row.new_needed for row in self.rows if row.new_needed}


def verify_generators(spec: ModuleSpec, records, cap: int, seed: int = 0,
                      progress=None) -> GradedBasisReport:
    """Per-degree check, up to ``cap``, that ``records`` minimally generate R_d."""
    eng = SpanEngine(spec, records, seed)
    sym = _is_symmetric(spec, records)
    listed: dict = {}
    for r in records:
        listed[r.multidegree] = listed.get(r.multidegree, 0) + 1
    rows, bad = [], []
    for d in range(1, cap + 1):
        tot = dict(a=0, products=0, new=0, listed=0, full=0)
        cert = True
        for mu in multidegrees(spec, d, sym):
            w = _orbit_size(spec, mu) if sym else 1
            a = dim_invariants(spec, mu)
            low = eng.span_dimension(mu, below=d)
            full = eng.span_dimension(mu) if listed.get(mu) else low
            cert = cert and low.certified and full.certified
            new = a - low.rank
            if new != listed.get(mu, 0) or full.rank != a:
                bad.append((mu, a, low.rank, full.rank, listed.get(mu, 0)))
            tot["a"] += w * a
            tot["products"] += w * low.rank
            tot["new"] += w * new
            tot["listed"] += w * listed.get(mu, 0)
            tot["full"] += w * full.rank
        rows.append(DegreeRow(d, tot["a"], tot["products"], tot["new"], tot["listed"], tot["full"], cert))
        if progress:
            progress(rows[-1])
    return GradedBasisReport(spec, len(records), cap, rows, bad)


def check_invariance(spec: ModuleSpec, records, seed: int = 0, trials: int = 2) -> list:
    """Exact check I(g.v) = I(v) at random rational points; returns failing texts."""
    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        v = random_point(spec, rng)
        g = random_sl2(rng)
        gv = act_point(g, v)
        m1, m2 = {}, {}
        for r in records:
            a = eval_invariant(r.expr, v.bindings(), m1)
            b = eval_invariant(r.expr, gv.bindings(), m2)
            if a != b and r.text not in bad:
                bad.append(r.text)
    return bad


def check_nonzero(spec: ModuleSpec, records, seed: int = 0) -> list:
    """Texts of records that vanish at a random point (likely identically zero)."""
    rng = random.Random(seed)
    v = random_point(spec, rng)
    memo: dict = {}
    return [r.text for r in records if eval_invariant(r.expr, v.bindings(), memo) == 0]


# ---------------------------------------------------------------------------
# constructive families

def one_two_spec(m: int, n: int) -> ModuleSpec:
    return ModuleSpec((1,) * m + (2,) * n)


def construct_one_two(m: int, n: int) -> list:
    """Basic invariants of m V_1 + n V_2."""
    spec = one_two_spec(m, n) if m + n else None
    if spec is None:
        return []
    L = [Symbol(x) for x in spec.names[:m]]
    Q = [Symbol(x) for x in spec.names[m:]]

    def lin2(i, j):
        return Power(L[i], 2) if i == j else product(L[i], L[j])

    exprs = []
    exprs += [Transvect(L[i], L[j], 1) for i, j in combinations(range(m), 2)]
    exprs += [Transvect(Q[i], Q[j], 2) for i, j in combinations_with_replacement(range(n), 2)]
    exprs += [Transvect(Q[k], lin2(i, j), 2)
              for k in range(n) for i, j in combinations_with_replacement(range(m), 2)]
    exprs += [Transvect(Q[i], Transvect(Q[j], Q[k], 1), 2) for i, j, k in combinations(range(n), 3)]
    exprs += [Transvect(Transvect(Q[i], Q[j], 1), lin2(k, l), 2)
              for i, j in combinations(range(n), 2) for k, l in combinations_with_replacement(range(m), 2)]
    return [make_record(e, spec) for e in exprs]


def linear_names(m: int, taken=()) -> list:
    pool = [x for x in ("l", "m", "n") if x not in taken]
    if m <= len(pool):
        return pool[:m]
    return [f"l{i + 1}" for i in range(m)]


def extend_with_linear(basis, m: int, wspec: ModuleSpec) -> tuple:
    """Invariants of m V_1 + W from a covariant basis [(expr, order)] of W.

    Each covariant j of order o contributes (j, l_{i_1}...l_{i_o})_o for every
    multiset of o linear forms; the (l_i, l_j)_1 are added for i < j.
    Returns (spec, records).
    """
    lnames = linear_names(m, wspec.names)
    spec = ModuleSpec((1,) * m + wspec.degrees, tuple(lnames) + wspec.names)
    L = [Symbol(x) for x in lnames]
    exprs = [Transvect(L[i], L[j], 1) for i, j in combinations(range(m), 2)]
    for j, o in basis:
        if o == 0:
            exprs.append(j)
            continue
        for combo in combinations_with_replacement(range(m), o):
            factors = []
            for i in sorted(set(combo)):
                k = combo.count(i)
                factors.append(L[i] if k == 1 else Power(L[i], k))
            exprs.append(Transvect(j, product(*factors), o))
    return spec, [make_record(e, spec) for e in exprs]


def linear_extension(wkey: str, m: int) -> tuple:
    """``extend_with_linear`` for a catalogued W."""
    wspec, basis = covariant_bases()[wkey]
    return extend_with_linear(basis, m, wspec)


# ---------------------------------------------------------------------------
# classification rows: r, m, hd per module

def _as_one_two(spec: ModuleSpec):
    if set(spec.degrees) <= {1, 2} and list(spec.degrees) == sorted(spec.degrees):
        return spec.degrees.count(1), spec.degrees.count(2)
    return None


def records_for(spec_key: str) -> tuple:
    """(spec, records, provenance) for a module whose basic invariants are known here."""
    from .catalog import GENERATOR_TABLES
    if spec_key in GENERATOR_TABLES:
        t = generator_table(spec_key)
        return t.spec, table_records(t), "table"
    spec = ModuleSpec.parse(spec_key)
    mn = _as_one_two(spec)
    if mn is not None:
        recs = construct_one_two(*mn)
        return one_two_spec(*mn), recs, "one-two formula"
    degs = spec.degrees
    m = degs.count(1)
    rest = ",".join(str(d) for d in degs if d != 1)
    if m and list(degs[:m]) == [1] * m and rest in covariant_bases():
        s, recs = linear_extension(rest, m)
        return s, recs, "linear extension"
    raise KeyError(f"no generator construction for {spec_key}")


# ---------------------------------------------------------------------------
# hsops

class Dual:
    """First-order jet: value plus sparse gradient over coefficient indices."""

    __slots__ = ("v", "g")

    def __init__(self, v, g=None):
        self.v = v
        self.g = g or {}

    def _lift(self, o):
        return o if isinstance(o, Dual) else Dual(o)

    def __add__(self, o):
        o = self._lift(o)
        g = dict(self.g)
        for k, x in o.g.items():
            g[k] = g.get(k, 0) + x
        return Dual(self.v + o.v, g)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.v, {k: -x for k, x in self.g.items()})

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        if not isinstance(o, Dual):
            return Dual(self.v * o, {k: x * o for k, x in self.g.items()})
        g = {k: x * o.v for k, x in self.g.items()}
        for k, x in o.g.items():
            g[k] = g.get(k, 0) + self.v * x
        return Dual(self.v * o.v, g)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Dual(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        o = self._lift(o)
        return self.v == o.v and {k: x for k, x in self.g.items() if x} == {k: x for k, x in o.g.items() if x}

    def __ne__(self, o):
        return not self == o

    __hash__ = None


def gradient(e: Expr, point: PointInV) -> list:
    """Exact gradient of the invariant ``e`` at ``point`` w.r.t. all coefficients."""
    bindings = {}
    k = 0
    for name, form in zip(point.spec.names, point.forms):
        cs = []
        for c in form.coeffs:
            cs.append(Dual(Fraction(c), {k: 1}))
            k += 1
        bindings[name] = cs
    val = eval_invariant(e, bindings)
    if not isinstance(val, Dual):
        return [0] * k
    return [val.g.get(i, 0) for i in range(k)]


def jacobian_rank(exprs, spec: ModuleSpec, seed: int = 0) -> int:
    rng = random.Random(seed)
    pt = random_point(spec, rng)
    J = [gradient(e, pt) for e in exprs]
    from .exactalg import rank
    return rank(J)


@dataclass
class HsopCandidate:
    spec: ModuleSpec
    exprs: list
    degrees: list


@dataclass
class HsopReport:
    spec: ModuleSpec
    m: int
    jacobian_rank: int
    degrees: list
    census_ok: bool
    nullcone_samples: int
    nullcone_failures: list
    status: str

    @property
    def ok(self) -> bool:
        return self.status == "spot-checked"


def expr_degree(e: Expr, spec: ModuleSpec) -> int:
    return total_degree(e, spec.names, spec.symbol_degrees())


def verify_hsop_candidate(c: HsopCandidate, seed: int = 0, samples: int = 8) -> HsopReport:
    spec = c.spec
    m = spec.krull_dim
    degs = sorted(expr_degree(e, spec) for e in c.exprs)
    census_ok = len(c.exprs) == m and degs == sorted(c.degrees)
    jr = jacobian_rank(c.exprs, spec, seed)
    rng = random.Random(seed + 1)
    fails = []
    for _ in range(samples):
        pt = random_nullcone_point(spec, rng)
        memo: dict = {}
        for e in c.exprs:
            if eval_invariant(e, pt.bindings(), memo) != 0:
                fails.append((print_expr(e), str(pt)))
    status = "spot-checked" if census_ok and jr == m and not fails else "failed"
    return HsopReport(spec, m, jr, degs, census_ok, samples, fails, status)


def catalog_hsop(spec_key: str) -> HsopCandidate:
    h = hsop_catalog()[spec_key]
    return HsopCandidate(h.spec, h.exprs, h.degrees)


@dataclass
class Refutation:
    spec: ModuleSpec
    degrees: list
    refuted: bool
    reason: str
    details: dict = field(default_factory=dict)


def refute_by_point(spec_key: str, degrees, point_text: str, seed: int = 0) -> Refutation:
    """All invariants of the relevant degrees vanish at a point outside the nullcone."""
    spec, records, _ = records_for(spec_key)
    pt = parse_point(point_text)
    top = max(degrees)
    # generation of R_d for d <= top by the records is checked first
    rep = verify_generators(spec, records, top, seed)
    outside = not in_nullcone(pt)
    b = pt.bindings()
    memo: dict = {}
    nonzero = [r.text for r in records if r.degree <= top and eval_invariant(r.expr, b, memo) != 0]
    witness = next((r.text for r in records if r.degree > top and eval_invariant(r.expr, b, memo) != 0), None)
    refuted = rep.ok and outside and not nonzero
    reason = (f"every invariant of degree <= {top} vanishes at {pt}, which is outside the nullcone"
              if refuted else "point does not refute the degrees")
    return Refutation(spec, list(degrees), refuted, reason,
                      {"generation_ok": rep.ok, "outside_nullcone": outside, "nonvanishing": nonzero,
                       "witness": witness})


def vanishing_codim_bound(spec: ModuleSpec, degs, zero_form: int) -> bool:
    """True if every invariant whose degree lies in ``degs`` involves form ``zero_form``."""
    for d in set(degs):
        for mu in compositions(d, spec.p):
            if mu[zero_form] == 0 and dim_invariants(spec, mu):
                return False
    return True


def refute_by_numerator(spec: ModuleSpec, degrees, D: int | None = None) -> Refutation:
    P = series(spec, max(D or 0, sum(degrees)))
    num = hsop_numerator(P, degrees)
    neg = [d for d, c in enumerate(num.coeffs) if c < 0]
    return Refutation(spec, list(degrees), bool(neg),
                      f"numerator has negative coefficients at degrees {neg}" if neg
                      else "numerator is nonnegative", {"numerator": num.coeffs})


def refute_by_locus(spec: ModuleSpec, degrees, zero_form: int, seed: int = 0) -> Refutation:
    """The locus where form ``zero_form`` vanishes kills all invariants of some degrees.

    If k of the proposed degrees lie in that set while the locus has
    codimension c < k, no hsop with those degrees exists.
    """
    best = None
    for size in range(1, len(set(degrees)) + 1):
        for sub in combinations(sorted(set(degrees)), size):
            if vanishing_codim_bound(spec, sub, zero_form):
                k = sum(1 for d in degrees if d in sub)
                codim = spec.degrees[zero_form] + 1
                if k > codim and (best is None or k - codim > best[1] - best[2]):
                    best = (sub, k, codim)
    if best is None:
        return Refutation(spec, list(degrees), False, "no vanishing locus found")
    sub, k, codim = best
    # numerical corroboration: random points with the form set to zero
    rng = random.Random(seed)
    recs = None
    try:
        _, recs, _ = records_for(spec.key())
    except KeyError:
        pass
    zero_ok = True
    if recs:
        for _ in range(3):
            pt = random_point(spec, rng)
            forms = list(pt.forms)
            forms[zero_form] = BinaryForm(spec.degrees[zero_form], (0,) * (spec.degrees[zero_form] + 1))
            pt = PointInV(spec, tuple(forms))
            memo: dict = {}
            if any(eval_invariant(r.expr, pt.bindings(), memo) != 0 for r in recs if r.degree in sub):
                zero_ok = False
    label = "[" + ",".join(map(str, sub)) + f"] = {codim}"
    return Refutation(spec, list(degrees), zero_ok,
                      f"{label}: {k} proposed degrees lie in {{{','.join(map(str, sub))}}}",
                      {"degrees": list(sub), "count": k, "codim": codim})


def numerator_check(spec_key: str, degrees, D: int | None = None):
    """(nonnegative, complete, bound) for a hsop degree list."""
    spec = ModuleSpec.parse(spec_key)
    P = series(spec, max(D or 0, sum(degrees)))
    num = hsop_numerator(P, degrees)
    bound = generator_degree_bound(P, degrees) if num.nonnegative else None
    return num.nonnegative, num.complete, bound


# ---------------------------------------------------------------------------
# structured points on V3 + V4 and three quadratics

V3V4_I5P = "(c,(c,(c,(c,e)_1)_3)_1)_3"
V3V4_I5PP = "(c,(c,(e,(e,e)_2)_1)_3)_3"
V3V4_I6 = "(c,(c,(c,(c,(e,e)_2)_1)_3)_1)_3"
V3V4_I7 = "(c,(c,e)_3^3)_3"


def v3v4_hsop_values(f, g) -> tuple:
    """Values of i5', i5'', i6, i7 at (f, g) in V3 + V4 (coefficient lists, any ring)."""
    b = {"c": list(f), "e": list(g)}
    memo: dict = {}
    orders = {"c": 3, "e": 4}
    return tuple(eval_invariant(parse_expr(t, orders=orders), b, memo)
                 for t in (V3V4_I5P, V3V4_I5PP, V3V4_I6, V3V4_I7))


def structured_v3v4_values() -> tuple:
    """Values on f = x^2(ax+by), g = y^3(cx+dy) as polynomials in a, b, c, d."""
    a, b, c, d = var("a"), var("b"), var("c"), var("d")
    return v3v4_hsop_values([a, b, 0, 0], [0, 0, 0, c, d])


def structured_v3v4_constants() -> dict:
    """Ratios of the structured values to the expected monomial shapes (None if not proportional)."""
    expected = reference_values()["v3v4_values"]
    vals = structured_v3v4_values()
    return {k: proportionality_constant(v, parse_poly(expected[k]))
            for k, v in zip(("i5p", "i5pp", "i6", "i7"), vals)}


def proportionality_constant(p: Poly, q: Poly):
    """The scalar k with p = k q, or None."""
    if q.is_zero():
        return Fraction(0) if p.is_zero() else None
    mono, cq = next(iter(q.terms.items()))
    k = Fraction(p.coefficient(mono)) / Fraction(cq)
    return k if p == q.scale(k) else None


def det_three_quadratics(q1, q2, q3):
    """Determinant of the (a, b, c) rows of forms a x^2 + 2b xy + c y^2."""
    rows = []
    for q in (q1, q2, q3):
        cs = list(q.coeffs) if isinstance(q, BinaryForm) else list(q)
        rows.append([Fraction(cs[0]), Fraction(cs[1]) / 2, Fraction(cs[2])])
    return det(rows)


def triple_transvectant(q1, q2, q3):
    from .transvect import transvect_coeffs
    cs = [list(q.coeffs) if isinstance(q, BinaryForm) else list(q) for q in (q1, q2, q3)]
    return transvect_coeffs(cs[0], transvect_coeffs(cs[1], cs[2], 1), 2)[0]


# ---------------------------------------------------------------------------
# consistency

def computed_r_values(include_tables: bool = True) -> dict:
    """r for every module whose minimal generator list is built here.

    Keys are sorted spec strings.  Values come from catalog sizes, the
    m V1 + n V2 construction and the linear extensions of catalogued W.
    """
    out = {}
    for m in range(0, 9):
        for n in range(0, 7):
            if m + n >= 2:
                out[one_two_spec(m, n).key()] = len(construct_one_two(m, n))
    out["1"] = 0
    out["2"] = 1
    for key, (wspec, basis) in covariant_bases().items():
        out.setdefault(key, sum(1 for _, o in basis if o == 0))
        for m in (1, 2, 3):
            s, recs = extend_with_linear(basis, m, wspec)
            out[ModuleSpec(tuple(sorted(s.degrees))).key()] = len(recs)
    if include_tables:
        from .catalog import GENERATOR_TABLES
        for k in GENERATOR_TABLES:
            out[k] = generator_table(k).r
    return out


def hd_of(key: str, r: int) -> int:
    """hd = r - dim of the quotient."""
    return r - ModuleSpec.parse(key).krull_dim


def monotony_violations(r_values: dict) -> tuple:
    """Check hd(W + W') >= hd(W) + hd(W') over all splittings inside ``r_values``."""
    hd = {k: hd_of(k, r) for k, r in r_values.items()}
    checked, bad = 0, []
    for key in hd:
        degs = ModuleSpec.parse(key).degrees
        n = len(degs)
        seen = set()
        for size in range(1, n):
            for idx in combinations(range(n), size):
                w = tuple(sorted(degs[i] for i in idx))
                w2 = tuple(sorted(degs[i] for i in range(n) if i not in idx))
                pair = tuple(sorted((w, w2)))
                if pair in seen:
                    continue
                seen.add(pair)
                kw, kw2 = ",".join(map(str, w)), ",".join(map(str, w2))
                if kw in hd and kw2 in hd:
                    checked += 1
                    if hd[key] < hd[kw] + hd[kw2]:
                        bad.append((key, kw, kw2))
    return checked, bad
