"""Lower bounds on generator counts from a Poincare series prefix.

Two estimators: Sylvester's sieve (``classic_tamisage``), whose lower-bound
property is only conjectural, and a provable variant that tracks upper
bounds M_i and M_ij alongside lower bounds m_i (``refined_bounds``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .forms import ModuleSpec
from .poincare import TruncSeries


def _coeffs(P) -> list:
    if isinstance(P, TruncSeries):
        return P.prefix()
    return list(P)


def classic_tamisage(P) -> dict:
    """Sieve P by (1 - t^i)^{m_i}; returns {i: m_i} with zero entries omitted."""
    work = TruncSeries(_coeffs(P))
    out = {}
    while True:
        i = next((k for k in range(1, work.trunc + 1) if work[k] != 0), None)
        if i is None or work[i] < 0:
            return out
        mi = work[i]
        out[i] = mi
        # multiply by (1 - t^i)^mi
        poly = [0] * (i * mi + 1)
        for k in range(mi + 1):
            poly[i * k] = (-1) ** k * math.comb(mi, k)
        work = work.mul_poly(poly)


@dataclass
class TamisageState:
    a: list
    m: dict = field(default_factory=dict)
    M: dict = field(default_factory=dict)
    Mij: dict = field(default_factory=dict)
    sub1: dict = field(default_factory=dict)
    sub2: dict = field(default_factory=dict)
    sub3: dict = field(default_factory=dict)

    def coef(self, h: int) -> int:
        if h < 0 or h >= len(self.a):
            return 0
        return self.a[h]

    def upper(self, j: int) -> int:
        # degrees whose M_j was not computed count as a_j (conservative)
        return self.M.get(j, self.coef(j))

    def S(self, a: int, j: int) -> int:
        if a == 0:
            return 1
        # M_{a,a} is the count of degree-a generators, bounded by M_a
        total = self.upper(a) if a > j else 0
        for k in range(j + 1, a):
            total += self.Mij[(a, k)]
        return total


@dataclass
class TamisageResult:
    m: dict
    M: dict
    r_lower: int
    trunc: int
    state: TamisageState

    def rows(self, upto: int | None = None):
        hi = self.trunc if upto is None else upto
        degs = list(range(2, hi + 1))
        return degs, [self.m.get(i, 0) for i in degs], [self.M.get(i) for i in degs]


def refined_bounds(P, literal: bool = False) -> TamisageResult:
    """Lower bounds m_i and upper bounds M_i on the generator count in degree i.

    The d_2/d_3 corrections need two distinct basic invariants (of degree j,
    resp. of degrees j and k).  By default that is guarded by the lower
    bounds m_j; ``literal=True`` guards by a_j instead, which can produce
    negative M_i (those are then clamped at 0).
    """
    a = _coeffs(P)
    st = TamisageState(a)
    D = len(a) - 1
    for i in range(1, D + 1):
        for j in range(1, i):
            Mj = st.upper(j)
            cap = st.coef(i - j) * st.coef(j)
            s = 0
            t = 1
            while t * j <= i:
                s += math.comb(Mj + t - 1, t) * st.S(i - t * j, j)
                t += 1
            st.Mij[(i, j)] = min(cap, s)
        st.m[i] = a[i] - sum(st.Mij[(i, j)] for j in range(1, i))
        c = st.coef
        if literal:
            basic = lambda j: c(j)
        else:
            basic = lambda j: max(st.m.get(j, 0), 0)
        d1 = max((c(i - j) for j in range(1, i) if c(j) != 0), default=0)
        d2 = max((2 * c(i - j) - c(i - 2 * j) for j in range(1, i) if basic(j) >= 2), default=0)
        d3 = max((c(i - j) + c(i - k) - c(i - j - k)
                  for j in range(1, i) for k in range(j + 1, i) if basic(j) * basic(k) != 0), default=0)
        st.sub1[i], st.sub2[i], st.sub3[i] = d1, d2, d3
        st.M[i] = max(0, a[i] - max(0, d1, d2, d3))
    m = {i: v for i, v in st.m.items()}
    r_lower = sum(max(v, 0) for v in m.values())
    return TamisageResult(m, dict(st.M), r_lower, D, st)


def hd_lower(spec: ModuleSpec, r_lower: int) -> int:
    mm = spec.param_count
    if mm <= 0:
        raise ValueError("parameter count must be positive")
    return r_lower - mm


def format_rows(res: TamisageResult, upto: int | None = None, gi=None) -> str:
    """Text table: degree row then m_i, optional g_i, and M_i rows."""
    degs, mrow, Mrow = res.rows(upto)
    width = max(3, *(len(str(v)) for v in mrow + [x for x in Mrow if x is not None] + degs))
    fmt = lambda vals: " ".join(f"{'' if v is None else v:>{width}}" for v in vals)
    lines = ["i   " + fmt(degs), "m_i " + fmt(mrow)]
    if gi is not None:
        lines.append("g_i " + fmt([gi.get(i) for i in degs]))
    lines.append("M_i " + fmt(Mrow))
    return "\n".join(lines)
