"""Poincare series and sieve bounds for a single binary form.

Run: python demos/01_series_and_sieve.py
"""
import numpy as np

from sl2inv.forms import ModuleSpec
from sl2inv.poincare import series
from sl2inv.tamisage import classic_tamisage, format_rows, hd_lower, refined_bounds

# %% the degree-12 form: dimensions of the graded pieces
V12 = ModuleSpec.parse("12")
P = series(V12, 17)
print("P(t) =", P)

# %% sieving: lower (m_i) and upper (M_i) bounds per degree
res = refined_bounds(P)
print(format_rows(res, 13))
print("r >=", res.r_lower, " hd >=", hd_lower(V12, res.r_lower))

# Sylvester's original sieve gives the same first rows but is not a proven bound.
print("sieve:", classic_tamisage(series(V12, 12)))

# %% growth of the bound with the truncation degree, for several n
ns = [11, 13, 14, 16]
Ds = list(range(8, 17, 2))
table = np.array([[refined_bounds(series(ModuleSpec((n,)), D)).r_lower for D in Ds] for n in ns])
print("rows n =", ns, "columns D =", Ds)
print(table)
