"""Systems of parameters: spot checks and two refutations.

Run: python demos/03_systems_of_parameters.py
"""
from sl2inv import genfind
from sl2inv.catalog import hsop_catalog, reference_values
from sl2inv.forms import ModuleSpec
from sl2inv.poincare import hsop_numerator, series

# %% catalogued systems: Jacobian rank and nullcone samples
for key in ("2,3", "3,3", "1,2,4", "3,4"):
    rep = genfind.verify_hsop_candidate(genfind.catalog_hsop(key))
    print(f"{key:6s} degrees {rep.degrees} rank {rep.jacobian_rank}/{rep.m} -> {rep.status}")

# %% numerator of P(t) times prod(1 - t^d) must have nonnegative coefficients
spec = ModuleSpec.parse("3,4")
degs = [2, 3, 4, 5, 6, 7]
print("numerator:", hsop_numerator(series(spec, sum(degs)), degs))

# %% a point outside the nullcone killing every invariant of degree <= 5
ref = reference_values()["refutations"]["1,2,4"]
r = genfind.refute_by_point("1,2,4", ref["degrees"], ref["point"])
print(r.reason)
print("  a higher-degree invariant not vanishing there:", r.details["witness"])

# %% a vanishing locus of too small codimension
spec = ModuleSpec.parse("1,2,3")
r = genfind.refute_by_locus(spec, [2, 3, 3, 4, 4, 5], spec.names.index("q"))
print(r.reason)

# %% structured points on the cubic plus quartic
print(genfind.structured_v3v4_values()[3])
print(genfind.structured_v3v4_constants())
