"""Checking a list of basic invariants degree by degree.

Each generator is evaluated at seeded random rational points; products of
generators give an evaluation matrix whose modular rank is compared with
the dimension a_d from the Poincare series.

Run: python demos/02_generator_tables.py
"""
from sl2inv import genfind
from sl2inv.catalog import generator_table
from sl2inv.poincare import dim_invariants

# %% the cubic plus quartic: twenty generators up to degree 11
table = generator_table("3,4")
print(table.spec, "r =", table.r, "census", table.census())
for entry in table.entries[:5]:
    print(f"  {entry.degree:2d} {entry.multidegree} {entry.text}")

# %% degree by degree, up to the bound implied by the hsop degrees
records = genfind.table_records(table)
report = genfind.verify_generators(table.spec, records, 12, seed=0,
                                   progress=lambda row: print("  ", row.degree, row.a, row.products,
                                                              row.new_needed, "ok" if row.ok else "MISMATCH"))
print("all degrees consistent:", report.ok)

# %% removing any generator loses something in its own multidegree
eng = genfind.SpanEngine(table.spec, records[1:], seed=0)
mu = records[0].multidegree
print(records[0].text, "needed: span without it", eng.span_dimension(mu).rank, "<", dim_invariants(table.spec, mu))

# %% constructive families: m linear forms and n quadratics
for m, n in [(1, 3), (2, 2), (4, 1)]:
    recs = genfind.construct_one_two(m, n)
    spec = genfind.one_two_spec(m, n)
    print(spec, len(recs), "generators; spans ok to degree 6:",
          genfind.verify_generators(spec, recs, 6).ok)
