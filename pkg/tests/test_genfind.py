import math
import random
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from sl2inv import genfind as G
from sl2inv.catalog import GENERATOR_TABLES, generator_table, hsop_catalog, reference_values, theorem2_row
from sl2inv.exactalg import var
from sl2inv.expr import parse_expr, symbolic_invariant
from sl2inv.forms import BinaryForm, ModuleSpec, random_form, random_point
from sl2inv.poincare import dim_invariants, r_one_two

REF = reference_values()


@pytest.fixture(scope="module")
def tables():
    return {k: G.records_for(k) for k in GENERATOR_TABLES}


# span and counting

def test_span_of_single_generator_powers():
    spec = ModuleSpec.parse("1,1")
    gens = G.construct_one_two(2, 0)
    assert G.span_dimension(gens, spec, 4) == 1 == dim_invariants(spec, (2, 2))
    assert G.span_dimension(gens, spec, (2, 2)) == 1


def test_count_new_generators_examples(tables):
    spec, recs, _ = tables["4,4,4"]
    assert G.count_new_generators(recs, spec, 2) == 6
    spec, recs, _ = tables["3,4"]
    assert G.count_new_generators(recs, spec, 11) == 1
    for spec, recs, _ in tables.values():
        assert G.count_new_generators(recs, spec, 1) == 0


def test_monomial_enumeration():
    mds = [(1, 0), (0, 1), (1, 1)]
    monos = G.monomials(mds, (2, 1))
    assert sorted(monos) == sorted([(0, 0, 1), (0, 2)])


def test_symmetric_census_detection(tables):
    spec, recs, _ = tables["4,4,4"]
    assert G._is_symmetric(spec, recs)
    spec = ModuleSpec.parse("2,2")
    lopsided = [G.make_record(parse_expr("(q,q)_2"), spec)]
    assert not G._is_symmetric(spec, lopsided)
    assert G._is_symmetric(spec, G.construct_one_two(0, 2))


def test_orbit_sizes_cover_all_multidegrees():
    spec = ModuleSpec.parse("2,2,2,4")
    for d in range(1, 6):
        full = G.multidegrees(spec, d)
        sym = G.multidegrees(spec, d, symmetric=True)
        assert sum(G._orbit_size(spec, mu) for mu in sym) == len(full)


@pytest.mark.parametrize("key", GENERATOR_TABLES)
def test_catalog_generates_up_to_cap(key, tables):
    spec, recs, _ = tables[key]
    cap = min(12, REF["generator_bounds"][key])
    rep = G.verify_generators(spec, recs, cap, seed=0)
    assert rep.ok, rep.mismatches
    assert all(row.certified for row in rep.rows)
    expected = {int(k): v for k, v in theorem2_row(key)["d"].items() if int(k) <= cap}
    assert rep.census() == expected
    for row in rep.rows:
        assert 0 <= row.products <= row.a
        assert row.new_needed == row.a - row.products


@pytest.mark.parametrize("key", GENERATOR_TABLES)
def test_catalog_records_are_invariant(key, tables):
    spec, recs, _ = tables[key]
    assert G.check_invariance(spec, recs, seed=3) == []
    assert G.check_nonzero(spec, recs, seed=3) == []


@pytest.mark.parametrize("key", GENERATOR_TABLES)
def test_no_record_is_redundant(key, tables):
    spec, recs, _ = tables[key]
    for i, rec in enumerate(recs):
        rest = recs[:i] + recs[i + 1:]
        eng = G.SpanEngine(spec, rest, seed=1)
        assert eng.span_dimension(rec.multidegree).rank < dim_invariants(spec, rec.multidegree), rec.text


def test_small_catalog_records_pass_infinitesimal_check(tables):
    from sl2inv.forms import infinitesimal_invariance
    spec, recs, _ = tables["1,2,3"]
    for rec in recs:
        if rec.degree <= 4:
            assert infinitesimal_invariance(symbolic_invariant(rec.expr, spec), spec), rec.text


def test_inconclusive_when_fresh_points_disagree(tables, monkeypatch):
    spec, recs, _ = tables["1,2,3"]
    eng = G.SpanEngine(spec, recs, seed=0)
    calls = iter([(1, True), (2, True)])
    monkeypatch.setattr(eng, "_rank_on", lambda pool, monos, rows: next(calls))
    with pytest.raises(G.Inconclusive):
        eng.rank([(0,), (1,), (2,)], bound=3)


def test_uncertified_rank_when_fresh_points_agree(tables):
    spec, recs, _ = tables["1,2,3"]
    eng = G.SpanEngine(spec, recs, seed=0)
    i = next(k for k, r in enumerate(recs) if r.degree == 2)
    res = eng.rank([(i, i), (i, i), (i, i)], bound=2)
    assert res.rank == 1 and not res.certified


def test_span_is_deterministic_given_seed(tables):
    spec, recs, _ = tables["2,2,3"]
    a = G.verify_generators(spec, recs, 7, seed=11)
    b = G.verify_generators(spec, recs, 7, seed=11)
    assert a.rows == b.rows


# constructions

@pytest.mark.parametrize("m,n", [(m, n) for m in range(8) for n in range(8) if 2 <= m + n <= 7])
def test_one_two_size_and_census(m, n):
    recs = G.construct_one_two(m, n)
    assert len(recs) == r_one_two(m, n)
    C = math.comb
    census = {2: C(m, 2) + C(n + 1, 2), 3: n * C(m + 1, 2) + C(n, 3), 4: C(m + 1, 2) * C(n, 2)}
    got = {d: sum(1 for r in recs if r.degree == d) for d in (2, 3, 4)}
    assert got == census


@pytest.mark.parametrize("m,n,r", [(0, 3, 7), (2, 0, 1), (1, 1, 2)])
def test_one_two_examples(m, n, r):
    assert len(G.construct_one_two(m, n)) == r


@pytest.mark.parametrize("m,n", [(1, 2), (2, 2), (3, 1), (0, 4), (4, 0)])
def test_one_two_generates(m, n):
    spec = G.one_two_spec(m, n)
    recs = G.construct_one_two(m, n)
    assert G.check_invariance(spec, recs) == []
    assert G.verify_generators(spec, recs, 6).ok


@pytest.mark.parametrize("w,m,r", [("2", 1, 2), ("3", 1, 4), ("2", 2, 5), ("4", 1, 5), ("4", 2, 20),
                                   ("4", 3, 63), ("3", 2, 13), ("3", 3, 30), ("2,2", 1, 6),
                                   ("2,2", 2, 13), ("2,2", 3, 24)])
def test_linear_extension_sizes(w, m, r):
    spec, recs = G.linear_extension(w, m)
    assert len(recs) == r
    key = ",".join(map(str, sorted(spec.degrees)))
    if key in REF["linear_extension_r"]:
        assert REF["linear_extension_r"][key] == r
    elif key in REF["classical_r"]:
        assert REF["classical_r"][key] == r


@pytest.mark.parametrize("w,m,cap", [("2", 1, 6), ("3", 1, 8), ("4", 1, 8), ("2", 2, 6), ("3", 2, 10),
                                     ("2,2", 2, 6)])
def test_linear_extensions_generate(w, m, cap):
    spec, recs = G.linear_extension(w, m)
    assert G.check_invariance(spec, recs) == []
    assert G.verify_generators(spec, recs, cap).ok


def test_linear_extension_first_example():
    spec, recs = G.linear_extension("2", 1)
    assert sorted(r.text for r in recs) == sorted(["(q,q)_2", "(q,l^2)_2"])


# hsops

@pytest.mark.parametrize("key", sorted(hsop_catalog()))
def test_catalog_hsops_spot_check(key):
    rep = G.verify_hsop_candidate(G.catalog_hsop(key), seed=0)
    assert rep.ok, (rep.jacobian_rank, rep.m, rep.census_ok, rep.nullcone_failures)


def test_hsop_example_ranks():
    assert G.verify_hsop_candidate(G.catalog_hsop("2,3")).jacobian_rank == 4
    assert G.verify_hsop_candidate(G.catalog_hsop("3,3")).jacobian_rank == 5


def test_dependent_candidate_fails():
    spec = ModuleSpec.parse("4")
    e = parse_expr("(f,f)_4")
    e2 = parse_expr("(f,f)_4^2")
    rep = G.verify_hsop_candidate(G.HsopCandidate(spec, [e, e2], [2, 4]))
    assert rep.jacobian_rank == 1 and not rep.ok


def test_gradient_matches_symbolic_derivative():
    spec = ModuleSpec.parse("2,3", names=("q", "c"))
    e = parse_expr("res(q,c)")
    pt = random_point(spec, random.Random(5))
    grad = G.gradient(e, pt)
    I = symbolic_invariant(e, spec)
    values = {}
    for s, f in zip(spec.names, pt.forms):
        for i, c in enumerate(f.coeffs):
            values[f"{s}{i}"] = c
    from sl2inv.forms import coeff_name
    from sl2inv.exactalg import var_id
    expected = []
    for s, n in zip(spec.names, spec.degrees):
        for i in range(n + 1):
            name = coeff_name(s, i)
            d = I.partial(var_id(name))
            expected.append(d.evaluate({coeff_name(t, k): v for t, f in zip(spec.names, pt.forms)
                                        for k, v in enumerate(f.coeffs)}))
    assert grad == expected


def test_dual_arithmetic():
    a = G.Dual(Fraction(2), {0: 1})
    b = G.Dual(Fraction(3), {1: 1})
    p = a * b + 2 * a - 1
    assert p.v == 9 and p.g == {0: 5, 1: 2}
    assert (a ** 3).g == {0: 12}
    assert G.Dual(0) == 0 and a != 0


def test_refutation_by_point():
    ref = REF["refutations"]["1,2,4"]
    r = G.refute_by_point("1,2,4", ref["degrees"], ref["point"])
    assert r.refuted
    assert r.details["outside_nullcone"] and r.details["witness"]


def test_refutation_by_locus():
    ref = REF["refutations"]["1,2,3"]
    spec = ModuleSpec.parse("1,2,3")
    r = G.refute_by_locus(spec, ref["degrees"], spec.names.index("q"))
    assert r.refuted
    assert r.details["degrees"] == ref["vanishing_degrees"]
    assert r.details["codim"] == ref["codim"]


def test_true_hsop_degrees_not_refuted():
    spec = ModuleSpec.parse("1,2,3")
    row = theorem2_row("1,2,3")
    assert not G.refute_by_numerator(spec, row["hsop"]).refuted
    assert not any(G.refute_by_locus(spec, row["hsop"], i).refuted for i in range(3))


def test_numerator_refutes_bad_degrees():
    r = G.refute_by_numerator(ModuleSpec.parse("4"), [2, 2])
    assert r.refuted


# structured values

def test_v3v4_structured_values_proportional():
    consts = G.structured_v3v4_constants()
    assert all(c is not None and c != 0 for c in consts.values())


def _vals(a, b, c, d):
    return G.v3v4_hsop_values([a, b, 0, 0], [0, 0, 0, c, d])


def test_v3v4_special_values():
    k = G.structured_v3v4_constants()
    i5p, i5pp, i6, i7 = _vals(1, 0, 1, 1)
    assert i5p == 0 and i5pp == k["i5pp"] and i7 == -32 * k["i7"]
    i5p, i5pp, i6, i7 = _vals(0, 1, 1, 0)
    assert i6 == k["i6"] and i5p == 0
    assert _vals(2, 3, 0, 0) == (0, 0, 0, 0)


@settings(max_examples=25)
@given(st.tuples(*[st.integers(-4, 4)] * 4))
def test_v3v4_values_match_closed_forms(abcd):
    a, b, c, d = abcd
    k = G.structured_v3v4_constants()
    want = (b ** 4 * d, a ** 2 * c ** 3, b ** 4 * c ** 2,
            a * b ** 3 * c ** 3 - 10 * a ** 2 * b ** 2 * c ** 2 * d + 32 * a ** 3 * b * c * d ** 2 - 32 * a ** 4 * d ** 3)
    got = _vals(a, b, c, d)
    assert got == tuple(k[n] * w for n, w in zip(("i5p", "i5pp", "i6", "i7"), want))


def test_three_quadratics():
    rng = random.Random(2)
    ratios = set()
    for _ in range(10):
        q = [random_form(rng, 2) for _ in range(3)]
        ratios.add(G.triple_transvectant(*q) / G.det_three_quadratics(*q))
    assert len(ratios) == 1
    basis = ([1, 0, 0], [0, 2, 0], [0, 0, 1])
    assert G.det_three_quadratics(*basis) == 1
    assert G.triple_transvectant(*basis) == ratios.pop()
    assert G.det_three_quadratics([1, 2, 3], [1, 2, 3], [0, 1, 5]) == 0


# consistency

def test_monotony_over_computed_values():
    checked, bad = G.monotony_violations(G.computed_r_values())
    assert checked > 100 and bad == []


@pytest.mark.parametrize("row", REF["theorem2"], ids=lambda r: r["spec"])
def test_theorem2_rows(row):
    spec, recs, _ = G.records_for(row["spec"])
    assert len(recs) == row["r"]
    assert spec.param_count == row["m"]
    assert G.hd_of(row["spec"], len(recs)) == row["hd"]
    census = {}
    for r in recs:
        census[r.degree] = census.get(r.degree, 0) + 1
    assert census == {int(k): v for k, v in row["d"].items()}


def test_printed_degree_five_impossible_for_two_lines_and_cubic():
    spec = ModuleSpec.parse("1,1,3")
    assert sum(dim_invariants(spec, mu) for mu in G.multidegrees(spec, 5)) == 0


def test_records_for_unknown_module():
    with pytest.raises(KeyError):
        G.records_for("5,7")


def test_make_record_rejects_covariant():
    with pytest.raises(ValueError):
        G.make_record(parse_expr("(q,r)_1"), ModuleSpec.parse("2,2"))
