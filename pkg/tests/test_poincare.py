import json
import math

import pytest
from hypothesis import given, strategies as st

from sl2inv.catalog import reference_values
from sl2inv.forms import ModuleSpec
from sl2inv.poincare import (InsufficientTruncation, TruncSeries, compositions, dim_invariants,
                             dim_invariants_enum, gaussian_binomial, generator_degree_bound,
                             hd_one_two, hsop_numerator, kac_bound, multigraded_series,
                             partition_count, popov_case1_bound, popov_case2_bound, popov_b, popov_c,
                             r_one_two, series, totient)

REF = reference_values()


def test_gaussian_binomial_small():
    assert gaussian_binomial(2, 2) == (1, 1, 2, 1, 1)  # [4 choose 2]_t
    assert sum(gaussian_binomial(3, 4)) == math.comb(7, 3)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), st.data())
def test_dimension_formula_matches_enumeration(degs, data):
    spec = ModuleSpec(tuple(degs))
    md = tuple(data.draw(st.integers(0, 4)) for _ in degs)
    assert dim_invariants(spec, md) == dim_invariants_enum(spec, md)


def test_dimension_basics():
    assert dim_invariants(ModuleSpec.parse("4"), (2,)) == 1
    assert dim_invariants(ModuleSpec.parse("4"), (3,)) == 1
    assert dim_invariants(ModuleSpec.parse("3"), (3,)) == 0
    assert dim_invariants(ModuleSpec.parse("1,1"), (1, 1)) == 1
    with pytest.raises(ValueError):
        dim_invariants(ModuleSpec.parse("1,1"), (1,))


def test_v12_series():
    assert series(ModuleSpec.parse("12"), 12, cache_dir=False).prefix() == REF["v12_series"]


@pytest.mark.parametrize("row", REF["series_table"], ids=lambda r: r["spec"])
def test_series_table_prefixes(row):
    P = series(ModuleSpec.parse(row["spec"]), len(row["prefix"]) - 1, cache_dir=False)
    assert P.prefix() == row["prefix"]


@pytest.mark.parametrize("row", REF["bounds_single"], ids=lambda r: r["spec"])
def test_displayed_coefficients_of_bound_rows(row):
    top = max(int(k) for k in row["prefix"])
    P = series(ModuleSpec.parse(row["spec"]), top, cache_dir=False)
    assert {k: P[int(k)] for k in row["prefix"]} == row["prefix"]


@given(st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_graded_series_is_sum_of_multigraded(degs):
    spec = ModuleSpec(tuple(degs))
    D = 6
    P = series(spec, D, cache_dir=False)
    multi = multigraded_series(spec, D)
    for d in range(D + 1):
        assert P[d] == sum(v for md, v in multi.items() if sum(md) == d)


def test_series_independent_of_summand_order():
    a = series(ModuleSpec.parse("4,1,2"), 10, cache_dir=False)
    b = series(ModuleSpec.parse("1,2,4"), 10, cache_dir=False)
    assert a.prefix() == b.prefix()


def test_series_of_linear_form_is_trivial():
    assert series(ModuleSpec.parse("1"), 6, cache_dir=False).prefix() == [1, 0, 0, 0, 0, 0, 0]


def test_series_cache_round_trip(tmp_path):
    spec = ModuleSpec.parse("3,4")
    P = series(spec, 9, cache_dir=tmp_path)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    assert series(spec, 9, cache_dir=tmp_path).prefix() == P.prefix()
    files[0].write_text("{not json")
    assert series(spec, 9, cache_dir=tmp_path).prefix() == P.prefix()


def test_series_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("SL2INV_CACHE_DIR", str(tmp_path))
    series(ModuleSpec.parse("2,5"), 7)
    assert any(tmp_path.iterdir())


def test_series_rejects_negative_truncation():
    with pytest.raises(ValueError):
        series(ModuleSpec.parse("3"), -1)


def test_trunc_series_ops():
    s = TruncSeries([1], 5).div_one_minus(2)
    assert s.prefix() == [1, 0, 1, 0, 1, 0]
    assert s.mul_poly([1, 0, -1]).prefix() == [1, 0, 0, 0, 0, 0]
    assert s.truncate(2).prefix() == [1, 0, 1]
    assert s[9] == 0


def test_compositions_count():
    assert len(list(compositions(5, 3))) == math.comb(7, 2)


@pytest.mark.parametrize("row", REF["theorem2"], ids=lambda r: r["spec"])
def test_hsop_numerators_nonnegative(row):
    spec = ModuleSpec.parse(row["spec"])
    P = series(spec, sum(row["hsop"]) + 2, cache_dir=False)
    num = hsop_numerator(P, row["hsop"])
    assert num.complete and num.nonnegative
    assert generator_degree_bound(P, row["hsop"]) >= max(row["hsop"])


def test_numerator_of_quartic():
    P = series(ModuleSpec.parse("4"), 10, cache_dir=False)
    num = hsop_numerator(P, [2, 3])
    assert num.coeffs[:5] == [1, 0, 0, 0, 0] and num.nonnegative


def test_generator_bound_requires_enough_terms():
    P = series(ModuleSpec.parse("3,4"), 10, cache_dir=False)
    with pytest.raises(InsufficientTruncation):
        generator_degree_bound(P, [2, 3, 4, 5, 6, 7])


def test_generator_bounds_of_tables():
    for key, bound in REF["generator_bounds"].items():
        hsop = next(r["hsop"] for r in REF["theorem2"] if r["spec"] == key)
        P = series(ModuleSpec.parse(key), sum(hsop), cache_dir=False)
        assert generator_degree_bound(P, hsop) == bound


# closed forms

def test_hd_one_two_table():
    for n, row in REF["hd_one_two"].items():
        for m, hd in enumerate(row):
            if m + int(n) > 1:
                assert hd_one_two(m, int(n)) == hd, (m, n)


@pytest.mark.parametrize("p", range(2, 10))
def test_linear_forms_only(p):
    assert r_one_two(p, 0) == math.comb(p, 2)


def test_gordan_counts_against_classical_table():
    ref = REF["classical_r"]
    for key in ("2", "2,2", "2,2,2", "1,2", "1,2,2", "1,2,2,2", "1,1", "1,1,1", "1,1,1,1"):
        spec = ModuleSpec.parse(key)
        assert r_one_two(spec.degrees.count(1), spec.degrees.count(2)) == ref[key]


def test_closed_form_errors():
    with pytest.raises(ValueError):
        hd_one_two(1, 0)
    with pytest.raises(ValueError):
        r_one_two(-1, 2)


def test_partitions_and_totient():
    assert [partition_count(n) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert partition_count(100) == 190569292
    assert [totient(n) for n in (1, 9, 12, 13)] == [1, 6, 4, 12]


def test_kac_bound():
    k = REF["kac"]
    r = kac_bound(k["n"])
    assert r == k["r"]
    assert r - ModuleSpec((k["n"],)).param_count == k["hd"]
    with pytest.raises(ValueError):
        kac_bound(10)


def test_popov_bounds():
    assert popov_b((8, 9)) == REF["popov"]["b"]
    assert popov_case1_bound(REF["popov"]["b"]) == REF["popov"]["case1"]
    assert popov_c((2, 3, 3)) == 4
    assert popov_case2_bound(4) == 9


def test_single_form_hd_consistent_with_r():
    for n, hd in REF["single_form_hd"].items():
        if n in REF["classical_r"]:
            assert REF["classical_r"][n] - ModuleSpec.parse(n).krull_dim == hd
