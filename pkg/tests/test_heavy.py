"""Span checks up to the full degree bounds (a few minutes; opt in with SL2INV_HEAVY=1)."""
import os

import pytest

from sl2inv import genfind as G
from sl2inv.catalog import GENERATOR_TABLES, reference_values

pytestmark = [pytest.mark.slow,
              pytest.mark.skipif(not os.environ.get("SL2INV_HEAVY"), reason="set SL2INV_HEAVY=1")]


@pytest.mark.parametrize("key", GENERATOR_TABLES)
def test_catalog_generates_to_full_bound(key):
    spec, recs, _ = G.records_for(key)
    rep = G.verify_generators(spec, recs, reference_values()["generator_bounds"][key])
    assert rep.ok
