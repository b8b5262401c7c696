import os
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_rationals = st.builds(lambda n, d: Fraction(n, d),
                            st.integers(-9, 9), st.integers(1, 4))


def coeff_lists(n):
    return st.lists(small_rationals, min_size=n + 1, max_size=n + 1)
