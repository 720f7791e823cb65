import os
import sys
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from poisson_pages import catalog  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# every catalog entry at the parameter caps used by the suite
ENTRY_NAMES = ["kodaira", "iwasawa", "torus2", "h_r1", "h_r2", "h_h11", "w1", "p1"]
TWO_STEP_NAMES = ["kodaira", "h_r1", "h_r2", "h_h11", "w1", "p1"]


@lru_cache(maxsize=None)
def entry(name):
    return {
        "kodaira": catalog.kodaira,
        "iwasawa": catalog.iwasawa,
        "torus1": lambda: catalog.torus(1),
        "torus2": lambda: catalog.torus(2),
        "torus3": lambda: catalog.torus(3),
        "h_r1": lambda: catalog.h_times_r(1),
        "h_r2": lambda: catalog.h_times_r(2),
        "h_h11": lambda: catalog.h_times_h(1, 1),
        "w1": lambda: catalog.w_family(1),
        "p1": lambda: catalog.p_family(1),
    }[name]()


@lru_cache(maxsize=None)
def algebra(name):
    return entry(name).complexified()


@lru_cache(maxsize=None)
def sampled(name, count=4, seed=7):
    return tuple(catalog.sample_poisson(algebra(name), count, seed))


@pytest.fixture(params=ENTRY_NAMES)
def alg(request):
    return algebra(request.param)
