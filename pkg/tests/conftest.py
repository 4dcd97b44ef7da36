import functools
import os

from hypothesis import HealthCheck, settings

from hhlie.corpus import FamilySpec, gen
from hhlie.criteria import Analysis

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@functools.lru_cache(maxsize=None)
def analysis(spec: FamilySpec) -> Analysis:
    """One shared Analysis per corpus entry, so the expensive parts run once."""
    return Analysis(gen(spec))


def family(fid, char=0, **params) -> Analysis:
    return analysis(FamilySpec.of(fid, char, **params))
