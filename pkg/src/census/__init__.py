from census.orbits import (
    DEFAULT_CENSUS_BOUND,
    Orbit,
    OrbitCensus,
    enumerate_form_orbits,
    enumerate_pair_classes,
    form_states,
    pair_states,
)
from census.verifier import BijectionReport, match_censuses, verify_bijection

__all__ = [
    "DEFAULT_CENSUS_BOUND",
    "BijectionReport",
    "Orbit",
    "OrbitCensus",
    "enumerate_form_orbits",
    "enumerate_pair_classes",
    "form_states",
    "match_censuses",
    "pair_states",
    "verify_bijection",
]
