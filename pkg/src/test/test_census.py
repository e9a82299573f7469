import numpy as np
import pytest

from census import enumerate_form_orbits, enumerate_pair_classes, form_states, pair_states, verify_bijection
from common.errors import BoundExceededError, UnsupportedRingError
from common.forms import Flavor


def test_state_spaces():
    """Test if Z/3 has 27 forms and 81 traceable pairs among 3^6 codes."""
    assert len(form_states(3)) == 27, "Incorrect number of forms"
    states, lookup = pair_states(3)
    assert len(states) == 81, "Incorrect number of traceable pairs"
    assert len(lookup) == 3**6, "Lookup should cover every code"
    assert np.count_nonzero(lookup >= 0) == 81, "Lookup should index exactly the traceable pairs"


def test_plain_forms_over_z2():
    """Test the plain census over Z/2 and the orbit of the zero form."""
    census = enumerate_form_orbits(2, Flavor.PLAIN)
    assert census.total == 8, "Z/2 has 8 forms"
    assert sum(o.size for o in census.orbits) == 8, "Orbit sizes should add up to the state count"
    zero = census.orbits[census.orbit_of((0, 0, 0))]
    assert zero.representative == (0, 0, 0), "Incorrect representative"
    assert zero.size == 1, "The zero form is its own orbit"
    assert not zero.primitive, "The zero form is not primitive"


@pytest.mark.parametrize("flavor", list(Flavor))
def test_orbit_sizes_add_up(flavor):
    """Test if orbits partition the n^3 forms and the n^4 traceable pairs."""
    for n in (2, 3, 4):
        forms = enumerate_form_orbits(n, flavor)
        pairs = enumerate_pair_classes(n, flavor)
        assert sum(o.size for o in forms.orbits) == n**3, f"Form orbits over Z/{n} do not partition"
        assert sum(o.size for o in pairs.orbits) == n**4, f"Pair classes over Z/{n} do not partition"
        assert pairs.total == n**4


def test_zero_pair_class():
    pairs = enumerate_pair_classes(3, Flavor.LINEAR)
    zero = pairs.orbits[pairs.orbit_of((0, 0, 0, 0, 0, 0))]
    assert zero.representative == (0, 0, 0, 0, 0, 0)
    assert zero.size == 3
    assert pairs.orbit_of((0, 0, 1, 0, 0, 1)) is None


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("flavor", list(Flavor))
def test_bijection(n, flavor):
    """Test if form orbits and pair classes match one to one."""
    report = verify_bijection(n, flavor)
    assert report.passed, report.discrepancies
    assert report.form_states == n**3
    assert report.pair_states == n**4
    assert report.form_orbits == report.pair_classes == len(report.matches)


def test_twisted_orbits_refine_linear_orbits():
    twisted = enumerate_form_orbits(5, Flavor.TWISTED)
    linear = enumerate_form_orbits(5, Flavor.LINEAR)
    assert len(twisted.orbits) >= len(linear.orbits)


def test_threads_do_not_change_the_census():
    """Test if the census is the same with one or four worker threads."""
    one = enumerate_pair_classes(4, Flavor.TWISTED, jobs=1)
    many = enumerate_pair_classes(4, Flavor.TWISTED, jobs=4)
    assert one.orbits == many.orbits, "Orbits depend on the number of threads"
    assert np.array_equal(one.keys, many.keys), "Orbit keys depend on the number of threads"


def test_census_limits():
    with pytest.raises(BoundExceededError):
        enumerate_form_orbits(7)
    assert enumerate_form_orbits(7, bound=7).total == 343
    with pytest.raises(UnsupportedRingError):
        enumerate_pair_classes("Z")
