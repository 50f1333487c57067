"""Shared fixtures: the corpus fields and their standard unit subgroups.

Session scope keeps the certified root caches warm across test modules.
"""

import pytest

from otclassify import make_subgroup, parse_field, unit_search


@pytest.fixture(scope="session")
def quartic():
    """x^4 - 2x^2 - 1, signature (2,1)."""
    return parse_field([-1, 0, -2, 0, 1])


@pytest.fixture(scope="session")
def quartic_units(quartic):
    return make_subgroup(unit_search(quartic, 3, 2))


@pytest.fixture(scope="session")
def cubic_plastic():
    """x^3 - x - 1, signature (1,1)."""
    return parse_field([-1, -1, 0, 1])


@pytest.fixture(scope="session")
def cubic_plastic_units(cubic_plastic):
    return make_subgroup([cubic_plastic.alpha()])


@pytest.fixture(scope="session")
def cubic_cbrt2():
    """x^3 - 2, signature (1,1)."""
    return parse_field([-2, 0, 0, 1])


@pytest.fixture(scope="session")
def cubic_cbrt2_units(cubic_cbrt2):
    return make_subgroup([cubic_cbrt2.alpha() - cubic_cbrt2.one()])


@pytest.fixture(scope="session")
def cubic_third():
    """x^3 + x - 1, signature (1,1)."""
    return parse_field([-1, 1, 0, 1])


@pytest.fixture(scope="session")
def cubic_third_units(cubic_third):
    return make_subgroup([cubic_third.alpha()])


@pytest.fixture(scope="session")
def quintic():
    """x^5 - 2, signature (1,2)."""
    return parse_field([-2, 0, 0, 0, 0, 1])


@pytest.fixture(scope="session")
def quintic_units(quintic):
    return make_subgroup([quintic.alpha() - quintic.one()])


@pytest.fixture(scope="session")
def ot_corpus(quartic, quartic_units, cubic_plastic, cubic_plastic_units,
              cubic_cbrt2, cubic_cbrt2_units, cubic_third, cubic_third_units,
              quintic, quintic_units):
    """(field, unit subgroup) pairs for every corpus field."""
    return [
        (quartic, quartic_units),
        (cubic_plastic, cubic_plastic_units),
        (cubic_cbrt2, cubic_cbrt2_units),
        (cubic_third, cubic_third_units),
        (quintic, quintic_units),
    ]
