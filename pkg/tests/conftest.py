from __future__ import annotations

import pytest

from walkup import constructions
from walkup.core import from_facets


@pytest.fixture(scope="session")
def catalog():
    return {entry.name: entry.complex for entry in constructions.sphere_catalog()}


@pytest.fixture(scope="session")
def k39():
    return constructions.walkup_complex(3)


@pytest.fixture(scope="session")
def c37():
    return constructions.cyclic_sphere_c37()


@pytest.fixture(scope="session")
def m10():
    return constructions.connected_sum_c37()


@pytest.fixture(scope="session")
def torus7():
    """The 7-vertex torus: facets (i, i+1, i+3) and (i, i+2, i+3) mod 7."""
    rot = lambda i, k: str((i + k - 1) % 7 + 1)  # noqa: E731
    return from_facets(
        [{str(i), rot(i, 1), rot(i, 3)} for i in range(1, 8)]
        + [{str(i), rot(i, 2), rot(i, 3)} for i in range(1, 8)]
    )
