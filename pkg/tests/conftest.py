from __future__ import annotations

import pytest

from traincarbon import load_catalog, load_geo_map


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def geo_map():
    return load_geo_map()
