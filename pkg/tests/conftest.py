import os

import pytest

from gpfree.exclusions import cached_direct_table
from gpfree.progressions import RatioKind
from gpfree.smooth import PrimeSet


@pytest.fixture(scope="session")
def table_cache(tmp_path_factory):
    """Directory shared by all solver-backed tests so each exclusion table is
    computed once per run.  Set GPFREE_TEST_CACHE to persist across runs
    while iterating locally."""
    override = os.environ.get("GPFREE_TEST_CACHE")
    if override:
        os.makedirs(override, exist_ok=True)
        return override
    return str(tmp_path_factory.mktemp("table-cache"))


@pytest.fixture(scope="session")
def table1(table_cache):
    """The 3-smooth rational table to 5832 (the long solve, ~3 minutes)."""
    return cached_direct_table(
        PrimeSet((2, 3)), RatioKind.RATIONAL, 5832, table_cache
    )


@pytest.fixture(scope="session")
def table_5smooth_540(table_cache):
    """The 5-smooth rational table to 540 (~10 minutes)."""
    return cached_direct_table(
        PrimeSet((2, 3, 5)), RatioKind.RATIONAL, 540, table_cache
    )


@pytest.fixture(scope="session")
def table_7smooth_150(table_cache):
    return cached_direct_table(
        PrimeSet((2, 3, 5, 7)), RatioKind.RATIONAL, 150, table_cache
    )


@pytest.fixture(scope="session")
def table_int23(table_cache):
    return cached_direct_table(
        PrimeSet((2, 3)), RatioKind.INTEGER, 9216, table_cache
    )


@pytest.fixture(scope="session")
def table_int235(table_cache):
    return cached_direct_table(
        PrimeSet((2, 3, 5)), RatioKind.INTEGER, 512, table_cache
    )
