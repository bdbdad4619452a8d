import time

import pytest

import psirh

TABLE1_INDICES = (10, 10**3, 10**5, 10**7)
DECADES = tuple(10**k for k in range(1, 8))


@pytest.fixture(scope="session")
def full_scan_result():
    """One pass over the first 10^7 + 1 primes, shared by every heavy test."""
    indices = set(DECADES) | {n + 1 for n in TABLE1_INDICES} | {3, 10**4 + 1}
    t0 = time.perf_counter()
    res = psirh.full_scan(10**7 + 1, sorted(indices), check_bounds=True)
    res.elapsed = time.perf_counter() - t0
    return res


@pytest.fixture(scope="session")
def stats_by_index(full_scan_result):
    return {s.index: s for s in full_scan_result.stats}
