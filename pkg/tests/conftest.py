import pytest

from spindiscord.spinchain import ground_state


@pytest.fixture(scope="session")
def solve():
    """Memoized ground-state solver shared across the test session."""
    cache = {}

    def _solve(n_sites, delta, **kwargs):
        key = (n_sites, delta, tuple(sorted(kwargs.items())))
        if key not in cache:
            cache[key] = ground_state(n_sites, delta, **kwargs)
        return cache[key]

    return _solve
