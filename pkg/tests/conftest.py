import os

import pytest
from hypothesis import HealthCheck, settings

# deterministic property runs: reruns of the suite explore the same cases
settings.register_profile(
    "deterministic",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")


@pytest.fixture(scope="session", autouse=True)
def isolated_cache(tmp_path_factory):
    """Keep the prime-count cache out of the user's home directory."""
    path = tmp_path_factory.mktemp("digitlaw-cache")
    old = os.environ.get("DIGITLAW_CACHE")
    os.environ["DIGITLAW_CACHE"] = str(path)
    yield path
    if old is None:
        os.environ.pop("DIGITLAW_CACHE", None)
    else:
        os.environ["DIGITLAW_CACHE"] = old


@pytest.fixture(scope="session")
def zeros_table():
    from digitlaw.zeros import bundled_zeros_path, load_zeros

    return load_zeros(bundled_zeros_path())


@pytest.fixture(scope="session")
def primes_profile_1e6():
    from digitlaw.primes import sieve_decade_profile

    return sieve_decade_profile(10**6, ks=(1, 2, 3))


@pytest.fixture(scope="session")
def primes_profile_1e8():
    from digitlaw.primes import sieve_decade_profile

    return sieve_decade_profile(10**8, ks=(1,))
