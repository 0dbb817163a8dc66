import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from postselect.hilbert import Ket, Space

settings.register_profile(
    "default",
    max_examples=100,
    deadline=None,
    database=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

finite = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)
phases = st.floats(0.0, 2 * np.pi, allow_nan=False)


def _seeded_vector(seed, dim):
    r = np.random.default_rng(seed).uniform(-1.0, 1.0, (2, dim))
    return r[0] + 1j * r[1]


def complex_vectors(dim):
    # seeded draws are much cheaper to generate than element-wise float arrays;
    # basis vectors keep the sparse corner cases in play
    seeded = st.integers(0, 2**32 - 1).map(lambda s: _seeded_vector(s, dim))
    basis = st.integers(0, dim - 1).map(lambda k: np.eye(dim, dtype=complex)[k])
    return st.one_of(seeded, basis)


def normalized_vectors(dim):
    return complex_vectors(dim).filter(lambda v: np.linalg.norm(v) > 1e-3).map(
        lambda v: v / np.linalg.norm(v)
    )


def random_ket(rng, space, normalized=True):
    v = rng.normal(size=space.dim) + 1j * rng.normal(size=space.dim)
    if normalized:
        v = v / np.linalg.norm(v)
    return Ket(space, v)


def random_hermitian(rng, dim, psd=False):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = a @ a.conj().T if psd else a + a.conj().T
    return (h + h.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def qubit():
    return Space.of(q=("L", "R"))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
