import numpy as np
import pytest

from braidham.hamiltonians import DiracParams, Momentum

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_unitary(rng, n):
    """Haar-distributed unitary via QR with phase fix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian_involution(rng, n):
    signs = rng.choice([-1.0, 1.0], size=n)
    U = random_unitary(rng, n)
    return U @ np.diag(signs) @ U.conj().T


def random_dirac_params(rng, lo=0.1, hi=10.0):
    m = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
    mag = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
    d = rng.standard_normal(3)
    return DiracParams(m, Momentum.of(mag * d / np.linalg.norm(d)))


def matmul2(A, B):
    """Plain-Python 2x2 product, used as an oracle independent of numpy matmul."""
    return [[sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def params_345():
    return DiracParams(3.0, Momentum(0.0, 0.0, 4.0))
