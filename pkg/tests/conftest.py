import numpy as np
import pytest


def full_space_j_operators(n_total):
    """J1, J2, J3 built from a and b on the truncated two-mode space, restricted to the N sector.

    Independent of nsqueeze.schwinger: uses only single-mode ladder matrices
    and Kronecker products.
    """
    d = n_total + 1
    lower = np.diag(np.sqrt(np.arange(1, d)), 1)
    eye = np.eye(d)
    a = np.kron(lower, eye)
    b = np.kron(eye, lower)
    ad, bd = a.conj().T, b.conj().T
    j1 = 0.5 * (ad @ a - bd @ b)
    j2 = 0.5 * (ad @ b + a @ bd)
    j3 = -0.5j * (ad @ b - a @ bd)
    # sector basis |N-k; k> -> flat index (N-k)*d + k
    idx = [(n_total - k) * d + k for k in range(d)]
    sel = np.ix_(idx, idx)
    return j1[sel], j2[sel], j3[sel]


@pytest.fixture
def full_ops():
    return full_space_j_operators


def random_state(rng, n_total):
    v = rng.normal(size=n_total + 1) + 1j * rng.normal(size=n_total + 1)
    return v / np.linalg.norm(v)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
