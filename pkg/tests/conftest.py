import numpy as np
import pytest

from almost_kahler import catalog
from almost_kahler.homogeneous import standard_form


def random_spd(rng, d):
    X = rng.standard_normal((d, d))
    return X @ X.T + 0.5 * d * np.eye(d)


def random_sigma(rng, d):
    """Random nondegenerate antisymmetric matrix ``P^T J P``."""
    P = rng.standard_normal((d, d)) + 2 * np.eye(d)
    return P.T @ standard_form(d // 2) @ P


def random_symplectic_matrix(rng, n, scale=0.3):
    """``exp`` of a random Hamiltonian matrix: preserves the standard form."""
    from scipy.linalg import expm

    S = rng.standard_normal((2 * n, 2 * n))
    S = scale * (S + S.T) / 2
    return expm(standard_form(n) @ S)


def random_models(count, seed=0):
    """Alternating two-step nilpotent and solvable symplectic algebras of dims 4 and 6."""
    out = []
    i = 0
    while len(out) < count:
        dim = 4 if i % 4 < 2 else 6
        if i % 2 == 0:
            entry = catalog.two_step_family(dim=dim, center_dim=2 if dim == 6 else 1,
                                            seed=seed + i)
        else:
            entry = catalog.random_solvable(dim=dim, seed=seed + i)
        out.append(entry)
        i += 1
    return out


_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_lines():
    """Pass/fail lines of the acceptance criteria, echoed in the terminal summary."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def kt():
    return catalog.kodaira_thurston()


@pytest.fixture(scope="session")
def twistors():
    return {n: catalog.so_twistor(n) for n in (1, 2, 3, 4)}


@pytest.fixture(scope="session")
def period_domains():
    return {(p, q): catalog.so_period_domain(p, q) for p in (1, 2) for q in (1, 2, 3)}
