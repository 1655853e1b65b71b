"""Property-based checks on randomly generated algebras, forms and structures."""
import numpy as np
from hypothesis import given, settings, strategies as st

from almost_kahler import catalog
from almost_kahler.compatible import polar_H
from almost_kahler.curvature import (
    chern_ricci,
    hermitian_scalar,
    nijenhuis_norm_direct,
    nijenhuis_norm_formula,
    riemannian_scalar,
    zeta,
)
from almost_kahler.homogeneous import SymplecticBasis, standard_form, symplectic_basis, xi_element
from almost_kahler.search import random_compatible

from conftest import random_spd, random_sigma, random_symplectic_matrix

SETTINGS = settings(max_examples=25, deadline=None)
seeds = st.integers(0, 2**31 - 1)


def model_from(kind, dim, seed):
    if kind == "two-step":
        entry = catalog.two_step_family(dim=dim, center_dim=2 if dim == 6 else 1, seed=seed)
    else:
        entry = catalog.random_solvable(dim=dim, seed=seed)
    return entry.model()


models = st.builds(model_from, st.sampled_from(["two-step", "solvable"]),
                   st.sampled_from([4, 6]), seeds)


@SETTINGS
@given(n=st.integers(1, 6), seed=seeds)
def test_polar_is_compatible(n, seed):
    rng = np.random.default_rng(seed)
    sigma = random_sigma(rng, 2 * n)
    H = polar_H(sigma, random_spd(rng, 2 * n))
    res = H.residuals()
    scale = np.linalg.norm(sigma) * np.linalg.norm(H.H)
    assert res["square"] <= 1e-9 * max(1.0, np.linalg.norm(H.H) ** 2)
    assert res["symplectic"] <= 1e-9 * scale * np.linalg.norm(H.H)
    assert np.linalg.eigvalsh(H.metric)[0] > 0


@SETTINGS
@given(n=st.integers(1, 5), seed=seeds)
def test_polar_fixes_compatible_metrics(n, seed):
    rng = np.random.default_rng(seed)
    sigma = random_sigma(rng, 2 * n)
    H = polar_H(sigma, random_spd(rng, 2 * n))
    again = polar_H(sigma, H.metric)
    np.testing.assert_allclose(again.H, H.H, atol=1e-8 * np.linalg.norm(H.H))


@SETTINGS
@given(model=models, seed=seeds)
def test_nijenhuis_formula_matches_direct(model, seed):
    H = random_compatible(model.sigma_m, seed)
    direct = nijenhuis_norm_direct(model, H)
    formula = nijenhuis_norm_formula(model, H)
    assert abs(direct - formula) <= 1e-8 * max(1.0, abs(direct))


@SETTINGS
@given(model=models, seed=seeds)
def test_scalar_identities(model, seed):
    H = random_compatible(model.sigma_m, seed)
    xi = xi_element(model)
    s = hermitian_scalar(model, H, xi)
    scale = max(1.0, abs(s))
    assert abs(s - zeta(model, H) @ xi.xi) <= 1e-8 * scale
    total = riemannian_scalar(model, H, xi) + 2 * nijenhuis_norm_direct(model, H)
    assert abs(s - total) <= 1e-8 * scale


@SETTINGS
@given(model=models)
def test_trace_form_is_dual_to_xi(model):
    xi = xi_element(model)
    traces = np.einsum("ijj->i", model.algebra.tensor)
    lhs = model.from_m(np.eye(model.dim_m)).T @ traces
    rhs = model.sigma_m @ model.to_m(xi.xi_m)
    np.testing.assert_allclose(lhs, rhs, atol=1e-9 * max(1.0, np.abs(lhs).max()))


@SETTINGS
@given(model=models, seed=seeds)
def test_xi_independent_of_symplectic_basis(model, seed):
    rng = np.random.default_rng(seed)
    base = symplectic_basis(model.sigma_m)
    n = base.n
    other = SymplecticBasis(base.vectors @ random_symplectic_matrix(rng, n))
    assert np.abs(other.vectors.T @ model.sigma_m @ other.vectors - standard_form(n)).max() < 1e-9
    a, b = xi_element(model, base).xi, xi_element(model, other).xi
    np.testing.assert_allclose(a, b, atol=1e-9 * max(1.0, np.abs(a).max()))


@SETTINGS
@given(dim=st.sampled_from([4, 6]), model_seed=seeds, seed=seeds)
def test_two_step_is_chern_ricci_flat(dim, model_seed, seed):
    model = catalog.two_step_family(dim=dim, center_dim=2 if dim == 6 else 1,
                                    seed=model_seed).model()
    rho = chern_ricci(model, random_compatible(model.sigma_m, seed))
    assert np.abs(rho).max() <= 1e-9
