import numpy as np
import pytest

from almost_kahler import liealg
from almost_kahler.errors import InputError
from almost_kahler.liealg import LieAlgebra


def test_storage_convention_and_tensor():
    alg = LieAlgebra(3, ((1, 0, 2, 2.0), (0, 1, 2, 1.0)))
    assert alg.brackets == ((0, 1, 2, -1.0),)
    C = alg.tensor
    assert np.array_equal(C, -C.transpose(1, 0, 2))
    with pytest.raises(ValueError):
        C[0, 0, 0] = 1.0


@pytest.mark.parametrize("entry", [(0, 4, 1, 1.0), (-1, 1, 1, 1.0), (0, 1, 1, float("nan")),
                                   (0, 0, 1, 1.0), (0, 1, 1)])
def test_malformed_entries(entry):
    with pytest.raises(InputError):
        LieAlgebra(4, (entry,))


def test_validate_examples(kt):
    assert liealg.validate(LieAlgebra(4)).ok
    rep = liealg.validate(kt.algebra)
    assert rep.ok and rep.jacobi_residual == 0


def test_validate_tampered_so21(twistors):
    alg = twistors[1].algebra
    # perturb the (zero) e_1-coefficient of [e_1, e_2]
    bad = LieAlgebra(alg.dim, alg.brackets + ((0, 1, 0, 0.1),))
    rep = liealg.validate(bad)
    assert rep.jacobi_residual > 1e-2 and not rep.ok
    assert all(float(c).is_integer() for *_, c in alg.brackets)


def test_bracket_examples(kt, twistors):
    e = lambda i: liealg.basis_vector(kt.algebra, i)
    np.testing.assert_array_equal(liealg.bracket(kt.algebra, e(0), e(1)), e(3))
    X = np.array([0.3, -1.0, 2.0, 0.5])
    assert np.all(liealg.bracket(kt.algebra, X, X) == 0)
    with pytest.raises(InputError):
        liealg.bracket(kt.algebra, X, X[:3])
    entry = twistors[1]
    M = entry.matrices
    X, Y = entry.to_coords(M[1]), entry.to_coords(M[2])
    comm = M[1] @ M[2] - M[2] @ M[1]
    np.testing.assert_allclose(liealg.bracket(entry.algebra, X, Y), entry.to_coords(comm),
                               atol=1e-12)


def test_ad_matrix(kt):
    A = liealg.ad_matrix(kt.algebra, liealg.basis_vector(kt.algebra, 1))
    expected = np.zeros((4, 4))
    expected[3, 0] = -1.0
    np.testing.assert_array_equal(A, expected)
    rng = np.random.default_rng(0)
    X = rng.standard_normal(4)
    for j in range(4):
        np.testing.assert_allclose(A @ liealg.basis_vector(kt.algebra, j),
                                   liealg.bracket(kt.algebra, liealg.basis_vector(kt.algebra, 1),
                                                  liealg.basis_vector(kt.algebra, j)))
    np.testing.assert_allclose(liealg.ad_matrix(kt.algebra, 2 * X),
                               2 * liealg.ad_matrix(kt.algebra, X))


def test_killing_form(kt, twistors):
    assert np.all(liealg.killing_form(kt.algebra) == 0)
    alg = twistors[3].algebra
    B = liealg.killing_form(alg)
    assert np.abs(B - B.T).max() == 0
    C = alg.tensor
    # ad-invariance: B([e_i,e_j],e_k) + B(e_j,[e_i,e_k]) = 0
    T = np.einsum("ijm,mk->ijk", C, B)
    inv = T + T.transpose(0, 2, 1)
    assert np.abs(inv).max() <= 1e-9 * np.abs(B).max()


def test_structure_predicates(kt, twistors):
    a = kt.algebra
    assert not liealg.is_semisimple(a)
    assert liealg.is_unimodular(a)
    assert liealg.is_two_step_nilpotent(a)
    Z = liealg.center(a)
    assert Z.shape == (4, 2)
    assert np.allclose(np.abs(Z[[0, 1]]), 0)
    D = liealg.derived_subalgebra(a)
    assert D.shape == (4, 1) and abs(abs(D[3, 0]) - 1) < 1e-12
    s = twistors[2].algebra
    assert liealg.is_semisimple(s) and liealg.is_unimodular(s)
    assert not liealg.is_two_step_nilpotent(s)
    assert liealg.center(s).shape[1] == 0
    assert not liealg.is_two_step_nilpotent(LieAlgebra(2))
    assert liealg.is_abelian(LieAlgebra(2))
    assert not liealg.is_unimodular(LieAlgebra(2, ((0, 1, 1, 1.0),)))


def test_ce_differential_examples(kt, twistors):
    assert np.all(liealg.ce_differential(LieAlgebra(3), np.ones(3)) == 0)
    d = liealg.ce_differential(kt.algebra, np.array([0, 0, 0, 1.0]))
    expected = np.zeros((4, 4))
    expected[0, 1], expected[1, 0] = -1.0, 1.0
    np.testing.assert_array_equal(d, expected)
    e = twistors[1]
    model = e.model()
    d = liealg.ce_differential(e.algebra, e.theta)
    M = model.m.basis
    np.testing.assert_allclose(M.T @ d @ M, -model.sigma_m, atol=1e-14)


def test_ce_differential_squares_to_zero(twistors):
    rng = np.random.default_rng(0)
    alg = twistors[2].algebra
    theta = rng.standard_normal(alg.dim)
    dd = liealg.ce_differential_2(alg, liealg.ce_differential(alg, theta))
    assert np.abs(dd).max() <= max(liealg.jacobi_residual(alg), 1e-14) * np.linalg.norm(theta) * 10


def test_json_round_trip(twistors):
    alg = twistors[2].algebra
    back = LieAlgebra.from_json(alg.to_json())
    assert back.brackets == alg.brackets and back.labels == alg.labels
    with pytest.raises(InputError):
        LieAlgebra.from_dict({"brackets": []})


def test_catalog_jacobi_residuals(kt, twistors, period_domains):
    for e in [kt, *twistors.values(), *period_domains.values()]:
        assert liealg.jacobi_residual(e.algebra) < 1e-12


def test_from_matrix_basis_rejects_open_span():
    X = np.array([[0.0, 1.0], [0.0, 0.0]])
    Y = X.T
    with pytest.raises(InputError):
        liealg.from_matrix_basis([X, Y])
