"""Reductive models ``g = k + m`` carrying a symplectic cocycle on ``m``.

Vectors of ``g`` are coefficient arrays in the algebra basis. Subspaces are
stored as matrices with orthonormal columns (orthonormal for the coordinate
inner product, which carries no geometric meaning). Operators on ``m`` are
written in the coordinates of that column basis ("m-coordinates").
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from . import liealg
from .errors import (
    DegenerateSymplecticError,
    InputError,
    InvarianceError,
    SingularError,
    StrategyError,
)
from .liealg import LieAlgebra
from .numerics import RANK_TOL, nullspace, orthonormalize, rank, solve

INVARIANCE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of ``R^ambient_dim`` with an orthonormal column basis."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.ndim != 2:
            raise InputError("subspace basis must be a 2-d array")
        if b.shape[1] and np.max(np.abs(b.T @ b - np.eye(b.shape[1]))) > 1e-10:
            raise InputError("subspace basis columns are not orthonormal")
        object.__setattr__(self, "basis", b)

    @classmethod
    def span(cls, vectors, ambient_dim=None, tol=RANK_TOL):
        vectors = np.asarray(vectors, dtype=float)
        if vectors.size == 0:
            return cls.zero(ambient_dim)
        return cls(orthonormalize(vectors, tol))

    @classmethod
    def zero(cls, ambient_dim):
        return cls(np.zeros((ambient_dim, 0)))

    @classmethod
    def whole(cls, ambient_dim):
        return cls(np.eye(ambient_dim))

    @property
    def ambient_dim(self):
        return self.basis.shape[0]

    @property
    def dim(self):
        return self.basis.shape[1]

    def contains(self, X, tol=1e-9):
        X = np.asarray(X, dtype=float)
        r = X - self.basis @ (self.basis.T @ X)
        return np.linalg.norm(r) <= tol * max(1.0, np.linalg.norm(X))


def isotropy_subalgebra(algebra: LieAlgebra, theta, tol=RANK_TOL):
    """Kernel of ``X -> theta([X, .])``: the Lie algebra of the coadjoint stabiliser."""
    theta = np.asarray(theta, dtype=float)
    S = algebra.tensor @ theta
    if not np.any(S):
        return Subspace.whole(algebra.dim)
    return Subspace(nullspace(S, tol))


def _projection_error(algebra, k_basis, m_basis):
    """Largest k-component of ``[Z, X]`` over k-basis Z and m-basis X."""
    if k_basis.shape[1] == 0 or m_basis.shape[1] == 0:
        return 0.0
    full = np.hstack([k_basis, m_basis])
    inv = np.linalg.inv(full)
    br = np.einsum("ia,jb,ijk->abk", k_basis, m_basis, algebra.tensor)
    kcoef = br @ inv[: k_basis.shape[1]].T
    return float(np.max(np.linalg.norm(kcoef, axis=-1)))


def invariant_complement(algebra, k: Subspace, strategy="killing-orthogonal", m_basis=None,
                         tol=INVARIANCE_TOL):
    """
    Complement ``m`` of ``k`` with ``[k, m]`` inside ``m``.

    Parameters
    ----------
    strategy : {"killing-orthogonal", "user-supplied"}
        ``killing-orthogonal`` takes the Killing-orthogonal complement, which
        requires a nondegenerate restriction of the Killing form to ``k``.
        ``user-supplied`` checks and orthonormalises ``m_basis``.

    Raises
    ------
    StrategyError
        Killing form degenerate on ``k``.
    InvarianceError
        The complement is not ``k``-invariant, or does not complement ``k``.
    """
    n = algebra.dim
    if strategy == "user-supplied":
        if m_basis is None:
            raise InputError("user-supplied strategy needs m_basis")
        M = np.asarray(m_basis, dtype=float)
        if M.ndim != 2 or M.shape[0] != n:
            raise InputError(f"m_basis must have {n} rows")
        if M.shape[1] == 0 or np.max(np.abs(M.T @ M - np.eye(M.shape[1]))) > 1e-12:
            M = orthonormalize(M)
    elif strategy == "killing-orthogonal":
        if k.dim == 0:
            return Subspace.whole(n)
        Bk = killing_form(algebra) @ k.basis
        restricted = k.basis.T @ Bk
        s = np.linalg.svd(restricted, compute_uv=False)
        if s[0] == 0 or s[-1] <= RANK_TOL * s[0] or s[0] < 1e-12:
            raise StrategyError(
                "Killing form is degenerate on k; supply m explicitly (strategy 'user-supplied')")
        M = nullspace(Bk.T)
    else:
        raise InputError(f"unknown complement strategy {strategy!r}")

    if k.dim + M.shape[1] != n or rank(np.hstack([k.basis, M])) != n:
        raise InvarianceError(f"m (dim {M.shape[1]}) is not a complement of k (dim {k.dim})")
    err = _projection_error(algebra, k.basis, M)
    if err > tol:
        raise InvarianceError(f"[k, m] is not contained in m (k-component {err:.2e})")
    return Subspace(M)


def killing_form(algebra):
    return liealg.killing_form(algebra)


@dataclass(frozen=True)
class InducedSigma:
    matrix: np.ndarray
    cocycle_residual: float
    margin: float


def cocycle_residual(bracket_m, sigma):
    """
    Max over m-basis triples of ``s([X,Y]_m,Z) + s([Y,Z]_m,X) + s([Z,X]_m,Y)``.

    ``bracket_m[a, b, :]`` holds the m-coordinates of ``[m_a, m_b]_m``.
    """
    T = np.einsum("abd,dc->abc", bracket_m, sigma)
    total = T + T.transpose(1, 2, 0) + T.transpose(2, 0, 1)
    return float(np.max(np.abs(total), initial=0.0))


def _margin(sigma):
    if sigma.shape[0] == 0:
        return 1.0
    s = np.linalg.svd(sigma, compute_uv=False)
    return float(s[-1] / s[0]) if s[0] > 0 else 0.0


def induced_sigma(algebra, theta, m: Subspace, tol=1e-9):
    """
    Orbit two-form ``sigma(X, Y) = theta([X, Y])`` on ``m``.

    The nondegeneracy margin is the ratio of extreme singular values.

    Raises
    ------
    DegenerateSymplecticError
        If the margin is below ``tol`` (or ``m`` has odd dimension).
    """
    theta = np.asarray(theta, dtype=float)
    M = m.basis
    sigma = M.T @ (algebra.tensor @ theta) @ M
    sigma = 0.5 * (sigma - sigma.T)
    margin = _margin(sigma)
    if m.dim % 2 or margin <= tol:
        raise DegenerateSymplecticError(
            f"theta([.,.]) is degenerate on m (dim {m.dim}, margin {margin:.2e})")
    # theta([k, .]) = 0, so the full-bracket cyclic sum equals the projected one
    C = algebra.tensor
    inner = np.einsum("ia,jb,ijk->abk", M, M, C)
    T = np.einsum("abk,kl,lc->abc", inner, C @ theta, M)
    total = T + T.transpose(1, 2, 0) + T.transpose(2, 0, 1)
    return InducedSigma(sigma, float(np.max(np.abs(total), initial=0.0)), margin)


@dataclass(frozen=True, eq=False)
class ReductiveModel:
    """
    Reductive split ``g = k + m`` with a symplectic form on ``m``.

    Attributes
    ----------
    algebra : LieAlgebra
    theta : ndarray or None
        Coadjoint functional; ``None`` when ``sigma_m`` was supplied directly.
    k, m : Subspace
    sigma_m : ndarray
        Antisymmetric matrix of the symplectic form in m-coordinates.
    V : ndarray or None
        Dual of ``theta`` under ``form`` (semisimple case only).
    form : ndarray or None
        Invariant nondegenerate symmetric form used for ``V`` and for block
        normalisation; the Killing form unless a rescaled one was given.
    flags : dict
        User-asserted global conditions (compact isotropy, almost effective).
    """

    algebra: LieAlgebra
    theta: Optional[np.ndarray]
    k: Subspace
    m: Subspace
    sigma_m: np.ndarray
    V: Optional[np.ndarray] = None
    form: Optional[np.ndarray] = None
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.k.dim + self.m.dim != self.algebra.dim:
            raise InputError("dim k + dim m must equal dim g")
        if self.m.dim % 2:
            raise DegenerateSymplecticError("m has odd dimension")
        s = np.asarray(self.sigma_m, dtype=float)
        if s.shape != (self.m.dim, self.m.dim):
            raise InputError("sigma_m has the wrong shape")
        if np.max(np.abs(s + s.T), initial=0.0) > 1e-12 * max(1.0, np.abs(s).max()):
            raise InputError("sigma_m is not antisymmetric")
        object.__setattr__(self, "sigma_m", 0.5 * (s - s.T))

    @property
    def dim_m(self):
        return self.m.dim

    @property
    def dim_k(self):
        return self.k.dim

    @cached_property
    def _split_inverse(self):
        return np.linalg.inv(np.hstack([self.k.basis, self.m.basis]))

    @cached_property
    def k_rows(self):
        """Rows mapping an ambient vector to the k-coordinates of its k-component."""
        return self._split_inverse[: self.k.dim]

    @cached_property
    def m_rows(self):
        """Rows mapping an ambient vector to the m-coordinates of its m-component."""
        return self._split_inverse[self.k.dim:]

    def proj_k(self, X):
        return self.k.basis @ (self.k_rows @ X)

    def proj_m(self, X):
        return self.m.basis @ (self.m_rows @ X)

    def to_m(self, X, tol=1e-9):
        """m-coordinates of an ambient vector that must lie in ``m``."""
        X = np.asarray(X, dtype=float)
        if X.shape != (self.algebra.dim,):
            raise InputError(f"vector must have length {self.algebra.dim}")
        kpart = self.k_rows @ X
        if np.linalg.norm(kpart) > tol * max(1.0, np.linalg.norm(X)):
            raise InputError("vector does not lie in m")
        return self.m_rows @ X

    def from_m(self, x):
        return self.m.basis @ np.asarray(x, dtype=float)

    @cached_property
    def bracket_g(self):
        """``[a, b, :]``: ambient coordinates of ``[m_a, m_b]``."""
        M = self.m.basis
        return np.einsum("ia,jb,ijk->abk", M, M, self.algebra.tensor)

    @cached_property
    def bracket_m(self):
        """``[a, b, :]``: m-coordinates of ``[m_a, m_b]_m``."""
        return self.bracket_g @ self.m_rows.T

    def extend(self, H):
        """Ambient operator equal to ``H`` on ``m`` and zero on ``k``."""
        return self.m.basis @ np.asarray(H, dtype=float) @ self.m_rows

    @cached_property
    def k_action(self):
        """Matrices of ``ad_Z`` restricted to ``m`` (m-coordinates), one per k-basis vector."""
        ad = self.algebra.ad_tensor
        return [self.m_rows @ np.einsum("i,ikj->kj", z, ad) @ self.m.basis for z in self.k.basis.T]

    @cached_property
    def cocycle_residual(self):
        return cocycle_residual(self.bracket_m, self.sigma_m)

    @cached_property
    def invariance_residual(self):
        return _projection_error(self.algebra, self.k.basis, self.m.basis)

    @cached_property
    def margin(self):
        return _margin(self.sigma_m)

    def sigma(self, X, Y):
        """Symplectic form on ambient vectors of ``m``."""
        return float(self.to_m(X) @ self.sigma_m @ self.to_m(Y))


def coadjoint_model(algebra, theta, form=None, m_basis=None, strategy=None, tol=1e-9, flags=None):
    """
    Reductive model of the coadjoint orbit of ``theta``.

    ``k`` is the stabiliser of ``theta``. ``m`` is the Killing-orthogonal
    complement unless ``m_basis`` is given. When the algebra is semisimple,
    ``V`` solves ``form(V, .) = theta`` with ``form`` defaulting to the Killing
    matrix.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (algebra.dim,):
        raise InputError(f"theta must have length {algebra.dim}")
    k = isotropy_subalgebra(algebra, theta)
    if strategy is None:
        strategy = "user-supplied" if m_basis is not None else "killing-orthogonal"
    m = invariant_complement(algebra, k, strategy, m_basis=m_basis)
    sig = induced_sigma(algebra, theta, m, tol=tol)
    V = None
    if form is None and liealg.is_semisimple(algebra):
        form = liealg.killing_form(algebra)
    if form is not None:
        form = np.asarray(form, dtype=float)
        try:
            V = solve(form, theta)
        except SingularError:
            form, V = None, None
    return ReductiveModel(algebra, theta, k, m, sig.matrix, V=V, form=form,
                          flags=dict(flags or {}))


def symplectic_group_model(algebra, sigma, flags=None):
    """Model with trivial isotropy: ``m = g`` and ``sigma`` given on the algebra basis."""
    sigma = np.asarray(sigma, dtype=float)
    n = algebra.dim
    if sigma.shape != (n, n):
        raise InputError(f"sigma must be {n}x{n}")
    if np.max(np.abs(sigma + sigma.T)) > 1e-12 * max(1.0, np.abs(sigma).max()):
        raise InputError("sigma is not antisymmetric")
    if n % 2 or _margin(sigma) <= 1e-9:
        raise DegenerateSymplecticError("sigma is degenerate")
    return ReductiveModel(algebra, None, Subspace.zero(n), Subspace.whole(n), sigma,
                          flags=dict(flags or {}))


@dataclass(frozen=True)
class SymplecticBasis:
    """
    Basis ``e_1..e_2n`` (columns, m-coordinates) with ``sigma(e_i, e_{j+n}) = delta_ij``.

    ``flavor == "unitary"`` additionally means ``e_{i+n} = H e_i`` and
    orthonormality for ``g(X, Y) = sigma(X, H Y)``.
    """

    vectors: np.ndarray
    flavor: str = "symplectic"

    @property
    def n(self):
        return self.vectors.shape[1] // 2


def standard_form(n):
    """Matrix of ``sum_i e^i ^ e^{i+n}``."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def gram_error(sigma, vectors):
    n = vectors.shape[1] // 2
    return float(np.max(np.abs(vectors.T @ sigma @ vectors - standard_form(n)), initial=0.0))


def symplectic_basis(sigma_m, seed_inner_product=None):
    """
    Symplectic Gram-Schmidt.

    Candidates start as an orthonormal basis for ``seed_inner_product``
    (identity by default). At each step the pair with the largest
    ``|sigma(u, v)|`` is taken, ties broken by index order.
    """
    sigma = np.asarray(sigma_m, dtype=float)
    d = sigma.shape[0]
    if d % 2 or _margin(sigma) <= 1e-12:
        raise DegenerateSymplecticError("sigma is degenerate")
    if seed_inner_product is None:
        cands = np.eye(d)
    else:
        h = np.asarray(seed_inner_product, dtype=float)
        L = np.linalg.cholesky(0.5 * (h + h.T))
        cands = np.linalg.inv(L).T
    n = d // 2
    es, fs = [], []
    remaining = [cands[:, i].copy() for i in range(d)]
    for _ in range(n):
        R = np.array(remaining)
        S = R @ sigma @ R.T
        a, b = np.unravel_index(np.argmax(np.abs(S)), S.shape)
        val = S[a, b]
        if abs(val) < 1e-14:
            raise DegenerateSymplecticError("sigma is degenerate")
        e = remaining[a] / val
        f = remaining[b]
        es.append(e)
        fs.append(f)
        rest = []
        for idx, c in enumerate(remaining):
            if idx in (a, b):
                continue
            # remove the components paired with e and f
            c = c - (c @ sigma @ f) * e + (c @ sigma @ e) * f
            rest.append(c)
        remaining = rest
    return SymplecticBasis(np.column_stack(es + fs), "symplectic")


def unitary_basis(sigma_m, H):
    """Basis ``e_1..e_n, He_1..He_n`` orthonormal for ``g = sigma(., H .)``."""
    sigma = np.asarray(sigma_m, dtype=float)
    H = np.asarray(H, dtype=float)
    d = sigma.shape[0]
    G = sigma @ H
    G = 0.5 * (G + G.T)
    n = d // 2
    es = []
    for i in range(d):
        if len(es) == n:
            break
        c = np.zeros(d)
        c[i] = 1.0
        for e in es:
            c = c - (e @ G @ c) * e - ((H @ e) @ G @ c) * (H @ e)
        nrm = c @ G @ c
        if nrm <= 1e-10:
            continue
        es.append(c / np.sqrt(nrm))
    if len(es) < n:
        raise DegenerateSymplecticError("metric sigma(., H .) is not positive definite")
    E = np.column_stack(es)
    return SymplecticBasis(np.hstack([E, H @ E]), "unitary")


@dataclass(frozen=True)
class XiParts:
    xi: np.ndarray
    xi_k: np.ndarray
    xi_m: np.ndarray


def xi_element(model: ReductiveModel, basis: Optional[SymplecticBasis] = None):
    """
    ``xi = sum_i [e_i, e_{i+n}]`` over a symplectic basis of ``m``, split along ``k + m``.
    """
    if basis is None:
        basis = symplectic_basis(model.sigma_m)
    n = basis.n
    E = model.m.basis @ basis.vectors
    xi = np.einsum("ia,ja,ijk->k", E[:, :n], E[:, n:], model.algebra.tensor)
    return XiParts(xi, model.proj_k(xi), model.proj_m(xi))
