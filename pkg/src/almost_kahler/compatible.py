"""Compatible complex structures on a symplectic vector space ``(m, sigma)``.

Matrix conventions (m-coordinates): ``sigma(X, Y) = X^T S Y`` and ``H`` acts
on column vectors, so compatibility reads ``H^T S H = S`` and the metric
``g(X, Y) = sigma(X, H Y)`` has matrix ``S H``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .errors import (
    DegenerateBlockError,
    DegenerateSymplecticError,
    InputError,
    NonInvertibleAdVError,
    SingularError,
)
from .homogeneous import ReductiveModel
from .numerics import spd_sqrt, sym_eig

STRUCTURE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class CompatibleStructure:
    """``H`` on ``m`` with ``H^2 = -1``, ``H^T S H = S`` and ``S H`` positive definite."""

    H: np.ndarray
    sigma: np.ndarray

    @property
    def metric(self):
        G = self.sigma @ self.H
        return 0.5 * (G + G.T)

    def residuals(self):
        H, S = self.H, self.sigma
        d = H.shape[0]
        snorm = max(np.abs(S).sum(axis=1).max(), 1e-300)
        G = S @ H
        return {
            "square": float(np.abs(H @ H + np.eye(d)).max(initial=0.0)),
            "symplectic": float(np.abs(H.T @ S @ H - S).sum(axis=1).max(initial=0.0) / snorm),
            "metric_asymmetry": float(np.abs(G - G.T).max(initial=0.0)),
            "metric_min_eig": float(np.linalg.eigvalsh(0.5 * (G + G.T))[0]) if d else 1.0,
        }

    def check(self, tol=STRUCTURE_TOL):
        r = self.residuals()
        return (r["square"] <= tol and r["symplectic"] <= tol
                and r["metric_asymmetry"] <= tol * max(1.0, np.abs(self.metric).max())
                and r["metric_min_eig"] > 0)


def compatible_structure(H, sigma, tol=1e-8):
    """Wrap and validate; raises :class:`InputError` if ``H`` is not compatible."""
    H = np.asarray(H, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if H.shape != sigma.shape or H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise InputError(f"H has shape {H.shape}, expected {sigma.shape}")
    cs = CompatibleStructure(H, sigma)
    if not cs.check(tol):
        raise InputError(f"H is not a compatible complex structure: {cs.residuals()}")
    return cs


def polar_H(sigma, h):
    """
    Compatible structure obtained from a seed inner product by polar decomposition.

    ``A`` is defined by ``h(A X, Y) = sigma(X, Y)``, ``B`` is the ``h``-symmetric
    positive square root of ``-A^2`` and ``H = B^{-1} A``. When ``h`` commutes
    with a group action preserving ``sigma``, so does ``H``.

    Parameters
    ----------
    sigma : (2n, 2n) array_like
        Nondegenerate antisymmetric matrix.
    h : (2n, 2n) array_like
        Symmetric positive-definite matrix.

    Returns
    -------
    CompatibleStructure
    """
    S = np.asarray(sigma, dtype=float)
    h = np.asarray(h, dtype=float)
    if S.shape != h.shape:
        raise InputError("sigma and h must have the same shape")
    h = 0.5 * (h + h.T)
    try:
        R = spd_sqrt(h)
    except SingularError as exc:
        raise InputError("seed inner product h is not positive definite") from exc
    Rinv = np.linalg.inv(R)
    # A = -h^{-1} S; in h-orthonormal coordinates (X -> R X) it is antisymmetric
    At = -Rinv @ S @ Rinv
    At = 0.5 * (At - At.T)
    try:
        Bt = spd_sqrt(-At @ At)
    except SingularError as exc:
        raise DegenerateSymplecticError("sigma is degenerate") from exc
    Ht = np.linalg.solve(Bt, At)
    H = Rinv @ Ht @ R
    return CompatibleStructure(H, S)


def k_invariance_residual(model: ReductiveModel, H):
    """Max norm of ``[H, ad_Z|m]`` over the k-basis (zero when ``k = 0``)."""
    H = np.asarray(H, dtype=float)
    res = [np.abs(H @ a - a @ H).max(initial=0.0) for a in model.k_action]
    return float(max(res, default=0.0))


@dataclass(frozen=True, eq=False)
class Block:
    u: np.ndarray
    v: np.ndarray
    lam: float
    eps: int


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    """
    Rotation blocks of ``ad_V`` on ``m``: ``[V,u] = lam v``, ``[V,v] = -lam u``,
    ``form(u,u) = form(v,v) = eps``. Vectors are in m-coordinates.
    """

    blocks: List[Block]
    V: np.ndarray

    @property
    def lambdas(self):
        return np.array([b.lam for b in self.blocks])

    @property
    def epsilons(self):
        return np.array([b.eps for b in self.blocks])

    def unitary_basis(self):
        """``e_i = u_i / sqrt(lam_i)``, ``e_{i+n} = eps_i v_i / sqrt(lam_i)``."""
        es = [b.u / np.sqrt(b.lam) for b in self.blocks]
        fs = [b.eps * b.v / np.sqrt(b.lam) for b in self.blocks]
        return np.column_stack(es + fs)


def _clusters(values, rel_gap):
    scale = max(np.abs(values).max(initial=0.0), 1e-300)
    groups = [[0]]
    for i in range(1, len(values)):
        if abs(values[i] - values[i - 1]) <= rel_gap * scale:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def adV_blocks(model: ReductiveModel, cluster_gap=1e-6, tol=1e-8):
    """
    Split ``m`` into two-dimensional ``ad_V``-invariant blocks.

    ``S = ad_V|m`` is skew for the invariant form ``B``, so ``S^2`` is
    ``B``-self-adjoint with eigenvalues ``-lam^2``. ``S^2`` is diagonalised in
    the positive inner product ``|B|`` (signs of ``B`` flipped on its negative
    eigenspaces), eigenvalue clusters are merged, and inside each cluster the
    blocks are peeled off by Gram-Schmidt for ``B``: pick ``u`` with the
    largest ``|B(u,u)|``, set ``v = S u / lam``, normalise, project out.

    Raises
    ------
    NonInvertibleAdVError
        Some ``lam`` is below ``1e-8 * ||ad_V||``.
    DegenerateBlockError
        ``B`` is degenerate on a block, or ``S^2`` is not symmetric for ``|B|``.
    """
    if model.V is None or model.form is None:
        raise InputError("adV_blocks needs a model with V and an invariant form")
    M = model.m.basis
    ad_V = np.einsum("i,ikj->kj", model.V, model.algebra.ad_tensor)
    S = model.m_rows @ ad_V @ M
    Bm = M.T @ model.form @ M
    Bm = 0.5 * (Bm + Bm.T)
    d = S.shape[0]
    adnorm = max(np.linalg.norm(ad_V, 2), 1e-300)

    mu, Q = sym_eig(Bm)
    if np.min(np.abs(mu), initial=np.inf) <= 1e-10 * np.abs(mu).max(initial=1.0):
        raise DegenerateBlockError("invariant form is degenerate on m")
    R = (Q * np.sqrt(np.abs(mu))) @ Q.T
    Rinv = (Q / np.sqrt(np.abs(mu))) @ Q.T
    T = R @ S @ S @ Rinv
    if np.abs(T - T.T).max() > 1e-8 * max(np.abs(T).max(), 1e-300):
        raise DegenerateBlockError(
            "ad_V^2 is not self-adjoint for the sign-flipped invariant form")
    nu, W = sym_eig(0.5 * (T + T.T))
    if nu[-1] >= -(tol * adnorm) ** 2:
        raise NonInvertibleAdVError(
            f"ad_V restricted to m is not invertible (eigenvalue {nu[-1]:.3e} of ad_V^2)")

    blocks = []
    for group in _clusters(nu, cluster_gap):
        lam = float(np.sqrt(-np.mean(nu[group])))
        X = Rinv @ W[:, group]
        while X.shape[1] > 0:
            if X.shape[1] % 2:
                raise DegenerateBlockError("odd-dimensional eigenspace of ad_V^2")
            Bc = X.T @ Bm @ X
            b, Y = sym_eig(0.5 * (Bc + Bc.T))
            idx = int(np.argmax(np.abs(b)))
            if abs(b[idx]) <= 1e-10 * max(np.abs(Bm).max(), 1e-300):
                raise DegenerateBlockError("invariant form is degenerate on an eigenspace")
            u = X @ Y[:, idx]
            eps = 1 if b[idx] > 0 else -1
            u = u / np.sqrt(abs(u @ Bm @ u))
            v = S @ u / lam
            bv = v @ Bm @ v
            if abs(bv - eps) > 1e-6 or abs(u @ Bm @ v) > 1e-6:
                raise DegenerateBlockError("block is not definite for the invariant form")
            blocks.append(Block(u, v, lam, eps))
            # B-orthogonal projection onto the complement of span{u, v}
            scale = np.linalg.norm(X, 2)
            X = X - np.outer(u, eps * (u @ Bm @ X)) - np.outer(v, eps * (v @ Bm @ X))
            # the projection has rank two less; keep an orthonormal basis of its image
            U, s, _ = np.linalg.svd(X, full_matrices=False)
            r = int(np.sum(s > 1e-8 * scale))
            X = U[:, :r]
    if 2 * len(blocks) != d:
        raise DegenerateBlockError("blocks do not span m")
    return BlockDecomposition(blocks, model.V)


def special_H_from_blocks(decomp: BlockDecomposition, sigma):
    """``H`` equal to ``(eps_i / lam_i) ad_V`` on each block: ``H u = eps v``, ``H v = -eps u``."""
    cols, images = [], []
    for b in decomp.blocks:
        cols += [b.u, b.v]
        images += [b.eps * b.v, -b.eps * b.u]
    U = np.column_stack(cols)
    HU = np.column_stack(images)
    H = HU @ np.linalg.inv(U)
    return CompatibleStructure(H, np.asarray(sigma, dtype=float))


def nijenhuis_tensor(model: ReductiveModel, H):
    """
    ``N[a, b, :]``: m-coordinates of ``N_H(m_a, m_b)`` where
    ``4 N_H(X,Y) = [HX,HY]_m - H[HX,Y]_m - H[X,HY]_m - [X,Y]_m``.
    """
    H = np.asarray(H, dtype=float)
    T = model.bracket_m
    t1 = np.einsum("pa,qb,pqc->abc", H, H, T)
    t2 = np.einsum("pa,pbd,cd->abc", H, T, H)
    t3 = np.einsum("qb,aqd,cd->abc", H, T, H)
    return 0.25 * (t1 - t2 - t3 - T)


def nijenhuis(model: ReductiveModel, H, X, Y, tol=1e-9):
    """``N_H(X, Y)`` for ambient vectors ``X, Y`` of ``m``; returns an ambient vector."""
    x = model.to_m(X, tol)
    y = model.to_m(Y, tol)
    N = nijenhuis_tensor(model, H)
    return model.from_m(np.einsum("a,b,abc->c", x, y, N))
