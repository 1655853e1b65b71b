"""Curvature invariants of a homogeneous compatible structure.

Every quantity is computed on the Lie algebra, with ``H`` extended by zero
on ``k``. Traces of ``ad`` are traces over all of ``g``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import liealg
from .compatible import CompatibleStructure, nijenhuis_tensor, k_invariance_residual
from .homogeneous import ReductiveModel, XiParts, unitary_basis, xi_element
from .numerics import RANK_TOL, nullspace, orthonormalize, solve

SPECIAL_TOL = 1e-7


def _H(H):
    return H.H if isinstance(H, CompatibleStructure) else np.asarray(H, dtype=float)


def zeta(model: ReductiveModel, H):
    """One-form ``zeta(X) = tr(ad_{HX} - H ad_X)`` on ``g`` (coefficient array)."""
    Hg = model.extend(_H(H))
    C = model.algebra.tensor
    traces = np.einsum("ijj->i", C)
    ad = model.algebra.ad_tensor
    return Hg.T @ traces - np.einsum("ab,iba->i", Hg, ad)


def killing_dual(model: ReductiveModel, one_form):
    """Solve ``form(V', .) = one_form``; ``None`` without an invariant form."""
    if model.form is None:
        return None
    return solve(model.form, one_form)


def chern_ricci(model: ReductiveModel, H, z=None):
    """``rho(m_a, m_b) = zeta([m_a, m_b])`` with the full bracket of ``g``."""
    if z is None:
        z = zeta(model, H)
    rho = model.bracket_g @ z
    return 0.5 * (rho - rho.T)


def rho_k_discrepancy(model: ReductiveModel, z):
    """``zeta([m_a, m_b]_k)``: difference between the full-bracket and m-projected forms."""
    kpart = model.bracket_g @ model.k_rows.T @ model.k.basis.T
    return kpart @ z


@dataclass(frozen=True)
class Specialness:
    lam: float
    residual: float
    special: bool


def specialness(rho_m, sigma_m, tol=SPECIAL_TOL):
    """
    Least-squares ``lam`` with ``rho ~ lam sigma`` (Frobenius).

    ``residual`` is ``||rho - lam sigma||_F / ||sigma||_F``; the structure is
    special when it is at most ``tol``.
    """
    rho = np.asarray(rho_m, dtype=float)
    sig = np.asarray(sigma_m, dtype=float)
    ss = float(np.sum(sig * sig))
    lam = float(np.sum(rho * sig) / ss)
    residual = float(np.linalg.norm(rho - lam * sig) / np.sqrt(ss))
    return Specialness(lam, residual, residual <= tol)


def hermitian_scalar(model: ReductiveModel, H, xi: Optional[XiParts] = None):
    """``s = tr(ad_{H xi} - H ad_xi)``, evaluated by forming both operators."""
    Hm = _H(H)
    if xi is None:
        xi = xi_element(model)
    Hg = model.extend(Hm)
    ad_xi = liealg.ad_matrix(model.algebra, xi.xi)
    ad_hxi = liealg.ad_matrix(model.algebra, Hg @ xi.xi)
    return float(np.trace(ad_hxi) - np.trace(Hg @ ad_xi))


def orthonormal_frame(model: ReductiveModel, H):
    """Ambient vectors of a ``g``-orthonormal basis of ``m`` (``e_{i+n} = H e_i``)."""
    ub = unitary_basis(model.sigma_m, _H(H))
    return ub.vectors, model.from_m(ub.vectors)


def _formula_terms(model, H, xi):
    Hm = _H(H)
    coords, E = orthonormal_frame(model, Hm)
    G = model.sigma_m @ Hm
    G = 0.5 * (G + G.T)
    # [e_i, e_j]_m in m-coordinates
    bm = np.einsum("pa,qb,pqc->abc", coords, coords, model.bracket_m)
    bracket_sq = float(np.einsum("abc,cd,abd->", bm, G, bm))
    ad = model.algebra.ad_tensor
    adE = np.einsum("ia,ikj->akj", E, ad)
    trace_sq = float(np.einsum("akj,ajk->", adE, adE))
    Hg = model.extend(Hm)
    tr_H_adxi = float(np.trace(Hg @ liealg.ad_matrix(model.algebra, xi.xi)))
    tr_ad_hxi = float(np.trace(liealg.ad_matrix(model.algebra, Hg @ xi.xi)))
    return bracket_sq, trace_sq, tr_H_adxi, tr_ad_hxi


def nijenhuis_norm_formula(model: ReductiveModel, H, xi: Optional[XiParts] = None):
    """``|N|^2 = 1/8 sum |[e_i,e_j]_m|^2 + 1/4 sum tr(ad_{e_i}^2) - 1/2 tr(H ad_xi)``."""
    if xi is None:
        xi = xi_element(model)
    bsq, tsq, thx, _ = _formula_terms(model, H, xi)
    return bsq / 8.0 + tsq / 4.0 - thx / 2.0


def nijenhuis_norm_direct(model: ReductiveModel, H, metric=None):
    """
    ``sum_{i<j} ||N_H(e_i, e_j)||^2`` over an orthonormal basis.

    The basis and norm come from ``g = sigma(., H .)`` unless another
    positive-definite ``metric`` (m-coordinates) is given, which is how an
    indefinite structure is tested for integrability.
    """
    Hm = _H(H)
    N = nijenhuis_tensor(model, Hm)
    if metric is None:
        coords, _ = orthonormal_frame(model, Hm)
        G = model.sigma_m @ Hm
        G = 0.5 * (G + G.T)
    else:
        G = 0.5 * (np.asarray(metric, dtype=float) + np.asarray(metric, dtype=float).T)
        L = np.linalg.cholesky(G)
        coords = np.linalg.inv(L).T
    Ne = np.einsum("pa,qb,pqc->abc", coords, coords, N)
    sq = np.einsum("abc,cd,abd->ab", Ne, G, Ne)
    return float(np.sum(np.triu(sq, 1)))


def riemannian_scalar(model: ReductiveModel, H, xi: Optional[XiParts] = None):
    """``scal = -1/4 sum |[e_i,e_j]_m|^2 - 1/2 sum tr(ad_{e_i}^2) + tr(ad_{H xi})``."""
    if xi is None:
        xi = xi_element(model)
    bsq, tsq, _, thx = _formula_terms(model, H, xi)
    return -bsq / 4.0 - tsq / 2.0 + thx


def center_of_k(model: ReductiveModel, tol=RANK_TOL):
    """Orthonormal ambient basis of the center of ``k``."""
    K = model.k.basis
    if K.shape[1] == 0:
        return K
    C = model.algebra.tensor
    # [Z, K_b] for Z = K z, expressed in ambient coordinates
    rows = np.einsum("ia,jb,ijk->bka", K, K, C).reshape(-1, K.shape[1])
    z = nullspace(rows, tol)
    return orthonormalize(K @ z) if z.shape[1] else np.zeros((model.algebra.dim, 0))


def c1_representative(model: ReductiveModel, H, z=None):
    """
    ``rho'(m_a, m_b) = zeta(proj_z [m_a, m_b])``, ``z`` the center of ``k``.

    The projection is taken along ``[k, k] + m``.
    """
    if z is None:
        z = zeta(model, H)
    Z = center_of_k(model)
    dm = model.dim_m
    if Z.shape[1] == 0:
        return np.zeros((dm, dm))
    K = model.k.basis
    C = model.algebra.tensor
    derived = np.einsum("ia,jb,ijk->abk", K, K, C).reshape(-1, model.algebra.dim).T
    D = orthonormalize(derived) if derived.size else np.zeros((model.algebra.dim, 0))
    frame = np.hstack([Z, D, model.m.basis])
    if frame.shape[1] == model.algebra.dim and np.linalg.matrix_rank(frame) == model.algebra.dim:
        coeffs = np.linalg.solve(frame, model.bracket_g.reshape(-1, model.algebra.dim).T)
    else:
        coeffs = np.linalg.lstsq(frame, model.bracket_g.reshape(-1, model.algebra.dim).T,
                                 rcond=None)[0]
    zpart = (Z @ coeffs[: Z.shape[1]]).T.reshape(dm, dm, -1)
    rho1 = zpart @ z
    return 0.5 * (rho1 - rho1.T)


@dataclass
class CurvatureReport:
    zeta: np.ndarray
    rho_m: np.ndarray
    lam: float
    special_residual: float
    s: float
    s_via_zeta: float
    nijenhuis_sq: float
    nijenhuis_sq_formula: float
    scal: float
    xi: np.ndarray
    xi_k: np.ndarray
    xi_m: np.ndarray
    v_prime: Optional[np.ndarray]
    c1_rep: np.ndarray
    rho_k_discrepancy: float
    k_invariance: float
    flags: dict = field(default_factory=dict)

    def to_dict(self):
        def arr(a):
            return None if a is None else np.asarray(a).tolist()

        return {
            "zeta": arr(self.zeta),
            "rho": arr(self.rho_m),
            "lambda": self.lam if self.flags.get("special") else None,
            "lambda_fit": self.lam,
            "special_residual": self.special_residual,
            "s": self.s,
            "s_via_zeta": self.s_via_zeta,
            "nijenhuis_sq": self.nijenhuis_sq,
            "nijenhuis_sq_formula": self.nijenhuis_sq_formula,
            "scal": self.scal,
            "xi": arr(self.xi),
            "xi_k": arr(self.xi_k),
            "xi_m": arr(self.xi_m),
            "v_prime": arr(self.v_prime),
            "c1_rep": arr(self.c1_rep),
            "rho_k_discrepancy": self.rho_k_discrepancy,
            "k_invariance_residual": self.k_invariance,
            "flags": dict(self.flags),
        }


def curvature_report(model: ReductiveModel, H, special_tol=SPECIAL_TOL, integrable_tol=1e-9):
    """All invariants of one structure, each computed along its own path."""
    Hm = _H(H)
    xi = xi_element(model)
    z = zeta(model, Hm)
    rho = chern_ricci(model, Hm, z)
    sp = specialness(rho, model.sigma_m, special_tol)
    s = hermitian_scalar(model, Hm, xi)
    ndirect = nijenhuis_norm_direct(model, Hm)
    nformula = nijenhuis_norm_formula(model, Hm, xi)
    scal = riemannian_scalar(model, Hm, xi)
    vp = killing_dual(model, z)
    disc = rho_k_discrepancy(model, z)
    rho_norm = max(np.abs(model.sigma_m).max(), 1.0)
    flags = {
        "special": sp.special,
        "chern_ricci_flat": bool(np.abs(rho).max(initial=0.0) <= special_tol * rho_norm),
        "integrable": bool(ndirect <= integrable_tol),
        "unimodular": liealg.is_unimodular(model.algebra),
    }
    for key, val in model.flags.items():
        flags.setdefault(key, val)
    return CurvatureReport(
        zeta=z, rho_m=rho, lam=sp.lam, special_residual=sp.residual, s=s,
        s_via_zeta=float(z @ xi.xi), nijenhuis_sq=ndirect, nijenhuis_sq_formula=nformula,
        scal=scal, xi=xi.xi, xi_k=xi.xi_k, xi_m=xi.xi_m, v_prime=vp,
        c1_rep=c1_representative(model, Hm, z),
        rho_k_discrepancy=float(np.abs(disc).max(initial=0.0)),
        k_invariance=k_invariance_residual(model, Hm), flags=flags,
    )
