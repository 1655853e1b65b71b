"""Numerical search for special compatible structures.

The space of compatible structures on ``(m, sigma)`` is the orbit of any one
of them under conjugation by ``Sp(m, sigma)``. At ``H``, with a unitary basis
``U`` (``H U = U J``, ``sigma`` standard), the directions
``A = U [[a, b], [b, -a]] U^{-1}`` with ``a, b`` symmetric are symplectic,
metric-symmetric and anticommute with ``H``; moving along them by
``H -> exp(tA) H exp(-tA)`` keeps ``H`` compatible exactly.

The search is derivative-free coordinate descent over that basis: for each
direction a central-difference probe gives the directional derivative of the
residual vector, a Gauss-Newton step length is proposed, and a backtracking
line search accepts it only if the objective decreases. One iteration is one
sweep over all directions, after which ``H`` is re-projected onto the
compatible structures with the polar construction.

On a model with nontrivial isotropy only ``k``-invariant structures are
homogeneous, so the residual vector also carries the commutators
``[H, ad_Z|m]``; the objective is zero exactly on invariant special structures.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np
from scipy.linalg import expm

from .compatible import CompatibleStructure, compatible_structure, polar_H
from .curvature import chern_ricci, specialness, zeta
from .errors import InputError
from .homogeneous import ReductiveModel, unitary_basis


@dataclass(frozen=True)
class SearchConfig:
    """
    max_iters : number of sweeps over the tangent basis.
    step0 : largest step length tried along one direction.
    shrink : backtracking factor in ``(0, 1)``.
    residual_target : stop once the residual is at most this.
    seed : seed for the random quantities (perturbations, multi-start seeds).
    probe : finite-difference half-width.
    """

    max_iters: int = 500
    step0: float = 0.5
    shrink: float = 0.5
    residual_target: float = 1e-8
    seed: int = 0
    probe: float = 1e-5

    def __post_init__(self):
        if self.max_iters < 0 or int(self.max_iters) != self.max_iters:
            raise InputError("max_iters must be a non-negative integer")
        for name in ("step0", "residual_target", "probe"):
            if not getattr(self, name) > 0:
                raise InputError(f"{name} must be positive")
        if not 0 < self.shrink < 1:
            raise InputError("shrink must lie in (0, 1)")


@dataclass
class SearchResult:
    H: CompatibleStructure
    residual: float
    lam: float
    special_residual: float
    invariance_residual: float
    iterations: int
    converged: bool
    trace: List[dict] = field(default_factory=list)


class _Objective:
    def __init__(self, model: ReductiveModel):
        self.model = model
        self.sigma = model.sigma_m
        self.sigma_norm = np.linalg.norm(self.sigma)
        self.k_action = model.k_action

    def parts(self, H):
        rho = chern_ricci(self.model, H, zeta(self.model, H))
        sp = specialness(rho, self.sigma)
        special = (rho - sp.lam * self.sigma).ravel() / self.sigma_norm
        inv = [(H @ a - a @ H).ravel() for a in self.k_action]
        return special, np.concatenate(inv) if inv else np.zeros(0), sp.lam

    def vector(self, H):
        special, inv, _ = self.parts(H)
        return np.concatenate([special, inv])


def tangent_basis(sigma, H):
    """Directions ``A`` (m-coordinates, Frobenius-normalised in the unitary frame) at ``H``."""
    U = unitary_basis(sigma, H).vectors
    Uinv = np.linalg.inv(U)
    n = U.shape[0] // 2
    dirs = []
    for i in range(n):
        for j in range(i, n):
            s = np.zeros((n, n))
            s[i, j] = s[j, i] = 1.0
            s /= np.linalg.norm(s) * np.sqrt(2.0)
            z = np.zeros((n, n))
            dirs.append(U @ np.block([[s, z], [z, -s]]) @ Uinv)
            dirs.append(U @ np.block([[z, s], [s, z]]) @ Uinv)
    return dirs


def perturb(H0: CompatibleStructure, size, seed=0):
    """Conjugate ``H0`` by ``exp(A)`` for a random tangent direction ``A`` of norm ``size``."""
    rng = np.random.default_rng(seed)
    dirs = tangent_basis(H0.sigma, H0.H)
    c = rng.standard_normal(len(dirs))
    c *= size / np.linalg.norm(c)
    A = sum(ci * d for ci, d in zip(c, dirs))
    E = expm(A)
    return CompatibleStructure(E @ H0.H @ np.linalg.inv(E), H0.sigma)


METRIC_COND_MAX = 1e10


def _positive(sigma, H):
    """Metric of ``H`` positive definite with condition number below ``METRIC_COND_MAX``."""
    G = sigma @ H
    w = np.linalg.eigvalsh(0.5 * (G + G.T))
    return bool(w[0] > 0 and w[-1] < METRIC_COND_MAX * w[0])


def _project(sigma, H):
    G = sigma @ H
    return polar_H(sigma, 0.5 * (G + G.T)).H


def search_special(model: ReductiveModel, H0, config: SearchConfig = SearchConfig(),
                   callback=None):
    """
    Minimise ``||rho(H) - lam(H) sigma||_F^2 / ||sigma||_F^2`` (plus the
    isotropy-invariance defect) over compatible ``H``.

    ``callback(iteration, H)``, if given, is called after every sweep.

    Returns
    -------
    SearchResult
        ``residual`` is the square root of the objective; ``trace`` has one
        record per sweep, starting with iteration 0 (the initial structure).

    Raises
    ------
    InputError
        If ``H0`` is not a compatible structure for ``model.sigma_m``.
    """
    sigma = model.sigma_m
    H0m = H0.H if isinstance(H0, CompatibleStructure) else np.asarray(H0, dtype=float)
    compatible_structure(H0m, sigma)
    obj = _Objective(model)
    H = H0m.copy()
    r = obj.vector(H)
    f = float(r @ r)
    trace = [_record(obj, H, 0, 0)]
    it = 0
    while np.sqrt(f) > config.residual_target and it < config.max_iters:
        it += 1
        accepted = 0
        for A in tangent_basis(sigma, H):
            d = config.probe
            Ep, Em = expm(d * A), expm(-d * A)
            rp = obj.vector(Ep @ H @ Em)
            rm = obj.vector(Em @ H @ Ep)
            g = (rp - rm) / (2 * d)
            gg = float(g @ g)
            if gg <= 1e-30:
                continue
            t = -float(g @ r) / gg
            t = float(np.clip(t, -config.step0, config.step0))
            for _ in range(40):
                if abs(t) < 1e-14:
                    break
                E = expm(t * A)
                Ht = E @ H @ np.linalg.solve(E, np.eye(E.shape[0]))
                if not _positive(sigma, Ht):
                    t *= config.shrink
                    continue
                rt = obj.vector(Ht)
                ft = float(rt @ rt)
                if ft < f:
                    H, r, f = Ht, rt, ft
                    accepted += 1
                    break
                t *= config.shrink
        Hp = _project(sigma, H)
        rp = obj.vector(Hp)
        fp = float(rp @ rp)
        # the projection removes rounding drift; keep it unless it would raise the objective
        if fp <= f * (1 + 1e-9) + 1e-30:
            H, r, f = Hp, rp, fp
        trace.append(_record(obj, H, it, accepted))
        if callback is not None:
            callback(it, H)
    special, inv, lam = obj.parts(H)
    return SearchResult(
        H=CompatibleStructure(H, sigma), residual=float(np.sqrt(f)), lam=float(lam),
        special_residual=float(np.linalg.norm(special)),
        invariance_residual=float(np.abs(inv).max(initial=0.0)), iterations=it,
        converged=bool(np.sqrt(f) <= config.residual_target), trace=trace)


def _record(obj, H, it, accepted):
    special, inv, lam = obj.parts(H)
    f = float(special @ special + inv @ inv)
    return {"iteration": it, "objective": f, "residual": float(np.sqrt(f)), "lambda": float(lam),
            "special_residual": float(np.linalg.norm(special)),
            "invariance_residual": float(np.abs(inv).max(initial=0.0)), "accepted": accepted}


def random_compatible(sigma, seed=0):
    """Polar structure of a random positive-definite seed inner product."""
    rng = np.random.default_rng(seed)
    d = np.asarray(sigma).shape[0]
    X = rng.standard_normal((d, d))
    return polar_H(sigma, X @ X.T + d * np.eye(d))


def multi_start(model: ReductiveModel, starts: Sequence, config: SearchConfig = SearchConfig(),
                workers=1):
    """Independent searches from each start; returns (best result, all results) by residual."""
    if not starts:
        raise InputError("multi_start needs at least one start")
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda H0: search_special(model, H0, config), starts))
    else:
        results = [search_special(model, H0, config) for H0 in starts]
    best = min(results, key=lambda res: res.residual)
    return best, results
