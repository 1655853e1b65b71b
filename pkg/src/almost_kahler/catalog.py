"""Worked examples with known invariants, used as golden fixtures.

* the Kodaira-Thurston algebra with its standard symplectic Lie group structure;
* ``so(2n,1)``, whose coadjoint orbit through the rotation ``diag(J0, 0)`` is
  the twistor space of real hyperbolic space;
* ``so(2p,q)`` with the orbit ``SO(2p,q)/(U(p) x SO(q))`` (a period domain),
  together with its integrable indefinite structure;
* randomly generated two-step nilpotent and solvable symplectic algebras.

The matrix algebras use ``B(X, Y) = tr(XY)/2``, a positive multiple of the
Killing form, for ``theta``, ``V`` and the block normalisation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

import numpy as np

from . import liealg
from .compatible import adV_blocks, special_H_from_blocks
from .errors import GenerationError, InputError
from .homogeneous import (
    ReductiveModel,
    coadjoint_model,
    symplectic_group_model,
)
from .liealg import LieAlgebra, from_matrix_basis
from .numerics import nullspace

GENERATION_RETRIES = 50


@dataclass(frozen=True)
class Expected:
    lam: Optional[float] = None
    s: Optional[float] = None
    nijenhuis_sq: Optional[float] = None
    scal: Optional[float] = None
    dim_m: Optional[int] = None
    dim_k: Optional[int] = None

    def to_dict(self):
        return {"lambda": self.lam, "s": self.s, "nijenhuis_sq": self.nijenhuis_sq,
                "scal": self.scal, "dim_m": self.dim_m, "dim_k": self.dim_k}


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """
    A named example.

    ``theta`` (coadjoint orbit) and ``sigma_direct`` (symplectic Lie group)
    are mutually exclusive. ``form`` is the invariant form used for ``V``;
    ``H_hint`` and ``H_tilde`` are m-coordinate matrices for the model
    returned by :meth:`model`.
    """

    name: str
    algebra: LieAlgebra
    theta: Optional[np.ndarray] = None
    sigma_direct: Optional[np.ndarray] = None
    form: Optional[np.ndarray] = None
    expected: Expected = field(default_factory=Expected)
    params: dict = field(default_factory=dict)
    matrices: Optional[list] = None
    to_coords: Optional[Callable] = None
    _cache: dict = field(default_factory=dict, repr=False)

    def model(self) -> ReductiveModel:
        if "model" not in self._cache:
            if self.sigma_direct is not None:
                self._cache["model"] = symplectic_group_model(self.algebra, self.sigma_direct)
            else:
                self._cache["model"] = coadjoint_model(self.algebra, self.theta, form=self.form)
        return self._cache["model"]

    @property
    def H_hint(self) -> np.ndarray:
        if "H" not in self._cache:
            self._cache["H"] = self._hint()
        return self._cache["H"]

    def _hint(self):
        if self.name == "kodaira-thurston":
            H = np.zeros((4, 4))
            H[2, 0] = H[3, 1] = 1.0
            H[0, 2] = H[1, 3] = -1.0
            return H
        model = self.model()
        if model.V is not None:
            return special_H_from_blocks(adV_blocks(model), model.sigma_m).H
        return None

    @property
    def H_tilde(self) -> Optional[np.ndarray]:
        """Structure agreeing with ``H_hint`` on ``ad_V``-blocks where the form is positive
        and with ``-H_hint`` where it is negative (period domains only)."""
        if not self.name.startswith("so-period-domain"):
            return None
        decomp = adV_blocks(self.model())
        cols, images = [], []
        for b in decomp.blocks:
            cols += [b.u, b.v]
            images += [b.v, -b.u]
        return np.column_stack(images) @ np.linalg.inv(np.column_stack(cols))

    def to_dict(self):
        out = {"name": self.name, "algebra": self.algebra.to_dict(), "params": dict(self.params),
               "expected": self.expected.to_dict()}
        if self.theta is not None:
            out["theta"] = np.asarray(self.theta).tolist()
        if self.sigma_direct is not None:
            out["sigma"] = np.asarray(self.sigma_direct).tolist()
        if self.form is not None:
            out["form"] = np.asarray(self.form).tolist()
        return out


def kodaira_thurston() -> CatalogEntry:
    """``[e1, e2] = e4`` with ``sigma = e^1 ^ e^3 + e^2 ^ e^4`` and ``H e1 = e3, H e2 = e4``."""
    alg = LieAlgebra(4, ((0, 1, 3, 1.0),), ("e1", "e2", "e3", "e4"))
    sigma = np.zeros((4, 4))
    sigma[0, 2] = sigma[1, 3] = 1.0
    sigma -= sigma.T
    return CatalogEntry("kodaira-thurston", alg, sigma_direct=sigma,
                        expected=Expected(lam=0.0, s=0.0, nijenhuis_sq=0.25, scal=-0.5,
                                          dim_m=4, dim_k=0))


def _unit(N, a, b):
    M = np.zeros((N, N))
    M[a, b] = 1.0
    return M


def _rotation(N, a, b):
    return _unit(N, a, b) - _unit(N, b, a)


def _boost(N, a, b):
    return _unit(N, a, b) + _unit(N, b, a)


def _orthogonal_algebra(p, q):
    """``so(2p, q)`` on ``R^{2p+q}`` with ``diag(I_2p, -I_q)``: rotations of each factor, then boosts."""
    N = 2 * p + q
    mats, labels = [], []
    for a, b in combinations(range(2 * p), 2):
        mats.append(_rotation(N, a, b))
        labels.append(f"L{a + 1}_{b + 1}")
    for a, b in combinations(range(2 * p, N), 2):
        mats.append(_rotation(N, a, b))
        labels.append(f"L{a + 1}_{b + 1}")
    for a in range(2 * p):
        for c in range(2 * p, N):
            mats.append(_boost(N, a, c))
            labels.append(f"E{a + 1}_{c + 1}" if q > 1 else f"E{a + 1}")
    return mats, labels


def _j0_element(p, N):
    V = np.zeros((N, N))
    V[p:2 * p, :p] = np.eye(p)
    V[:p, p:2 * p] = -np.eye(p)
    return V


def _matrix_entry(name, p, q, expected, params):
    mats, labels = _orthogonal_algebra(p, q)
    alg, to_coords = from_matrix_basis(mats, labels)
    form = np.array([[0.5 * np.trace(X @ Y) for Y in mats] for X in mats])
    V = to_coords(_j0_element(p, 2 * p + q))
    theta = form @ V
    return CatalogEntry(name, alg, theta=theta, form=form, expected=expected, params=params,
                        matrices=mats, to_coords=to_coords)


def so_twistor(n: int) -> CatalogEntry:
    """``so(2n,1)`` with the orbit of ``diag(J0, 0)``: the twistor space of hyperbolic ``2n``-space."""
    if int(n) != n or n < 1:
        raise InputError("n must be a positive integer")
    n = int(n)
    exp = Expected(lam=2.0 * n - 4, s=float(n * (n + 1) * (n - 2)), nijenhuis_sq=3.0 * n * (n - 1),
                   dim_m=n * (n + 1), dim_k=n * n)
    return _matrix_entry(f"so-twistor-{n}", n, 1, exp, {"n": n})


def so_period_domain(p: int, q: int) -> CatalogEntry:
    """``so(2p,q)`` with the orbit ``SO(2p,q)/(U(p) x SO(q))``."""
    for v in (p, q):
        if int(v) != v or v < 1:
            raise InputError("p and q must be positive integers")
    p, q = int(p), int(q)
    exp = Expected(lam=2.0 * p - 2 * q - 2, s=float(p * (p + 2 * q - 1) * (p - q - 1)),
                   nijenhuis_sq=3.0 * p * q * (p - 1), dim_m=p * (p + 2 * q - 1),
                   dim_k=p * p + q * (q - 1) // 2)
    return _matrix_entry(f"so-period-domain-{p}-{q}", p, q, exp, {"p": p, "q": q})


def closed_two_forms(algebra: LieAlgebra):
    """Basis of closed 2-cochains, each as an antisymmetric ``(n, n)`` matrix."""
    n = algebra.dim
    pairs = list(combinations(range(n), 2))
    cols = []
    for i, j in pairs:
        w = np.zeros((n, n))
        w[i, j], w[j, i] = 1.0, -1.0
        cols.append(liealg.ce_differential_2(algebra, w).ravel())
    K = nullspace(np.stack(cols, axis=1), 1e-10)
    forms = []
    for c in K.T:
        w = np.zeros((n, n))
        for coef, (i, j) in zip(c, pairs):
            w[i, j], w[j, i] = coef, -coef
        forms.append(w)
    return forms


def _random_symplectic(algebra, rng, margin=1e-3):
    forms = closed_two_forms(algebra)
    if not forms:
        return None
    w = sum(c * f for c, f in zip(rng.standard_normal(len(forms)), forms))
    s = np.linalg.svd(w, compute_uv=False)
    if s[0] == 0 or s[-1] < margin * s[0]:
        return None
    return w / s[0] * np.sqrt(algebra.dim)


def two_step_family(dim=6, center_dim=2, seed=0, brackets=None, density=1.0) -> CatalogEntry:
    """
    Random two-step nilpotent algebra with a random closed nondegenerate ``sigma``.

    The last ``center_dim`` basis vectors span a subspace receiving every
    bracket of the first ``dim - center_dim`` vectors, so all double brackets
    vanish. ``brackets`` overrides the random table (same ``(i, j, k, c)``
    format as :class:`LieAlgebra`). ``sigma`` is a random element of the
    space of closed 2-forms; draws are repeated with fresh randomness from
    ``seed`` until one is nondegenerate.

    Raises
    ------
    GenerationError
        Odd dimension, abelian table, or no nondegenerate closed form found.
    """
    if dim % 2 or dim < 2:
        raise GenerationError("dimension must be even and positive")
    if not 1 <= center_dim < dim:
        raise GenerationError("need 1 <= center_dim < dim")
    rng = np.random.default_rng(seed)
    gens = dim - center_dim
    for _ in range(GENERATION_RETRIES):
        if brackets is None:
            entries = []
            for i, j in combinations(range(gens), 2):
                for k in range(gens, dim):
                    if rng.random() < density:
                        entries.append((i, j, k, float(rng.standard_normal())))
        else:
            entries = list(brackets)
            for i, j, k, _ in entries:
                if i >= gens or j >= gens or k < gens:
                    raise GenerationError("brackets must map generators into the central subspace")
        alg = LieAlgebra(dim, tuple(entries))
        if liealg.is_abelian(alg):
            if brackets is not None:
                raise GenerationError("two-step nilpotent algebras must be non-abelian")
            continue
        sigma = _random_symplectic(alg, rng)
        if sigma is not None:
            return CatalogEntry(f"two-step-{dim}-{center_dim}-{seed}", alg, sigma_direct=sigma,
                                expected=Expected(lam=0.0, s=0.0, dim_m=dim, dim_k=0),
                                params={"dim": dim, "center_dim": center_dim, "seed": seed})
    raise GenerationError("no nondegenerate closed 2-form found for the sampled brackets")


def random_solvable(dim=4, abelian_dim=None, seed=0) -> CatalogEntry:
    """
    Random solvable symplectic algebra ``R^a`` acting on ``R^b`` by commuting
    derivations ``D_i = P diag(w_i) P^{-1}``, plus a random closed
    nondegenerate ``sigma``. Generally not unimodular.

    Raises
    ------
    GenerationError
        If no nondegenerate closed form is found within the retry budget.
    """
    if dim % 2 or dim < 2:
        raise GenerationError("dimension must be even and positive")
    a = dim // 2 if abelian_dim is None else abelian_dim
    b = dim - a
    if not 1 <= a < dim:
        raise GenerationError("need 1 <= abelian_dim < dim")
    rng = np.random.default_rng(seed)
    for _ in range(GENERATION_RETRIES):
        P = rng.standard_normal((b, b)) + 2 * np.eye(b)
        Pinv = np.linalg.inv(P)
        W = rng.standard_normal((a, b))
        C = np.zeros((dim, dim, dim))
        for i in range(a):
            D = P @ np.diag(W[i]) @ Pinv
            # [t_i, y_j] = D y_j
            C[i, a:, a:] = D.T
            C[a:, i, a:] = -D.T
        alg = LieAlgebra.from_tensor(C)
        sigma = _random_symplectic(alg, rng)
        if sigma is not None:
            return CatalogEntry(f"solvable-{dim}-{a}-{seed}", alg, sigma_direct=sigma,
                                params={"dim": dim, "abelian_dim": a, "seed": seed})
    raise GenerationError("no nondegenerate closed 2-form found for the sampled algebra")


CATALOG_NAMES = ("kodaira-thurston", "so-twistor", "so-period-domain", "two-step", "solvable")


def build(name, n=None, p=None, q=None, seed=0, dim=None) -> CatalogEntry:
    """Look up a catalog entry by name (as used by the command line)."""
    if name == "kodaira-thurston":
        return kodaira_thurston()
    if name == "so-twistor":
        if n is None:
            raise InputError("so-twistor needs --n")
        return so_twistor(n)
    if name == "so-period-domain":
        if p is None or q is None:
            raise InputError("so-period-domain needs --p and --q")
        return so_period_domain(p, q)
    if name == "two-step":
        return two_step_family(dim=dim or 6, seed=seed)
    if name == "solvable":
        return random_solvable(dim=dim or 4, seed=seed)
    raise InputError(f"unknown catalog entry {name!r}; choose from {', '.join(CATALOG_NAMES)}")
