"""Finite-dimensional real Lie algebras given by structure constants.

A bracket ``[e_i, e_j] = sum_k c e_k`` is stored once, with ``i < j``; the
dense tensor ``C[i, j, k]`` is expanded lazily and cached on the instance.
All computations use the abstract Lie-algebra bracket.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .errors import InputError
from .numerics import RANK_TOL, nullspace, orthonormalize

JACOBI_TOL = 1e-9


@dataclass(frozen=True)
class ValidationReport:
    jacobi_residual: float
    ok: bool


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """
    Real Lie algebra of dimension ``dim``.

    Parameters
    ----------
    dim : int
        Dimension of the algebra.
    brackets : sequence of (i, j, k, c)
        Nonzero structure constants ``[e_i, e_j] = ... + c e_k ...``,
        0-based. Entries with ``i > j`` are flipped to ``(j, i, k, -c)``;
        repeated entries add up.
    labels : sequence of str, optional
        Names of the basis vectors.
    """

    dim: int
    brackets: tuple = ()
    labels: Optional[tuple] = None

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise InputError(f"dim must be a positive integer, got {self.dim!r}")
        merged = {}
        for entry in self.brackets:
            if len(entry) != 4:
                raise InputError(f"bracket entry must be (i, j, k, c), got {entry!r}")
            i, j, k, c = entry
            for idx in (i, j, k):
                if int(idx) != idx or not 0 <= idx < self.dim:
                    raise InputError(f"bracket index {idx!r} out of range for dim {self.dim}")
            i, j, k, c = int(i), int(j), int(k), float(c)
            if not np.isfinite(c):
                raise InputError(f"non-finite structure constant in {entry!r}")
            if i == j:
                if c != 0.0:
                    raise InputError(f"[e_{i}, e_{i}] must vanish, got {entry!r}")
                continue
            if i > j:
                i, j, c = j, i, -c
            merged[(i, j, k)] = merged.get((i, j, k), 0.0) + c
        clean = tuple((i, j, k, c) for (i, j, k), c in sorted(merged.items()) if c != 0.0)
        object.__setattr__(self, "brackets", clean)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.dim:
                raise InputError("number of labels differs from dim")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_tensor(cls, C, labels=None, cutoff=1e-13):
        """Build from a dense ``(n, n, n)`` antisymmetric tensor; tiny entries are dropped."""
        C = np.asarray(C, dtype=float)
        n = C.shape[0]
        if C.shape != (n, n, n):
            raise InputError(f"structure tensor must be (n, n, n), got {C.shape}")
        if np.max(np.abs(C + C.transpose(1, 0, 2)), initial=0.0) > 1e-12 * max(1.0, np.abs(C).max()):
            raise InputError("structure tensor is not antisymmetric")
        entries = []
        for i in range(n):
            for j in range(i + 1, n):
                for k in np.nonzero(np.abs(C[i, j]) > cutoff)[0]:
                    entries.append((i, j, int(k), float(C[i, j, k])))
        return cls(n, tuple(entries), labels)

    @cached_property
    def tensor(self) -> np.ndarray:
        """Dense structure tensor ``C[i, j, k]`` with ``C[j, i] = -C[i, j]``."""
        C = np.zeros((self.dim, self.dim, self.dim))
        for i, j, k, c in self.brackets:
            C[i, j, k] += c
            C[j, i, k] -= c
        C.setflags(write=False)
        return C

    @cached_property
    def ad_tensor(self) -> np.ndarray:
        """``ad[i]`` is the matrix of ``ad_{e_i}``; column ``j`` is ``[e_i, e_j]``."""
        A = np.ascontiguousarray(self.tensor.transpose(0, 2, 1))
        A.setflags(write=False)
        return A

    def label(self, i):
        return self.labels[i] if self.labels else f"e{i + 1}"

    def to_dict(self):
        out = {"dim": int(self.dim), "brackets": [[i, j, k, c] for i, j, k, c in self.brackets]}
        if self.labels:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_dict(cls, data):
        try:
            dim = data["dim"]
            brackets = data.get("brackets", [])
        except (TypeError, KeyError) as exc:
            raise InputError(f"algebra JSON needs 'dim' and 'brackets': {exc}") from exc
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise InputError("'dim' must be an integer")
        return cls(dim, tuple(tuple(b) for b in brackets), data.get("labels"))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _vec(algebra, X, name="X"):
    X = np.asarray(X, dtype=float)
    if X.shape != (algebra.dim,):
        raise InputError(f"{name} must have length {algebra.dim}, got shape {X.shape}")
    return X


def basis_vector(algebra, i):
    e = np.zeros(algebra.dim)
    e[i] = 1.0
    return e


def bracket(algebra, X, Y):
    """Lie bracket ``[X, Y] = sum_ijk c_ijk X_i Y_j e_k``."""
    X = _vec(algebra, X, "X")
    Y = _vec(algebra, Y, "Y")
    return np.einsum("i,j,ijk->k", X, Y, algebra.tensor)


def ad_matrix(algebra, X):
    """Matrix of ``ad_X``; column ``j`` equals ``bracket(X, e_j)``."""
    X = _vec(algebra, X)
    return np.einsum("i,ikj->kj", X, algebra.ad_tensor)


def killing_form(algebra):
    """Killing matrix ``B_ij = tr(ad_{e_i} ad_{e_j})``."""
    ad = algebra.ad_tensor
    B = np.einsum("iab,jba->ij", ad, ad)
    return 0.5 * (B + B.T)


def jacobi_residual(algebra):
    """Max-norm of ``[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`` over triples."""
    C = algebra.tensor
    # J[i,j,k,:] = [[e_i,e_j],e_k]
    J = np.einsum("ijm,mkl->ijkl", C, C)
    total = J + J.transpose(1, 2, 0, 3) + J.transpose(2, 0, 1, 3)
    return float(np.max(np.abs(total), initial=0.0))


def validate(algebra, tol=JACOBI_TOL):
    res = jacobi_residual(algebra)
    return ValidationReport(jacobi_residual=res, ok=bool(res <= tol))


def ce_differential(algebra, theta):
    """Chevalley-Eilenberg differential of a one-form: ``(i, j) -> -theta([e_i, e_j])``."""
    theta = _vec(algebra, theta, "theta")
    return -(algebra.tensor @ theta)


def ce_differential_2(algebra, omega):
    """
    Differential of a 2-cochain, as a ``(n, n, n)`` array.

    ``d omega(X, Y, Z) = -omega([X,Y],Z) - omega([Y,Z],X) - omega([Z,X],Y)``.
    """
    omega = np.asarray(omega, dtype=float)
    C = algebra.tensor
    T = np.einsum("ijm,mk->ijk", C, omega)
    return -(T + T.transpose(1, 2, 0) + T.transpose(2, 0, 1))


def is_semisimple(algebra, tol=RANK_TOL):
    s = np.linalg.svd(killing_form(algebra), compute_uv=False)
    return bool(s[0] > 0 and s[-1] > tol * s[0])


def is_unimodular(algebra, tol=JACOBI_TOL):
    traces = np.einsum("ijj->i", algebra.tensor)
    return bool(np.max(np.abs(traces), initial=0.0) <= tol)


def is_abelian(algebra, tol=JACOBI_TOL):
    return bool(np.max(np.abs(algebra.tensor), initial=0.0) <= tol)


def is_two_step_nilpotent(algebra, tol=JACOBI_TOL):
    if is_abelian(algebra, tol):
        return False
    C = algebra.tensor
    double = np.einsum("ijm,mkl->ijkl", C, C)
    return bool(np.max(np.abs(double), initial=0.0) <= tol)


def center(algebra, tol=RANK_TOL):
    """Orthonormal basis (columns) of the center ``{X : [X, g] = 0}``."""
    n = algebra.dim
    # row block j: coefficients of [X, e_j] as linear functions of X
    M = algebra.tensor.transpose(1, 2, 0).reshape(n * n, n)
    return nullspace(M, tol)


def derived_subalgebra(algebra, tol=RANK_TOL):
    """Orthonormal basis (columns) of ``[g, g]``."""
    n = algebra.dim
    return orthonormalize(algebra.tensor.reshape(n * n, n).T, tol)


def from_matrix_basis(mats: Sequence[np.ndarray], labels=None, tol=1e-10):
    """
    Structure constants of the matrix Lie algebra spanned by ``mats``.

    Each commutator is expanded in the basis by least squares; a residual
    above ``tol`` means the span is not closed under commutators.

    Returns
    -------
    algebra : LieAlgebra
    to_coords : callable
        Maps a matrix of the span to its coordinate vector.
    """
    mats = [np.asarray(m, dtype=float) for m in mats]
    n = len(mats)
    flat = np.stack([m.ravel() for m in mats], axis=1)
    pinv = np.linalg.pinv(flat)

    def to_coords(M):
        M = np.asarray(M, dtype=float).ravel()
        x = pinv @ M
        res = np.linalg.norm(flat @ x - M)
        if res > tol * max(1.0, np.linalg.norm(M)):
            raise InputError(f"matrix is not in the span of the basis (residual {res:.2e})")
        return x

    C = np.zeros((n, n, n))
    for i in range(n):
        for j in range(i + 1, n):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            C[i, j] = to_coords(comm)
            C[j, i] = -C[i, j]
    # commutators of elementary matrices have integer coordinates; remove pinv rounding
    nearest = np.round(C)
    snap = np.abs(C - nearest) < 1e-12
    C[snap] = nearest[snap]
    return LieAlgebra.from_tensor(C, labels), to_coords
