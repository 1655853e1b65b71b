"""Dense linear-algebra kernels.

The symmetric eigensolver is a plain cyclic Jacobi iteration; it is slow in
big dimensions but the matrices handled here are at most a few dozen rows,
and the fixed sweep order makes results reproducible run to run.
"""
import numpy as np

from .errors import InputError, SingularError

RANK_TOL = 1e-7

_MAX_SWEEPS = 100


def _as_square(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InputError("matrix has non-finite entries")
    return A


def sym_eig(A, tol=1e-9):
    """
    Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    A : (n, n) array_like
        Symmetric matrix. ``||A - A^T||_inf <= tol * ||A||_inf`` is required.
    tol : float, optional
        Relative symmetry tolerance.

    Returns
    -------
    w : (n,) ndarray
        Eigenvalues in ascending order.
    Q : (n, n) ndarray
        Orthogonal matrix whose columns are the matching eigenvectors,
        so that ``A = Q diag(w) Q^T``.
    """
    A = _as_square(A)
    n = A.shape[0]
    scale = np.abs(A).sum(axis=1).max() if n else 0.0
    if np.abs(A - A.T).sum(axis=1).max(initial=0.0) > tol * scale:
        raise InputError("sym_eig: matrix is not symmetric")
    D = 0.5 * (A + A.T)
    Q = np.eye(n)
    if n < 2 or scale == 0.0:
        w = np.diag(D).copy()
        order = np.argsort(w, kind="stable")
        return w[order], Q[:, order]

    frob = np.linalg.norm(D)
    eps = np.finfo(float).eps
    for _ in range(_MAX_SWEEPS):
        off = np.linalg.norm(D - np.diag(np.diag(D)))
        if off <= eps * frob:
            break
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = D[p, q]
                # skip entries already negligible against both diagonal terms
                if abs(apq) <= eps * 1e-2 * frob:
                    continue
                rotated = True
                theta = (D[q, q] - D[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                Dp = D[:, p].copy()
                Dq = D[:, q].copy()
                D[:, p] = c * Dp - s * Dq
                D[:, q] = s * Dp + c * Dq
                Dp = D[p, :].copy()
                Dq = D[q, :].copy()
                D[p, :] = c * Dp - s * Dq
                D[q, :] = s * Dp + c * Dq
                D[p, q] = D[q, p] = 0.0
                Qp = Q[:, p].copy()
                Qq = Q[:, q].copy()
                Q[:, p] = c * Qp - s * Qq
                Q[:, q] = s * Qp + c * Qq
        if not rotated:
            break
    w = np.diag(D).copy()
    order = np.argsort(w, kind="stable")
    return w[order], Q[:, order]


def nullspace(A, tol=RANK_TOL):
    """
    Orthonormal basis of the null space of ``A``.

    The numerical rank counts singular values above ``tol`` times the largest
    one. Returns an ``(cols, k)`` array, possibly with ``k == 0``.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    ncols = A.shape[1]
    if A.size == 0:
        return np.eye(ncols)
    _, s, vt = np.linalg.svd(A)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > tol * smax)) if smax > 0 else 0
    return vt[rank:].T.copy()


def orthonormalize(X, tol=RANK_TOL):
    """Orthonormal basis of the column span of ``X`` (numerical rank by SVD)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] == 0:
        return np.zeros((X.shape[0], 0))
    u, s, _ = np.linalg.svd(X, full_matrices=False)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > tol * smax)) if smax > 0 else 0
    return u[:, :rank].copy()


def rank(A, tol=RANK_TOL):
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > tol * s[0])) if s[0] > 0 else 0


def spd_sqrt(A):
    """
    Symmetric positive-definite square root.

    Raises
    ------
    SingularError
        If the smallest eigenvalue is not above ``1e-12`` times the largest.
    """
    A = _as_square(A)
    w, Q = sym_eig(A)
    if w.size == 0:
        return A.copy()
    if not (w[0] > 1e-12 * w[-1] and w[-1] > 0):
        raise SingularError("spd_sqrt: matrix is not positive definite")
    S = (Q * np.sqrt(w)) @ Q.T
    return 0.5 * (S + S.T)


def solve(A, b):
    """Solve ``A x = b``; raises :class:`SingularError` on (near) singular ``A``."""
    A = _as_square(A)
    b = np.asarray(b, dtype=float)
    if b.shape[0] != A.shape[0]:
        raise InputError("solve: dimension mismatch")
    if A.size and np.linalg.cond(A) > 1e13:
        raise SingularError("solve: matrix is numerically singular")
    try:
        x = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise SingularError("solve: singular matrix") from exc
    if not np.all(np.isfinite(x)):
        raise SingularError("solve: singular matrix")
    bnorm = np.linalg.norm(b)
    resid = np.linalg.norm(A @ x - b)
    if resid > 1e-9 * max(bnorm, np.linalg.norm(A) * np.linalg.norm(x)):
        raise SingularError("solve: matrix is numerically singular")
    return x
