"""Hessian assembly, symmetric eigendecomposition, and equilibrium stability.

The Hessian of the flow potential at a phase point has off-diagonal entries
-w_uv cos(theta_u - theta_v) on edges and row sums zero, so the all-ones
vector is always in its kernel.  Stability of an equilibrium is decided by
the smallest eigenvalue on the hyperplane orthogonal to all-ones, obtained
by shifting the all-ones eigenvalue out of the way with a rank-one update.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import EQ_TOL, _check_dim, residual
from .errors import NoConvergenceError, NotAnEquilibriumError, NotSymmetricError

__all__ = ["SymSpectrum", "StabilityVerdict", "hessian", "eigen", "stability", "JACOBI_AUTO_MAX"]

# cyclic Jacobi is the reference solver; above this order eigen() dispatches
# to LAPACK, which is needed to keep dense certificates at n = 8k tractable
JACOBI_AUTO_MAX = 48


def hessian(g, theta) -> np.ndarray:
    """Second derivative matrix of the potential at theta (dense, symmetric).

    At a consensus this is exactly the weighted Laplacian of the graph.
    """
    theta = _check_dim(g, theta)
    u, v, w = g.edge_arrays()
    c = w * np.cos(theta[u] - theta[v])
    h = np.zeros((g.n, g.n))
    h[u, v] = -c
    h[v, u] = -c
    diag = np.bincount(u, weights=c, minlength=g.n) + np.bincount(v, weights=c, minlength=g.n)
    np.fill_diagonal(h, diag)
    return h


@dataclass
class SymSpectrum:
    """Sorted eigenvalues, optional orthonormal eigenvectors, and the solver's residual bound."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    residual: float


def _jacobi(a: np.ndarray, want_vectors: bool, max_sweeps: int):
    """Cyclic Jacobi rotations on a copy of a; returns (diagonal values, vectors)."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    vecs = np.eye(n) if want_vectors else None
    norm = float(np.linalg.norm(a, "fro"))
    if norm == 0.0 or n < 2:
        return np.diag(a).copy(), vecs
    target = 1e-12 * norm
    # rotations this small cannot push the off-diagonal norm past the target
    skip = target / (2.0 * n)
    sweeps = 0
    while True:
        off = float(np.sqrt(max(0.0, np.sum(a * a) - np.sum(np.diag(a) ** 2))))
        if off < target:
            return np.diag(a).copy(), vecs
        if sweeps >= max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau)) if tau != 0.0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    vp = vecs[:, p].copy()
                    vq = vecs[:, q].copy()
                    vecs[:, p] = c * vp - s * vq
                    vecs[:, q] = s * vp + c * vq
    raise NoConvergenceError(f"Jacobi sweeps exceeded {max_sweeps} without reaching tolerance")


def eigen(m, want_vectors: bool = False, *, method: str = "auto", max_sweeps: int = 100) -> SymSpectrum:
    """Eigendecomposition of a symmetric matrix with eigenvalues sorted ascending.

    method "jacobi" runs cyclic Jacobi sweeps until the off-diagonal
    Frobenius norm falls below 1e-12 of the matrix norm; "lapack" uses
    numpy.linalg.eigh; "auto" picks Jacobi up to order JACOBI_AUTO_MAX.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSymmetricError(f"expected a square matrix, got shape {m.shape}")
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    if m.size and float(np.max(np.abs(m - m.T))) > 1e-12 * (1.0 + scale):
        raise NotSymmetricError("matrix is not symmetric to 1e-12")
    sym = 0.5 * (m + m.T)
    if method == "auto":
        method = "jacobi" if sym.shape[0] <= JACOBI_AUTO_MAX else "lapack"
    if method == "jacobi":
        vals, vecs = _jacobi(sym, want_vectors, max_sweeps)
        order = np.argsort(vals, kind="stable")
        vals = vals[order]
        if vecs is not None:
            vecs = vecs[:, order]
    elif method == "lapack":
        if want_vectors:
            vals, vecs = np.linalg.eigh(sym)
        else:
            vals, vecs = np.linalg.eigvalsh(sym), None
    else:
        raise ValueError(f"unknown method {method!r}")
    if vecs is not None:
        res = float(np.max(np.abs(sym @ vecs - vecs * vals))) if sym.size else 0.0
    else:
        res = 1e-12 * float(np.linalg.norm(sym, "fro"))
    return SymSpectrum(eigenvalues=vals, eigenvectors=vecs, residual=res)


@dataclass(frozen=True)
class StabilityVerdict:
    """Spectral verdict for an equilibrium.

    algebraic_connectivity is the smallest Hessian eigenvalue on the
    hyperplane orthogonal to all-ones; the verdict is its sign at zero_tol
    resolution.
    """

    algebraic_connectivity: float
    kernel_dim_est: int
    verdict: str
    zero_tol: float


def stability(g, theta, *, zero_tol: float | None = None, eq_tol: float = EQ_TOL) -> StabilityVerdict:
    """Classify an equilibrium as stable, marginal, or unstable.

    The all-ones kernel direction is moved out of the way by adding
    shift * J/n (J the all-ones matrix), which changes no other eigenvalue;
    the smallest eigenvalue of the shifted matrix is then the algebraic
    connectivity of the equilibrium.  zero_tol defaults to a scale-aware
    1e-9 * (1 + max row sum) so exact marginal cases land on "marginal".
    """
    theta = _check_dim(g, theta)
    res = residual(g, theta)
    if res >= eq_tol:
        raise NotAnEquilibriumError(f"residual {res:.3e} >= {eq_tol:.3e}")
    h = hessian(g, theta)
    n = g.n
    hnorm = float(np.max(np.sum(np.abs(h), axis=1))) if n else 0.0
    ztol = 1e-9 * (1.0 + hnorm) if zero_tol is None else float(zero_tol)
    full = eigen(h).eigenvalues
    kernel_dim = int(np.sum(np.abs(full) < ztol))
    shift = 1.0 + hnorm
    shifted = h + shift * np.full((n, n), 1.0 / n)
    a = float(eigen(shifted).eigenvalues[0])
    if a > ztol:
        verdict = "stable"
    elif a < -ztol:
        verdict = "unstable"
    else:
        verdict = "marginal"
    return StabilityVerdict(
        algebraic_connectivity=a,
        kernel_dim_est=kernel_dim,
        verdict=verdict,
        zero_tol=ztol,
    )
