"""Dense symmetric eigenvalue routines for compressed multiplier matrices.

Small matrices go through a cyclic Jacobi sweep with threshold skipping;
anything above 512x512 only needs its spectral norm, which power iteration
on A*A delivers without a full decomposition.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError, NumericalFailure

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 50
POWER_TOL = 1e-12
POWER_MAX_ITER = 20_000
POWER_CROSSOVER = 512


def _check_symmetric(A) -> np.ndarray:
    M = np.array(A, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ConfigError(f"matrix must be square, got shape {M.shape}")
    if M.size and not np.allclose(M, M.T, rtol=0.0, atol=1e-12 * (1 + np.abs(M).max())):
        raise ConfigError("matrix must be symmetric")
    return M


def jacobi_eigenvalues(
    A, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> np.ndarray:
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps rotate every off-diagonal pair in row order; early sweeps skip
    pivots below a shrinking threshold so nearly diagonal matrices converge
    in O(1) sweeps.  Returns eigenvalues ascending.
    """
    M = _check_symmetric(A)
    n = M.shape[0]
    if n <= 1:
        return np.diagonal(M).copy()
    scale = max(1.0, float(np.abs(M).max()))

    for sweep in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(M, -1) ** 2) * 2.0)
        if off <= tol * scale:
            return np.sort(np.diagonal(M).copy())
        # threshold skipping: ignore tiny pivots during the first sweeps
        thresh = 0.2 * off / (n * n) if sweep < 3 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = M[p, q]
                if abs(apq) <= thresh or apq == 0.0:
                    continue
                diff = M[q, q] - M[p, p]
                if abs(diff) > abs(apq) * 1.0e150:
                    t = apq / diff  # asymptotic rotation, avoids overflow in theta
                else:
                    theta = diff / (2.0 * apq)
                    t = np.sign(theta) if theta != 0 else 1.0
                    t = t / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p = M[:, p].copy()
                col_q = M[:, q].copy()
                M[:, p] = c * col_p - s * col_q
                M[:, q] = s * col_p + c * col_q
                row_p = M[p, :].copy()
                row_q = M[q, :].copy()
                M[p, :] = c * row_p - s * row_q
                M[q, :] = s * row_p + c * row_q
                M[p, q] = 0.0
                M[q, p] = 0.0

    off = np.sqrt(np.sum(np.tril(M, -1) ** 2) * 2.0)
    if off <= tol * scale:
        return np.sort(np.diagonal(M).copy())
    raise NumericalFailure(
        f"Jacobi sweep did not converge in {max_sweeps} sweeps "
        f"(residual {off:.3e})"
    )


def power_spectral_norm(
    A, tol: float = POWER_TOL, max_iter: int = POWER_MAX_ITER, seed: int = 0
) -> float:
    """Spectral norm of a symmetric matrix via power iteration on A @ A.

    A @ A is positive semidefinite with top eigenvalue ||A||^2, so the
    iteration is monotone and sign-proof.
    """
    M = _check_symmetric(A)
    n = M.shape[0]
    if n == 0:
        return 0.0
    B = M @ M
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    prev = 0.0
    for _ in range(max_iter):
        w = B @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        v = w / norm
        est = float(v @ (B @ v))
        if abs(est - prev) <= tol * max(1.0, est):
            return float(np.sqrt(max(est, 0.0)))
        prev = est
    raise NumericalFailure(
        f"power iteration did not settle in {max_iter} steps"
    )


def spectral_norm(A) -> float:
    """max |eigenvalue| of a symmetric matrix."""
    M = _check_symmetric(A)
    if M.shape[0] == 0:
        return 0.0
    if M.shape[0] > POWER_CROSSOVER:
        return power_spectral_norm(M)
    eigs = jacobi_eigenvalues(M)
    return float(np.max(np.abs(eigs)))
