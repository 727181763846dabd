"""Trace-one null vector of the Liouvillian and its diagnostics."""

import time
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .lindblad import devectorize

METHODS = ("auto", "dense_lu", "sparse_lu", "inverse_iteration", "krylov")
DENSE_MAX_SITES = 5
SPECTRUM_MAX_SITES = 4
ZERO_EIG_TOL = 1e-10


class SteadyStateError(RuntimeError):
    """The steady-state solve failed."""


class NonUniqueSteadyState(SteadyStateError):
    """The trace-augmented system is singular: more than one stationary state."""


class ConvergenceError(SteadyStateError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (residual attained {residual:.3e})")
        self.residual = residual


@dataclass
class SteadyStateResult:
    rho: np.ndarray
    residual: float
    trace_defect: float
    hermiticity_defect: float
    min_eigenvalue: float
    solver: str
    wall_time: float

    @property
    def n_sites(self):
        return int(round(np.log2(self.rho.shape[0])))

    def is_valid(self, residual_tol=1e-9, trace_tol=1e-12, herm_tol=1e-10, positivity_tol=1e-9):
        return (self.residual < residual_tol and self.trace_defect < trace_tol
                and self.hermiticity_defect < herm_tol and self.min_eigenvalue >= -positivity_tol)


def _hilbert_dim(M):
    n = M.shape[0]
    d = int(round(np.sqrt(n)))
    if M.shape != (n, n) or d * d != n:
        raise ValueError(f"Liouvillian must be square with a perfect-square size, got {M.shape}")
    return d


def _trace_row(d):
    row = np.zeros(d * d, dtype=complex)
    row[:: d + 1] = 1.0
    return row


def check_trace_preserving(M, tol=1e-10):
    d = _hilbert_dim(M)
    lhs = sp.csr_matrix(M).T @ _trace_row(d)
    return float(np.max(np.abs(lhs))) < tol * max(1.0, abs(M).max())


def augmented_system(M):
    """M with row 0 (the rho_11 coordinate) replaced by the trace functional.

    Returns the sparse CSC matrix and the unit right-hand side.
    """
    d = _hilbert_dim(M)
    n = d * d
    keep = np.ones(n)
    keep[0] = 0.0
    diag_idx = np.arange(0, n, d + 1)
    trace = sp.csr_matrix((np.ones(d, dtype=complex), (np.zeros(d, dtype=int), diag_idx)), shape=(n, n))
    A = sp.diags(keep) @ sp.csr_matrix(M, dtype=complex) + trace
    rhs = np.zeros(d * d, dtype=complex)
    rhs[0] = 1.0
    return A.tocsc(), rhs


def _solve_dense(A, rhs):
    with warnings.catch_warnings():
        # singularity is detected from the pivots below
        warnings.simplefilter("ignore", la.LinAlgWarning)
        lu, piv = la.lu_factor(A.toarray(), check_finite=False)
    pivots = np.abs(np.diag(lu))
    if pivots.min() <= 1e-13 * pivots.max():
        raise NonUniqueSteadyState("trace-augmented Liouvillian is singular; stationary state is not unique")
    return la.lu_solve((lu, piv), rhs, check_finite=False)


def _sparse_factor(A):
    try:
        return spla.splu(A.tocsc(), permc_spec="COLAMD")
    except RuntimeError as exc:  # SuperLU: "Factor is exactly singular"
        raise NonUniqueSteadyState(f"trace-augmented Liouvillian is singular: {exc}") from exc


def _solve_krylov(A, rhs, tol, maxiter):
    try:
        ilu = spla.spilu(A.tocsc(), drop_tol=1e-6, fill_factor=20)
        precond = spla.LinearOperator(A.shape, ilu.solve, dtype=complex)
    except RuntimeError:
        precond = None
    x, info = spla.gmres(A, rhs, rtol=tol, atol=0.0, restart=200, maxiter=maxiter, M=precond)
    if info != 0:
        raise ConvergenceError(f"GMRES did not converge in {maxiter} restarts", float(np.linalg.norm(A @ x - rhs)))
    return x


def _inverse_iteration(M, shift, tol, maxiter, x0):
    n = M.shape[0]
    d = _hilbert_dim(M)
    lu = _sparse_factor(sp.csc_matrix(M) - shift * sp.identity(n, format="csc"))
    x = _trace_row(d) / d if x0 is None else np.asarray(x0, dtype=complex).ravel().copy()
    res = np.inf
    for _ in range(maxiter):
        x = lu.solve(x)
        x /= x[:: d + 1].sum()
        res = np.linalg.norm(M @ x)
        if res < tol:
            return x
    raise ConvergenceError(f"inverse iteration did not converge in {maxiter} steps", float(res))


def solve_steady(M, method="auto", *, tol=1e-10, maxiter=50, shift=1e-9, x0=None):
    """Unique trace-one stationary state of the Liouvillian ``M``.

    ``auto`` picks dense LU up to 5 sites and sparse LU beyond. The output
    is Hermitized before the diagnostics are computed; the reported
    Hermiticity defect is that of the raw solution.
    """
    if method not in METHODS:
        raise ValueError(f"unknown solver {method!r}; expected one of {METHODS}")
    M = sp.csr_matrix(M, dtype=complex)
    d = _hilbert_dim(M)
    if not check_trace_preserving(M):
        raise ValueError("Liouvillian is not trace preserving")
    if method == "auto":
        method = "dense_lu" if d <= 2**DENSE_MAX_SITES else "sparse_lu"

    start = time.perf_counter()
    if method == "inverse_iteration":
        x = _inverse_iteration(M, shift, tol, maxiter, x0)
    else:
        A, rhs = augmented_system(M)
        if method == "dense_lu":
            x = _solve_dense(A, rhs)
        elif method == "sparse_lu":
            x = _sparse_factor(A).solve(rhs)
        else:
            x = _solve_krylov(A, rhs, min(tol, 1e-12), maxiter)
    elapsed = time.perf_counter() - start

    raw = devectorize(x)
    herm_defect = float(np.max(np.abs(raw - raw.conj().T)))
    rho = 0.5 * (raw + raw.conj().T)
    rho /= np.trace(rho).real
    if not np.all(np.isfinite(rho)):
        raise NonUniqueSteadyState("non-finite steady state; augmented system is singular")
    return SteadyStateResult(
        rho=rho,
        residual=float(np.linalg.norm(M @ rho.reshape(-1, order="F"))),
        trace_defect=float(abs(np.trace(rho) - 1.0)),
        hermiticity_defect=herm_defect,
        min_eigenvalue=float(np.linalg.eigvalsh(rho)[0]),
        solver=method,
        wall_time=elapsed,
    )


def spectral_check(M, zero_tol=ZERO_EIG_TOL):
    """Return (max Re of nonzero eigenvalues, number of ~zero eigenvalues).

    Only for chains of at most 4 sites; the full spectrum of larger
    Liouvillians is refused.
    """
    d = _hilbert_dim(M)
    if d > 2**SPECTRUM_MAX_SITES:
        raise ValueError(f"full spectrum refused for Hilbert dimension {d} (> {2**SPECTRUM_MAX_SITES})")
    dense = M.toarray() if sp.issparse(M) else np.asarray(M)
    eig = la.eigvals(dense)
    zero = np.abs(eig) <= zero_tol
    nonzero = eig[~zero]
    max_re = float(nonzero.real.max()) if nonzero.size else float("-inf")
    return max_re, int(zero.sum())
