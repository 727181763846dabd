"""Boundary jump operators and the vectorized Liouvillian.

Vectorization stacks columns: vec([[a, b], [c, d]]) = (a, c, b, d), so
vec(A X B) = (B^T kron A) vec(X).
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .model import BoundarySpec, build_hamiltonian  # noqa: F401  (BoundarySpec re-exported)
from .spin_ops import embed, pauli

_AXIS_ROTATIONS = {
    "z": np.eye(2, dtype=complex),
    # exp(-i pi/4 sigma^y): sigma^z -> sigma^x
    "x": (np.eye(2) - 1j * pauli("y")) / np.sqrt(2),
    # exp(+i pi/4 sigma^x): sigma^z -> sigma^y
    "y": (np.eye(2) + 1j * pauli("x")) / np.sqrt(2),
}


def axis_rotation(axis):
    """Single-site unitary U with U sigma^z U^dag = sigma^axis."""
    return _AXIS_ROTATIONS[axis].copy()


@dataclass(frozen=True)
class JumpSet:
    """Jump operators (rates absorbed) grouped by the bath they belong to."""

    left: tuple
    right: tuple

    def __iter__(self):
        return iter(self.left + self.right)

    def __len__(self):
        return len(self.left) + len(self.right)


def _bath_pair(gamma, target, site, n_sites, axis="z"):
    U = axis_rotation(axis)
    plus = U @ pauli("plus") @ U.conj().T
    minus = U @ pauli("minus") @ U.conj().T
    return (
        np.sqrt(gamma / 2 * (1 + target)) * embed(plus, site, n_sites),
        np.sqrt(gamma / 2 * (1 - target)) * embed(minus, site, n_sites),
    )


def jump_operators(config):
    """Four jump operators, two on site 1 and two on site N.

    For ``z_target`` baths the left pair is sqrt(gamma/2 (1 +/- f_L)) sigma_1^+/-
    and likewise on the right with ``f_R``. For ``twisted_xy`` the same pairs
    are rotated so each bath targets ``kappa`` along its transverse axis.
    """
    bd, N, g = config.boundary, config.N, config.gamma
    if bd.kind == "z_target":
        left = _bath_pair(g, bd.f_L, 1, N)
        right = _bath_pair(g, bd.f_R, N, N)
    else:
        left = _bath_pair(g, bd.kappa, 1, N, bd.axes[0])
        right = _bath_pair(g, bd.kappa, N, N, bd.axes[1])
    return JumpSet(left=tuple(left), right=tuple(right))


def dissipator_apply(rho, jumps):
    """sum_s L rho L^dag - 1/2 {L^dag L, rho}, evaluated densely."""
    rho = np.asarray(rho)
    out = np.zeros_like(rho, dtype=complex)
    for L in jumps:
        L = np.asarray(L)
        if L.shape != rho.shape:
            raise ValueError(f"jump operator shape {L.shape} does not match rho {rho.shape}")
        LdL = L.conj().T @ L
        out += L @ rho @ L.conj().T - 0.5 * (LdL @ rho + rho @ LdL)
    return out


def lindblad_rhs(rho, H, jumps):
    """i[rho, H] + D(rho), the dense right-hand side of the master equation."""
    return 1j * (rho @ H - H @ rho) + dissipator_apply(rho, jumps)


def vectorize(A):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"vectorize needs a square matrix, got shape {A.shape}")
    return A.reshape(-1, order="F")


def devectorize(v):
    v = np.asarray(v).ravel()
    d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise ValueError(f"vector length {v.size} is not a perfect square")
    return v.reshape((d, d), order="F")


def build_liouvillian(H, jumps):
    """Sparse CSR generator M with d vec(rho)/dt = M vec(rho)."""
    H = sp.csr_matrix(H)
    d = H.shape[0]
    if H.shape != (d, d):
        raise ValueError(f"Hamiltonian must be square, got {H.shape}")
    eye = sp.identity(d, dtype=complex, format="csr")
    M = 1j * (sp.kron(H.T, eye) - sp.kron(eye, H))
    for L in jumps:
        L = sp.csr_matrix(L)
        if L.shape != (d, d):
            raise ValueError(f"jump operator shape {L.shape} does not match H {H.shape}")
        LdL = (L.conj().T @ L).tocsr()
        M = M + sp.kron(L.conj(), L) - 0.5 * sp.kron(eye, LdL) - 0.5 * sp.kron(LdL.T, eye)
    M = M.tocsr()
    M.eliminate_zeros()
    return M


def liouvillian_for(config, ops=None):
    """Convenience: assemble M straight from a chain configuration."""
    return build_liouvillian(build_hamiltonian(config, ops), jump_operators(config))
