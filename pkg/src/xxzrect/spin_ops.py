"""Pauli matrices and their Kronecker embedding into an N-site chain.

Basis convention: |up> = (1, 0), |down> = (0, 1), so sigma^z |up> = +|up>.
Site 1 is the leftmost (slowest-varying) Kronecker factor.
"""

from functools import reduce

import numpy as np

_PAULI = {
    "identity": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    # (sigma^x +/- i sigma^y) / 2
    "plus": np.array([[0, 1], [0, 0]], dtype=complex),
    "minus": np.array([[0, 0], [1, 0]], dtype=complex),
}
_ALIASES = {"i": "identity", "+": "plus", "-": "minus"}


def pauli(kind):
    """Return a fresh copy of the 2x2 matrix named by ``kind``.

    ``kind`` is one of ``x, y, z, plus, minus, identity``.
    """
    key = _ALIASES.get(kind, kind)
    try:
        return _PAULI[key].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli kind {kind!r}") from None


def _check_site(site, n_sites):
    if n_sites < 1:
        raise ValueError(f"chain length must be >= 1, got {n_sites}")
    if not 1 <= site <= n_sites:
        raise ValueError(f"site {site} outside 1..{n_sites}")


def embed(op, site, n_sites):
    """Place the 2x2 ``op`` at ``site`` (1-based) of an ``n_sites`` chain."""
    _check_site(site, n_sites)
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise ValueError(f"local operator must be 2x2, got {op.shape}")
    left = np.eye(2 ** (site - 1), dtype=complex)
    right = np.eye(2 ** (n_sites - site), dtype=complex)
    return np.kron(np.kron(left, op), right)


def two_site(op_a, site_a, op_b, site_b, n_sites):
    """Product of two single-site operators on distinct sites."""
    _check_site(site_a, n_sites)
    _check_site(site_b, n_sites)
    if site_a == site_b:
        raise ValueError("two_site needs distinct sites")
    return embed(op_a, site_a, n_sites) @ embed(op_b, site_b, n_sites)


def pauli_string(ops, n_sites):
    """Kronecker product of single-site operators given as ``{site: op}``.

    Sites absent from the mapping carry the identity. Operators may be
    matrices or Pauli names.
    """
    factors = []
    for site in range(1, n_sites + 1):
        op = ops.get(site, "identity")
        factors.append(pauli(op) if isinstance(op, str) else np.asarray(op, dtype=complex))
    for site in ops:
        _check_site(site, n_sites)
    return reduce(np.kron, factors)
