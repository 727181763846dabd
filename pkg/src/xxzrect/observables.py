"""Spin and energy currents, magnetization profiles, flow homogeneity."""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .lindblad import dissipator_apply, jump_operators
from .model import ChainOperators, local_energy_terms

IMAG_TOL = 1e-10


class ComplexExpectationError(ValueError):
    """A nominally real expectation value came out with a large imaginary part."""


def expect(rho, op):
    """Tr(rho op) for Hermitian ``op``; complains about imaginary residue."""
    value = np.einsum("ij,ji->", rho, op)
    if abs(value.imag) > IMAG_TOL * max(1.0, abs(value.real)):
        raise ComplexExpectationError(f"expectation has imaginary part {value.imag:.3e}")
    return float(value.real)


def _n_sites(rho):
    n = int(round(np.log2(rho.shape[0])))
    if rho.shape != (2**n, 2**n):
        raise ValueError(f"density matrix must be 2^N square, got {rho.shape}")
    return n


class _ChainObservables:
    """Operator matrices needed by the current formulas, built once per config."""

    def __init__(self, config):
        self.config = config
        N = config.N
        self.ops = ops = ChainOperators(N)
        self.alphas, self.deltas = config.couplings.resolve(N)
        self.fields = config.field.resolve(N)
        self.spin = [
            2 * self.alphas[j - 1] * (ops("x", j) @ ops("y", j + 1) - ops("y", j) @ ops("x", j + 1))
            for j in range(1, N)
        ]
        jumps = jump_operators(config)
        self.left_jumps, self.right_jumps = jumps.left, jumps.right
        if N >= 3:
            self.terms = terms = local_energy_terms(config, ops)
            # index by site j = 2..N-1; entry j-2
            self.energy = [1j * _comm(terms.eps[j - 2], terms.eps[j - 1]) for j in range(2, N)]
            self.energy_xxz = [1j * _comm(terms.h[j - 2], terms.h[j - 1]) for j in range(2, N)]


def _comm(a, b):
    return a @ b - b @ a


@lru_cache(maxsize=64)
def chain_observables(config):
    return _ChainObservables(config)


def magnetization_profile(rho):
    N = _n_sites(rho)
    ops = ChainOperators(N)
    return [expect(rho, ops("z", i)) for i in range(1, N + 1)]


def spin_current(rho, config, j):
    """2 alpha_{j,j+1} <sigma_j^x sigma_{j+1}^y - sigma_j^y sigma_{j+1}^x>."""
    if not 1 <= j <= config.N - 1:
        raise ValueError(f"bond {j} outside 1..{config.N - 1}")
    return expect(rho, chain_observables(config).spin[j - 1])


def boundary_spin_currents(rho, config):
    """Closed forms J_L = gamma (f_L - <sz_1>), J_R = gamma (<sz_N> - f_R) for z baths.

    The sign of J_R follows from d<sz_N>/dt = J_{N-1} - J_R, so that in the
    steady state J_L = J_j = J_R.
    """
    if config.boundary.kind != "z_target":
        raise ValueError("closed-form boundary spin currents exist only for z_target baths")
    mz = magnetization_profile(rho)
    g, bd = config.gamma, config.boundary
    return g * (bd.f_L - mz[0]), g * (mz[-1] - bd.f_R)


def bath_spin_currents(rho, config):
    """J_L = Tr(D_L(rho) sz_1), J_R = -Tr(D_R(rho) sz_N); valid for any bath."""
    obs = chain_observables(config)
    ops = obs.ops
    J_L = expect(dissipator_apply(rho, obs.left_jumps), ops("z", 1))
    J_R = -expect(dissipator_apply(rho, obs.right_jumps), ops("z", config.N))
    return J_L, J_R


def _check_energy_site(config, j):
    if config.N < 3:
        raise ValueError("energy currents need N >= 3")
    if not 2 <= j <= config.N - 1:
        raise ValueError(f"energy-current site {j} outside 2..{config.N - 1}")


def energy_current(rho, config, j):
    """Bulk energy current i<[eps_{j-1,j}, eps_{j,j+1}]> and its split.

    Returns ``(F, F_xxz, F_b)`` with ``F_b = F - F_xxz``.
    """
    _check_energy_site(config, j)
    obs = chain_observables(config)
    F = expect(rho, obs.energy[j - 2])
    F_xxz = expect(rho, obs.energy_xxz[j - 2])
    return F, F_xxz, F - F_xxz


def energy_current_xxz_expanded(rho, config, j):
    """XXZ part of the bulk energy current written out as Pauli triples.

    With bond couplings (a1, D1) on (j-1, j) and (a2, D2) on (j, j+1):
    2 < a1 a2 (Y Z X - X Z Y) + a2 D1 (Z X Y - Z Y X) + a1 D2 (X Y Z - Y X Z) >.
    Reduces to the uniform-alpha three-term form when a1 = a2.
    """
    _check_energy_site(config, j)
    obs = chain_observables(config)
    ops = obs.ops
    a1, a2 = obs.alphas[j - 2], obs.alphas[j - 1]
    D1, D2 = obs.deltas[j - 2], obs.deltas[j - 1]

    def triple(p, q, r):
        return expect(rho, ops(p, j - 1) @ ops(q, j) @ ops(r, j + 1))

    return 2 * (a1 * a2 * (triple("y", "z", "x") - triple("x", "z", "y"))
                + a2 * D1 * (triple("z", "x", "y") - triple("z", "y", "x"))
                + a1 * D2 * (triple("x", "y", "z") - triple("y", "x", "z")))


@dataclass
class BoundaryEnergyCurrents:
    F_1: float
    F_N: float
    F_1_xxz: float
    F_N_xxz: float
    F_1_b: float
    F_N_b: float


def boundary_energy_currents(rho, config):
    """F_1 = Tr(D_L(rho) eps_12), F_N = -Tr(D_R(rho) eps_{N-1,N}), with splits."""
    if config.N < 3:
        raise ValueError("energy currents need N >= 3")
    obs = chain_observables(config)
    terms = obs.terms
    DL = dissipator_apply(rho, obs.left_jumps)
    DR = dissipator_apply(rho, obs.right_jumps)
    F1x, F1b = expect(DL, terms.h[0]), expect(DL, terms.b[0])
    FNx, FNb = -expect(DR, terms.h[-1]), -expect(DR, terms.b[-1])
    return BoundaryEnergyCurrents(F1x + F1b, FNx + FNb, F1x, FNx, F1b, FNb)


def boundary_energy_closed_form(rho, config):
    """Closed-form boundary energy currents for z-target baths.

    Independent of the trace route in :func:`boundary_energy_currents`.
    The right-end terms are the mirror of the left ones with f_L -> f_R and
    an overall minus sign (energy leaving the chain counts as positive).
    """
    if config.boundary.kind != "z_target":
        raise ValueError("closed-form boundary energy currents exist only for z_target baths")
    obs = chain_observables(config)
    ops, terms, N = obs.ops, obs.terms, config.N
    g, fL, fR = config.gamma, config.boundary.f_L, config.boundary.f_R
    D12, Dn = obs.deltas[0], obs.deltas[-1]
    B1, Bn = obs.fields[0], obs.fields[-1]
    mz = magnetization_profile(rho)
    zz_left = expect(rho, ops("z", 1) @ ops("z", 2))
    zz_right = expect(rho, ops("z", N - 1) @ ops("z", N))
    F1x = -g / 2 * (expect(rho, terms.h[0]) + D12 * zz_left) + g * fL * D12 * mz[1]
    FNx = g / 2 * (expect(rho, terms.h[-1]) + Dn * zz_right) - g * fR * Dn * mz[N - 2]
    F1b = g * B1 * (fL - mz[0])
    FNb = g * Bn * (mz[N - 1] - fR)
    return BoundaryEnergyCurrents(F1x + F1b, FNx + FNb, F1x, FNx, F1b, FNb)


def _spread(values):
    values = np.asarray(values, float)
    mean = float(values.mean())
    return mean, float(np.max(np.abs(values - mean)))


@dataclass
class CurrentReport:
    J_sites: list
    J_L: float
    J_R: float
    magnetization: list
    F_sites: list = field(default_factory=list)
    F_xxz_sites: list = field(default_factory=list)
    F_b_sites: list = field(default_factory=list)
    J_mean: float = 0.0
    J_spread: float = 0.0
    F_mean: float = float("nan")
    F_spread: float = float("nan")

    @property
    def J(self):
        return self.J_mean

    @property
    def F(self):
        return self.F_mean

    @property
    def F_xxz(self):
        return float(np.mean(self.F_xxz_sites)) if self.F_xxz_sites else float("nan")

    def homogeneous(self, tol=1e-9):
        ok = self.J_spread < tol * max(1.0, abs(self.J_mean))
        if self.F_sites:
            ok = ok and self.F_spread < tol * max(1.0, abs(self.F_mean))
        return ok

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def current_report(rho, config):
    """Every spin/energy current of the chain, with homogeneity spreads.

    Energy lists run over sites 1..N (boundary values first and last);
    they stay empty for N = 2.
    """
    N = config.N
    J_sites = [spin_current(rho, config, j) for j in range(1, N)]
    J_L, J_R = bath_spin_currents(rho, config)
    J_mean, J_spread = _spread([J_L, *J_sites, J_R])
    report = CurrentReport(J_sites=J_sites, J_L=J_L, J_R=J_R, magnetization=magnetization_profile(rho),
                           J_mean=J_mean, J_spread=J_spread)
    if N >= 3:
        bnd = boundary_energy_currents(rho, config)
        bulk = [energy_current(rho, config, j) for j in range(2, N)]
        report.F_sites = [bnd.F_1, *(b[0] for b in bulk), bnd.F_N]
        report.F_xxz_sites = [bnd.F_1_xxz, *(b[1] for b in bulk), bnd.F_N_xxz]
        report.F_b_sites = [bnd.F_1_b, *(b[2] for b in bulk), bnd.F_N_b]
        report.F_mean, report.F_spread = _spread(report.F_sites)
    return report
