"""Graded XXZ chain: coupling/field profiles, Hamiltonian, local energy terms."""

from dataclasses import dataclass, field as dc_field, replace
from functools import cached_property

import numpy as np

from .spin_ops import embed, pauli

COUPLING_KINDS = ("uniform", "z_graded", "xy_graded", "xxx_graded", "fully_graded", "explicit")
FIELD_KINDS = ("uniform", "linear_graded", "explicit")
BOUNDARY_KINDS = ("z_target", "twisted_xy")


def _ramp(center, half_width, n_bonds):
    """Linear ramp over ``n_bonds`` values from center - hw to center + hw."""
    if n_bonds == 1:
        return np.array([float(center)])
    return center + half_width * np.linspace(-1.0, 1.0, n_bonds)


@dataclass(frozen=True)
class CouplingProfile:
    """Bond couplings.

    ``alpha_center`` is the xy coupling (Lambda for xy-graded chains),
    ``delta_center`` the zz anisotropy and ``asymmetry`` the half-width of
    the graded ramp. ``explicit`` kind reads ``alphas``/``deltas`` verbatim.
    """

    kind: str = "uniform"
    alpha_center: float = 1.0
    delta_center: float = 1.0
    asymmetry: float = 0.0
    alphas: tuple = ()
    deltas: tuple = ()

    def __post_init__(self):
        if self.kind not in COUPLING_KINDS:
            raise ValueError(f"unknown coupling profile {self.kind!r}; expected one of {COUPLING_KINDS}")
        if self.kind == "explicit" and len(self.alphas) != len(self.deltas):
            raise ValueError("explicit profile needs equal-length alphas and deltas")
        if self.kind == "uniform" and self.asymmetry != 0:
            raise ValueError(f"uniform profile cannot carry delta={self.asymmetry}; choose a graded profile")

    def resolve(self, n_sites):
        """Return ``(alphas, deltas)`` arrays with ``n_sites - 1`` entries."""
        nb = n_sites - 1
        a, d, s = self.alpha_center, self.delta_center, self.asymmetry
        if self.kind == "explicit":
            if len(self.alphas) != nb:
                raise ValueError(f"explicit profile has {len(self.alphas)} bonds, chain has {nb}")
            return np.asarray(self.alphas, float), np.asarray(self.deltas, float)
        if self.kind != "uniform" and n_sites < 3:
            raise ValueError(f"graded profile {self.kind!r} needs N >= 3, got N={n_sites}")
        flat_a, flat_d = np.full(nb, float(a)), np.full(nb, float(d))
        if self.kind == "uniform":
            return flat_a, flat_d
        if self.kind == "z_graded":
            return flat_a, _ramp(d, s, nb)
        if self.kind == "xy_graded":
            return _ramp(a, s, nb), flat_d
        if self.kind == "xxx_graded":
            ramp = _ramp(d, s, nb)
            return ramp, ramp.copy()
        # fully_graded
        return _ramp(a, s, nb), _ramp(d, s, nb)


@dataclass(frozen=True)
class FieldProfile:
    kind: str = "uniform"
    B_center: float = 0.0
    B_slope: float = 0.0
    values: tuple = ()

    def __post_init__(self):
        if self.kind not in FIELD_KINDS:
            raise ValueError(f"unknown field profile {self.kind!r}; expected one of {FIELD_KINDS}")

    def resolve(self, n_sites):
        if self.kind == "explicit":
            if len(self.values) != n_sites:
                raise ValueError(f"explicit field has {len(self.values)} sites, chain has {n_sites}")
            return np.asarray(self.values, float)
        if self.kind == "uniform":
            return np.full(n_sites, float(self.B_center))
        sites = np.arange(1, n_sites + 1)
        return self.B_center + self.B_slope * (sites - (n_sites + 1) / 2)


@dataclass(frozen=True)
class BoundarySpec:
    """Boundary baths.

    ``z_target`` baths pull sigma^z at sites 1 and N toward ``f_L`` and
    ``f_R``. ``twisted_xy`` baths pull the transverse components named by
    ``axes`` (left, right) toward ``kappa``.
    """

    kind: str = "z_target"
    f_L: float = 0.0
    f_R: float = 0.0
    kappa: float = 0.0
    axes: tuple = ("x", "y")

    def __post_init__(self):
        if self.kind not in BOUNDARY_KINDS:
            raise ValueError(f"unknown boundary kind {self.kind!r}; expected one of {BOUNDARY_KINDS}")
        for name in ("f_L", "f_R", "kappa"):
            value = getattr(self, name)
            if not -1.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} outside [-1, 1] (bath rate 1 -/+ {name} would be negative)")
        if len(self.axes) != 2 or any(ax not in ("x", "y", "z") for ax in self.axes):
            raise ValueError(f"axes must be two of x/y/z, got {self.axes!r}")

    def inverted(self):
        """The same baths with the two reservoirs exchanged."""
        if self.kind == "z_target":
            return replace(self, f_L=self.f_R, f_R=self.f_L)
        return replace(self, axes=(self.axes[1], self.axes[0]))


@dataclass(frozen=True)
class ChainConfig:
    N: int
    couplings: CouplingProfile = dc_field(default_factory=CouplingProfile)
    field: FieldProfile = dc_field(default_factory=FieldProfile)
    gamma: float = 1.0
    boundary: BoundarySpec = dc_field(default_factory=BoundarySpec)

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise ValueError(f"N must be an integer >= 2, got {self.N}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        # fail early on profiles that cannot be resolved for this N
        self.couplings.resolve(self.N)
        self.field.resolve(self.N)

    @property
    def alphas(self):
        return self.couplings.resolve(self.N)[0]

    @property
    def deltas(self):
        return self.couplings.resolve(self.N)[1]

    @property
    def fields(self):
        return self.field.resolve(self.N)

    @property
    def f(self):
        """Driving strength under the ``f_L = f = -f_R`` convention."""
        return self.boundary.f_L

    def inverted(self):
        return replace(self, boundary=self.boundary.inverted())

    def with_drive(self, f):
        """Antisymmetric z-target drive ``f_L = f = -f_R``."""
        return replace(self, boundary=replace(self.boundary, f_L=float(f), f_R=-float(f)))

    def with_params(self, **changes):
        """Copy with any of the flat keys accepted by :func:`make_config` changed."""
        return make_config(**{**self.as_flat(), **changes})

    def as_flat(self):
        c, fp, bd = self.couplings, self.field, self.boundary
        flat = {
            "N": int(self.N),
            "profile": c.kind,
            "alpha": c.alpha_center,
            "Delta": c.delta_center,
            "delta": c.asymmetry,
            "field_profile": fp.kind,
            "B": fp.B_center,
            "B_slope": fp.B_slope,
            "gamma": self.gamma,
            "boundary": bd.kind,
            "f_L": bd.f_L,
            "f_R": bd.f_R,
            "kappa": bd.kappa,
            "axes": tuple(bd.axes),
        }
        if c.kind == "explicit":
            flat["alphas"], flat["deltas"] = tuple(c.alphas), tuple(c.deltas)
        if fp.kind == "explicit":
            flat["fields"] = tuple(fp.values)
        return flat


def make_config(N, alpha=1.0, Delta=1.0, delta=0.0, B=0.0, *, profile=None, field_profile="uniform",
                B_slope=0.0, gamma=1.0, boundary="z_target", f=None, f_L=None, f_R=None, kappa=0.0,
                axes=("x", "y"), alphas=(), deltas=(), fields=()):
    """Flat-keyword constructor for :class:`ChainConfig`.

    ``f`` sets the antisymmetric drive ``f_L = f = -f_R``; ``f_L``/``f_R``
    override it individually. ``profile`` defaults to ``z_graded`` when
    ``delta`` is nonzero and ``uniform`` otherwise.
    """
    if profile is None:
        profile = "explicit" if len(alphas) else ("z_graded" if delta else "uniform")
    if f is None:
        f = 0.0
    fl = float(f) if f_L is None else float(f_L)
    fr = -float(f) if f_R is None else float(f_R)
    return ChainConfig(
        N=int(N),
        couplings=CouplingProfile(profile, float(alpha), float(Delta), float(delta), tuple(alphas), tuple(deltas)),
        field=FieldProfile(field_profile, float(B), float(B_slope), tuple(fields)),
        gamma=float(gamma),
        boundary=BoundarySpec(boundary, fl, fr, float(kappa), tuple(axes)),
    )


def resolve_profiles(config):
    """Return ``(bonds, fields)``: list of ``(alpha_i, Delta_i)`` and site fields."""
    alphas, deltas = config.couplings.resolve(config.N)
    return list(zip(alphas.tolist(), deltas.tolist())), config.field.resolve(config.N).tolist()


class ChainOperators:
    """Cached single-site Pauli embeddings for an N-site chain."""

    def __init__(self, n_sites):
        self.N = n_sites
        self._cache = {}

    def __call__(self, kind, site):
        key = (kind, site)
        if key not in self._cache:
            self._cache[key] = embed(pauli(kind), site, self.N)
        return self._cache[key]

    @cached_property
    def identity(self):
        return np.eye(2**self.N, dtype=complex)


def bond_xxz(ops, i, alpha, Delta):
    """alpha (XX + YY) + Delta ZZ on bond (i, i+1)."""
    return (alpha * (ops("x", i) @ ops("x", i + 1) + ops("y", i) @ ops("y", i + 1))
            + Delta * ops("z", i) @ ops("z", i + 1))


def build_hamiltonian(config, ops=None):
    ops = ops or ChainOperators(config.N)
    alphas, deltas = config.couplings.resolve(config.N)
    fields = config.field.resolve(config.N)
    H = np.zeros((2**config.N,) * 2, dtype=complex)
    for i, (a, d) in enumerate(zip(alphas, deltas), start=1):
        H += bond_xxz(ops, i, a, d)
    for i, b in enumerate(fields, start=1):
        H += b * ops("z", i)
    return H


@dataclass(frozen=True)
class LocalEnergyTerms:
    """Bond energies ``eps[k] = h[k] + b[k]`` for bond (k+1, k+2)."""

    eps: list
    h: list
    b: list


def local_energy_terms(config, ops=None):
    """Split H into bond energies; boundary fields carry weight 2 in b."""
    N = config.N
    if N < 3:
        raise ValueError(f"local energy decomposition needs N >= 3, got N={N}")
    ops = ops or ChainOperators(N)
    alphas, deltas = config.couplings.resolve(N)
    fields = config.field.resolve(N)
    h, b = [], []
    for i in range(1, N):
        h.append(bond_xxz(ops, i, alphas[i - 1], deltas[i - 1]))
        w_left = 2.0 if i == 1 else 1.0
        w_right = 2.0 if i + 1 == N else 1.0
        b.append(0.5 * (w_left * fields[i - 1] * ops("z", i) + w_right * fields[i] * ops("z", i + 1)))
    return LocalEnergyTerms(eps=[hh + bb for hh, bb in zip(h, b)], h=h, b=b)
