"""Closed-form steady currents of the three-site z-graded chain (gamma = 1).

Bonds carry Delta - delta and Delta + delta, uniform xy coupling alpha and
uniform field B; baths target f on the left and -f on the right. Each long
polynomial is kept as a named block so a transcription slip stays local.

Typesetting repairs, all confirmed by agreement with the numerical steady
state to 1e-12 relative:
  * spin-current numerator: the printed "(1 + 16 delta^2)^2 (256 ..." with no
    operator is the "+ (1 + 16 delta^2)^2 (...)" block of the energy-current
    B-bracket (the two brackets are the same polynomial).
  * "f^2 (3 + 152^2)" is f^2 (3 + 152 Delta^2).
  * spin-current denominator: the bare "(1 + 16 delta^2)^2 (-81 ..." carries
    a minus sign, and the last term is 2304 Delta^4 (printed as delta^4);
    both as in the energy-current denominator.
"""

from dataclasses import dataclass

TINY_DENOMINATOR = 1e-300


class SingularParameters(ArithmeticError):
    pass


@dataclass(frozen=True)
class OracleParams:
    f: float
    alpha: float = 1.0
    Delta: float = 1.0
    delta: float = 0.0
    B: float = 0.0

    def __post_init__(self):
        if abs(self.f) > 1:
            raise ValueError(f"|f| must be <= 1, got {self.f}")


def _spin_bracket(f, a, D, d):
    """B-independent bracket shared by the spin current and the B part of F."""
    f2, f4, a2, D2, d2 = f * f, f**4, a * a, D * D, d * d
    g = 1 + 16 * d2
    return (
        589824 * a**8
        + 32768 * a**6 * (9 + 8 * (9 + 5 * f2) * d2 + 6 * D2)
        + g**2 * (256 * (3 - 2 * f2) ** 2 * d2**2 + (9 + (48 - 32 * f2) * D2) ** 2
                  - 32 * (-3 + 2 * f2) * d2 * (9 + 16 * (-3 + 2 * f2) * D2))
        + 512 * a2**2 * (99 + 256 * (15 - 6 * f2 + 2 * f4) * d2**2 - 48 * (-5 + 2 * f2) * D2
                         - 32 * d2 * (-48 * (1 + 2 * D2) + f2 * (-7 + 24 * D2)))
        - 64 * a2 * g * (256 * (-3 - f2 + 2 * f4) * d2**2 + (6 + 4 * D2) * (-9 + 16 * (-3 + 2 * f2) * D2)
                         - 16 * d2 * (27 + 156 * D2 + 32 * f4 * D2 - f2 * (3 + 152 * D2)))
    )


def _xxz_bracket(f, a, D, d):
    """Field-free bracket multiplying 2 f delta in the energy current."""
    f2, a2, D2, d2 = f * f, a * a, D * D, d * d
    g = 1 + 16 * d2
    return (
        196608 * a**6 * D2
        - 256 * a2**2 * (9 + 256 * d2**2 - 192 * f2 * D2 - 256 * D2**2 - 32 * d2 * (-5 + 16 * (-3 + f2) * D2))
        - 32 * a2 * g * (256 * (2 + f2) * d2**2 + 16 * d2 * (21 + 9 * f2 + 104 * D2)
                         - (9 + 16 * D2) * (-3 + 8 * (-1 + 2 * f2) * D2))
        + g**2 * (-81 + 256 * (-3 + 2 * f2) * d2**2 - 768 * D2**2 + 32 * f2 * D2 * (-9 + 16 * D2)
                  - 32 * d2 * (18 - 48 * D2 + f2 * (-9 + 32 * D2)))
    )


def _denominator(f, a, D, d):
    f2, f4, a2, D2, d2 = f * f, f**4, a * a, D * D, d * d
    g = 1 + 16 * d2
    den = (
        9437184 * a**10
        + 65536 * a**8 * (81 + 16 * (39 + 20 * f2) * d2 + 48 * D2)
        + 8192 * a**6 * (135 + 256 * (21 - 3 * f2 + 2 * f4) * d2**2 - 48 * (-7 + 2 * f2) * D2
                         + 16 * d2 * (126 + 272 * D2 + f2 * (21 - 48 * D2)))
        - g**2 * (-81 + 4096 * (-3 + 2 * f2) * d2**3 - 144 * (9 + 2 * f2) * D2 + 256 * (-27 + 8 * f4) * D2**2
                  + 4096 * (-3 + 2 * f2) * D2**3 + 256 * d2**2 * (-27 + 8 * f4 + 48 * D2 - 32 * f2 * D2)
                  - 16 * d2 * (81 + 288 * D2 + 256 * f4 * D2 - 768 * D2**2 + 2 * f2 * (9 + 256 * D2**2)))
        - 512 * a2**2 * (-207 + 4096 * (-11 + f2 + 4 * f4) * d2**3 + 48 * (-26 + 7 * f2) * D2
                         + 256 * (-3 + f2) * D2**2
                         - 256 * d2**2 * (107 + 448 * D2 + 8 * f4 * (-1 + 8 * D2) - 8 * f2 * (2 + 36 * D2))
                         - 16 * d2 * (291 + 1664 * D2 + 64 * f4 * D2 + 768 * D2**2
                                      - f2 * (7 + 592 * D2 + 256 * D2**2)))
        + 16 * a2 * g * (297 + 4096 * (13 - 10 * f2 + 4 * f4) * d2**3 - 96 * (-33 + 2 * f2) * D2
                         + 256 * (33 - 20 * f2 + 4 * f4) * D2**2
                         - 256 * d2**2 * (-111 + 32 * D2 + f2 * (44 - 448 * D2) + 4 * f4 * (-5 + 32 * D2))
                         + 16 * d2 * (315 + 2112 * D2 + 6400 * D2**2 + 128 * f4 * D2 * (-3 + 8 * D2)
                                      - 2 * f2 * (33 + 64 * D2 + 2304 * D2**2)))
    )
    if abs(den) < TINY_DENOMINATOR:
        raise SingularParameters("closed-form denominator vanishes")
    return den


def spin_current_exact(p):
    f, a, D, d = p.f, p.alpha, p.Delta, p.delta
    return 16 * f * a * a * _spin_bracket(f, a, D, d) / _denominator(f, a, D, d)


def energy_current_exact(p):
    f, a, D, d = p.f, p.alpha, p.Delta, p.delta
    num = 2 * f * d * _xxz_bracket(f, a, D, d) + p.B * _spin_bracket(f, a, D, d)
    return 16 * f * a * a * num / _denominator(f, a, D, d)


def _j0_denominator(f, a, D):
    f2, a2, D2 = f * f, a * a, D * D
    return (9 + 12288 * a**6 + 32 * (3 + 2 * f2) * D2 + 256 * D2**2 + 256 * a2**2 * (15 + 16 * D2)
            + a2 * (336 - 256 * (-7 + 2 * f2) * D2))


def _j0(f, a, D):
    f2, a2, D2 = f * f, a * a, D * D
    num = -16 * f * a2 * (-9 - 768 * a2**2 + 16 * (-3 + 2 * f2) * D2 - 64 * a2 * (3 + 4 * D2))
    return num / _j0_denominator(f, a, D)


def _j2(f, a, D):
    """delta^2 coefficient of the spin current."""
    f2, f4, a2, D2 = f * f, f**4, a * a, D * D
    num = 256 * f * a2 * (
        -(3 + 48 * a2 + 16 * D2) ** 2 * (65536 * a**8 + 9 * (3 + 16 * D2) + 8192 * a**6 * (5 + 24 * D2)
                                         + 1024 * a2**2 * (9 + 52 * D2) + 96 * a2 * (9 + 40 * D2 + 128 * D2**2))
        + 64 * f4 * D2 * (-81 + 184320 * a**6 - 256 * D2**2 + 768 * a2**2 * (27 + 160 * D2)
                          + 16 * a2 * (-45 + 192 * D2 + 1280 * D2**2))
        + 2 * f2 * (9437184 * a**10 + 589824 * a**8 * (9 + 16 * D2) + 8192 * a**6 * (117 - 408 * D2 + 2560 * D2**2)
                    + 1536 * a2**2 * (27 - 456 * D2 - 1664 * D2**2 + 6144 * D2**3)
                    + 3 * (-81 + 864 * D2 + 2304 * D2**2 + 8192 * D2**3)
                    + 16 * a2 * (-243 - 720 * D2 - 10752 * D2**2 - 28672 * D2**3 + 65536 * D2**4))
    )
    den = (9 + 192 * a2 + 768 * a2**2 + (48 - 32 * f2) * D2) * _j0_denominator(f, a, D) ** 2
    return num / den


def _f1(f, a, D):
    """delta^1 coefficient of the energy current (field independent)."""
    f2, f4, a2, D2 = f * f, f**4, a * a, D * D
    num = 32 * f2 * a2 * (-81 + 196608 * a**6 * D2 - 768 * D2**2 + 32 * f2 * D2 * (-9 + 16 * D2)
                          + 32 * a2 * (9 + 16 * D2) * (-3 + 8 * (-1 + 2 * f2) * D2)
                          + 256 * a2**2 * (-9 + 192 * f2 * D2 + 256 * D2**2))
    den = (81 + 9437184 * a**10 + 144 * (9 + 2 * f2) * D2 - 256 * (-27 + 8 * f4) * D2**2
           - 4096 * (-3 + 2 * f2) * D2**3 + 196608 * a**8 * (27 + 16 * D2)
           - 24576 * a**6 * (-45 + 16 * (-7 + 2 * f2) * D2)
           - 512 * a2**2 * (-207 + 48 * (-26 + 7 * f2) * D2 + 256 * (-3 + f2) * D2**2)
           + 16 * a2 * (297 - 96 * (-33 + 2 * f2) * D2 + 256 * (33 - 20 * f2 + 4 * f4) * D2**2))
    return num / den


def spin_current_series_delta2(p):
    """Spin current through order delta^2."""
    return _j0(p.f, p.alpha, p.Delta) + _j2(p.f, p.alpha, p.Delta) * p.delta**2


def energy_current_series(p):
    """Energy current through order delta^2."""
    f, a, D, d = p.f, p.alpha, p.Delta, p.delta
    return p.B * _j0(f, a, D) + _f1(f, a, D) * d + p.B * _j2(f, a, D) * d**2


def energy_current_series_smallf(p):
    """Leading small-f, small-delta form: linear-response f B term plus f^2 delta."""
    f, a, D, d = p.f, p.alpha, p.Delta, p.delta
    a2, D2 = a * a, D * D
    linear = 48 * (16 * a2 + 3) * a2 / (768 * a2**2 + 192 * a2 + 48 * D2 + 9)
    quad = (32 * a2 * (196608 * a**6 * D2 + 65536 * a2**2 * D2**2 - 2304 * a2**2 - 4096 * a2 * D2**2
                       - 3840 * a2 * D2 - 864 * a2 - 768 * D2**2 - 81)
            / (3 * (48 * a2 + 16 * D2 + 3) * (256 * a2**2 + 64 * a2 + 16 * D2 + 3) ** 2))
    return f * p.B * linear + f * f * d * quad
