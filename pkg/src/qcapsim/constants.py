"""Physical constants and unit conversions.

Every other module computes in SI internally; the engineering units used
for I/O (GHz, fF/um^2, um^2, nm, phases in units of pi) are converted at
the boundary with the helpers below.  Constants are CODATA 2018.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonPositiveTemperature

SPEED_OF_LIGHT = 299792458.0  # m/s, exact


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 constants plus the graphene Fermi velocity convention.

    ``v_F_default`` is fixed to c/300 exactly; it enters squared in the
    nonlinear time constant and the coupling rates, so the convention
    matters for every derived number.
    """

    e: float = 1.602176634e-19        # elementary charge, C (exact)
    k_B: float = 1.380649e-23         # Boltzmann constant, J/K (exact)
    hbar: float = 1.054571817e-34     # reduced Planck constant, J*s
    h: float = 6.62607015e-34         # Planck constant, J*s (exact)
    c: float = SPEED_OF_LIGHT         # speed of light, m/s (exact)
    epsilon_0: float = 8.8541878128e-12  # vacuum permittivity, F/m
    v_F_default: float = SPEED_OF_LIGHT / 300.0  # graphene Fermi velocity, m/s

    def __post_init__(self):
        for name in ("e", "k_B", "hbar", "h", "c", "epsilon_0", "v_F_default"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"constant {name} must be positive")


CONSTANTS = PhysicalConstants()

TWO_PI = 2.0 * math.pi


# --- engineering-unit conversions (each pair is an exact inverse) ---------

def ghz_to_rad_per_s(f_ghz):
    """Frequency in GHz -> angular frequency in rad/s."""
    return TWO_PI * 1e9 * f_ghz


def rad_per_s_to_ghz(omega):
    """Angular frequency in rad/s -> frequency in GHz."""
    return omega / (TWO_PI * 1e9)


def um2_to_m2(area_um2):
    """Area in um^2 -> m^2."""
    return area_um2 * 1e-12


def m2_to_um2(area_m2):
    """Area in m^2 -> um^2."""
    return area_m2 * 1e12


def nm_to_m(t_nm):
    """Length in nm -> m."""
    return t_nm * 1e-9


def m_to_nm(t_m):
    """Length in m -> nm."""
    return t_m * 1e9


def f_per_m2_to_ff_per_um2(c_areal):
    """Areal capacitance in F/m^2 -> fF/um^2."""
    return c_areal * 1e3


def ff_per_um2_to_f_per_m2(c_areal_ff):
    """Areal capacitance in fF/um^2 -> F/m^2."""
    return c_areal_ff * 1e-3


def farad_to_femtofarad(c):
    """Capacitance in F -> fF."""
    return c * 1e15


def femtofarad_to_farad(c_ff):
    """Capacitance in fF -> F."""
    return c_ff * 1e-15


def fraction_to_percent(x):
    """Dimensionless fraction -> percent."""
    return x * 100.0


def percent_to_fraction(x_pct):
    """Percent -> dimensionless fraction."""
    return x_pct / 100.0


def pi_units_to_rad(phi_over_pi):
    """Phase in units of pi -> radians."""
    return phi_over_pi * math.pi


def rad_to_pi_units(phi_rad):
    """Phase in radians -> units of pi."""
    return phi_rad / math.pi


# --- elementary energy scales ---------------------------------------------

def fermi_energy(voltage: float) -> float:
    """Fermi energy e*V/2 (J) of either graphene electrode at bias ``voltage``.

    Odd in V; negative bias gives a negative Fermi energy.
    """
    return CONSTANTS.e * voltage / 2.0


def thermal_energy(temperature: float) -> float:
    """Thermal energy k_B*T in joules.

    Raises :class:`NonPositiveTemperature` for T <= 0.
    """
    if temperature <= 0.0:
        raise NonPositiveTemperature(f"temperature must be > 0 K, got {temperature}")
    return CONSTANTS.k_B * temperature
