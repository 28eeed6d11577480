"""Graphene quantum-capacitance model for a graphene/dielectric/graphene stack.

Implements the finite-temperature differential capacitance per unit area,
its zero-temperature limit, the series combination with the parallel-plate
(geometric) capacitance, the low-voltage series expansions used for field
quantization, a quadrature oracle for the charge, and the dielectric
thickness design rules.  All quantities are SI and per unit area unless
noted; engineering units (fF/um^2) appear only at the emission boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from ._accel import USE_NUMBA, njit_or_plain
from .constants import CONSTANTS, f_per_m2_to_ff_per_um2
from .errors import (
    NonPositiveArea,
    NonPositiveTemperature,
    NonPositiveThickness,
    QuadratureFailure,
)

# dielectric thickness window: thick enough to block tunneling, thin enough
# that the quantum capacitance stays an order of magnitude below C_G
THICKNESS_MIN = 3e-9
THICKNESS_MAX = 70e-9
DOMINANCE_MAX_RATIO = 0.1

SWEEP_CSV_HEADER = ("T_K", "V_volt", "CQ_fF_per_um2", "Cseries_fF_per_um2")


@dataclass(frozen=True)
class CapacitorDesign:
    """Geometry and material of the layered capacitor stack."""

    area_S: float                      # m^2
    dielectric_thickness_t: float      # m
    relative_permittivity: float = 4.0
    v_F: float = CONSTANTS.v_F_default  # m/s

    def __post_init__(self):
        if self.area_S <= 0.0:
            raise NonPositiveArea(f"area_S must be > 0, got {self.area_S}")
        if self.dielectric_thickness_t <= 0.0:
            raise NonPositiveThickness(
                f"dielectric_thickness_t must be > 0, got {self.dielectric_thickness_t}"
            )
        if self.relative_permittivity < 1.0:
            raise ValueError(
                f"relative_permittivity must be >= 1, got {self.relative_permittivity}"
            )
        if self.v_F <= 0.0:
            raise ValueError(f"v_F must be > 0, got {self.v_F}")


@dataclass(frozen=True)
class OperatingPoint:
    """Temperature and voltage at which the model is evaluated.

    Finite-temperature operations require T > 0 and raise
    :class:`NonPositiveTemperature` otherwise; the voltage is unrestricted
    in sign.
    """

    temperature_T: float  # K
    voltage_V: float      # V


@dataclass(frozen=True)
class DesignReport:
    """Outcome of the dielectric-thickness design rules."""

    C_G_areal: float        # F/m^2
    C_0_areal: float        # F/m^2
    dominance_ratio: float  # C_0 / C_G
    thickness_ok: bool
    dominance_ok: bool
    messages: tuple[str, ...]


def _require_positive_temperature(T: float) -> None:
    if T <= 0.0:
        raise NonPositiveTemperature(f"temperature must be > 0 K, got {T}")


# --- numerically stable ln[2(1 + cosh x)] ----------------------------------
#
# 2(1 + cosh x) = (2 cosh(x/2))^2 = e^|x| (1 + e^-|x|)^2, so the logarithm
# is |x| + 2 log1p(e^-|x|): exact for all x and immune to cosh overflow
# (the naive form dies near |x| ~ 710).

def _ln_2_plus_2cosh_loops_impl(x, out):
    for i in range(x.shape[0]):
        ax = abs(x[i])
        out[i] = ax + 2.0 * math.log1p(math.exp(-ax))


_ln_2_plus_2cosh_loops = njit_or_plain(_ln_2_plus_2cosh_loops_impl)


def _ln_2_plus_2cosh_numpy(x):
    ax = np.abs(x)
    return ax + 2.0 * np.log1p(np.exp(-ax))


def ln_2_plus_2cosh(x):
    """Stable elementwise ln[2(1 + cosh x)]; scalar in, scalar out."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 0:
        ax = abs(float(arr))
        return ax + 2.0 * math.log1p(math.exp(-ax))
    if USE_NUMBA:
        flat = np.ascontiguousarray(arr).ravel()
        out = np.empty_like(flat)
        _ln_2_plus_2cosh_loops(flat, out)
        return out.reshape(arr.shape)
    return _ln_2_plus_2cosh_numpy(arr)


# --- capacitances -----------------------------------------------------------

def _cq_prefactor(T: float, v_F: float) -> float:
    """2 e^2 k_B T / (pi (hbar v_F)^2), the finite-T capacitance scale."""
    return (
        2.0 * CONSTANTS.e**2 * CONSTANTS.k_B * T
        / (math.pi * (CONSTANTS.hbar * v_F) ** 2)
    )


def _cq_areal(T: float, V, v_F: float):
    """Quantum capacitance per unit area; V may be a scalar or array."""
    x = CONSTANTS.e * np.asarray(V, dtype=np.float64) / (2.0 * CONSTANTS.k_B * T)
    return _cq_prefactor(T, v_F) * ln_2_plus_2cosh(x)


def quantum_capacitance(design: CapacitorDesign, op: OperatingPoint) -> float:
    """Differential quantum capacitance per unit area (F/m^2) at finite T.

    Even in the voltage; strictly positive; grows linearly with T at zero
    bias and linearly with |V| at large bias.
    """
    _require_positive_temperature(op.temperature_T)
    return float(_cq_areal(op.temperature_T, op.voltage_V, design.v_F))


def quantum_capacitance_T0(design: CapacitorDesign, voltage: float):
    """Zero-temperature limit e^3 |V| / pi (hbar v_F)^2 of the quantum
    capacitance per unit area.  Piecewise linear, vanishing at V = 0."""
    V = np.asarray(voltage, dtype=np.float64)
    out = CONSTANTS.e**3 * np.abs(V) / (math.pi * (CONSTANTS.hbar * design.v_F) ** 2)
    return float(out) if out.ndim == 0 else out


def geometric_capacitance(design: CapacitorDesign) -> float:
    """Parallel-plate capacitance eps0 * eps_r / t per unit area (F/m^2)."""
    if design.dielectric_thickness_t <= 0.0:
        raise NonPositiveThickness("dielectric thickness must be > 0")
    return CONSTANTS.epsilon_0 * design.relative_permittivity / design.dielectric_thickness_t


def series_capacitance(design: CapacitorDesign, op: OperatingPoint) -> float:
    """Series combination C_G*C_Q/(C_G + C_Q) per unit area (F/m^2)."""
    _require_positive_temperature(op.temperature_T)
    cg = geometric_capacitance(design)
    cq = quantum_capacitance(design, op)
    return cg * cq / (cg + cq)


def linear_capacitance_C0(design: CapacitorDesign, T: float) -> float:
    """Low-voltage linear capacitance 2 e^2 k_B T ln(16) / pi (hbar v_F)^2
    per unit area (F/m^2); linear in T."""
    _require_positive_temperature(T)
    return _cq_prefactor(T, design.v_F) * math.log(16.0)


# --- zero-temperature charge and energy ------------------------------------

def charge_energy_T0(design: CapacitorDesign, voltage: float) -> tuple[float, float]:
    """Stored charge and energy per unit area at T = 0.

    Q = e^3 |V| V / 2 pi (hbar v_F)^2 (odd in V) and
    U = e^3 |V|^3 / 6 pi (hbar v_F)^2 (even, >= 0).  Kept separate from the
    finite-T path: both are non-analytic at V = 0 and must not be expanded
    around it.
    """
    denom = math.pi * (CONSTANTS.hbar * design.v_F) ** 2
    q = CONSTANTS.e**3 * abs(voltage) * voltage / (2.0 * denom)
    u = CONSTANTS.e**3 * abs(voltage) ** 3 / (6.0 * denom)
    return q, u


# --- low-voltage series expansions ------------------------------------------

def charge_series(design: CapacitorDesign, op: OperatingPoint) -> float:
    """Cubic-order charge density e*N (C/m^2) from the low-voltage expansion.

    N(V) = (4 e k_B T / pi (hbar v_F)^2) [ln(2) V + e^2 V^3 / 96 (k_B T)^2].
    Accurate to better than 0.01% of the integrated capacitance for
    e|V| <= 0.2 k_B T; see :func:`charge_numeric` for the oracle.
    """
    _require_positive_temperature(op.temperature_T)
    kT = CONSTANTS.k_B * op.temperature_T
    V = op.voltage_V
    pref = 4.0 * CONSTANTS.e * kT / (math.pi * (CONSTANTS.hbar * design.v_F) ** 2)
    n_density = pref * (math.log(2.0) * V + CONSTANTS.e**2 * V**3 / (96.0 * kT**2))
    return CONSTANTS.e * n_density


def charge_series_cubic_coefficient(design: CapacitorDesign, T: float) -> float:
    """d^3N/dV^3 / 6 of the expansion behind :func:`charge_series` (1/(m^2 V^3))."""
    _require_positive_temperature(T)
    kT = CONSTANTS.k_B * T
    pref = 4.0 * CONSTANTS.e * kT / (math.pi * (CONSTANTS.hbar * design.v_F) ** 2)
    return pref * CONSTANTS.e**2 / (96.0 * kT**2)


def energy_series(design: CapacitorDesign, T: float, n_density: float) -> float:
    """Stored energy per unit area (J/m^2) as a quartic expansion in the
    carrier number density N (1/m^2).

    U(N) = (pi (hbar v_F)^2 / 2 k_B T) * [N^2/ln(16)
           - (pi^2/4) (hbar v_F / ln(16) k_B T)^4 N^4].
    The leading term carries the linear capacitance: d^2U/dN^2 at N = 0
    equals 2 e^2 / C_0.
    """
    _require_positive_temperature(T)
    kT = CONSTANTS.k_B * T
    hv = CONSTANTS.hbar * design.v_F
    ln16 = math.log(16.0)
    quadratic = n_density**2 / ln16
    quartic = (math.pi**2 / 4.0) * (hv / (ln16 * kT)) ** 4 * n_density**4
    return (math.pi * hv**2 / (2.0 * kT)) * (quadratic - quartic)


def charge_numeric(design: CapacitorDesign, op: OperatingPoint) -> float:
    """Charge density Q(V) = integral of C_Q from 0 to V (C/m^2) by adaptive
    Gauss-Kronrod quadrature; the independent oracle for the series forms.

    Raises :class:`QuadratureFailure` if the 1e-10 relative error contract
    is not met.
    """
    _require_positive_temperature(op.temperature_T)
    V = op.voltage_V
    if V == 0.0:
        return 0.0
    T, v_F = op.temperature_T, design.v_F

    def integrand(v):
        return _cq_areal(T, v, v_F)

    result, abserr = quad(integrand, 0.0, V, epsabs=0.0, epsrel=1e-12, limit=200)
    if abs(result) == 0.0 or abserr > 1e-10 * abs(result):
        raise QuadratureFailure(
            f"charge quadrature error {abserr:.3e} exceeds 1e-10 relative at V={V}"
        )
    return result


# --- design rules and sweeps -------------------------------------------------

def design_check(design: CapacitorDesign, T: float) -> DesignReport:
    """Check the dielectric thickness window and quantum-capacitance dominance.

    thickness_ok requires 3 nm < t < 70 nm; dominance_ok requires
    C_0/C_G <= 0.1 so the quantum capacitance controls the series
    combination by an order of magnitude.
    """
    _require_positive_temperature(T)
    cg = geometric_capacitance(design)
    c0 = linear_capacitance_C0(design, T)
    ratio = c0 / cg
    thickness_ok = THICKNESS_MIN < design.dielectric_thickness_t < THICKNESS_MAX
    dominance_ok = ratio <= DOMINANCE_MAX_RATIO
    t_nm = design.dielectric_thickness_t * 1e9
    messages = [
        f"C_G = {f_per_m2_to_ff_per_um2(cg):.4g} fF/um^2, "
        f"C_0 = {f_per_m2_to_ff_per_um2(c0):.4g} fF/um^2 at T = {T:g} K "
        f"(ratio {ratio:.4g})",
    ]
    if thickness_ok:
        messages.append(f"thickness {t_nm:.4g} nm inside the 3-70 nm window")
    else:
        messages.append(
            f"thickness {t_nm:.4g} nm outside the 3-70 nm window: "
            "either tunneling leakage or geometric-capacitance takeover"
        )
    if dominance_ok:
        messages.append("quantum capacitance dominates the series combination")
    else:
        messages.append(
            f"C_0/C_G = {ratio:.4g} > {DOMINANCE_MAX_RATIO}: geometric capacitance "
            "no longer negligible"
        )
    return DesignReport(
        C_G_areal=cg,
        C_0_areal=c0,
        dominance_ratio=ratio,
        thickness_ok=thickness_ok,
        dominance_ok=dominance_ok,
        messages=tuple(messages),
    )


@dataclass(frozen=True)
class CapacitanceSweep:
    """Grid of (T, V) -> (C_Q, C_series) rows, SI units internally."""

    T_K: np.ndarray          # (n,)
    V_volt: np.ndarray       # (n,)
    CQ_areal: np.ndarray     # F/m^2
    Cseries_areal: np.ndarray  # F/m^2

    def engineering_rows(self):
        """Rows in the CSV emission units (K, V, fF/um^2, fF/um^2)."""
        for t, v, cq, cs in zip(self.T_K, self.V_volt, self.CQ_areal, self.Cseries_areal):
            yield (
                float(t),
                float(v),
                f_per_m2_to_ff_per_um2(float(cq)),
                f_per_m2_to_ff_per_um2(float(cs)),
            )

    def json_records(self):
        return [
            dict(zip(SWEEP_CSV_HEADER, row)) for row in self.engineering_rows()
        ]


def capacitance_sweep(design: CapacitorDesign, T_list, V_grid) -> CapacitanceSweep:
    """Evaluate C_Q and the series capacitance over a (T, V) grid.

    T = 0 entries are allowed and dispatch to the explicit
    zero-temperature branch; all other temperatures must be positive.
    """
    V = np.asarray(V_grid, dtype=np.float64)
    cg = geometric_capacitance(design)
    t_col, v_col, cq_col, cs_col = [], [], [], []
    for T in T_list:
        if T == 0.0:
            cq = np.asarray(quantum_capacitance_T0(design, V))
        else:
            _require_positive_temperature(T)
            cq = np.asarray(_cq_areal(T, V, design.v_F))
        cs = cg * cq / (cg + cq)
        t_col.append(np.full_like(V, float(T)))
        v_col.append(V)
        cq_col.append(cq)
        cs_col.append(cs)
    return CapacitanceSweep(
        T_K=np.concatenate(t_col),
        V_volt=np.concatenate(v_col),
        CQ_areal=np.concatenate(cq_col),
        Cseries_areal=np.concatenate(cs_col),
    )
