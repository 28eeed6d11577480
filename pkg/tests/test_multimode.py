import math

import numpy as np
import pytest

from qcapsim.capacitance import CapacitorDesign, quantum_capacitance_T0
from qcapsim.constants import CONSTANTS, fermi_energy
from qcapsim.errors import AmbiguousResonance, NonPositiveArea
from qcapsim.multimode import (
    DEFAULT_RESONANCE_TOLERANCE,
    InteractionKind,
    ModeSet,
    PumpSpec,
    classify_interaction,
    gamma_nml,
    quantum_conductance,
    quantum_rc_time,
    single_photon_rate_engineering,
)
from qcapsim.oscillator import nonlinear_time_constant

TWO_PI = 2.0 * math.pi


def _ghz(f):
    return TWO_PI * f * 1e9


# --- coupling coefficient -------------------------------------------------------

def test_gamma_degenerate_case():
    omega = _ghz(3.0)
    assert gamma_nml(1e-13, omega, omega, omega) == pytest.approx(1e-13 * omega**2, rel=1e-14)


def test_gamma_symmetric_in_last_two_modes():
    assert gamma_nml(2e-13, _ghz(4.0), _ghz(2.0), _ghz(10.0)) == gamma_nml(
        2e-13, _ghz(4.0), _ghz(10.0), _ghz(2.0)
    )


def test_gamma_published_example():
    # direct evaluation with the quoted tau = 2.275e-13 s
    tau = 2.275e-13
    direct = tau * _ghz(4.0) * math.sqrt(_ghz(2.0) * _ghz(10.0))
    got = gamma_nml(tau, _ghz(4.0), _ghz(2.0), _ghz(10.0))
    assert got == pytest.approx(direct, rel=1e-14)
    assert got == pytest.approx(1.606e8, rel=1e-3)


def test_gamma_rejects_nonpositive_frequencies():
    with pytest.raises(ValueError):
        gamma_nml(1e-13, 0.0, _ghz(1.0), _ghz(1.0))


# --- interaction classification ----------------------------------------------------

TAU = nonlinear_time_constant(1e-10, 1.0)


def test_classify_hopping_published_example():
    pump = PumpSpec(Omega=_ghz(4.0), amplitude_abs=1.0, phase_theta=0.3)
    result = classify_interaction(pump, _ghz(2.0), _ghz(10.0), TAU)
    assert result.kind is InteractionKind.HOPPING
    assert result.detuning == pytest.approx(0.0, abs=1e-3)
    assert result.theta == 0.3


def test_classify_parametric():
    pump = PumpSpec(Omega=_ghz(6.0), amplitude_abs=1.0, phase_theta=0.0)
    result = classify_interaction(pump, _ghz(2.0), _ghz(10.0), TAU)
    assert result.kind is InteractionKind.PARAMETRIC


def test_classify_off_resonant():
    pump = PumpSpec(Omega=_ghz(5.0), amplitude_abs=1.0, phase_theta=0.0)
    result = classify_interaction(pump, _ghz(2.0), _ghz(10.0), TAU, tolerance=TWO_PI * 1e6)
    assert result.kind is InteractionKind.OFF_RESONANT
    assert result.detuning == pytest.approx(_ghz(2.0), rel=1e-12)


def test_classify_ambiguous_raises():
    tol = TWO_PI * 1e6
    omega_2 = tol / 4.0
    pump = PumpSpec(Omega=_ghz(1.0), amplitude_abs=1.0, phase_theta=0.0)
    with pytest.raises(AmbiguousResonance):
        classify_interaction(pump, 2.0 * pump.Omega, omega_2, TAU, tolerance=tol)


def test_classification_strength_quadratic_in_pump():
    def strength(amp):
        pump = PumpSpec(Omega=_ghz(4.0), amplitude_abs=amp, phase_theta=0.0)
        return classify_interaction(pump, _ghz(2.0), _ghz(10.0), TAU).G

    assert strength(2.0) == pytest.approx(4.0 * strength(1.0), rel=1e-14)
    assert strength(1.0) == pytest.approx(
        3.0 * gamma_nml(TAU, _ghz(4.0), _ghz(2.0), _ghz(10.0)), rel=1e-14
    )


def test_classification_mutually_exclusive_for_separated_modes():
    # hopping and parametric can only coincide when a mode frequency drops
    # below the tolerance itself
    rng = np.random.default_rng(52)
    tol = TWO_PI * 1e6
    for _ in range(100):
        omega_1 = float(rng.uniform(10 * tol, _ghz(12.0)))
        omega_2 = float(rng.uniform(10 * tol, _ghz(12.0)))
        pump = PumpSpec(Omega=float(rng.uniform(_ghz(0.5), _ghz(12.0))), amplitude_abs=1.0, phase_theta=0.0)
        result = classify_interaction(pump, omega_1, omega_2, TAU, tolerance=tol)
        assert result.kind in (
            InteractionKind.HOPPING,
            InteractionKind.PARAMETRIC,
            InteractionKind.OFF_RESONANT,
        )


def test_classification_json_shape():
    pump = PumpSpec(Omega=_ghz(4.0), amplitude_abs=1.0, phase_theta=0.1)
    doc = classify_interaction(pump, _ghz(2.0), _ghz(10.0), TAU).to_json_dict()
    assert set(doc) == {"kind", "detuning_rad_s", "G_rad_s", "theta_rad"}
    assert doc["kind"] == "hopping"


def test_default_tolerance_is_one_megahertz():
    assert DEFAULT_RESONANCE_TOLERANCE == pytest.approx(TWO_PI * 1e6, rel=1e-14)


# --- published single-photon rates ---------------------------------------------------

def test_single_photon_rate_published_values():
    rate_1k = single_photon_rate_engineering(1.0, 4.0, 2.0, 10.0, 100.0)
    assert rate_1k.g0_printed_rad_s / (TWO_PI * 1e6) == pytest.approx(25.55, rel=5e-3)
    rate_4k = single_photon_rate_engineering(4.0, 4.0, 2.0, 10.0, 100.0)
    assert rate_4k.g0_printed_rad_s / (TWO_PI * 1e3) == pytest.approx(399.2, rel=5e-3)
    rate_quarter = single_photon_rate_engineering(0.25, 4.0, 2.0, 10.0, 100.0)
    assert rate_quarter.g0_printed_rad_s / (TWO_PI * 1e9) == pytest.approx(1.635, rel=5e-3)


def test_single_photon_rate_exact_scalings():
    base = single_photon_rate_engineering(1.0, 4.0, 2.0, 10.0, 100.0)
    hot = single_photon_rate_engineering(4.0, 4.0, 2.0, 10.0, 100.0)
    cold = single_photon_rate_engineering(0.25, 4.0, 2.0, 10.0, 100.0)
    big = single_photon_rate_engineering(1.0, 4.0, 2.0, 10.0, 1000.0)
    assert base.g0_printed_rad_s / hot.g0_printed_rad_s == pytest.approx(64.0, rel=1e-12)
    assert cold.g0_printed_rad_s / base.g0_printed_rad_s == pytest.approx(64.0, rel=1e-12)
    assert base.g0_printed_rad_s / big.g0_printed_rad_s == pytest.approx(10.0, rel=1e-12)


def test_symbolic_rate_is_thrice_the_printed_formula():
    # the defining relation g0 = 3 gamma_012 sits a parameter-independent
    # factor ~3 above the published coefficient formula
    rng = np.random.default_rng(50)
    ratios = []
    for _ in range(50):
        T = float(rng.uniform(0.2, 6.0))
        f = float(rng.uniform(0.5, 12.0))
        f1 = float(rng.uniform(0.5, 12.0))
        f2 = float(rng.uniform(0.5, 12.0))
        S = float(rng.uniform(1.0, 500.0))
        ratios.append(
            single_photon_rate_engineering(T, f, f1, f2, S).ratio_symbolic_to_printed
        )
    ratios = np.asarray(ratios)
    assert np.all(np.abs(ratios / 3.0 - 1.0) < 5e-3)
    assert np.max(ratios) - np.min(ratios) < 1e-12 * 3.0


def test_single_photon_rate_json_shape():
    doc = single_photon_rate_engineering(1.0, 4.0, 2.0, 10.0, 100.0).to_json_dict()
    assert set(doc) == {
        "g0_printed_rad_s",
        "g0_symbolic_rad_s",
        "ratio_symbolic_to_printed",
    }


# --- quantum RC time -------------------------------------------------------------------

def test_quantum_rc_zero_bias():
    assert quantum_rc_time(1e-10, 0.0) == 0.0


def test_quantum_rc_linear_scalings():
    ef = fermi_energy(1e-3)
    assert quantum_rc_time(1e-10, 2 * ef) == pytest.approx(
        2.0 * quantum_rc_time(1e-10, ef), rel=1e-14
    )
    assert quantum_rc_time(2e-10, ef) == pytest.approx(
        2.0 * quantum_rc_time(1e-10, ef), rel=1e-14
    )
    assert quantum_rc_time(1e-10, -ef) == quantum_rc_time(1e-10, ef)


def test_quantum_rc_published_example():
    got = quantum_rc_time(1e-10, fermi_energy(1e-3))
    direct = 1e-10 * 0.5 * CONSTANTS.e * 1e-3 / (CONSTANTS.hbar * CONSTANTS.v_F_default**2)
    assert got == pytest.approx(direct, rel=1e-14)
    assert got == pytest.approx(7.6e-11, rel=2e-3)


def test_quantum_rc_consistency_with_capacitance_and_conductance():
    # S * C_Q(T->0)(V) / sigma_Q must equal S |E_F| / (hbar v_F^2), both
    # sides computed through independent code paths
    rng = np.random.default_rng(51)
    design = CapacitorDesign(area_S=1e-10, dielectric_thickness_t=7e-9)
    sigma_q = quantum_conductance()
    assert sigma_q == pytest.approx(2.0 * CONSTANTS.e**2 / (math.pi * CONSTANTS.hbar), rel=1e-14)
    for v in rng.uniform(-0.5, 0.5, size=200):
        via_capacitance = design.area_S * quantum_capacitance_T0(design, v) / sigma_q
        direct = quantum_rc_time(design.area_S, fermi_energy(v))
        assert abs(via_capacitance - direct) <= 1e-10 * max(direct, 1e-300)


def test_quantum_rc_rejects_nonpositive_area():
    with pytest.raises(NonPositiveArea):
        quantum_rc_time(0.0, 1e-22)


# --- domain types ----------------------------------------------------------------------

def test_mode_set_validation():
    ModeSet(frequencies=(_ghz(1.0), _ghz(2.0)), labels=("a", "b"))
    with pytest.raises(ValueError):
        ModeSet(frequencies=(_ghz(1.0), _ghz(2.0)), labels=("a", "a"))
    with pytest.raises(ValueError):
        ModeSet(frequencies=(0.0,), labels=("a",))
    with pytest.raises(ValueError):
        ModeSet(frequencies=(_ghz(1.0),), labels=("a", "b"))


def test_pump_spec_validation():
    with pytest.raises(ValueError):
        PumpSpec(Omega=0.0, amplitude_abs=1.0, phase_theta=0.0)
    with pytest.raises(ValueError):
        PumpSpec(Omega=_ghz(1.0), amplitude_abs=-1.0, phase_theta=0.0)
