import math

import numpy as np
import pytest

from qcapsim.capacitance import (
    SWEEP_CSV_HEADER,
    CapacitorDesign,
    OperatingPoint,
    capacitance_sweep,
    charge_energy_T0,
    charge_numeric,
    charge_series,
    charge_series_cubic_coefficient,
    design_check,
    energy_series,
    geometric_capacitance,
    linear_capacitance_C0,
    ln_2_plus_2cosh,
    quantum_capacitance,
    quantum_capacitance_T0,
    series_capacitance,
)
from qcapsim.constants import CONSTANTS, f_per_m2_to_ff_per_um2
from qcapsim.errors import NonPositiveTemperature, NonPositiveThickness

E, KB, HBAR, VF = CONSTANTS.e, CONSTANTS.k_B, CONSTANTS.hbar, CONSTANTS.v_F_default

DESIGN = CapacitorDesign(area_S=1e-10, dielectric_thickness_t=7e-9, relative_permittivity=4.0)


# --- stable special function -------------------------------------------------

def test_ln_2_plus_2cosh_matches_naive_form():
    x = np.linspace(-30.0, 30.0, 301)
    naive = np.log(2.0 * (1.0 + np.cosh(x)))
    assert np.max(np.abs(ln_2_plus_2cosh(x) - naive)) < 1e-13


def test_ln_2_plus_2cosh_survives_huge_arguments():
    # naive cosh overflows beyond ~710; the stable form tends to |x|
    for x in (800.0, -800.0, 5e4):
        val = ln_2_plus_2cosh(x)
        assert math.isfinite(val)
        assert val == pytest.approx(abs(x), rel=1e-15)


def test_ln_2_plus_2cosh_scalar_and_array_agree():
    xs = np.array([-3.0, 0.0, 0.7, 12.0])
    arr = ln_2_plus_2cosh(xs)
    for i, x in enumerate(xs):
        assert arr[i] == ln_2_plus_2cosh(float(x))


# --- quantum capacitance -----------------------------------------------------

def test_quantum_capacitance_zero_bias_value():
    # direct evaluation: ln[2(1+cosh 0)] = ln 4, i.e. half of ln 16
    expected = 2.0 * E**2 * KB * 1.0 * math.log(4.0) / (math.pi * (HBAR * VF) ** 2)
    got = quantum_capacitance(DESIGN, OperatingPoint(1.0, 0.0))
    assert got == pytest.approx(expected, rel=1e-14)
    assert got == pytest.approx(2.816361713774626e-05, rel=1e-12)
    assert got == pytest.approx(linear_capacitance_C0(DESIGN, 1.0) / 2.0, rel=1e-14)


def test_quantum_capacitance_even_in_voltage():
    rng = np.random.default_rng(30)
    for T in (0.25, 1.0, 4.0):
        for v in rng.uniform(0.0, 0.2, size=40):
            a = quantum_capacitance(DESIGN, OperatingPoint(T, v))
            b = quantum_capacitance(DESIGN, OperatingPoint(T, -v))
            assert a == pytest.approx(b, rel=1e-15)


def test_quantum_capacitance_large_bias_approaches_linear_form():
    v = 0.1
    finite = quantum_capacitance(DESIGN, OperatingPoint(1.0, v))
    limit = quantum_capacitance_T0(DESIGN, v)
    assert finite == pytest.approx(limit, rel=0.01)


def test_quantum_capacitance_rejects_nonpositive_temperature():
    with pytest.raises(NonPositiveTemperature):
        quantum_capacitance(DESIGN, OperatingPoint(0.0, 0.0))


def test_quantum_capacitance_T0_zero_and_parity():
    assert quantum_capacitance_T0(DESIGN, 0.0) == 0.0
    rng = np.random.default_rng(31)
    for v in rng.uniform(0.0, 1.0, size=20):
        assert quantum_capacitance_T0(DESIGN, v) == quantum_capacitance_T0(DESIGN, -v)


def test_quantum_capacitance_T0_is_millikelvin_limit():
    v = 0.05
    t0 = quantum_capacitance_T0(DESIGN, v)
    assert t0 == pytest.approx(E**3 * v / (math.pi * (HBAR * VF) ** 2), rel=1e-14)
    cold = quantum_capacitance(DESIGN, OperatingPoint(1e-3, v))
    assert cold == pytest.approx(t0, rel=1e-3)


# --- geometric and series ------------------------------------------------------

def test_geometric_capacitance_published_value():
    got = f_per_m2_to_ff_per_um2(geometric_capacitance(DESIGN))
    assert got == pytest.approx(5.06, rel=5e-3)
    assert got == pytest.approx(5.059535893028571, rel=1e-12)


def test_geometric_capacitance_inverse_thickness_scaling():
    double_t = CapacitorDesign(area_S=1e-10, dielectric_thickness_t=14e-9)
    assert geometric_capacitance(double_t) == pytest.approx(
        geometric_capacitance(CapacitorDesign(area_S=1e-10, dielectric_thickness_t=7e-9)) / 2.0,
        rel=1e-15,
    )


def test_geometric_capacitance_vacuum_reference():
    design = CapacitorDesign(
        area_S=1e-10, dielectric_thickness_t=8.854e-9, relative_permittivity=1.0
    )
    assert f_per_m2_to_ff_per_um2(geometric_capacitance(design)) == pytest.approx(1.0, rel=1e-4)


def test_nonpositive_thickness_rejected():
    with pytest.raises(NonPositiveThickness):
        CapacitorDesign(area_S=1e-10, dielectric_thickness_t=0.0)


def test_series_capacitance_below_both_components():
    op = OperatingPoint(1.0, 0.01)
    cs = series_capacitance(DESIGN, op)
    assert cs < geometric_capacitance(DESIGN)
    assert cs < quantum_capacitance(DESIGN, op)


def test_series_capacitance_zero_bias_near_quantum_value():
    op = OperatingPoint(1.0, 0.0)
    cs = series_capacitance(DESIGN, op)
    cq = quantum_capacitance(DESIGN, op)
    cg = geometric_capacitance(DESIGN)
    assert cs == pytest.approx(cq, rel=0.012)
    assert cs == pytest.approx(cq / (1.0 + cq / cg), rel=1e-14)


def test_series_capacitance_approaches_geometric_at_large_bias():
    cg = geometric_capacitance(DESIGN)
    prev_dev = None
    for v in (0.5, 1.0, 2.0):
        cs = series_capacitance(DESIGN, OperatingPoint(1.0, v))
        dev = abs(cs - cg) / cg
        if prev_dev is not None:
            assert dev < prev_dev
        prev_dev = dev
    assert prev_dev < 0.03


def test_series_capacitance_even_in_voltage():
    a = series_capacitance(DESIGN, OperatingPoint(1.0, 0.03))
    b = series_capacitance(DESIGN, OperatingPoint(1.0, -0.03))
    assert a == pytest.approx(b, rel=1e-15)


# --- zero-temperature charge/energy -------------------------------------------

def test_charge_energy_T0_zero():
    assert charge_energy_T0(DESIGN, 0.0) == (0.0, 0.0)


def test_charge_energy_T0_parity():
    rng = np.random.default_rng(32)
    for v in rng.uniform(0.0, 0.5, size=25):
        qp, up = charge_energy_T0(DESIGN, v)
        qm, um = charge_energy_T0(DESIGN, -v)
        assert qm == -qp
        assert um == up
        assert up >= 0.0


def test_charge_energy_T0_density_form_identity():
    # U = (1/3) sqrt(2 pi) hbar v_F N^(3/2) with N = |Q|/e, on the charging branch
    rng = np.random.default_rng(33)
    for v in rng.uniform(1e-4, 0.5, size=10):
        q, u = charge_energy_T0(DESIGN, v)
        n = abs(q) / E
        alt = (1.0 / 3.0) * math.sqrt(2.0 * math.pi) * HBAR * VF * math.copysign(1.0, q) * n**1.5
        assert alt == pytest.approx(u, rel=1e-10)


def test_charge_energy_T0_derivative_consistency():
    # dQ/dV equals the zero-temperature capacitance (central differences)
    v, h = 0.02, 1e-7
    qp, _ = charge_energy_T0(DESIGN, v + h)
    qm, _ = charge_energy_T0(DESIGN, v - h)
    assert (qp - qm) / (2 * h) == pytest.approx(quantum_capacitance_T0(DESIGN, v), rel=1e-8)


# --- series expansions vs the quadrature oracle --------------------------------

@pytest.mark.parametrize("T", [0.25, 1.0, 4.0])
@pytest.mark.parametrize("frac", [0.05, 0.1, 0.2])
def test_charge_series_matches_quadrature(T, frac):
    v = frac * KB * T / E
    series = charge_series(DESIGN, OperatingPoint(T, v))
    oracle = charge_numeric(DESIGN, OperatingPoint(T, v))
    assert series == pytest.approx(oracle, rel=1e-4)


def test_charge_series_zero():
    assert charge_series(DESIGN, OperatingPoint(1.0, 0.0)) == 0.0


def test_charge_numeric_zero():
    assert charge_numeric(DESIGN, OperatingPoint(1.0, 0.0)) == 0.0


def test_charge_numeric_negative_voltage_odd():
    v = 2e-5
    qp = charge_numeric(DESIGN, OperatingPoint(1.0, v))
    qm = charge_numeric(DESIGN, OperatingPoint(1.0, -v))
    assert qm == pytest.approx(-qp, rel=1e-10)


def test_charge_numeric_millikelvin_matches_T0_charge():
    v = 5e-3
    quad_val = charge_numeric(DESIGN, OperatingPoint(1e-3, v))
    closed, _ = charge_energy_T0(DESIGN, v)
    assert quad_val == pytest.approx(closed, rel=1e-3)


def test_quadrature_derivative_reproduces_capacitance():
    # step-size-robust central differences with Richardson extrapolation
    v0, T = 1e-3, 1.0
    target = quantum_capacitance(DESIGN, OperatingPoint(T, v0))
    for h in (4e-6, 2e-6):
        def central(step):
            qp = charge_numeric(DESIGN, OperatingPoint(T, v0 + step))
            qm = charge_numeric(DESIGN, OperatingPoint(T, v0 - step))
            return (qp - qm) / (2 * step)

        richardson = (4.0 * central(h / 2) - central(h)) / 3.0
        assert richardson == pytest.approx(target, rel=1e-6)


def test_cubic_coefficient_by_richardson_extrapolation():
    # strip the linear part from the quadrature oracle and extrapolate the
    # cubic coefficient; it must land on the implemented expansion term
    T = 1.0
    c_lin = quantum_capacitance(DESIGN, OperatingPoint(T, 0.0)) / E  # dN/dV at 0
    v = 0.05 * KB * T / E

    def cubic_estimate(vv):
        n = charge_numeric(DESIGN, OperatingPoint(T, vv)) / E
        return (n - c_lin * vv) / vv**3

    est = (4.0 * cubic_estimate(v / 2) - cubic_estimate(v)) / 3.0
    assert est == pytest.approx(charge_series_cubic_coefficient(DESIGN, T), rel=1e-3)


def test_linear_capacitance_published_values():
    c0 = linear_capacitance_C0(DESIGN, 1.0)
    assert f_per_m2_to_ff_per_um2(c0) == pytest.approx(0.0563, rel=0.01)
    assert f_per_m2_to_ff_per_um2(c0) == pytest.approx(0.056327234275492515, rel=1e-12)
    total_fF = DESIGN.area_S * c0 * 1e15
    assert total_fF == pytest.approx(5.63, rel=0.01)


def test_linear_capacitance_linearity_in_temperature():
    assert linear_capacitance_C0(DESIGN, 2.0) == pytest.approx(
        2.0 * linear_capacitance_C0(DESIGN, 1.0), rel=1e-14
    )


def test_energy_series_zero():
    assert energy_series(DESIGN, 1.0, 0.0) == 0.0


def test_energy_series_curvature_is_inverse_linear_capacitance():
    # d^2U/dN^2 at N = 0 equals pi (hbar v_F)^2 / (k_B T ln 16) = 2 e^2 / C_0
    T = 1.0
    h = 1e10  # 1/m^2, deep inside the quadratic region
    d2 = (
        energy_series(DESIGN, T, h) - 2.0 * energy_series(DESIGN, T, 0.0)
        + energy_series(DESIGN, T, -h)
    ) / h**2
    analytic = math.pi * (HBAR * VF) ** 2 / (KB * T * math.log(16.0))
    assert d2 == pytest.approx(analytic, rel=1e-6)
    assert d2 == pytest.approx(2.0 * E**2 / linear_capacitance_C0(DESIGN, T), rel=1e-6)


# --- design rules ----------------------------------------------------------------

def test_design_check_published_geometry_passes():
    report = design_check(DESIGN, 1.0)
    assert report.thickness_ok and report.dominance_ok
    assert report.dominance_ratio == pytest.approx(0.011133, rel=1e-3)
    assert report.dominance_ratio == report.C_0_areal / report.C_G_areal
    assert len(report.messages) >= 2


@pytest.mark.parametrize("t_nm,ok", [(2.0, False), (3.5, True), (69.0, True), (100.0, False)])
def test_design_check_thickness_window(t_nm, ok):
    design = CapacitorDesign(area_S=1e-10, dielectric_thickness_t=t_nm * 1e-9)
    assert design_check(design, 1.0).thickness_ok is ok


def test_design_check_dominance_fails_when_too_thick():
    # at large t the geometric capacitance drops toward C_0 and dominance is lost
    design = CapacitorDesign(area_S=1e-10, dielectric_thickness_t=65e-9)
    report = design_check(design, 10.0)
    assert not report.dominance_ok


# --- sweep -------------------------------------------------------------------------

def test_sweep_rows_and_invariants():
    grid = np.linspace(-0.05, 0.05, 41)
    result = capacitance_sweep(DESIGN, [0.0, 0.25, 1.0, 4.0], grid)
    assert len(result.T_K) == 4 * 41
    assert np.all(result.Cseries_areal <= result.CQ_areal + 1e-30)
    # V = 0 column grows with temperature
    zero_bias = {}
    for t, v, cq in zip(result.T_K, result.V_volt, result.CQ_areal):
        if v == 0.0:
            zero_bias[float(t)] = float(cq)
    assert zero_bias[0.0] == 0.0
    assert zero_bias[0.25] < zero_bias[1.0] < zero_bias[4.0]


def test_sweep_zero_temperature_branch_matches_explicit_form():
    grid = np.array([-0.02, 0.0, 0.02])
    result = capacitance_sweep(DESIGN, [0.0], grid)
    expected = quantum_capacitance_T0(DESIGN, grid)
    assert np.allclose(result.CQ_areal, expected, rtol=1e-14, atol=0)


def test_sweep_large_bias_plateau():
    grid = np.array([-2.0, 2.0])
    result = capacitance_sweep(DESIGN, [1.0], grid)
    cg = geometric_capacitance(DESIGN)
    assert np.all(np.abs(result.Cseries_areal - cg) / cg < 0.03)


def test_sweep_monotonic_in_absolute_voltage():
    grid = np.linspace(0.0, 0.05, 30)
    result = capacitance_sweep(DESIGN, [1.0], grid)
    assert np.all(np.diff(result.CQ_areal) > 0.0)


def test_sweep_header_and_engineering_rows():
    assert SWEEP_CSV_HEADER == ("T_K", "V_volt", "CQ_fF_per_um2", "Cseries_fF_per_um2")
    result = capacitance_sweep(DESIGN, [1.0], np.array([0.0]))
    rows = list(result.engineering_rows())
    assert rows[0][0] == 1.0 and rows[0][1] == 0.0
    assert rows[0][2] == pytest.approx(0.028163617138, rel=1e-9)
    records = result.json_records()
    assert set(records[0]) == set(SWEEP_CSV_HEADER)


def test_sweep_rejects_negative_temperature():
    with pytest.raises(NonPositiveTemperature):
        capacitance_sweep(DESIGN, [-1.0], np.array([0.0]))


# --- randomized parity/monotonicity properties -----------------------------------

def test_random_parity_properties():
    rng = np.random.default_rng(34)
    voltages = rng.uniform(0.0, 0.3, size=200)
    cq_p = np.asarray([quantum_capacitance(DESIGN, OperatingPoint(1.0, v)) for v in voltages])
    cq_m = np.asarray([quantum_capacitance(DESIGN, OperatingPoint(1.0, -v)) for v in voltages])
    assert np.allclose(cq_p, cq_m, rtol=1e-14, atol=0)
    assert np.all(cq_p > 0.0)


def test_zero_bias_capacitance_increases_with_temperature():
    temps = np.linspace(0.05, 10.0, 50)
    values = [quantum_capacitance(DESIGN, OperatingPoint(t, 0.0)) for t in temps]
    assert np.all(np.diff(values) > 0.0)
