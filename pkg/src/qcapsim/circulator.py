"""Three-mode circulator built from pairwise hopping couplings.

Three modes are coupled in a loop by pump-selected hopping interactions
with strengths g and phases phi.  The loop phase

    gauge_flux = phi_1 + phi_3 - phi_2

acts as a synthetic magnetic flux: 0 or pi restores reciprocity, +/- pi/2
makes the two conversion paths interfere fully and the device circulates.
The coupling Hamiltonian is assembled so that this combination is exactly
the flux picked up around the cycle 1 -> 2 -> 3 -> 1 (the phase on the
3 <-> 1 coupling enters with the opposite sign to the other two), which is
what makes gauge invariance and the reciprocity conditions hold for every
phase assignment and not just for special ones.

Scattering follows the standard one-port-per-mode input-output closure
a_out = a_in - sqrt(kappa) a, giving S = I - K (-i delta I - M)^(-1) K.
Reported scalar amplitudes use path naming: S13 is the 1 -> 3 conversion
amplitude, i.e. entry (3,1) of the matrix S in the a_out = S a_in
convention, and S31 is entry (1,3).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._accel import USE_NUMBA, njit_or_plain
from .constants import ghz_to_rad_per_s, pi_units_to_rad
from .errors import ConfigError, SingularSystem
from .linalg import lu_solve_loops, lu_solve_numpy, solve_complex

SOLVE_RESIDUAL_TOL = 1e-10

SWEEP_CSV_HEADER = (
    "delta_rad_s",
    "ratio_13_31",
    "insertion_loss_dB",
    "reS13",
    "imS13",
    "reS31",
    "imS31",
)


class Frame(enum.Enum):
    LAB = "lab"
    ROTATING = "rotating"


@dataclass(frozen=True)
class CirculatorConfig:
    """Three modes plus the three loop couplings.

    Couplings are indexed opposite their mode pair: g[2] (=g_3) couples
    modes 1 and 2, g[0] (=g_1) couples 2 and 3, g[1] (=g_2) couples 3 and 1;
    same for the phases.  In the rotating frame the Langevin diagonal uses
    ``detuning`` (default zero: every mode on resonance in its own frame)
    and the swept probe detuning is applied globally; in the lab frame the
    diagonal carries the absolute mode frequencies.
    """

    omega: tuple[float, float, float]   # rad/s
    kappa: tuple[float, float, float]   # rad/s
    g: tuple[float, float, float]       # rad/s
    phi: tuple[float, float, float]     # rad
    frame: Frame = Frame.ROTATING
    detuning: tuple[float, float, float] = (0.0, 0.0, 0.0)  # rad/s

    def __post_init__(self):
        for name in ("omega", "kappa", "g", "phi", "detuning"):
            if len(getattr(self, name)) != 3:
                raise ValueError(f"{name} must have exactly 3 entries")
        if any(w <= 0.0 for w in self.omega):
            raise ValueError("mode frequencies must be positive")
        if any(k <= 0.0 for k in self.kappa):
            raise ValueError("decay rates must be positive for well-posed scattering")
        if any(gi < 0.0 for gi in self.g):
            raise ValueError("coupling strengths must be non-negative")

    @property
    def gauge_flux(self) -> float:
        """Loop phase phi_1 + phi_3 - phi_2 (rad)."""
        return self.phi[0] + self.phi[2] - self.phi[1]


CIRCULATOR_JSON_KEYS = frozenset(
    {"omega", "kappa", "g", "phi", "frame", "detuning"}
)


def config_from_engineering_dict(doc: dict) -> CirculatorConfig:
    """Build a config from a JSON document in engineering units.

    Frequencies (omega, kappa, g, detuning) are in GHz; phases are in units
    of pi (e.g. ``"phi": [0, 0.5, 0]`` means phi_2 = pi/2).  Unknown keys
    are rejected.
    """
    unknown = set(doc) - CIRCULATOR_JSON_KEYS
    if unknown:
        raise ConfigError(
            f"unknown circulator config keys: {sorted(unknown)} "
            f"(allowed: {sorted(CIRCULATOR_JSON_KEYS)})"
        )
    missing = {"omega", "kappa", "g", "phi"} - set(doc)
    if missing:
        raise ConfigError(f"missing circulator config keys: {sorted(missing)}")

    def triple(name, convert):
        values = doc[name] if name in doc else [0.0, 0.0, 0.0]
        if not isinstance(values, (list, tuple)) or len(values) != 3:
            raise ConfigError(f"config key '{name}' must be a list of 3 numbers")
        return tuple(convert(float(v)) for v in values)

    frame_name = str(doc.get("frame", "rotating")).lower()
    try:
        frame = Frame(frame_name)
    except ValueError:
        raise ConfigError(f"config key 'frame' must be 'lab' or 'rotating', got {frame_name!r}")
    return CirculatorConfig(
        omega=triple("omega", ghz_to_rad_per_s),
        kappa=triple("kappa", ghz_to_rad_per_s),
        g=triple("g", ghz_to_rad_per_s),
        phi=triple("phi", pi_units_to_rad),
        frame=frame,
        detuning=triple("detuning", ghz_to_rad_per_s),
    )


def pump_constraint_check(Omega_1: float, Omega_2: float, Omega_3: float, tol: float) -> bool:
    """True when the pump drives satisfy Omega_1 + Omega_3 = Omega_2 within tol."""
    if tol < 0.0:
        raise ValueError(f"tolerance must be >= 0, got {tol}")
    return abs(Omega_1 + Omega_3 - Omega_2) <= tol


def coupling_matrix(config: CirculatorConfig) -> np.ndarray:
    """Hermitian coupling matrix h (rad/s), zero diagonal.

    h[i][j] is the coefficient of a_i^dag a_j.  The phase of the 3 <-> 1
    coupling enters with the opposite sign to the other two so that the
    cycle 1 -> 2 -> 3 -> 1 accumulates exactly ``gauge_flux``.
    """
    g1, g2, g3 = config.g
    p1, p2, p3 = config.phi
    h = np.zeros((3, 3), dtype=np.complex128)
    h[0, 1] = g3 * np.exp(-1j * p3)
    h[1, 2] = g1 * np.exp(-1j * p1)
    h[0, 2] = g2 * np.exp(-1j * p2)
    h[1, 0] = np.conj(h[0, 1])
    h[2, 1] = np.conj(h[1, 2])
    h[2, 0] = np.conj(h[0, 2])
    return h


def langevin_matrix(config: CirculatorConfig) -> np.ndarray:
    """Drift matrix M of d a/dt = M a + sqrt(kappa) a_in (rad/s).

    Diagonal entries are -(i w_n + kappa_n/2) in the lab frame or
    -(i delta_n + kappa_n/2) in the rotating frame; the coupling block is
    -i h, so i M + (i/2) diag(kappa) is Hermitian for any phases.
    """
    diag_freqs = config.omega if config.frame is Frame.LAB else config.detuning
    h = coupling_matrix(config) + np.diag(np.asarray(diag_freqs, dtype=np.float64))
    return -1j * h - np.diag(np.asarray(config.kappa, dtype=np.float64)) / 2.0


def complex_solve(matrix, rhs) -> np.ndarray:
    """Partial-pivoted complex solve with the 1e-10 residual contract."""
    return solve_complex(matrix, rhs, residual_tol=SOLVE_RESIDUAL_TOL)


def scattering_matrix(config: CirculatorConfig, delta: float) -> np.ndarray:
    """Scattering matrix S(delta) = I - K (-i delta I - M)^(-1) K.

    K = diag(sqrt(kappa)); each column comes from a residual-checked
    pivoted solve (:class:`SingularSystem` on failure).  Matrix convention:
    a_out = S a_in, so S[i, j] connects input j to output i.
    """
    m = langevin_matrix(config)
    k = np.diag(np.sqrt(np.asarray(config.kappa, dtype=np.float64)))
    a = -1j * delta * np.eye(3) - m
    x = complex_solve(a, k.astype(np.complex128))
    return np.eye(3) - k @ x


# --- detuning sweep ----------------------------------------------------------

def _sweep_lu_kernel_impl(m, sqrt_kappa, deltas, s_out, resid_out):
    """Per-point scattering over the detuning grid; hot loop of the sweep.

    Writes S(delta) into s_out (n,3,3) and the worst per-column relative
    solve residual into resid_out (n,).
    """
    n = deltas.shape[0]
    for ip in range(n):
        a = np.zeros((3, 3), dtype=np.complex128)
        b = np.zeros((3, 3), dtype=np.complex128)
        for i in range(3):
            for j in range(3):
                a[i, j] = -m[i, j]
            a[i, i] -= 1j * deltas[ip]
            b[i, i] = sqrt_kappa[i]
        a_fac = a.copy()
        x = b.copy()
        singular = lu_solve_loops(a_fac, x)
        if singular:
            resid_out[ip] = np.inf
            continue
        worst = 0.0
        for j in range(3):
            num = 0.0
            den = 0.0
            for i in range(3):
                acc = -b[i, j]
                for kk in range(3):
                    acc += a[i, kk] * x[kk, j]
                num += abs(acc) ** 2
                den += abs(b[i, j]) ** 2
            rel = math.sqrt(num) / math.sqrt(den)
            if rel > worst:
                worst = rel
        resid_out[ip] = worst
        for i in range(3):
            for j in range(3):
                s = -sqrt_kappa[i] * x[i, j]
                if i == j:
                    s += 1.0
                s_out[ip, i, j] = s


_sweep_lu_kernel = njit_or_plain(_sweep_lu_kernel_impl)


def _sweep_scattering_numpy(m, sqrt_kappa, deltas):
    n = deltas.shape[0]
    s_out = np.empty((n, 3, 3), dtype=np.complex128)
    resid_out = np.empty(n)
    k = np.diag(sqrt_kappa).astype(np.complex128)
    eye = np.eye(3)
    for ip in range(n):
        a = -1j * deltas[ip] * eye - m
        x = k.copy()
        singular = lu_solve_numpy(a.copy(), x)
        if singular:
            resid_out[ip] = np.inf
            continue
        resid = np.linalg.norm(a @ x - k, axis=0) / np.linalg.norm(k, axis=0)
        resid_out[ip] = float(np.max(resid))
        s_out[ip] = eye - np.diag(sqrt_kappa) @ x
    return s_out, resid_out


@dataclass(frozen=True)
class SweepResult:
    """Scattering over a detuning grid plus the derived circulator figures.

    ``s13`` is the 1 -> 3 conversion amplitude S[3,1] and ``s31`` the
    3 -> 1 amplitude S[1,3]; ratio_13_31 = |s13|/|s31| and the insertion
    loss is -10 log10 |s13|^2.
    """

    detuning_grid: np.ndarray      # rad/s, (n,)
    smatrices: np.ndarray          # (n, 3, 3) complex
    ratio_13_31: np.ndarray        # (n,)
    insertion_loss_dB: np.ndarray  # (n,)

    @property
    def s13(self) -> np.ndarray:
        return self.smatrices[:, 2, 0]

    @property
    def s31(self) -> np.ndarray:
        return self.smatrices[:, 0, 2]

    def csv_rows(self):
        for i, delta in enumerate(self.detuning_grid):
            s13 = self.smatrices[i, 2, 0]
            s31 = self.smatrices[i, 0, 2]
            yield (
                float(delta),
                float(self.ratio_13_31[i]),
                float(self.insertion_loss_dB[i]),
                float(s13.real),
                float(s13.imag),
                float(s31.real),
                float(s31.imag),
            )

    def json_records(self):
        return [dict(zip(SWEEP_CSV_HEADER, row)) for row in self.csv_rows()]


def sweep(
    config: CirculatorConfig, delta_min: float, delta_max: float, n_points: int
) -> SweepResult:
    """Scattering over a uniform detuning grid (rad/s).

    Enforces the per-point solve residual contract and returns the full
    complex matrices along with the 1 -> 3 / 3 -> 1 asymmetry ratio and the
    insertion loss of the forward path.
    """
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    deltas = np.linspace(delta_min, delta_max, n_points)
    m = langevin_matrix(config)
    sqrt_kappa = np.sqrt(np.asarray(config.kappa, dtype=np.float64))
    if USE_NUMBA:
        s_out = np.empty((n_points, 3, 3), dtype=np.complex128)
        resid_out = np.empty(n_points)
        _sweep_lu_kernel(m, sqrt_kappa, deltas, s_out, resid_out)
    else:
        s_out, resid_out = _sweep_scattering_numpy(m, sqrt_kappa, deltas)
    worst = float(np.max(resid_out))
    if not np.isfinite(worst) or worst > SOLVE_RESIDUAL_TOL:
        raise SingularSystem(
            f"sweep solve residual {worst:.3e} exceeds {SOLVE_RESIDUAL_TOL:.1e}"
        )
    s13 = np.abs(s_out[:, 2, 0])
    s31 = np.abs(s_out[:, 0, 2])
    with np.errstate(divide="ignore"):
        ratio = s13 / s31
        insertion_loss = -10.0 * np.log10(s13**2)
    return SweepResult(
        detuning_grid=deltas,
        smatrices=s_out,
        ratio_13_31=ratio,
        insertion_loss_dB=insertion_loss,
    )
