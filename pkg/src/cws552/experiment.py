"""Error-angle sweep protocol, amplitude observables, and scalar fits.

Three register input states carry a single protected coherence:

    k=1: (|000> + |100>)/sqrt(2), coherent spin = physical qubit 2
    k=2: (|010> + |011>)/sqrt(2), coherent spin = physical qubit 4
    k=3: (|000> + |001>)/sqrt(2), coherent spin = physical qubit 4

After encode, a rotation error by angle theta at a known location, and
decode, the output's syndrome qubits (1,5) hold cos(theta/2)|00> plus the
error branch, with the register untouched.  The observables mirror how a
spectrometer would read the protected coherence: the off-diagonal element of
the coherent spin, conditioned on the syndrome branch, normalized by the
same element of the input state.  Noiselessly

    A0 = cos^2(theta/2)  (syndrome |00>)       A1 = sin^2(theta/2)  (error branch)

and A0 + A1 = 1.  Noise attenuates these elements, so the reported scalars
are moduli: I0 = |A0|, I1 = |A1|, I = |A0 + A1|.  The angle estimate
Theta = 2 atan2(sqrt(I1), sqrt(I0)) inverts the noiseless curves.

Setting A applies the four exact Paulis everywhere and tabulates syndrome
branches with register fidelities.  Setting B sweeps theta for x/y/z-axis
rotations on input k=2 and averages over the axis.  Setting C sweeps y-axis
rotations over all three inputs and averages over the input.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .code552 import SYNDROME_MAP, CodeSpec, decode, encode
from .error_model import ErrorSpec, error_unitary
from .nmr_noise import NoiseModel, run_noisy_qecc
from .statevec import (
    GateOp,
    MixedState,
    PureState,
    apply_gate,
    fidelity_with_pure,
    partial_trace,
)

ERROR_TYPES = ("X", "Y", "Z")
SETTING_A_PAULIS = ("E", "Z", "X", "Y")
INPUT_KS = (1, 2, 3)

_TYPE_AXIS_ATOL = 1e-9


@dataclass(frozen=True)
class InputProfile:
    """One protocol input: register state plus the location of its coherence."""

    k: int
    register: PureState
    coherent_qubit: int
    pair: tuple[int, int]  # register basis indices with coherent spin 0 / 1


def _superposition(lo: int, hi: int) -> PureState:
    amps = np.zeros(8, dtype=complex)
    amps[lo] = amps[hi] = 1.0 / np.sqrt(2.0)
    return PureState(3, amps)


INPUTS = {
    1: InputProfile(1, _superposition(0, 4), 2, (0, 4)),
    2: InputProfile(2, _superposition(2, 3), 4, (2, 3)),
    3: InputProfile(3, _superposition(0, 1), 4, (0, 1)),
}


@dataclass(frozen=True)
class Observables:
    """Signed amplitudes and their moduli for one pipeline run."""

    a0: float
    a1: float
    i0: float
    i1: float
    i: float


def _full_index(j: int, register: int, l: int) -> int:
    return (j << 4) | (register << 1) | l


def _error_type_of(spec: ErrorSpec) -> str | None:
    """X/Y/Z when the axis is (up to sign) a coordinate axis, else None."""
    for kind, axis in (("X", 0), ("Y", 1), ("Z", 2)):
        if abs(abs(spec.axis[axis]) - 1.0) <= _TYPE_AXIS_ATOL:
            return kind
    return None


def _branch_bits(label: str) -> tuple[int, int]:
    j, l = SYNDROME_MAP[label]
    return int(j), int(l)


def _final_state(code: CodeSpec, profile: InputProfile, error: ErrorSpec, noise: NoiseModel | None):
    """Run the pipeline; returns either a PureState or a MixedState."""
    if noise is None:
        psi = encode(code, profile.register)
        psi = apply_gate(psi, GateOp.single(error.location, error_unitary(error)))
        return decode(code, psi, error.location)
    return run_noisy_qecc(code, profile.register, error, noise)


def _branch_coherence(state, profile: InputProfile, label: str) -> complex:
    """Coherent-spin off-diagonal element in one syndrome branch.

    Normalized by the input coherence (which is 1/2), so the noiseless value
    for the populated branch is |branch coefficient|^2.
    """
    j, l = _branch_bits(label)
    r0, r1 = profile.pair
    a = _full_index(j, r1, l)
    b = _full_index(j, r0, l)
    if isinstance(state, PureState):
        element = state.amplitudes[a] * np.conj(state.amplitudes[b])
    else:
        element = state.matrix[a, b]
    return 2.0 * complex(element)


def run_point(
    code: CodeSpec,
    input_k: int,
    error: ErrorSpec,
    noise: NoiseModel | None = None,
) -> Observables:
    """One pipeline run: observables for a single (input, error) combination.

    For a coordinate-axis error the error amplitude A1 is read from that
    axis's syndrome branch; for a generic axis the three error branches are
    summed before taking real part and modulus.
    """
    if input_k not in INPUTS:
        raise ValueError(f"input_k must be one of {sorted(INPUTS)}, got {input_k}")
    if not 1 <= error.location <= code.n:
        raise ValueError(f"error location must be in 1..{code.n}")
    profile = INPUTS[input_k]
    state = _final_state(code, profile, error, noise)

    z0 = _branch_coherence(state, profile, "E")
    kind = _error_type_of(error)
    if kind is not None:
        z1 = _branch_coherence(state, profile, kind)
    else:
        z1 = sum(_branch_coherence(state, profile, lab) for lab in ERROR_TYPES)
    return Observables(
        a0=float(np.real(z0)),
        a1=float(np.real(z1)),
        i0=float(np.abs(z0)),
        i1=float(np.abs(z1)),
        i=float(np.abs(z0 + z1)),
    )


@dataclass(frozen=True)
class SettingARow:
    """One Pauli-error check: where the syndrome landed and how the register fared."""

    location: int
    pauli: str
    expected_branch: str
    branch: str
    branch_population: float
    register_fidelity: float

    @property
    def matches(self) -> bool:
        return self.branch == self.expected_branch


def _syndrome_populations(state) -> np.ndarray:
    """2x2 array of syndrome-branch populations, indexed [j, l]."""
    if isinstance(state, PureState):
        probs = np.abs(state.amplitudes.reshape(2, 8, 2)) ** 2
    else:
        probs = np.real(np.diag(state.matrix)).reshape(2, 8, 2)
    return probs.sum(axis=1)


def run_setting_a(code: CodeSpec, noise: NoiseModel | None = None) -> list[SettingARow]:
    """Apply each exact Pauli at each location to input k=2 and read syndromes."""
    profile = INPUTS[2]
    rows = []
    for location in range(1, code.n + 1):
        for label in SETTING_A_PAULIS:
            error = ErrorSpec.pauli(location, label)
            state = _final_state(code, profile, error, noise)
            pops = _syndrome_populations(state)
            j, l = np.unravel_index(int(np.argmax(pops)), pops.shape)
            rho = state.density() if isinstance(state, PureState) else state
            reg = partial_trace(rho, code.register_qubits)
            rows.append(
                SettingARow(
                    location=location,
                    pauli=label,
                    expected_branch=SYNDROME_MAP[label],
                    branch=f"{j}{l}",
                    branch_population=float(pops[j, l]),
                    register_fidelity=fidelity_with_pure(reg, profile.register),
                )
            )
    return rows


def default_grid(n_points: int = 13, theta_max: float = float(np.pi)) -> np.ndarray:
    """Uniform error-angle grid on [0, theta_max]."""
    if n_points < 2:
        raise ValueError("grid needs at least two points")
    if theta_max <= 0:
        raise ValueError("theta_max must be positive")
    return np.linspace(0.0, theta_max, n_points)


@dataclass(frozen=True)
class PointRecord:
    location: int
    error_type: str
    input_k: int
    theta: float
    obs: Observables


@dataclass(frozen=True)
class LocationFit:
    """Fitted scalars for one error location."""

    alpha0: float
    alpha0_stderr: float
    alpha1: float
    alpha1_stderr: float
    ibar: float
    ibar_stderr: float
    slope: float
    slope_stderr: float
    intercept: float
    intercept_stderr: float


@dataclass(frozen=True)
class SweepResult:
    setting: str
    grid: np.ndarray
    records: list[PointRecord]
    ibar0: dict[int, np.ndarray]
    ibar1: dict[int, np.ndarray]
    ibar: dict[int, np.ndarray]
    theta_est: dict[int, np.ndarray]
    fits: dict[int, LocationFit]
    noise: NoiseModel | None


def fit_scale(measured: Iterable[tuple[float, float]], theory: Callable[[float], float]) -> tuple[float, float]:
    """Least-squares scale of measured values onto a theory curve.

    Minimizes sum (m_i - s * theory(x_i))^2; the standard error comes from
    the residual variance with one fitted parameter.
    """
    pts = [(float(x), float(y)) for x, y in measured]
    if len(pts) < 2:
        raise ValueError("need at least two points")
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    t = np.array([float(theory(x)) for x in xs])
    ss = float(t @ t)
    if ss < 1e-30:
        raise ValueError("theory curve is identically zero on the grid")
    scale = float(ys @ t) / ss
    resid = ys - scale * t
    sigma2 = float(resid @ resid) / (len(pts) - 1)
    return scale, float(np.sqrt(sigma2 / ss))


def fit_constant(values: Sequence[float]) -> tuple[float, float]:
    """Sample mean and its standard error."""
    vals = np.asarray([float(v) for v in values])
    if vals.size < 1:
        raise ValueError("need at least one value")
    mean = float(np.mean(vals))
    if vals.size == 1:
        return mean, 0.0
    return mean, float(np.std(vals, ddof=1) / np.sqrt(vals.size))


def fit_line(points: Iterable[tuple[float, float]]) -> "LineFit":
    """Ordinary least squares y = a x + b with standard errors."""
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 2:
        raise ValueError("need at least two points")
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    n = len(pts)
    sxx = float(np.sum((xs - xs.mean()) ** 2))
    if sxx < 1e-30:
        raise ValueError("x values are degenerate")
    slope = float(np.sum((xs - xs.mean()) * (ys - ys.mean())) / sxx)
    intercept = float(ys.mean() - slope * xs.mean())
    resid = ys - (slope * xs + intercept)
    sigma2 = float(resid @ resid) / (n - 2) if n > 2 else 0.0
    slope_stderr = float(np.sqrt(sigma2 / sxx))
    intercept_stderr = float(np.sqrt(sigma2 * (1.0 / n + xs.mean() ** 2 / sxx)))
    return LineFit(slope, intercept, slope_stderr, intercept_stderr)


@dataclass(frozen=True)
class LineFit:
    slope: float
    intercept: float
    slope_stderr: float
    intercept_stderr: float


def _theta_from(i0: float, i1: float) -> float:
    if i0 + i1 <= 1e-30:
        raise ValueError("zero signal: cannot estimate an angle")
    return float(2.0 * np.arctan2(np.sqrt(i1), np.sqrt(i0)))


def estimate_theta(obs: Observables) -> float:
    """Recover the error angle from the two amplitude moduli."""
    return _theta_from(obs.i0, obs.i1)


def _sweep(
    code: CodeSpec,
    setting: str,
    combos: list[tuple[str, int]],
    grid: np.ndarray,
    noise: NoiseModel | None,
) -> SweepResult:
    """Shared sweep driver; combos lists (error_type, input_k) to average over."""
    records = []
    ibar0, ibar1, ibar, theta_est, fits = {}, {}, {}, {}, {}
    for location in range(1, code.n + 1):
        per_combo = []
        for error_type, input_k in combos:
            obs_row = [
                run_point(code, input_k, ErrorSpec.typed(location, error_type, th), noise)
                for th in grid
            ]
            per_combo.append(obs_row)
            records.extend(
                PointRecord(location, error_type, input_k, float(th), obs)
                for th, obs in zip(grid, obs_row)
            )
        i0 = np.mean([[o.i0 for o in row] for row in per_combo], axis=0)
        i1 = np.mean([[o.i1 for o in row] for row in per_combo], axis=0)
        ii = np.mean([[o.i for o in row] for row in per_combo], axis=0)
        ibar0[location], ibar1[location], ibar[location] = i0, i1, ii
        theta_est[location] = np.array([_theta_from(a, b) for a, b in zip(i0, i1)])
        alpha0 = fit_scale(zip(grid, i0), lambda th: np.cos(th / 2.0) ** 2)
        alpha1 = fit_scale(zip(grid, i1), lambda th: np.sin(th / 2.0) ** 2)
        const = fit_constant(ii)
        line = fit_line(zip(grid, theta_est[location]))
        fits[location] = LocationFit(
            alpha0=alpha0[0],
            alpha0_stderr=alpha0[1],
            alpha1=alpha1[0],
            alpha1_stderr=alpha1[1],
            ibar=const[0],
            ibar_stderr=const[1],
            slope=line.slope,
            slope_stderr=line.slope_stderr,
            intercept=line.intercept,
            intercept_stderr=line.intercept_stderr,
        )
    return SweepResult(setting, np.asarray(grid, dtype=float), records, ibar0, ibar1, ibar, theta_est, fits, noise)


def run_setting_b(
    code: CodeSpec,
    grid: np.ndarray | None = None,
    noise: NoiseModel | None = None,
) -> SweepResult:
    """Sweep x/y/z-axis rotations on input k=2, averaging over the axis."""
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    combos = [(error_type, 2) for error_type in ERROR_TYPES]
    return _sweep(code, "B", combos, grid, noise)


def run_setting_c(
    code: CodeSpec,
    grid: np.ndarray | None = None,
    noise: NoiseModel | None = None,
) -> SweepResult:
    """Sweep y-axis rotations over all three inputs, averaging over the input."""
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    combos = [("Y", input_k) for input_k in INPUT_KS]
    return _sweep(code, "C", combos, grid, noise)


def _fmt(value: float) -> str:
    return f"{value:.17g}"


SWEEP_CSV_COLUMNS = (
    "setting",
    "location",
    "error_type",
    "input_k",
    "theta",
    "A0",
    "A1",
    "I0",
    "I1",
    "I",
    "Theta",
)


def write_sweep_csv(result: SweepResult, path: str) -> None:
    """Per-point sweep table; floats carry 17 significant digits."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_CSV_COLUMNS)
        for rec in result.records:
            o = rec.obs
            theta_row = (
                _theta_from(o.i0, o.i1) if o.i0 + o.i1 > 1e-30 else float("nan")
            )
            writer.writerow(
                [
                    result.setting,
                    rec.location,
                    rec.error_type,
                    rec.input_k,
                    _fmt(rec.theta),
                    _fmt(o.a0),
                    _fmt(o.a1),
                    _fmt(o.i0),
                    _fmt(o.i1),
                    _fmt(o.i),
                    _fmt(theta_row),
                ]
            )


SETTING_A_CSV_COLUMNS = (
    "setting",
    "location",
    "error_type",
    "input_k",
    "expected_branch",
    "branch",
    "branch_population",
    "register_fidelity",
    "matches_expected",
)


def write_setting_a_csv(rows: list[SettingARow], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SETTING_A_CSV_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    "A",
                    row.location,
                    row.pauli,
                    2,
                    row.expected_branch,
                    row.branch,
                    _fmt(row.branch_population),
                    _fmt(row.register_fidelity),
                    int(row.matches),
                ]
            )


def fit_summary(result: SweepResult) -> dict:
    """JSON-ready summary of the fitted scalars per location."""
    return {
        "setting": result.setting,
        "grid": [float(th) for th in result.grid],
        "noise": result.noise.to_json_dict() if result.noise is not None else None,
        "locations": {
            str(loc): {
                "alpha0": fit.alpha0,
                "alpha0_stderr": fit.alpha0_stderr,
                "alpha1": fit.alpha1,
                "alpha1_stderr": fit.alpha1_stderr,
                "ibar": fit.ibar,
                "ibar_stderr": fit.ibar_stderr,
                "a": fit.slope,
                "a_stderr": fit.slope_stderr,
                "b": fit.intercept,
                "b_stderr": fit.intercept_stderr,
            }
            for loc, fit in sorted(result.fits.items())
        },
    }
