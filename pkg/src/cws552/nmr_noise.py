"""Liquid-state NMR style system model, dephasing noise, and spectra.

The spin Hamiltonian is diagonal in the computational basis (hbar = 1):

    H = sum_i pi nu_i Z_i + sum_{i<j} (pi/2) J_ij Z_i Z_j

with chemical shifts nu_i and scalar couplings J_ij in Hz.  Dephasing over a
circuit segment of duration t is the channel

    rho -> (1 - lam/2) rho + (lam/2) Z_q rho Z_q,   lam = 1 - exp(-t/T2_q)

which scales every coherence of qubit q by exp(-t/T2_q) and fixes all
populations.  Spectra come from the free-induction signal of one observed
spin, M(t) = Tr[rho(t) (X_j + i Y_j)] * exp(-t/T2star_j), discretely Fourier
transformed.  A doublet split by J appears around nu_j, and a coupling
partner held in |0> contributes the peak at nu_j + J/2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .statevec import MixedState, PureState, apply_matrix_mixed

SEGMENTS = ("encode", "error", "decode")


@dataclass(frozen=True)
class NmrSystem:
    """Spin system parameters: shifts (Hz), couplings (Hz), relaxation times (s)."""

    nu: np.ndarray
    J: np.ndarray
    T1: np.ndarray
    T2: np.ndarray
    T2star: np.ndarray

    def __post_init__(self):
        nu = np.asarray(self.nu, dtype=float)
        j = np.asarray(self.J, dtype=float)
        n = nu.size
        if j.shape != (n, n):
            raise ValueError(f"J must be {n}x{n}, got shape {j.shape}")
        if np.max(np.abs(j - j.T)) > 0:
            raise ValueError("J must be symmetric")
        if np.max(np.abs(np.diag(j))) > 0:
            raise ValueError("J must have zero diagonal")
        for name in ("T1", "T2", "T2star"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (n,):
                raise ValueError(f"{name} must have {n} entries")
            if np.any(arr <= 0):
                raise ValueError(f"{name} entries must be positive")
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "J", j)

    @property
    def n_spins(self) -> int:
        return int(self.nu.size)

    @classmethod
    def placeholder_five_spin(cls) -> "NmrSystem":
        """Made-up but plausible five-spin profile for demos and tests.

        The shifts and couplings are placeholders, not measured molecule
        parameters; only their rough magnitudes are representative.
        """
        nu = np.array([120.0, -80.0, 40.0, -160.0, 200.0])
        j = np.zeros((5, 5))
        pairs = {(1, 2): 35.0, (2, 3): 55.0, (3, 4): 38.0, (4, 5): 42.0, (1, 3): 9.0, (2, 4): 6.0}
        for (a, b), val in pairs.items():
            j[a - 1, b - 1] = j[b - 1, a - 1] = val
        return cls(
            nu=nu,
            J=j,
            T1=np.array([5.0, 8.0, 7.0, 6.0, 9.0]),
            T2=np.array([0.85, 1.10, 0.95, 0.80, 1.00]),
            T2star=np.array([0.12, 0.15, 0.13, 0.11, 0.14]),
        )

    def to_json_dict(self) -> dict:
        return {
            "nu": self.nu.tolist(),
            "J": self.J.tolist(),
            "T1": self.T1.tolist(),
            "T2": self.T2.tolist(),
            "T2star": self.T2star.tolist(),
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "NmrSystem":
        return cls(
            nu=np.asarray(doc["nu"], dtype=float),
            J=np.asarray(doc["J"], dtype=float),
            T1=np.asarray(doc["T1"], dtype=float),
            T2=np.asarray(doc["T2"], dtype=float),
            T2star=np.asarray(doc["T2star"], dtype=float),
        )

    @classmethod
    def load(cls, path: str) -> "NmrSystem":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


def _spin_signs(n_spins: int) -> np.ndarray:
    """(-1)^bit for every spin and basis index; shape (n_spins, 2^n)."""
    idx = np.arange(2**n_spins)
    bits = (idx[None, :] >> (n_spins - 1 - np.arange(n_spins))[:, None]) & 1
    return 1.0 - 2.0 * bits


def energies(system: NmrSystem) -> np.ndarray:
    """Diagonal of the Hamiltonian in angular frequency units (rad/s)."""
    if system.n_spins > 10:
        raise ValueError("refusing to build a Hamiltonian beyond 10 spins")
    signs = _spin_signs(system.n_spins)
    diag = np.pi * system.nu @ signs
    for a in range(system.n_spins):
        for b in range(a + 1, system.n_spins):
            if system.J[a, b] != 0.0:
                diag = diag + (np.pi / 2.0) * system.J[a, b] * signs[a] * signs[b]
    return diag


def hamiltonian(system: NmrSystem) -> np.ndarray:
    """Dense diagonal Hamiltonian matrix (rad/s)."""
    return np.diag(energies(system)).astype(complex)


@dataclass(frozen=True)
class NoiseModel:
    """Dephasing noise for the encode/error/decode pipeline.

    t2 holds per-qubit dephasing times (s); schedule maps each circuit
    segment to a duration (s).  The optional knobs act once on the final
    state: coherence_scale multiplies every off-diagonal element by a
    constant, depolarizing mixes in the maximally mixed state.  Amplitude
    damping with the t1 times can be switched on per segment as well; it is
    off by default.
    """

    t2: tuple[float, ...]
    schedule: tuple[tuple[str, float], ...]
    coherence_scale: float = 1.0
    depolarizing: float = 0.0
    t1: tuple[float, ...] | None = None
    amplitude_damping: bool = False

    def __post_init__(self):
        t2 = tuple(float(v) for v in self.t2)
        if any(v <= 0 for v in t2):
            raise ValueError("T2 entries must be positive")
        object.__setattr__(self, "t2", t2)
        sched = tuple((str(seg), float(dur)) for seg, dur in self.schedule)
        names = [seg for seg, _ in sched]
        if sorted(names) != sorted(SEGMENTS):
            raise ValueError(f"schedule must name each of {SEGMENTS} exactly once, got {names}")
        if any(dur < 0 for _, dur in sched):
            raise ValueError("segment durations must be nonnegative")
        object.__setattr__(self, "schedule", sched)
        if not 0.0 <= self.coherence_scale <= 1.0:
            raise ValueError("coherence_scale must lie in [0, 1]")
        if not 0.0 <= self.depolarizing <= 1.0:
            raise ValueError("depolarizing must lie in [0, 1]")
        if self.t1 is not None:
            t1 = tuple(float(v) for v in self.t1)
            if any(v <= 0 for v in t1):
                raise ValueError("T1 entries must be positive")
            object.__setattr__(self, "t1", t1)
        if self.amplitude_damping and self.t1 is None:
            raise ValueError("amplitude damping requires t1 times")

    @classmethod
    def default(cls) -> "NoiseModel":
        """Default profile: 0.65 s total, split by nominal segment gate counts.

        The encode and decode segments each carry six elementary steps against
        one for the error pulse, so the split is 6:1:6.
        """
        total = 0.65
        weights = {"encode": 6.0, "error": 1.0, "decode": 6.0}
        wsum = sum(weights.values())
        return cls(
            t2=(0.85, 1.10, 0.95, 0.80, 1.00),
            schedule=tuple((seg, total * weights[seg] / wsum) for seg in SEGMENTS),
        )

    @classmethod
    def uniform_attenuation(cls, gamma: float, n_qubits: int = 5) -> "NoiseModel":
        """Pure coherence attenuation by `gamma`, no time-based dephasing."""
        return cls(
            t2=(1.0,) * n_qubits,
            schedule=tuple((seg, 0.0) for seg in SEGMENTS),
            coherence_scale=gamma,
        )

    def duration(self, segment: str) -> float:
        for seg, dur in self.schedule:
            if seg == segment:
                return dur
        raise ValueError(f"segment {segment!r} not in schedule")

    def lam(self, qubit: int, segment: str) -> float:
        """Dephasing strength lambda = 1 - exp(-t/T2) for one qubit, one segment."""
        if not 1 <= qubit <= len(self.t2):
            raise ValueError(f"qubit {qubit} out of range")
        return 1.0 - float(np.exp(-self.duration(segment) / self.t2[qubit - 1]))

    def gamma_t1(self, qubit: int, segment: str) -> float:
        if self.t1 is None:
            raise ValueError("no t1 times configured")
        return 1.0 - float(np.exp(-self.duration(segment) / self.t1[qubit - 1]))

    def to_json_dict(self) -> dict:
        doc = {
            "t2": list(self.t2),
            "schedule": [[seg, dur] for seg, dur in self.schedule],
            "coherence_scale": self.coherence_scale,
            "depolarizing": self.depolarizing,
            "amplitude_damping": self.amplitude_damping,
        }
        if self.t1 is not None:
            doc["t1"] = list(self.t1)
        return doc

    @classmethod
    def from_json_dict(cls, doc: dict) -> "NoiseModel":
        return cls(
            t2=tuple(doc["t2"]),
            schedule=tuple((seg, dur) for seg, dur in doc["schedule"]),
            coherence_scale=float(doc.get("coherence_scale", 1.0)),
            depolarizing=float(doc.get("depolarizing", 0.0)),
            t1=tuple(doc["t1"]) if "t1" in doc else None,
            amplitude_damping=bool(doc.get("amplitude_damping", False)),
        )

    @classmethod
    def load(cls, path: str) -> "NoiseModel":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


def apply_dephasing(state: MixedState, qubit: int, lam: float) -> MixedState:
    """Channel rho -> (1 - lam/2) rho + (lam/2) Z_q rho Z_q."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    if not 1 <= qubit <= state.n_qubits:
        raise ValueError(f"qubit {qubit} out of range")
    signs = _spin_signs(state.n_qubits)[qubit - 1]
    # Elements with equal bit on `qubit` keep weight 1, others shrink by 1-lam.
    weights = 1.0 - lam * (1.0 - np.outer(signs, signs)) / 2.0
    return MixedState(state.n_qubits, state.matrix * weights)


def _embed_single(mat: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    op = np.array([[1.0 + 0j]])
    for q in range(1, n_qubits + 1):
        op = np.kron(op, mat if q == qubit else np.eye(2, dtype=complex))
    return op


def apply_amplitude_damping(state: MixedState, qubit: int, gamma: float) -> MixedState:
    """T1 decay toward |0> with branch probability gamma."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    k0 = _embed_single(np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - gamma)]], dtype=complex), qubit, state.n_qubits)
    k1 = _embed_single(np.array([[0.0, np.sqrt(gamma)], [0.0, 0.0]], dtype=complex), qubit, state.n_qubits)
    return MixedState(state.n_qubits, k0 @ state.matrix @ k0.conj().T + k1 @ state.matrix @ k1.conj().T)


def scale_coherences(state: MixedState, gamma: float) -> MixedState:
    """Multiply every off-diagonal element by gamma; populations unchanged."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    mat = gamma * state.matrix + (1.0 - gamma) * np.diag(np.diag(state.matrix))
    return MixedState(state.n_qubits, mat)


def depolarize(state: MixedState, p: float) -> MixedState:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    dim = 2**state.n_qubits
    mat = (1.0 - p) * state.matrix + p * np.eye(dim, dtype=complex) / dim
    return MixedState(state.n_qubits, mat)


def _apply_segment_noise(state: MixedState, model: NoiseModel, segment: str) -> MixedState:
    for q in range(1, state.n_qubits + 1):
        state = apply_dephasing(state, q, model.lam(q, segment))
    if model.amplitude_damping:
        for q in range(1, state.n_qubits + 1):
            state = apply_amplitude_damping(state, q, model.gamma_t1(q, segment))
    return state


def run_noisy_qecc(code, register: PureState, error, model: NoiseModel) -> MixedState:
    """Encode, apply the error, decode, with dephasing after every segment.

    `register` is the 3-qubit logical input; `error` is an ErrorSpec.  The
    optional depolarizing and coherence_scale knobs act once at the end.
    Returns the final 5-qubit density matrix.
    """
    from .code552 import encode
    from .error_model import error_unitary
    from .statevec import GateOp, apply_gate_mixed

    if len(model.t2) != code.n:
        raise ValueError(f"noise model covers {len(model.t2)} qubits, code has {code.n}")
    state = encode(code, register).density()
    state = _apply_segment_noise(state, model, "encode")

    state = apply_gate_mixed(state, GateOp.single(error.location, error_unitary(error)))
    state = _apply_segment_noise(state, model, "error")

    state = apply_matrix_mixed(state, code.decoder(error.location))
    state = _apply_segment_noise(state, model, "decode")

    if model.depolarizing > 0.0:
        state = depolarize(state, model.depolarizing)
    if model.coherence_scale < 1.0:
        state = scale_coherences(state, model.coherence_scale)
    return state


def simulate_spectrum(
    state: MixedState,
    system: NmrSystem,
    observe: int,
    t_max: float,
    dt: float,
) -> list[tuple[float, complex]]:
    """FFT spectrum of the observed spin's free-induction signal.

    Returns (frequency Hz, complex amplitude) pairs in ascending frequency
    order.  Amplitudes are normalized by the number of samples, so an
    undamped unit coherence would give a unit peak.
    """
    n = system.n_spins
    if state.n_qubits != n:
        raise ValueError(f"state has {state.n_qubits} qubits, system has {n} spins")
    if not 1 <= observe <= n:
        raise ValueError(f"observe must be in 1..{n}")
    if t_max <= 0 or dt <= 0:
        raise ValueError("t_max and dt must be positive")
    if np.max(np.abs(system.nu)) >= 0.5 / dt:
        raise ValueError(
            f"dt {dt} aliases shifts up to {np.max(np.abs(system.nu))} Hz; need dt < 1/(2 max|nu|)"
        )

    e = energies(system)
    bit = 1 << (n - observe)
    lower = np.array([i for i in range(2**n) if not i & bit])
    upper = lower + bit
    # Tr[rho (X+iY)_j] = 2 sum over pairs rho[a, b], a = |...1...>, b = |...0...>
    weights = 2.0 * state.matrix[upper, lower]
    freqs_pair = -(e[upper] - e[lower]) / (2.0 * np.pi)

    n_samples = int(round(t_max / dt))
    if n_samples < 2:
        raise ValueError("need at least two samples")
    times = np.arange(n_samples) * dt
    signal = (weights[:, None] * np.exp(2j * np.pi * freqs_pair[:, None] * times[None, :])).sum(axis=0)
    signal = signal * np.exp(-times / system.T2star[observe - 1])

    spectrum = np.fft.fft(signal) / n_samples
    freqs = np.fft.fftfreq(n_samples, dt)
    order = np.argsort(freqs)
    return [(float(freqs[i]), complex(spectrum[i])) for i in order]
