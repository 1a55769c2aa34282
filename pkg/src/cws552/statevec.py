"""Dense pure-state and density-matrix simulator for small qubit registers.

Convention used throughout the package: qubit labels are 1-based and qubit 1
is the most significant bit of a basis-state index, so on five qubits the
basis state |01001> has index 0b01001 = 9.  All operations return new state
objects and never mutate their inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

UNITARY_ATOL = 1e-12

E2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)

PAULI_BY_LABEL = {"E": E2, "X": X, "Y": Y, "Z": Z}


@dataclass(frozen=True)
class PureState:
    """State vector on `n_qubits` qubits, amplitudes indexed MSB-first."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if self.n_qubits < 1:
            raise ValueError("need at least one qubit")
        if amps.shape != (2**self.n_qubits,):
            raise ValueError(
                f"expected {2**self.n_qubits} amplitudes, got shape {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def zero(cls, n_qubits: int) -> "PureState":
        amps = np.zeros(2**n_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def basis(cls, bits: str) -> "PureState":
        """Computational basis state from a bit string, first char = qubit 1."""
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"not a bit string: {bits!r}")
        amps = np.zeros(2 ** len(bits), dtype=complex)
        amps[int(bits, 2)] = 1.0
        return cls(len(bits), amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def density(self) -> "MixedState":
        return MixedState(self.n_qubits, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class MixedState:
    """Density matrix on `n_qubits` qubits, same index convention as PureState."""

    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        dim = 2**self.n_qubits
        if mat.shape != (dim, dim):
            raise ValueError(f"expected {dim}x{dim} matrix, got shape {mat.shape}")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_pure(cls, state: PureState) -> "MixedState":
        return state.density()

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.matrix)).copy()


@dataclass(frozen=True)
class GateOp:
    """A gate acting on named qubits.

    kind is one of "single" (one target, 2x2 matrix), "controlled" (target
    matrix applied when every control qubit is |1>), or "unitary" (explicit
    matrix on an ordered qubit subset, first listed qubit = MSB).
    """

    kind: str
    targets: tuple[int, ...]
    matrix: np.ndarray
    controls: tuple[int, ...] = ()

    @classmethod
    def single(cls, qubit: int, matrix: np.ndarray) -> "GateOp":
        mat = _as_unitary(matrix, 2)
        _check_labels((qubit,))
        return cls("single", (qubit,), mat)

    @classmethod
    def controlled(
        cls, controls: Sequence[int], target: int, matrix: np.ndarray
    ) -> "GateOp":
        mat = _as_unitary(matrix, 2)
        labels = tuple(controls) + (target,)
        _check_labels(labels)
        if not controls:
            raise ValueError("controlled gate needs at least one control")
        return cls("controlled", (target,), mat, tuple(controls))

    @classmethod
    def unitary(cls, qubits: Sequence[int], matrix: np.ndarray) -> "GateOp":
        labels = tuple(qubits)
        _check_labels(labels)
        mat = _as_unitary(matrix, 2 ** len(labels))
        return cls("unitary", labels, mat)

    def qubits(self) -> tuple[int, ...]:
        return self.controls + self.targets


def _check_labels(labels: Iterable[int]) -> None:
    labels = tuple(labels)
    if any((not isinstance(q, (int, np.integer))) or q < 1 for q in labels):
        raise ValueError(f"qubit labels must be positive integers, got {labels}")
    if len(set(labels)) != len(labels):
        raise ValueError(f"repeated qubit label in {labels}")


def _as_unitary(matrix: np.ndarray, dim: int) -> np.ndarray:
    mat = np.asarray(matrix, dtype=complex)
    if mat.shape != (dim, dim):
        raise ValueError(f"expected {dim}x{dim} matrix, got shape {mat.shape}")
    err = np.max(np.abs(mat.conj().T @ mat - np.eye(dim)))
    if err > UNITARY_ATOL:
        raise ValueError(f"matrix is not unitary (deviation {err:.3e})")
    return mat


def x(qubit: int) -> GateOp:
    return GateOp.single(qubit, X)


def y(qubit: int) -> GateOp:
    return GateOp.single(qubit, Y)


def z(qubit: int) -> GateOp:
    return GateOp.single(qubit, Z)


def h(qubit: int) -> GateOp:
    return GateOp.single(qubit, H)


def cnot(control: int, target: int) -> GateOp:
    return GateOp.controlled((control,), target, X)


def toffoli(control_a: int, control_b: int, target: int) -> GateOp:
    return GateOp.controlled((control_a, control_b), target, X)


def _apply_matrix(vec: np.ndarray, mat: np.ndarray, axes: Sequence[int], n: int) -> np.ndarray:
    """Apply `mat` to the listed tensor axes (first listed axis = MSB of mat).

    `vec` may be a flat vector (2^n,) or a column batch (2^n, B); the same
    kernel serves single-qubit gates, subset unitaries, and full-matrix
    synthesis so those paths agree bit for bit.
    """
    batch = vec.ndim == 2
    cols = vec.shape[1] if batch else 1
    k = len(axes)
    t = vec.reshape([2] * n + [cols])
    t = np.moveaxis(t, axes, range(k))
    shape = t.shape
    t = mat @ t.reshape(2**k, -1)
    t = np.moveaxis(t.reshape(shape), range(k), axes)
    return t.reshape(2**n, cols) if batch else t.reshape(2**n)


def _resolve(gate: GateOp) -> tuple[list[int], np.ndarray]:
    """Ordered qubit list and dense matrix for a GateOp, controls folded in."""
    if gate.kind == "single":
        return [gate.targets[0]], gate.matrix
    if gate.kind == "unitary":
        return list(gate.targets), gate.matrix
    if gate.kind == "controlled":
        dim = 2 ** (len(gate.controls) + 1)
        mat = np.eye(dim, dtype=complex)
        mat[dim - 2 :, dim - 2 :] = gate.matrix
        return list(gate.controls) + [gate.targets[0]], mat
    raise ValueError(f"unknown gate kind {gate.kind!r}")


def _axes_for(qubits: Sequence[int], n: int) -> list[int]:
    for q in qubits:
        if q < 1 or q > n:
            raise ValueError(f"qubit {q} out of range for {n}-qubit state")
    return [q - 1 for q in qubits]


def apply_gate(state: PureState, gate: GateOp) -> PureState:
    """Apply a GateOp to a pure state, returning a new state."""
    qubits, mat = _resolve(gate)
    axes = _axes_for(qubits, state.n_qubits)
    return PureState(state.n_qubits, _apply_matrix(state.amplitudes, mat, axes, state.n_qubits))


def apply_unitary_subset(state: PureState, matrix: np.ndarray, qubits: Sequence[int]) -> PureState:
    """Apply an explicit 2^k x 2^k unitary to an ordered list of k qubits."""
    return apply_gate(state, GateOp.unitary(qubits, matrix))


def gate_matrix(gate: GateOp, n_qubits: int) -> np.ndarray:
    """Full 2^n x 2^n unitary realizing `gate` on an n-qubit register."""
    qubits, mat = _resolve(gate)
    axes = _axes_for(qubits, n_qubits)
    return _apply_matrix(np.eye(2**n_qubits, dtype=complex), mat, axes, n_qubits)


def apply_gate_mixed(state: MixedState, gate: GateOp) -> MixedState:
    u = gate_matrix(gate, state.n_qubits)
    return MixedState(state.n_qubits, u @ state.matrix @ u.conj().T)


def apply_matrix_mixed(state: MixedState, matrix: np.ndarray) -> MixedState:
    """Conjugate a density matrix by a full-register unitary."""
    u = _as_unitary(matrix, 2**state.n_qubits)
    return MixedState(state.n_qubits, u @ state.matrix @ u.conj().T)


def partial_trace(state: MixedState, keep: Sequence[int]) -> MixedState:
    """Reduced density matrix on the kept qubits, in the order listed."""
    keep = tuple(keep)
    if not keep:
        raise ValueError("must keep at least one qubit")
    n = state.n_qubits
    keep_axes = _axes_for(keep, n)
    if len(set(keep_axes)) != len(keep_axes):
        raise ValueError(f"repeated qubit label in {keep}")
    drop_axes = [i for i in range(n) if i not in keep_axes]
    t = state.matrix.reshape([2] * (2 * n))
    ket = list(range(n))
    bra = [n + i for i in range(n)]
    for ax in drop_axes:
        bra[ax] = ket[ax]
    out = [ket[a] for a in keep_axes] + [bra[a] for a in keep_axes]
    reduced = np.einsum(t, ket + bra, out)
    k = len(keep)
    return MixedState(k, reduced.reshape(2**k, 2**k))


def overlap(a: PureState, b: PureState) -> complex:
    """Inner product <a|b>."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("states have different qubit counts")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity_with_pure(state: MixedState, target: PureState) -> float:
    """<target| rho |target> for a pure reference."""
    if state.n_qubits != target.n_qubits:
        raise ValueError("states have different qubit counts")
    v = target.amplitudes
    return float(np.real(np.vdot(v, state.matrix @ v)))


def trace_distance(a: MixedState, b: MixedState) -> float:
    if a.n_qubits != b.n_qubits:
        raise ValueError("states have different qubit counts")
    eigs = np.linalg.eigvalsh(a.matrix - b.matrix)
    return float(0.5 * np.sum(np.abs(eigs)))


def schmidt_rank(state: PureState, cut: Sequence[int], tol: float = 1e-8) -> int:
    """Schmidt rank across the bipartition (cut qubits) vs (the rest)."""
    side_a = tuple(cut)
    axes_a = _axes_for(side_a, state.n_qubits)
    if len(set(axes_a)) != len(axes_a):
        raise ValueError(f"repeated qubit label in {cut}")
    axes_b = [i for i in range(state.n_qubits) if i not in axes_a]
    if not axes_a or not axes_b:
        raise ValueError("both sides of the cut must be nonempty")
    t = np.moveaxis(state.amplitudes.reshape([2] * state.n_qubits), axes_a, range(len(axes_a)))
    mat = t.reshape(2 ** len(axes_a), 2 ** len(axes_b))
    svals = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(svals > tol))


def pauli_operator(n_qubits: int, labels: dict[int, str]) -> np.ndarray:
    """Dense n-qubit Pauli built from {qubit: "X"|"Y"|"Z"|"E"} assignments."""
    _axes_for(tuple(labels), n_qubits)
    op = np.array([[1.0 + 0j]])
    for q in range(1, n_qubits + 1):
        op = np.kron(op, PAULI_BY_LABEL[labels.get(q, "E")])
    return op


def global_phase_distance(a: PureState, b: PureState) -> float:
    """max elementwise |a - exp(i phi) b| minimized over the global phase phi."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("states have different qubit counts")
    inner = np.vdot(b.amplitudes, a.amplitudes)
    phase = inner / abs(inner) if abs(inner) > 0 else 1.0
    return float(np.max(np.abs(a.amplitudes - phase * b.amplitudes)))
