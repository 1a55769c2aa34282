"""The ((5,5,2)) codeword-stabilized code.

Five physical qubits carry a five-dimensional logical space spanned by the
codewords

    phi_0 = (|00001> + |11110>)/sqrt(2)
    phi_1 = (|00010> + |11101>)/sqrt(2)
    phi_2 = (|01000> + |10111>)/sqrt(2)
    phi_3 = (|00100> + |11011>)/sqrt(2)
    phi_4 = (|10000> + |01111>)/sqrt(2)

indexed by the register basis strings 000, 001, 010, 011, 100 on qubits
(2,3,4).  The code has distance 2 and corrects an arbitrary error on any one
qubit whose position is known.  Decoding routes the error type into a
two-qubit syndrome on qubits (1,5): identity -> |00>, bit flip -> |01>,
phase flip -> |10>, bit+phase flip -> |11>, while the register returns to
qubits (2,3,4) untouched.

The encoder is synthesized as a basis permutation (carrying each register
input |0,b,0> to the low member of the matching codeword pair) followed by a
Hadamard on qubit 1 and a fan-out of CNOTs from qubit 1 to qubits 2..5.  Each
per-location decoder is the unitary that maps the 20 orthonormal states
{P_q phi_b} onto syndrome-tagged register basis states, completed on the
remaining 12 dimensions by Gram-Schmidt against the computational basis in
index order, so the whole construction is deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statevec import (
    MixedState,
    PureState,
    cnot,
    gate_matrix,
    h,
    pauli_operator,
)

N_QUBITS = 5
DIMENSION = 5
DISTANCE = 2
REGISTER_QUBITS = (2, 3, 4)
SYNDROME_QUBITS = (1, 5)

LOGICAL_STRINGS = ("000", "001", "010", "011", "100")

# Each codeword is an equal-weight pair of a string and its bitwise complement.
CODEWORD_PAIRS = (
    ("00001", "11110"),
    ("00010", "11101"),
    ("01000", "10111"),
    ("00100", "11011"),
    ("10000", "01111"),
)

# Error type -> syndrome bits (qubit 1, qubit 5) read off after decoding.
SYNDROME_MAP = {"E": "00", "X": "01", "Z": "10", "Y": "11"}

# Order used for decoder images and branch coefficients.
BRANCH_LABELS = ("E", "X", "Z", "Y")

# Order used for reporting the erasure-check C matrices.
KL_LABELS = ("E", "X", "Y", "Z")

GRAM_ATOL = 1e-12
SUPPORT_ATOL = 1e-12


@dataclass(frozen=True)
class CodeSpec:
    """Concrete realization of the code: codewords plus circuit unitaries."""

    n: int
    dimension: int
    distance: int
    register_qubits: tuple[int, ...]
    syndrome_qubits: tuple[int, ...]
    logical_basis: tuple[str, ...]
    codewords: tuple[PureState, ...]
    encoder: np.ndarray
    decoders: tuple[np.ndarray, ...]

    def decoder(self, location: int) -> np.ndarray:
        if not 1 <= location <= self.n:
            raise ValueError(f"location must be in 1..{self.n}, got {location}")
        return self.decoders[location - 1]


def _codeword_vector(pair: tuple[str, str]) -> np.ndarray:
    amps = np.zeros(2**N_QUBITS, dtype=complex)
    amps[int(pair[0], 2)] = 1.0
    amps[int(pair[1], 2)] = 1.0
    return amps / np.sqrt(2.0)


def _input_index(b: int) -> int:
    """Basis index of |0, register b, 0> on the five physical qubits."""
    return int(LOGICAL_STRINGS[b], 2) << 1


def _representative(pair: tuple[str, str]) -> str:
    """The member of a codeword pair whose first bit is 0.

    The Hadamard/CNOT fan-out stage branches on qubit 1, so the permutation
    stage must land on the qubit-1 = 0 member of each pair.
    """
    return pair[0] if pair[0][0] == "0" else pair[1]


def _basis_permutation() -> np.ndarray:
    """Permutation sending each |0,b,0> to the representative of pair b.

    The remaining 27 basis states are matched up in increasing index order,
    which fixes one deterministic completion out of the many valid ones.
    """
    mapping = {}
    for b, pair in enumerate(CODEWORD_PAIRS):
        mapping[_input_index(b)] = int(_representative(pair), 2)
    free_sources = [i for i in range(32) if i not in mapping]
    free_targets = [i for i in range(32) if i not in set(mapping.values())]
    mapping.update(zip(free_sources, free_targets))
    perm = np.zeros((32, 32), dtype=complex)
    for src, dst in mapping.items():
        perm[dst, src] = 1.0
    return perm


def _encoder_matrix() -> np.ndarray:
    u = _basis_permutation()
    u = gate_matrix(h(1), N_QUBITS) @ u
    for target in (2, 3, 4, 5):
        u = gate_matrix(cnot(1, target), N_QUBITS) @ u
    return u


def _branch_target_index(label: str, b: int) -> int:
    """Basis index of |syndrome(label)> on (1,5) with register b on (2,3,4)."""
    j, l = (int(c) for c in SYNDROME_MAP[label])
    return (j << 4) | (b << 1) | l


def _decoder_matrix(codeword_vectors: list[np.ndarray], location: int) -> np.ndarray:
    sources = []
    target_indices = []
    for label in BRANCH_LABELS:
        p_full = pauli_operator(N_QUBITS, {location: label})
        for b in range(DIMENSION):
            sources.append(p_full @ codeword_vectors[b])
            target_indices.append(_branch_target_index(label, b))

    gram = np.array([[np.vdot(u, v) for v in sources] for u in sources])
    gram_err = np.max(np.abs(gram - np.eye(len(sources))))
    if gram_err > GRAM_ATOL:
        raise RuntimeError(
            f"error images at location {location} are not orthonormal "
            f"(deviation {gram_err:.3e}); decoder construction is ill-defined"
        )

    # Complete the 20 image vectors to a full basis. Two Gram-Schmidt passes
    # keep the completion orthonormal to machine precision.
    basis = list(sources)
    completion = []
    for idx in range(32):
        v = np.zeros(32, dtype=complex)
        v[idx] = 1.0
        for _ in range(2):
            for u in basis:
                v = v - np.vdot(u, v) * u
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            v = v / norm
            basis.append(v)
            completion.append(v)
    if len(completion) != 32 - len(sources):
        raise RuntimeError("basis completion failed to span the full space")

    free_targets = sorted(set(range(32)) - set(target_indices))
    decoder = np.zeros((32, 32), dtype=complex)
    for tgt, src in zip(target_indices, sources):
        decoder[tgt, :] += src.conj()
    for tgt, src in zip(free_targets, completion):
        decoder[tgt, :] += src.conj()

    unitary_err = np.max(np.abs(decoder.conj().T @ decoder - np.eye(32)))
    if unitary_err > GRAM_ATOL:
        raise RuntimeError(
            f"decoder for location {location} is not unitary (deviation {unitary_err:.3e})"
        )
    return decoder


def build_code() -> CodeSpec:
    """Construct codewords, encoder, and the five per-location decoders."""
    vectors = [_codeword_vector(pair) for pair in CODEWORD_PAIRS]
    codewords = tuple(PureState(N_QUBITS, v) for v in vectors)
    encoder = _encoder_matrix()

    # The synthesized encoder must reproduce the codewords exactly.
    for b in range(DIMENSION):
        image = encoder[:, _input_index(b)]
        if np.max(np.abs(image - vectors[b])) > 1e-12:
            raise RuntimeError(f"encoder does not map register input {b} onto codeword {b}")

    decoders = tuple(_decoder_matrix(vectors, q) for q in range(1, N_QUBITS + 1))
    return CodeSpec(
        n=N_QUBITS,
        dimension=DIMENSION,
        distance=DISTANCE,
        register_qubits=REGISTER_QUBITS,
        syndrome_qubits=SYNDROME_QUBITS,
        logical_basis=LOGICAL_STRINGS,
        codewords=codewords,
        encoder=encoder,
        decoders=decoders,
    )


def embed_register(register: PureState) -> PureState:
    """Place a 3-qubit register state into |0>_1 (register) |0>_5."""
    if register.n_qubits != len(REGISTER_QUBITS):
        raise ValueError(f"register state must have {len(REGISTER_QUBITS)} qubits")
    full = np.zeros(2**N_QUBITS, dtype=complex)
    full[0:16:2] = register.amplitudes
    return PureState(N_QUBITS, full)


def encode(code: CodeSpec, register: PureState) -> PureState:
    """Map a register state with support on the logical basis to the codespace."""
    if register.n_qubits != len(REGISTER_QUBITS):
        raise ValueError(f"register state must have {len(REGISTER_QUBITS)} qubits")
    outside = np.max(np.abs(register.amplitudes[DIMENSION:]))
    if outside > SUPPORT_ATOL:
        raise ValueError(
            "register state has support outside the logical basis "
            f"(amplitude {outside:.3e} on strings 101/110/111)"
        )
    full = embed_register(register)
    return PureState(N_QUBITS, code.encoder @ full.amplitudes)


def decode(code: CodeSpec, corrupted: PureState, location: int) -> PureState:
    """Apply the decoder for an error at the given location.

    On states of the form (error at `location`) x (codeword superposition)
    the output factorizes as |syndrome>_{1,5} (x) |register>_{2,3,4}.
    """
    if corrupted.n_qubits != N_QUBITS:
        raise ValueError(f"expected a {N_QUBITS}-qubit state")
    return PureState(N_QUBITS, code.decoder(location) @ corrupted.amplitudes)


def decode_mixed(code: CodeSpec, corrupted: MixedState, location: int) -> MixedState:
    if corrupted.n_qubits != N_QUBITS:
        raise ValueError(f"expected a {N_QUBITS}-qubit state")
    d = code.decoder(location)
    return MixedState(N_QUBITS, d @ corrupted.matrix @ d.conj().T)


@dataclass(frozen=True)
class LocationCheck:
    """Erasure-correctability check at one location."""

    location: int
    passed: bool
    c_matrix: np.ndarray  # 4x4, indexed by KL_LABELS
    max_violation: float


@dataclass(frozen=True)
class ErasureReport:
    labels: tuple[str, ...]
    locations: tuple[LocationCheck, ...]

    @property
    def passed(self) -> bool:
        return all(loc.passed for loc in self.locations)


def verify_erasure_correctability(code: CodeSpec, tol: float = 1e-12) -> ErasureReport:
    """Check <phi_b| P^dag Q |phi_c> = C_PQ delta_bc at every location.

    The codeword inner products must vanish between different codewords and
    be independent of the codeword index on the diagonal; the surviving
    constants form the 4x4 C matrix reported per location.
    """
    vectors = [cw.amplitudes for cw in code.codewords]
    checks = []
    for q in range(1, code.n + 1):
        images = {
            label: [pauli_operator(code.n, {q: label}) @ v for v in vectors]
            for label in KL_LABELS
        }
        c_matrix = np.zeros((4, 4), dtype=complex)
        worst = 0.0
        for i, p_label in enumerate(KL_LABELS):
            for j, q_label in enumerate(KL_LABELS):
                m = np.array(
                    [
                        [np.vdot(images[p_label][b], images[q_label][c]) for c in range(code.dimension)]
                        for b in range(code.dimension)
                    ]
                )
                c_pq = np.mean(np.diag(m))
                c_matrix[i, j] = c_pq
                worst = max(worst, float(np.max(np.abs(m - c_pq * np.eye(code.dimension)))))
        checks.append(LocationCheck(q, worst <= tol, c_matrix, worst))
    return ErasureReport(KL_LABELS, tuple(checks))


@dataclass(frozen=True)
class DistanceResult:
    """Outcome of the exhaustive Pauli scan.

    `witness` names a minimum-weight Pauli violating the detectability
    condition, as (qubit, label) pairs; None if the scan exhausted all
    weights without a violation.
    """

    distance: int
    witness: tuple[tuple[int, str], ...] | None
    witness_violation: float


def _kl_violation(vectors: list[np.ndarray], op: np.ndarray) -> float:
    """Deviation of <phi_b| op |phi_c> from (scalar) * identity."""
    dim = len(vectors)
    m = np.array([[np.vdot(vectors[b], op @ vectors[c]) for c in range(dim)] for b in range(dim)])
    scalar = np.mean(np.diag(m))
    return float(np.max(np.abs(m - scalar * np.eye(dim))))


def verify_distance(code: CodeSpec, tol: float = 1e-10) -> DistanceResult:
    """Exhaustively scan Pauli weights for the first detectability violation.

    Returns the largest d such that every Pauli of weight < d looks like a
    scalar on the codespace, plus a violating Pauli of weight d as witness.
    """
    from itertools import combinations, product

    vectors = [cw.amplitudes for cw in code.codewords]
    for weight in range(1, code.n + 1):
        for support in combinations(range(1, code.n + 1), weight):
            for labels in product("XYZ", repeat=weight):
                op = pauli_operator(code.n, dict(zip(support, labels)))
                violation = _kl_violation(vectors, op)
                if violation > tol:
                    return DistanceResult(
                        distance=weight,
                        witness=tuple(zip(support, labels)),
                        witness_violation=violation,
                    )
    return DistanceResult(distance=code.n + 1, witness=None, witness_violation=0.0)


def _complex_to_pairs(arr: np.ndarray) -> list:
    stacked = np.stack([arr.real, arr.imag], axis=-1)
    return stacked.tolist()


def _pairs_to_complex(doc: list) -> np.ndarray:
    arr = np.asarray(doc, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def code_to_json_dict(code: CodeSpec) -> dict:
    """JSON-ready dict: complex entries as [re, im], matrices row-major."""
    return {
        "n": code.n,
        "K": code.dimension,
        "d": code.distance,
        "register_qubits": list(code.register_qubits),
        "syndrome_qubits": list(code.syndrome_qubits),
        "logical_basis": list(code.logical_basis),
        "syndrome_map": dict(SYNDROME_MAP),
        "codewords": [_complex_to_pairs(cw.amplitudes) for cw in code.codewords],
        "encoder": _complex_to_pairs(code.encoder),
        "decoders": {str(q + 1): _complex_to_pairs(d) for q, d in enumerate(code.decoders)},
    }


def code_from_json_dict(doc: dict) -> CodeSpec:
    """Load a CodeSpec as stored; run the verifiers to trust it."""
    n = int(doc["n"])
    codewords = tuple(
        PureState(n, _pairs_to_complex(cw)) for cw in doc["codewords"]
    )
    decoders = tuple(
        _pairs_to_complex(doc["decoders"][str(q)]) for q in range(1, n + 1)
    )
    return CodeSpec(
        n=n,
        dimension=int(doc["K"]),
        distance=int(doc["d"]),
        register_qubits=tuple(doc["register_qubits"]),
        syndrome_qubits=tuple(doc["syndrome_qubits"]),
        logical_basis=tuple(doc["logical_basis"]),
        codewords=codewords,
        encoder=_pairs_to_complex(doc["encoder"]),
        decoders=decoders,
    )


def codeword_orthonormality_deviation(code: CodeSpec) -> float:
    """max_bc |<phi_b|phi_c> - delta_bc| over all codeword pairs."""
    g = np.array(
        [
            [np.vdot(a.amplitudes, b.amplitudes) for b in code.codewords]
            for a in code.codewords
        ]
    )
    return float(np.max(np.abs(g - np.eye(code.dimension))))
