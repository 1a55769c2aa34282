"""Single-qubit error operations and their expansion over {E, X, Z, Y}.

An error is a phased rotation exp(i*alpha) * exp(-i*theta/2 * axis.sigma)
applied to one known qubit.  Expanding it over the Pauli basis gives the four
branch coefficients that a decoder turns into syndrome amplitudes:

    c00 =  exp(i alpha) cos(theta/2)          (identity branch,  |00>)
    c01 = -i exp(i alpha) sin(theta/2) n_x    (bit flip,         |01>)
    c10 = -i exp(i alpha) sin(theta/2) n_z    (phase flip,       |10>)
    c11 = -i exp(i alpha) sin(theta/2) n_y    (bit+phase flip,   |11>)
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statevec import E2, X, Y, Z, PureState

AXIS_BY_TYPE = {"X": (1.0, 0.0, 0.0), "Y": (0.0, 1.0, 0.0), "Z": (0.0, 0.0, 1.0)}

AXIS_NORM_ATOL = 1e-12


@dataclass(frozen=True)
class ErrorSpec:
    """A known-location error: location, global phase, angle, rotation axis."""

    location: int
    alpha: float
    theta: float
    axis: tuple[float, float, float]

    def __post_init__(self):
        if not isinstance(self.location, (int, np.integer)) or self.location < 1:
            raise ValueError(f"location must be a positive integer, got {self.location}")
        ax = tuple(float(c) for c in self.axis)
        if len(ax) != 3:
            raise ValueError("axis must have three components")
        if abs(np.linalg.norm(ax) - 1.0) > AXIS_NORM_ATOL:
            raise ValueError(f"axis must be a unit vector, got norm {np.linalg.norm(ax)!r}")
        object.__setattr__(self, "axis", ax)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "location", int(self.location))

    @classmethod
    def typed(cls, location: int, kind: str, theta: float, alpha: float = 0.0) -> "ErrorSpec":
        """Rotation about the x, y, or z axis ("X-type" etc.)."""
        if kind not in AXIS_BY_TYPE:
            raise ValueError(f"kind must be one of {sorted(AXIS_BY_TYPE)}, got {kind!r}")
        return cls(location, alpha, theta, AXIS_BY_TYPE[kind])

    @classmethod
    def pauli(cls, location: int, label: str) -> "ErrorSpec":
        """Exact Pauli error. alpha=pi/2, theta=pi makes the unitary equal X/Y/Z."""
        if label == "E":
            return cls(location, 0.0, 0.0, (0.0, 0.0, 1.0))
        if label in AXIS_BY_TYPE:
            return cls(location, np.pi / 2, np.pi, AXIS_BY_TYPE[label])
        raise ValueError(f"label must be one of E, X, Y, Z, got {label!r}")

    def to_json_dict(self) -> dict:
        return {
            "location": self.location,
            "alpha": self.alpha,
            "theta": self.theta,
            "axis": list(self.axis),
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ErrorSpec":
        return cls(
            location=int(doc["location"]),
            alpha=float(doc["alpha"]),
            theta=float(doc["theta"]),
            axis=tuple(float(c) for c in doc["axis"]),
        )


@dataclass(frozen=True)
class PauliExpansion:
    """Branch coefficients of an error over (E, X, Z, Y), in syndrome order."""

    c00: complex
    c01: complex
    c10: complex
    c11: complex

    def coefficients(self) -> np.ndarray:
        return np.array([self.c00, self.c01, self.c10, self.c11], dtype=complex)


def error_unitary(spec: ErrorSpec) -> np.ndarray:
    """2x2 unitary exp(i alpha) * exp(-i theta/2 axis.sigma)."""
    nx, ny, nz = spec.axis
    n_dot_sigma = nx * X + ny * Y + nz * Z
    half = spec.theta / 2.0
    return np.exp(1j * spec.alpha) * (np.cos(half) * E2 - 1j * np.sin(half) * n_dot_sigma)


def pauli_expand(spec: ErrorSpec) -> PauliExpansion:
    """Closed-form branch coefficients; always satisfies sum |c|^2 = 1."""
    nx, ny, nz = spec.axis
    phase = np.exp(1j * spec.alpha)
    half = spec.theta / 2.0
    s = np.sin(half)
    return PauliExpansion(
        c00=phase * np.cos(half),
        c01=-1j * phase * s * nx,
        c10=-1j * phase * s * nz,
        c11=-1j * phase * s * ny,
    )


def predicted_syndrome(spec: ErrorSpec) -> PureState:
    """Two-qubit syndrome state c00|00> + c01|01> + c10|10> + c11|11>."""
    return PureState(2, pauli_expand(spec).coefficients())
