"""Tests for the rotation error model and its Pauli-branch expansion."""
import numpy as np
import pytest
from scipy.linalg import expm

from cws552.error_model import (
    ErrorSpec,
    error_unitary,
    pauli_expand,
    predicted_syndrome,
)
from cws552.statevec import E2, X, Y, Z


def oracle_unitary(spec):
    """Independent route: matrix exponential of the generator."""
    nx, ny, nz = spec.axis
    return np.exp(1j * spec.alpha) * expm(-1j * spec.theta / 2 * (nx * X + ny * Y + nz * Z))


def random_spec(rng, location=1):
    axis = rng.normal(size=3)
    axis = axis / np.linalg.norm(axis)
    return ErrorSpec(
        location=location,
        alpha=float(rng.uniform(0, 2 * np.pi)),
        theta=float(rng.uniform(-np.pi, np.pi)),
        axis=tuple(axis),
    )


def test_zero_angle_is_identity():
    spec = ErrorSpec(1, 0.0, 0.0, (0.0, 0.0, 1.0))
    np.testing.assert_allclose(error_unitary(spec), E2)


def test_pi_rotation_about_x():
    spec = ErrorSpec(1, 0.0, np.pi, (1.0, 0.0, 0.0))
    np.testing.assert_allclose(error_unitary(spec), -1j * X, atol=1e-12)


def test_phased_pi_rotation_is_exact_pauli():
    """alpha = pi/2 with theta = pi lands exactly on the Pauli matrix."""
    for label, mat in (("X", X), ("Y", Y), ("Z", Z)):
        spec = ErrorSpec.pauli(1, label)
        np.testing.assert_allclose(error_unitary(spec), mat, atol=1e-12)
        np.testing.assert_allclose(oracle_unitary(spec), mat, atol=1e-12)
    np.testing.assert_allclose(error_unitary(ErrorSpec.pauli(1, "E")), E2)


def test_unitary_matches_expm_oracle():
    rng = np.random.default_rng(101)
    for _ in range(50):
        spec = random_spec(rng)
        np.testing.assert_allclose(error_unitary(spec), oracle_unitary(spec), atol=1e-12)


def test_expansion_reconstructs_unitary():
    rng = np.random.default_rng(103)
    for _ in range(100):
        spec = random_spec(rng)
        c = pauli_expand(spec)
        rebuilt = c.c00 * E2 + c.c01 * X + c.c10 * Z + c.c11 * Y
        np.testing.assert_allclose(rebuilt, error_unitary(spec), atol=1e-12)


def test_expansion_is_normalized():
    rng = np.random.default_rng(107)
    for _ in range(100):
        coeffs = pauli_expand(random_spec(rng)).coefficients()
        assert abs(np.sum(np.abs(coeffs) ** 2) - 1.0) < 1e-12


def test_z_quarter_turn_coefficients():
    spec = ErrorSpec.typed(1, "Z", np.pi / 2)
    c = pauli_expand(spec)
    np.testing.assert_allclose(c.c00, np.cos(np.pi / 4), atol=1e-15)
    np.testing.assert_allclose(c.c10, -1j * np.sin(np.pi / 4), atol=1e-15)
    assert abs(c.c01) < 1e-15 and abs(c.c11) < 1e-15


def test_identity_coefficients():
    c = pauli_expand(ErrorSpec(2, 0.0, 0.0, (0.0, 1.0, 0.0)))
    np.testing.assert_allclose(c.coefficients(), [1, 0, 0, 0], atol=1e-15)


def test_predicted_syndrome_layout():
    theta = 1.1
    state = predicted_syndrome(ErrorSpec.typed(3, "Y", theta))
    expected = np.array([np.cos(theta / 2), 0.0, 0.0, -1j * np.sin(theta / 2)])
    np.testing.assert_allclose(state.amplitudes, expected, atol=1e-15)
    assert abs(state.norm() - 1.0) < 1e-12


def test_predicted_syndrome_generic_axis_norm():
    rng = np.random.default_rng(109)
    for _ in range(20):
        state = predicted_syndrome(random_spec(rng))
        assert abs(state.norm() - 1.0) < 1e-12


def test_rejects_non_unit_axis():
    with pytest.raises(ValueError, match="unit"):
        ErrorSpec(1, 0.0, 1.0, (1.0, 1.0, 0.0))


def test_rejects_bad_location():
    with pytest.raises(ValueError, match="location"):
        ErrorSpec(0, 0.0, 1.0, (1.0, 0.0, 0.0))


def test_typed_rejects_unknown_kind():
    with pytest.raises(ValueError):
        ErrorSpec.typed(1, "Q", 0.5)


def test_json_round_trip():
    spec = ErrorSpec(4, 0.3, 1.9, (0.6, 0.0, 0.8))
    doc = spec.to_json_dict()
    assert doc == {"location": 4, "alpha": 0.3, "theta": 1.9, "axis": [0.6, 0.0, 0.8]}
    assert ErrorSpec.from_json_dict(doc) == spec
