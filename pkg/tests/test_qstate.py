import math

import numpy as np
import pytest

from horizon_teleport import (
    ConventionError,
    DimensionError,
    PositivityError,
    ShapeError,
    TraceError,
    is_entangled_x,
    make_x_state,
    matrix_to_x,
    partial_trace,
    validate,
    x_to_matrix,
)
from util import FIG1, FIG2, FIG3, partial_transpose_b, random_density_matrix, random_x_state


def test_bell_like_state_is_valid():
    x = make_x_state(*FIG1)
    assert x.r22 == x.r33 == x.r23 == 0.5


def test_pure_basis_state_is_valid():
    x = make_x_state(1, 0, 0, 0, 0, 0)
    assert x.r11 == 1.0


def test_excess_coherence_fails_positivity():
    # central block eigenvalue 1/2 - 0.6 < 0
    with pytest.raises(PositivityError):
        make_x_state(0, 0.5, 0.5, 0, 0, 0.6)


def test_trace_violation():
    with pytest.raises(TraceError):
        make_x_state(0.2, 0.5, 0.5, 0, 0, 0)


def test_negative_population():
    with pytest.raises(PositivityError):
        make_x_state(-0.2, 0.7, 0.5, 0, 0, 0)


def test_boundary_states_from_presets_are_valid():
    # FIG2 sits exactly on the r22*r33 = r23^2 boundary.
    for fields in (FIG1, FIG2, FIG3):
        x = make_x_state(*fields)
        assert validate(x_to_matrix(x)).is_valid


def test_x_to_matrix_layout():
    m = x_to_matrix(make_x_state(*FIG1))
    assert m[0, 3] == 0 and m[3, 0] == 0
    assert m[1, 2] == -0.5 and m[2, 1] == -0.5
    assert m.shape == (4, 4) and m.dtype == complex


def test_x_to_matrix_diagonal_when_coherences_vanish():
    m = x_to_matrix(make_x_state(0.1, 0.2, 0.3, 0.4, 0, 0))
    assert np.allclose(m, np.diag([0.1, 0.2, 0.3, 0.4]))


def test_matrix_round_trip_random():
    rng = np.random.default_rng(11)
    for _ in range(100):
        x = random_x_state(rng)
        back = matrix_to_x(x_to_matrix(x))
        assert np.allclose(x.as_tuple(), back.as_tuple(), atol=1e-15)


def test_matrix_to_x_rejects_non_x_entries():
    m = x_to_matrix(make_x_state(*FIG1)).copy()
    m[0, 2] = 0.1
    with pytest.raises(ShapeError):
        matrix_to_x(m)


def test_matrix_to_x_rejects_positive_offdiagonal():
    m = np.diag([0.25, 0.25, 0.25, 0.25]).astype(complex)
    m[1, 2] = m[2, 1] = 0.1
    with pytest.raises(ConventionError):
        matrix_to_x(m)


def test_matrix_to_x_rejects_complex_offdiagonal():
    m = np.diag([0.25, 0.25, 0.25, 0.25]).astype(complex)
    m[1, 2] = -0.1j
    m[2, 1] = 0.1j
    with pytest.raises(ConventionError):
        matrix_to_x(m)


def test_matrix_to_x_rejects_wrong_shape():
    with pytest.raises(ShapeError):
        matrix_to_x(np.eye(3) / 3)


def test_partial_trace_bell_marginal():
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1 / math.sqrt(2)
    rho = np.outer(bell, bell.conj())
    reduced = partial_trace(rho, [2, 2], keep=[1])
    assert np.allclose(reduced, np.eye(2) / 2)


def test_partial_trace_keep_all_is_identity():
    rng = np.random.default_rng(3)
    rho = random_density_matrix(rng, 8)
    out = partial_trace(rho, [2, 2, 2], keep=[0, 1, 2])
    assert np.allclose(out, rho)


def test_partial_trace_keep_order_permutes():
    rho_a = random_density_matrix(np.random.default_rng(4), 2)
    rho_b = random_density_matrix(np.random.default_rng(5), 3)
    joint = np.kron(rho_a, rho_b)
    swapped = partial_trace(joint, [2, 3], keep=[1, 0])
    assert np.allclose(swapped, np.kron(rho_b, rho_a))


def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(12)
    for _ in range(100):
        rho = random_density_matrix(rng, 12)
        out = partial_trace(rho, [2, 3, 2], keep=[0, 2])
        assert abs(np.trace(out) - np.trace(rho)) <= 1e-12


def test_partial_trace_sequential_equals_joint():
    rng = np.random.default_rng(13)
    for _ in range(25):
        rho = random_density_matrix(rng, 16)
        joint = partial_trace(rho, [2, 2, 2, 2], keep=[1, 3])
        step1 = partial_trace(rho, [2, 2, 2, 2], keep=[1, 2, 3])
        step2 = partial_trace(step1, [2, 2, 2], keep=[0, 2])
        assert np.abs(joint - step2).max() <= 1e-12


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(6) / 6, [2, 2], keep=[0])
    with pytest.raises(DimensionError):
        partial_trace(np.eye(4) / 4, [2, 2], keep=[2])
    with pytest.raises(DimensionError):
        partial_trace(np.eye(4) / 4, [2, 2], keep=[0, 0])


def test_validate_maximally_mixed():
    report = validate(np.eye(4, dtype=complex) / 4)
    assert report.is_valid
    assert report.min_eigenvalue == pytest.approx(0.25, abs=1e-14)


def test_validate_trace_deficit():
    report = validate(np.diag([0.4, 0.5, 0.0, 0.0]).astype(complex))
    assert not report.is_valid
    assert report.trace_error == pytest.approx(0.1, abs=1e-14)


def test_validate_never_raises_on_garbage():
    assert not validate(np.zeros((2, 3))).is_valid


def test_is_entangled_examples():
    assert is_entangled_x(make_x_state(*FIG1))
    assert is_entangled_x(make_x_state(*FIG3))  # r11*r44 = 0 < r23^2
    assert not is_entangled_x(make_x_state(0.25, 0.25, 0.25, 0.25, 0, 0))


def test_is_entangled_matches_partial_transpose():
    # Exact two-qubit equivalence with the partial-transpose eigenvalue sign.
    rng = np.random.default_rng(14)
    for _ in range(200):
        x = random_x_state(rng)
        eigs = np.linalg.eigvalsh(partial_transpose_b(x_to_matrix(x)))
        assert is_entangled_x(x) == bool(eigs.min() < 0)
