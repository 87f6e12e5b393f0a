import math

import numpy as np
import pytest

from horizon_teleport import (
    DilatonParams,
    DomainError,
    ModeCoefficients,
    UnruhMode,
    amplitude_damp,
    bob_horizon_transform,
    bob_horizon_transform_bruteforce,
    combined_state,
    combined_state_bruteforce,
    hawking_temperature,
    kruskal_one,
    kruskal_vacuum,
    make_x_state,
    mode_coefficients,
    validate,
    x_to_matrix,
)
from util import FIG1, FIG2, random_physics, random_x_state


def test_params_reject_alpha_at_or_above_mass():
    with pytest.raises(DomainError):
        DilatonParams(1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        DilatonParams(1.0, 1.5, 1.0)
    with pytest.raises(DomainError):
        DilatonParams(1.0, -0.1, 1.0)


def test_charge_relation():
    dp = DilatonParams(2.0, 0.5, 1.0)
    assert dp.charge == pytest.approx(math.sqrt(2.0 * 2.0 * 0.5))


def test_hawking_temperature_values():
    assert hawking_temperature(DilatonParams(1.0, 0.0, 1.0)) == pytest.approx(
        1.0 / (8.0 * math.pi), rel=1e-15
    )
    assert hawking_temperature(DilatonParams(1.0, 0.5, 1.0)) == pytest.approx(
        1.0 / (4.0 * math.pi), rel=1e-15
    )
    assert hawking_temperature(DilatonParams(1.0, 0.9, 1.0)) > hawking_temperature(
        DilatonParams(1.0, 0.1, 1.0)
    )


def test_mode_coefficients_flat_value():
    mc = mode_coefficients(DilatonParams(1.0, 0.0, 1.0))
    assert mc.cos_r**2 == pytest.approx(1.0 / (math.exp(-8.0 * math.pi) + 1.0), abs=1e-15)
    assert mc.sin_r**2 == pytest.approx(1.2e-11, rel=0.05)


def test_mode_coefficients_near_extremal_limit():
    mc = mode_coefficients(DilatonParams(1.0, 1.0 - 1e-12, 1.0))
    assert mc.cos_r**2 == pytest.approx(0.5, abs=1e-10)
    assert mc.sin_r**2 == pytest.approx(0.5, abs=1e-10)


def test_mode_coefficients_reference_point():
    mc = mode_coefficients(DilatonParams(1.0, 0.9, 1.0))
    assert mc.cos_r**2 == pytest.approx(0.9250671619609696, rel=1e-14)
    assert mc.sin_r**2 == pytest.approx(0.0749328380390304, rel=1e-12)
    assert mc.cos_r**2 + mc.sin_r**2 == pytest.approx(1.0, abs=1e-15)


def test_mode_coefficients_stable_at_huge_exponent():
    # 8*pi*omega*(M - alpha) far beyond exp overflow must not warn or blow up.
    with np.errstate(all="raise"):
        mc = mode_coefficients(DilatonParams(1e6, 0.0, 1.0))
    assert mc.cos_r == 1.0 and mc.sin_r == 0.0
    # exponent ~754 overflows a naive exp(+x); the factored form stays finite
    mid = mode_coefficients(DilatonParams(30.0, 0.0, 1.0))
    assert 0.0 < mid.sin_r < 1e-150


def test_normalization_identity_over_grid():
    # |cos^2 + sin^2 - 1| <= 1e-14 over ~10^4 log-spaced parameter triples.
    masses = np.logspace(-2, 3, 22)
    omegas = np.logspace(-2, 3, 22)
    fractions = np.linspace(0.0, 0.999, 21)
    worst = 0.0
    for mass in masses:
        for omega in omegas:
            for frac in fractions:
                mc = mode_coefficients(DilatonParams(mass, frac * mass, omega))
                worst = max(worst, abs(mc.cos_r**2 + mc.sin_r**2 - 1.0))
    assert worst <= 1e-14


def test_coefficient_ranges():
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    rng = np.random.default_rng(21)
    for _ in range(200):
        dp, _, _ = random_physics(rng)
        mc = mode_coefficients(dp)
        assert inv_sqrt2 < mc.cos_r <= 1.0
        assert 0.0 <= mc.sin_r < inv_sqrt2


def test_monotonicity_in_alpha_and_omega():
    cos_by_alpha = [
        mode_coefficients(DilatonParams(1.0, a, 1.0)).cos_r
        for a in np.linspace(0.0, 0.99, 50)
    ]
    assert all(b < a for a, b in zip(cos_by_alpha, cos_by_alpha[1:]))
    cos_by_omega = [
        mode_coefficients(DilatonParams(1.0, 0.5, w)).cos_r
        for w in np.linspace(0.5, 2.0, 20)
    ]
    assert all(b > a for a, b in zip(cos_by_omega, cos_by_omega[1:]))


def test_mode_coefficients_rejects_bad_pair():
    with pytest.raises(DomainError):
        ModeCoefficients(1.0, 0.5)


def test_unruh_mode_weights():
    um = UnruhMode(0.8)
    assert um.q_l == pytest.approx(0.6)
    with pytest.raises(DomainError):
        UnruhMode(1.2)


def test_kruskal_vacuum_amplitudes():
    flat = kruskal_vacuum(ModeCoefficients(1.0, 0.0))
    assert flat[0] == 1.0 and np.count_nonzero(flat) == 1

    inv = 1.0 / math.sqrt(2.0)
    sym = kruskal_vacuum(ModeCoefficients(inv, inv))
    assert sym[0b0000] == pytest.approx(0.5)
    assert sym[0b0011] == pytest.approx(-0.5)
    assert sym[0b1100] == pytest.approx(0.5)
    assert sym[0b1111] == pytest.approx(-0.5)

    rng = np.random.default_rng(22)
    for _ in range(50):
        dp, _, _ = random_physics(rng)
        vec = kruskal_vacuum(mode_coefficients(dp))
        assert np.vdot(vec, vec).real == pytest.approx(1.0, abs=1e-12)


def test_kruskal_one_amplitudes():
    right = kruskal_one(ModeCoefficients(1.0, 0.0), UnruhMode(1.0))
    assert right[0b1000] == 1.0 and np.count_nonzero(right) == 1

    left = kruskal_one(ModeCoefficients(1.0, 0.0), UnruhMode(0.0))
    assert left[0b0001] == 1.0 and np.count_nonzero(left) == 1

    rng = np.random.default_rng(23)
    for _ in range(50):
        dp, um, _ = random_physics(rng)
        vec = kruskal_one(mode_coefficients(dp), um)
        assert np.vdot(vec, vec).real == pytest.approx(1.0, abs=1e-12)


def test_horizon_transform_identity_limit():
    x = make_x_state(*FIG2)
    out = bob_horizon_transform(x, ModeCoefficients(1.0, 0.0), UnruhMode(1.0))
    assert np.allclose(out.as_tuple(), x.as_tuple(), atol=1e-15)


def test_horizon_transform_reference_point():
    mc = mode_coefficients(DilatonParams(1.0, 0.9, 1.0))
    out = bob_horizon_transform(make_x_state(*FIG1), mc, UnruhMode(1.0))
    # populations in the inner block are preserved for this state
    assert out.r22 == pytest.approx(0.5, abs=1e-15)
    assert out.r23 == pytest.approx(mc.cos_r * 0.5, rel=1e-15)
    assert out.r23 == pytest.approx(0.4809020591453549, rel=1e-14)


def test_horizon_transform_preserves_validity():
    rng = np.random.default_rng(24)
    for _ in range(200):
        x = random_x_state(rng)
        dp, um, _ = random_physics(rng)
        out = bob_horizon_transform(x, mode_coefficients(dp), um)
        report = validate(x_to_matrix(out))
        assert report.is_valid


def test_horizon_bruteforce_matches_closed_form():
    rng = np.random.default_rng(25)
    worst = 0.0
    for _ in range(100):
        x = random_x_state(rng)
        dp, um, _ = random_physics(rng)
        mc = mode_coefficients(dp)
        closed = np.array(bob_horizon_transform(x, mc, um).as_tuple())
        brute = np.array(bob_horizon_transform_bruteforce(x, mc, um).as_tuple())
        worst = max(worst, np.abs(closed - brute).max())
    assert worst <= 1e-10


def test_horizon_bruteforce_identity_limit():
    x = make_x_state(*FIG1)
    out = bob_horizon_transform_bruteforce(x, ModeCoefficients(1.0, 0.0), UnruhMode(1.0))
    assert np.allclose(out.as_tuple(), x.as_tuple(), atol=1e-15)


def test_horizon_bruteforce_preset_point():
    mc = mode_coefficients(DilatonParams(1.0, 0.9, 1.0))
    out = bob_horizon_transform_bruteforce(make_x_state(*FIG2), mc, UnruhMode(0.8))
    total = out.r11 + out.r22 + out.r33 + out.r44
    assert total == pytest.approx(1.0, abs=1e-12)


def test_combined_state_at_p_zero_matches_horizon_transform():
    rng = np.random.default_rng(26)
    for _ in range(50):
        x = random_x_state(rng)
        dp, um, _ = random_physics(rng)
        mc = mode_coefficients(dp)
        a = combined_state(x, mc, um, 0.0)
        b = bob_horizon_transform(x, mc, um)
        assert np.allclose(a.as_tuple(), b.as_tuple(), atol=1e-15)


def test_combined_state_commutes_with_sender_damping():
    # Sender-side damping and the receiver-side horizon map act on
    # different factors, so the composite is order independent.
    rng = np.random.default_rng(27)
    for _ in range(100):
        x = random_x_state(rng)
        dp, um, p = random_physics(rng)
        mc = mode_coefficients(dp)
        combined = np.array(combined_state(x, mc, um, p).as_tuple())
        damped_after = np.array(
            amplitude_damp(bob_horizon_transform(x, mc, um), p).as_tuple()
        )
        damped_before = np.array(
            bob_horizon_transform(amplitude_damp(x, p), mc, um).as_tuple()
        )
        assert np.abs(combined - damped_after).max() <= 1e-12
        assert np.abs(combined - damped_before).max() <= 1e-12


def test_combined_state_reference_point():
    mc = mode_coefficients(DilatonParams(1.0, 0.9, 1.0))
    out = combined_state(make_x_state(*FIG1), mc, UnruhMode(1.0), 0.4)
    assert out.r23 == pytest.approx(math.sqrt(0.6) * mc.cos_r * 0.5, rel=1e-15)
    assert out.r23 == pytest.approx(0.37251, abs=5e-6)


def test_combined_state_rejects_bad_p():
    mc = ModeCoefficients(1.0, 0.0)
    with pytest.raises(DomainError):
        combined_state(make_x_state(*FIG1), mc, UnruhMode(1.0), 1.5)


def test_combined_state_population_sums():
    rng = np.random.default_rng(28)
    for _ in range(100):
        x = random_x_state(rng)
        dp, um, p = random_physics(rng)
        out = combined_state(x, mode_coefficients(dp), um, p)
        assert out.r11 + out.r22 == pytest.approx(
            x.r11 + x.r22 + p * (x.r33 + x.r44), abs=1e-12
        )
        assert out.r33 + out.r44 == pytest.approx(
            (1.0 - p) * (x.r33 + x.r44), abs=1e-12
        )
        assert validate(x_to_matrix(out)).is_valid


def test_combined_bruteforce_matches_closed_form():
    rng = np.random.default_rng(29)
    worst = 0.0
    for _ in range(100):
        x = random_x_state(rng)
        dp, um, p = random_physics(rng)
        mc = mode_coefficients(dp)
        closed = np.array(combined_state(x, mc, um, p).as_tuple())
        brute = np.array(combined_state_bruteforce(x, mc, um, p).as_tuple())
        worst = max(worst, np.abs(closed - brute).max())
    assert worst <= 1e-10
