"""Shared generators and independent oracles for the test suite."""

import math

import numpy as np

from horizon_teleport import DilatonParams, UnruhMode, make_x_state

SQRT2 = math.sqrt(2.0)

# The three initial states used by the built-in figure presets.
FIG1 = (0.0, 0.5, 0.5, 0.0, 0.0, 0.5)
FIG2 = (SQRT2 - 1.0, 0.5, (3.0 - 2.0 * SQRT2) / 2.0, 0.0, 0.0, (SQRT2 - 1.0) / 2.0)
FIG3 = (
    (SQRT2 - 1.0) / 2.0,
    SQRT2 / 2.0,
    (3.0 - 2.0 * SQRT2) / 2.0,
    0.0,
    0.0,
    (SQRT2 - 1.0) / 4.0,
)


def random_x_state(rng, ensure_conditions=False):
    """Random valid X-state; optionally inside the closed form's validity set."""
    while True:
        r11, r22, r33, r44 = rng.dirichlet(np.ones(4))
        if ensure_conditions and r22 + r33 < 0.5:
            continue
        r23_max = math.sqrt(r22 * r33)
        r14_max = math.sqrt(r11 * r44)
        r23_min = 0.0
        if ensure_conditions:
            r23_min = (1.0 - r22 - r33) / 2.0
            if r23_min > r23_max:
                continue
        return make_x_state(
            r11,
            r22,
            r33,
            r44,
            rng.uniform(0.0, r14_max),
            rng.uniform(r23_min, r23_max),
        )


def random_density_matrix(rng, dim=4):
    """Random full-rank density matrix of the given dimension."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_physics(rng):
    """Random (DilatonParams, UnruhMode, p) draw over the sweep ranges."""
    mass = rng.uniform(0.5, 2.0)
    alpha = rng.uniform(0.0, 0.99 * mass)
    omega = rng.uniform(0.5, 2.0)
    return (
        DilatonParams(mass, alpha, omega),
        UnruhMode(rng.uniform(0.0, 1.0)),
        rng.uniform(0.0, 1.0),
    )


# Columns are the magic-basis kets; in this basis the maximal overlap with
# any maximally entangled state is the top eigenvalue of the real part,
# giving a closed-form cross-check for the numeric maximization.
MAGIC_BASIS = (
    np.array(
        [
            [1, 0, 0, 1],
            [1j, 0, 0, -1j],
            [0, 1j, 1j, 0],
            [0, 1, -1, 0],
        ],
        dtype=complex,
    ).T
    / SQRT2
)


def magic_basis_fef(m):
    mm = MAGIC_BASIS.conj().T @ np.asarray(m, dtype=complex) @ MAGIC_BASIS
    sym = (mm.real + mm.real.T) / 2.0
    return float(np.linalg.eigvalsh(sym).max())


def partial_transpose_b(m):
    """Partial transpose over the second qubit of a 4x4 matrix."""
    return (
        np.asarray(m, dtype=complex)
        .reshape(2, 2, 2, 2)
        .transpose(0, 3, 2, 1)
        .reshape(4, 4)
    )


def series_delta_alpha(x, mass, omega, q_r, p, alpha0):
    """Expanded change expression for the fraction between alpha0 and 0.

    Written out term by term as an independent oracle; algebraically equal
    to differencing the closed form at the two dilaton values.
    """
    ql2 = 1.0 - q_r * q_r
    qr2 = q_r * q_r
    e_m = math.exp(8.0 * math.pi * omega * mass)
    inv_cosh0 = (math.exp(-8.0 * math.pi * omega * mass) + 1.0) ** -0.5
    inv_cosh_a = (math.exp(-8.0 * math.pi * omega * (mass - alpha0)) + 1.0) ** -0.5
    term1 = 2.0 * math.sqrt(1.0 - p) * q_r * x.r23 * (inv_cosh_a - inv_cosh0)
    bracket = (
        -x.r11
        - ql2 * x.r22
        + p * qr2 * x.r44
        - p * (x.r33 + x.r44)
        + (1.0 - p) * (x.r33 + ql2 * x.r44)
    )
    term2 = bracket / (math.exp(-8.0 * math.pi * omega * (mass - alpha0)) + 1.0)
    term3 = (
        e_m
        * (
            x.r11
            + ql2 * x.r22
            - (1.0 - p) * (x.r33 + ql2 * x.r44)
            + p * (x.r33 + x.r44 - qr2 * x.r44)
        )
        / (e_m + 1.0)
    )
    return 0.5 * (term1 + term2 + term3)
