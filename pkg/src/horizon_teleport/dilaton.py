"""Dilaton-black-hole mode structure and the horizon map on shared states.

A receiver hovering outside the event horizon of a dilaton black hole of
mass M and dilaton parameter alpha (< M) sees the global vacuum as a
thermal two-mode squeezed state of particle/antiparticle modes, with mixing
angle r fixed by

    cos r = [exp(-8 pi omega (M - alpha)) + 1]^(-1/2),
    sin r = [exp(+8 pi omega (M - alpha)) + 1]^(-1/2),

and Hawking temperature T = 1/(8 pi (M - alpha)).  Geometric units
(G = c = hbar = k_B = 1) throughout; all quantities are dimensionless.

Excitations are created in a weighted combination of right/left modes with
weights (q_r, q_l); q_r = 1 is the optimal choice.  The horizon map takes
the two-qubit state shared with an inertial sender to the state of the
sender plus the particle mode outside the horizon, in closed form and by
an explicit Fock-space construction used as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .qstate import XState, matrix_to_x, partial_trace, x_to_matrix

_NORM_TOL = 1e-14


@dataclass(frozen=True)
class DilatonParams:
    """Black-hole inputs: mass, dilaton parameter and probed mode frequency."""

    mass: float
    alpha: float
    omega: float

    def __post_init__(self):
        if not (
            math.isfinite(self.mass)
            and math.isfinite(self.alpha)
            and math.isfinite(self.omega)
        ):
            raise DomainError("mass, alpha and omega must be finite")
        if self.mass <= 0.0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if not 0.0 <= self.alpha < self.mass:
            raise DomainError(
                f"dilaton parameter must satisfy 0 <= alpha < mass, "
                f"got alpha={self.alpha}, mass={self.mass}"
            )
        if self.omega <= 0.0:
            raise DomainError(f"mode frequency must be positive, got {self.omega}")

    @property
    def charge(self) -> float:
        """Black-hole charge, Q = sqrt(2 M alpha)."""
        return math.sqrt(2.0 * self.mass * self.alpha)

    @property
    def temperature(self) -> float:
        """Hawking temperature, 1 / (8 pi (M - alpha))."""
        return 1.0 / (8.0 * math.pi * (self.mass - self.alpha))


@dataclass(frozen=True)
class ModeCoefficients:
    """Fermionic mixing coefficients (cos r, sin r) outside the horizon."""

    cos_r: float
    sin_r: float

    def __post_init__(self):
        if not (0.0 <= self.cos_r <= 1.0 and 0.0 <= self.sin_r <= 1.0):
            raise DomainError(
                f"coefficients must lie in [0, 1], got ({self.cos_r}, {self.sin_r})"
            )
        norm = self.cos_r * self.cos_r + self.sin_r * self.sin_r
        if abs(norm - 1.0) > _NORM_TOL:
            raise DomainError(f"cos_r^2 + sin_r^2 = {norm!r}, expected 1")


@dataclass(frozen=True)
class UnruhMode:
    """Right/left excitation weights.  q_l is derived, never stored."""

    q_r: float

    def __post_init__(self):
        if not (math.isfinite(self.q_r) and 0.0 <= self.q_r <= 1.0):
            raise DomainError(f"q_r must lie in [0, 1], got {self.q_r}")

    @property
    def q_l(self) -> float:
        return math.sqrt(1.0 - self.q_r * self.q_r)


def hawking_temperature(dp: DilatonParams) -> float:
    """Hawking temperature of the hole; strictly increasing in alpha."""
    return dp.temperature


def mode_coefficients(dp: DilatonParams) -> ModeCoefficients:
    """Mixing coefficients for the given hole and mode frequency.

    The exponent 8 pi omega (M - alpha) can exceed 700, where exp would
    overflow; both coefficients are computed from exp(-x) (x > 0) so every
    intermediate stays representable for any valid input.
    """
    x = 8.0 * math.pi * dp.omega * (dp.mass - dp.alpha)
    emx = math.exp(-x)
    denom = math.sqrt(1.0 + emx)
    return ModeCoefficients(1.0 / denom, math.exp(-x / 2.0) / denom)


# 16-dimensional Fock basis |m n m' n'> with, in order, the particle mode
# outside, antiparticle mode inside, antiparticle mode outside and particle
# mode inside the horizon; basis index = 8m + 4n + 2m' + n'.


def kruskal_vacuum(mc: ModeCoefficients) -> np.ndarray:
    """Global vacuum expanded over the horizon modes (norm 1)."""
    c, s = mc.cos_r, mc.sin_r
    vec = np.zeros(16, dtype=complex)
    vec[0b0000] = c * c
    vec[0b0011] = -s * c
    vec[0b1100] = s * c
    vec[0b1111] = -s * s
    return vec


def kruskal_one(mc: ModeCoefficients, um: UnruhMode) -> np.ndarray:
    """Global one-particle excitation with right/left weights (norm 1)."""
    c, s = mc.cos_r, mc.sin_r
    vec = np.zeros(16, dtype=complex)
    vec[0b1000] = um.q_r * c
    vec[0b1011] = -um.q_r * s
    vec[0b1101] = um.q_l * s
    vec[0b0001] = um.q_l * c
    return vec


def bob_horizon_transform(x: XState, mc: ModeCoefficients, um: UnruhMode) -> XState:
    """Closed-form horizon map onto the sender + outside-particle pair.

    Populations mix through cos^2 r, sin^2 r and the excitation weights;
    both coherences shrink by cos r * q_r.  Trace and positivity are
    preserved for every valid input.
    """
    c2 = mc.cos_r * mc.cos_r
    s2 = mc.sin_r * mc.sin_r
    qr2 = um.q_r * um.q_r
    ql2 = um.q_l * um.q_l
    return XState(
        r11=c2 * (x.r11 + ql2 * x.r22),
        r22=s2 * x.r11 + c2 * qr2 * x.r22 + s2 * x.r22,
        r33=c2 * (x.r33 + ql2 * x.r44),
        r44=s2 * x.r33 + c2 * qr2 * x.r44 + s2 * x.r44,
        r14=mc.cos_r * um.q_r * x.r14,
        r23=mc.cos_r * um.q_r * x.r23,
    )


def _substitute_receiver_modes(
    x: XState, sender_kets: np.ndarray, receiver_kets: np.ndarray
) -> np.ndarray:
    """Rewrite each |a b><a' b'| term with the given basis substitutions."""
    rows = np.stack(
        [
            np.kron(sender_kets[a], receiver_kets[b])
            for a in range(2)
            for b in range(2)
        ]
    )
    return np.einsum("ia,ij,jb->ab", rows, x_to_matrix(x), rows.conj())


def bob_horizon_transform_bruteforce(
    x: XState, mc: ModeCoefficients, um: UnruhMode
) -> XState:
    """Full Fock-space construction of the horizon map.

    Substitutes the vacuum/one-particle expansions for the receiver's basis
    states, building the 2 x 16 = 32-dimensional matrix over
    sender (x) outside-particle (x) inside-antiparticle (x)
    outside-antiparticle (x) inside-particle, then traces out everything
    the receiver cannot access.  Serves as the oracle for
    :func:`bob_horizon_transform`; a non-X-shaped reduction raises
    ShapeError, which would indicate a construction bug.
    """
    sender = np.eye(2, dtype=complex)
    receiver = np.stack([kruskal_vacuum(mc), kruskal_one(mc, um)])
    full = _substitute_receiver_modes(x, sender, receiver)
    reduced = partial_trace(full, [2, 2, 2, 2, 2], keep=[0, 1])
    return matrix_to_x(reduced)


def combined_state(x: XState, mc: ModeCoefficients, um: UnruhMode, p: float) -> XState:
    """Horizon map combined with sender-side amplitude damping of strength p.

    Population sums obey r11'+r22' = r11+r22+p(r33+r44) and
    r33'+r44' = (1-p)(r33+r44); both coherences shrink by
    sqrt(1-p) cos r q_r.  At p = 0 this reduces to
    :func:`bob_horizon_transform`.
    """
    if not (math.isfinite(p) and 0.0 <= p <= 1.0):
        raise DomainError(f"damping magnitude must lie in [0, 1], got {p}")
    c2 = mc.cos_r * mc.cos_r
    s2 = mc.sin_r * mc.sin_r
    qr2 = um.q_r * um.q_r
    ql2 = um.q_l * um.q_l
    damp = math.sqrt(1.0 - p)
    return XState(
        r11=c2 * (x.r11 + ql2 * x.r22) + p * c2 * (x.r33 + ql2 * x.r44),
        r22=s2 * x.r11
        + c2 * qr2 * x.r22
        + s2 * x.r22
        + p * (s2 * x.r33 + c2 * qr2 * x.r44 + s2 * x.r44),
        r33=(1.0 - p) * c2 * (x.r33 + ql2 * x.r44),
        r44=(1.0 - p) * (s2 * x.r33 + c2 * qr2 * x.r44 + s2 * x.r44),
        r14=damp * mc.cos_r * um.q_r * x.r14,
        r23=damp * mc.cos_r * um.q_r * x.r23,
    )


def combined_state_bruteforce(
    x: XState, mc: ModeCoefficients, um: UnruhMode, p: float
) -> XState:
    """Oracle for :func:`combined_state` via one 64-dimensional pipeline.

    Factor order: sender (x) environment (x) outside-particle (x)
    inside-antiparticle (x) outside-antiparticle (x) inside-particle.  The
    sender is dilated with a one-excitation environment (|1>|0> ->
    sqrt(1-p)|1>|0> + sqrt(p)|0>|1>), the receiver's basis states are
    replaced by their horizon expansions, and everything but the sender and
    the outside particle mode is traced out.
    """
    if not (math.isfinite(p) and 0.0 <= p <= 1.0):
        raise DomainError(f"damping magnitude must lie in [0, 1], got {p}")
    # Sender (x) environment kets, index 2a + e.
    sender_env = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, math.sqrt(p), math.sqrt(1.0 - p), 0.0],
        ],
        dtype=complex,
    )
    receiver = np.stack([kruskal_vacuum(mc), kruskal_one(mc, um)])
    full = _substitute_receiver_modes(x, sender_env, receiver)
    reduced = partial_trace(full, [2, 2, 2, 2, 2, 2], keep=[0, 2])
    return matrix_to_x(reduced)
