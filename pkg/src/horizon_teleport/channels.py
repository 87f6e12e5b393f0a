"""Sender-side decoherence and local filtering.

Amplitude damping relaxes the sender's excited level to the ground level
with probability p; local filtering applies the non-trace-preserving
operator diag(sqrt(1-ft), sqrt(ft)) to the sender and renormalizes,
succeeding with probability z1.  Both act on the first qubit only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ZeroProbabilityError
from .qstate import XState, matrix_to_x, partial_trace, x_to_matrix

# Success probabilities below this are round-off, not post-selection odds.
Z1_TOL = 1e-12


@dataclass(frozen=True)
class FilteredState:
    """Filtered state together with the post-selection success probability."""

    state: XState
    success_probability: float


def _check_unit_interval(name: str, value: float) -> float:
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {value}")
    return float(value)


def amplitude_damp(x: XState, p: float) -> XState:
    """Amplitude-damp the sender with magnitude p (trace preserving).

    Closed form of the single-excitation dilation followed by an
    environment trace: populations flow |1x> -> |0x| with weight p, both
    coherences shrink by sqrt(1-p).
    """
    p = _check_unit_interval("damping magnitude", p)
    damp = math.sqrt(1.0 - p)
    return XState(
        r11=x.r11 + p * x.r33,
        r22=x.r22 + p * x.r44,
        r33=(1.0 - p) * x.r33,
        r44=(1.0 - p) * x.r44,
        r14=damp * x.r14,
        r23=damp * x.r23,
    )


def amplitude_damp_bruteforce(x: XState, p: float) -> XState:
    """Dilation oracle for :func:`amplitude_damp`.

    Builds the sender (x) environment (x) receiver state explicitly
    (|1>|0> -> sqrt(1-p)|1>|0> + sqrt(p)|0>|1> on the sender-environment
    pair) and traces out the environment.
    """
    p = _check_unit_interval("damping magnitude", p)
    sender_env = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, math.sqrt(p), math.sqrt(1.0 - p), 0.0],
        ],
        dtype=complex,
    )
    receiver = np.eye(2, dtype=complex)
    rows = np.stack(
        [
            np.kron(sender_env[a], receiver[b])
            for a in range(2)
            for b in range(2)
        ]
    )
    full = np.einsum("ia,ij,jb->ab", rows, x_to_matrix(x), rows.conj())
    return matrix_to_x(partial_trace(full, [2, 2, 2], keep=[0, 2]))


def filter_operator(ft: float) -> np.ndarray:
    """The 2x2 filtering operator diag(sqrt(1-ft), sqrt(ft))."""
    ft = _check_unit_interval("filter strength", ft)
    return np.array([[math.sqrt(1.0 - ft), 0.0], [0.0, math.sqrt(ft)]])


def local_filter(x: XState, ft: float) -> FilteredState:
    """Filter the sender with strength ft and renormalize.

    The unnormalized trace z1 = (1-ft)(r11+r22) + ft(r33+r44) is the
    probability that post-selection succeeds; it is reported alongside the
    state rather than discarded, because the operation is probabilistic.
    Raises ZeroProbabilityError when the filter annihilates the support
    (z1 at or below round-off).
    """
    ft = _check_unit_interval("filter strength", ft)
    z1 = (1.0 - ft) * (x.r11 + x.r22) + ft * (x.r33 + x.r44)
    if z1 <= Z1_TOL:
        raise ZeroProbabilityError(
            f"filter strength {ft} annihilates the state (z1={z1!r})"
        )
    cross = math.sqrt(ft * (1.0 - ft))
    state = XState(
        r11=(1.0 - ft) * x.r11 / z1,
        r22=(1.0 - ft) * x.r22 / z1,
        r33=ft * x.r33 / z1,
        r44=ft * x.r44 / z1,
        r14=cross * x.r14 / z1,
        r23=cross * x.r23 / z1,
    )
    return FilteredState(state=state, success_probability=float(z1))
