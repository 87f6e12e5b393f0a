"""Fully entangled fraction and teleportation fidelity.

The standard teleportation scheme over a shared two-qubit state achieves
fidelity F = (f d + 1)/(d + 1) with d = 2, where f is the fully entangled
fraction: the maximal overlap of the state with any maximally entangled
state.  f > 1/2 marks the quantum region where teleportation beats any
classical strategy.

For X-states whose weight sits in the inner block (r22 + r33 >= 1/2 and
r23 >= (1 - r22 - r33)/2) the maximum is attained on the singlet-type Bell
state (|01> - |10>)/sqrt(2), giving the closed form
f = (r22 + r33 + 2 r23)/2.  Outside those conditions the closed form is
not the true maximum, so the gated operations raise ConditionError
carrying both the raw formula value and a numerically maximized fallback.

The numerical route parameterizes all maximally entangled states as
(U (x) I)|Phi+> with U special-unitary (three ZYZ Euler angles) and runs a
deterministic multi-start local search seeded at the four Bell states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import minimize

from .channels import local_filter
from .dilaton import DilatonParams, UnruhMode, combined_state, mode_coefficients
from .errors import ConditionError, DimensionError, DomainError, ZeroProbabilityError
from .qstate import XState, x_to_matrix

CONDITION_TOL = 1e-12

# ZYZ Euler angles whose one-sided rotation of |Phi+> lands on each of the
# four Bell states; used both as warm starts and as the certified floor.
BELL_ANGLES = (
    (0.0, 0.0, 0.0),            # |Phi+>
    (math.pi, 0.0, 0.0),        # |Phi->
    (-math.pi / 2.0, math.pi, math.pi / 2.0),  # |Psi+>
    (0.0, math.pi, 0.0),        # |Psi->
)
SINGLET_ANGLES = BELL_ANGLES[3]


@dataclass(frozen=True)
class FefResult:
    """Fully entangled fraction plus the state achieving it.

    ``achiever`` holds the ZYZ Euler angles of the special-unitary rotation
    applied to one side of |Phi+>.  ``success_probability`` is set only for
    filtered results.
    """

    f: float
    achiever: tuple[float, float, float]
    method: str
    success_probability: Optional[float] = None


@dataclass(frozen=True)
class FidelityResult:
    """Teleportation fidelity F = (f d + 1)/(d + 1) at d = 2."""

    fidelity: float
    fraction: float
    dim: int = 2


@dataclass(frozen=True)
class DeltaAlphaResult:
    """Change of the fully entangled fraction between alpha0 and alpha=0."""

    alpha0: float
    delta: float
    method: str


class FilterOptimum(NamedTuple):
    ft_star: float
    f_star: float
    z1_star: float


def singlet_fraction(x: XState) -> float:
    """Overlap of an X-state with the singlet-type Bell state.

    This is the value the closed form reports; it equals the fully
    entangled fraction exactly when the applicability conditions hold.
    """
    return (x.r22 + x.r33) / 2.0 + x.r23


def _closed_form_applicable(x: XState) -> bool:
    return (
        x.r22 + x.r33 >= 0.5 - CONDITION_TOL
        and x.r23 >= (1.0 - x.r22 - x.r33) / 2.0 - CONDITION_TOL
    )


_SQRT2 = math.sqrt(2.0)


def _euler_unitary(a: float, b: float, c: float) -> np.ndarray:
    """Special-unitary 2x2 rotation Rz(a) Ry(b) Rz(c)."""
    ea = complex(math.cos(a / 2.0), -math.sin(a / 2.0))
    ec = complex(math.cos(c / 2.0), -math.sin(c / 2.0))
    cb, sb = math.cos(b / 2.0), math.sin(b / 2.0)
    return np.array(
        [
            [ea * cb * ec, -ea * sb * ec.conjugate()],
            [ea.conjugate() * sb * ec, ea.conjugate() * cb * ec.conjugate()],
        ]
    )


def _max_entangled_ket(angles) -> np.ndarray:
    # (U (x) I)|Phi+> has components U[a, b]/sqrt(2) on |a b>.
    return _euler_unitary(*angles).reshape(4) / _SQRT2


def fef_numeric(
    m: np.ndarray, restarts: int = 20, seed: int = 0, tol: float = 1e-9
) -> FefResult:
    """Maximize the overlap with maximally entangled states numerically.

    Runs a deterministic multi-start local search over the three Euler
    angles: the four Bell states as warm starts plus seeded pseudo-random
    starts up to ``restarts`` total.  The result is floored at the best
    Bell-basis overlap, so it is a certified lower bound on the true
    maximum.  Output depends only on (m, restarts, seed, tol).
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise DimensionError(f"expected a 4x4 density matrix, got {m.shape}")
    if restarts < 1:
        raise DomainError(f"restarts must be >= 1, got {restarts}")
    # Only the Hermitian part contributes to the (real) overlap.
    m = (m + m.conj().T) / 2.0

    def neg_value_and_grad(angles):
        a, b, c = angles
        u = _euler_unitary(a, b, c)
        u00, u01, u10, u11 = u.reshape(4)
        ket = u.reshape(4) / _SQRT2
        mket = m @ ket
        value = np.vdot(ket, mket).real
        # dU = G U for each angle.  sigma_z commutes with Rz, so the a- and
        # c-generators reduce to -i/2 row/column phase flips; the b-generator
        # is (-i/2) sigma_y conjugated by Rz(a).
        da = np.array([-0.5j * u00, -0.5j * u01, 0.5j * u10, 0.5j * u11]) / _SQRT2
        dc = np.array([-0.5j * u00, 0.5j * u01, -0.5j * u10, 0.5j * u11]) / _SQRT2
        ea2 = complex(math.cos(a), -math.sin(a))
        db = (
            np.array(
                [-ea2 * u10, -ea2 * u11, ea2.conjugate() * u00, ea2.conjugate() * u01]
            )
            / (2.0 * _SQRT2)
        )
        grad = np.array(
            [
                2.0 * np.vdot(mket, da).real,
                2.0 * np.vdot(mket, db).real,
                2.0 * np.vdot(mket, dc).real,
            ]
        )
        return -value, -grad

    def value(angles) -> float:
        return -neg_value_and_grad(angles)[0]

    best_angles = max(BELL_ANGLES, key=value)
    best = value(best_angles)

    rng = np.random.default_rng(seed)
    starts = list(BELL_ANGLES[: min(restarts, 4)])
    if restarts > 4:
        starts.extend(map(tuple, rng.uniform(-math.pi, math.pi, (restarts - 4, 3))))
    for start in starts:
        res = minimize(
            neg_value_and_grad,
            np.asarray(start, dtype=float),
            jac=True,
            method="L-BFGS-B",
            options={"ftol": tol, "gtol": 1e-10},
        )
        found = -float(res.fun)
        if found > best:
            best = found
            best_angles = tuple(float(v) for v in res.x)
    return FefResult(
        f=float(min(max(best, 0.0), 1.0)), achiever=best_angles, method="numeric"
    )


def fef_x_closed(
    x: XState, restarts: int = 20, seed: int = 0, tol: float = 1e-9
) -> FefResult:
    """Closed-form fully entangled fraction of an X-state.

    Valid when r22 + r33 >= 1/2 and r23 >= (1 - r22 - r33)/2, in which case
    f = (r22 + r33 + 2 r23)/2 and the maximizer is the singlet-type Bell
    state.  Otherwise raises ConditionError carrying the raw formula value
    and a :func:`fef_numeric` fallback.
    """
    value = singlet_fraction(x)
    if not _closed_form_applicable(x):
        raise ConditionError(
            "closed-form conditions r22+r33 >= 1/2, r23 >= (1-r22-r33)/2 failed",
            formula_value=value,
            fallback=fef_numeric(x_to_matrix(x), restarts=restarts, seed=seed, tol=tol),
        )
    return FefResult(f=value, achiever=SINGLET_ANGLES, method="closed_form")


def _fidelity_from_fraction(f: float, d: int) -> float:
    # Kept general in d to document the dependence; only d = 2 is exposed.
    return (f * d + 1.0) / (d + 1.0)


def teleport_fidelity(f: float) -> FidelityResult:
    """Teleportation fidelity of the standard scheme for two qubits."""
    if not (math.isfinite(f) and 0.0 <= f <= 1.0):
        raise DomainError(f"fully entangled fraction must lie in [0, 1], got {f}")
    return FidelityResult(fidelity=_fidelity_from_fraction(f, 2), fraction=float(f))


def fef_after_horizon(
    x: XState,
    dp: DilatonParams,
    um: UnruhMode,
    p: float,
    restarts: int = 20,
    seed: int = 0,
    tol: float = 1e-9,
) -> FefResult:
    """Fraction of the horizon-transformed, sender-damped state, directly.

    Evaluates the closed-form expression in the original state's elements;
    it must agree with fef_x_closed(combined_state(...)) to round-off.
    When the transformed state violates the closed form's conditions,
    raises ConditionError with the numeric fallback attached.
    """
    if not (math.isfinite(p) and 0.0 <= p <= 1.0):
        raise DomainError(f"damping magnitude must lie in [0, 1], got {p}")
    mc = mode_coefficients(dp)
    c2 = mc.cos_r * mc.cos_r
    s2 = mc.sin_r * mc.sin_r
    qr2 = um.q_r * um.q_r
    ql2 = um.q_l * um.q_l
    value = 0.5 * (
        s2 * x.r11
        + c2 * qr2 * x.r22
        + s2 * x.r22
        + p * (s2 * x.r33 + c2 * qr2 * x.r44 + s2 * x.r44)
        + (1.0 - p) * (c2 * x.r33 + c2 * ql2 * x.r44)
        + 2.0 * math.sqrt(1.0 - p) * mc.cos_r * um.q_r * x.r23
    )
    transformed = combined_state(x, mc, um, p)
    if not _closed_form_applicable(transformed):
        raise ConditionError(
            "transformed state violates the closed-form conditions",
            formula_value=value,
            fallback=fef_numeric(
                x_to_matrix(transformed), restarts=restarts, seed=seed, tol=tol
            ),
        )
    return FefResult(f=value, achiever=SINGLET_ANGLES, method="closed_form")


def fef_after_filter(
    x: XState,
    dp: DilatonParams,
    um: UnruhMode,
    p: float,
    ft: float,
    restarts: int = 20,
    seed: int = 0,
    tol: float = 1e-9,
) -> FefResult:
    """Fraction after the horizon map, damping and sender-side filtering.

    Direct evaluation in the original elements, with the success
    probability z1 = ft (1-p)(r33+r44) - (ft-1)(r11+r22+p r33+p r44)
    attached to the result.  Must agree with
    fef_x_closed(local_filter(combined_state(...)).state) to round-off.
    """
    if not (math.isfinite(p) and 0.0 <= p <= 1.0):
        raise DomainError(f"damping magnitude must lie in [0, 1], got {p}")
    if not (math.isfinite(ft) and 0.0 <= ft <= 1.0):
        raise DomainError(f"filter strength must lie in [0, 1], got {ft}")
    z1 = ft * (1.0 - p) * (x.r33 + x.r44) - (ft - 1.0) * (
        x.r11 + x.r22 + p * x.r33 + p * x.r44
    )
    if z1 <= 1e-12:
        raise ZeroProbabilityError(
            f"filter strength {ft} annihilates the state (z1={z1!r})"
        )
    mc = mode_coefficients(dp)
    c2 = mc.cos_r * mc.cos_r
    s2 = mc.sin_r * mc.sin_r
    qr2 = um.q_r * um.q_r
    ql2 = um.q_l * um.q_l
    value = (
        (1.0 - ft)
        * (
            s2 * x.r11
            + c2 * qr2 * x.r22
            + s2 * x.r22
            + p * (s2 * x.r33 + c2 * qr2 * x.r44 + s2 * x.r44)
        )
        + ft * (1.0 - p) * (c2 * x.r33 + c2 * ql2 * x.r44)
        + 2.0
        * math.sqrt(ft * (1.0 - ft))
        * math.sqrt(1.0 - p)
        * mc.cos_r
        * um.q_r
        * x.r23
    ) / (2.0 * z1)
    filtered = local_filter(combined_state(x, mc, um, p), ft)
    if not _closed_form_applicable(filtered.state):
        raise ConditionError(
            "filtered state violates the closed-form conditions",
            formula_value=value,
            fallback=FefResult(
                f=fef_numeric(
                    x_to_matrix(filtered.state), restarts=restarts, seed=seed, tol=tol
                ).f,
                achiever=SINGLET_ANGLES,
                method="numeric",
                success_probability=float(z1),
            ),
        )
    return FefResult(
        f=value,
        achiever=SINGLET_ANGLES,
        method="closed_form",
        success_probability=float(z1),
    )


def delta_alpha(
    x: XState,
    mass: float,
    omega: float,
    um: UnruhMode,
    p: float,
    alpha0: float,
    ft: Optional[float] = None,
    restarts: int = 20,
    seed: int = 0,
) -> DeltaAlphaResult:
    """Fraction at dilaton parameter alpha0 minus the fraction at alpha=0.

    A positive delta means the dilaton creates fidelity under the given
    decoherence, a negative one that it destroys fidelity.  Both endpoints
    use the same route: the closed form when its conditions hold at both,
    otherwise the numeric fallback at both.
    """
    if not 0.0 <= alpha0 < mass:
        raise DomainError(f"alpha0 must satisfy 0 <= alpha0 < mass, got {alpha0}")

    def closed(alpha: float) -> FefResult:
        dp = DilatonParams(mass, alpha, omega)
        if ft is None:
            return fef_after_horizon(x, dp, um, p, restarts=restarts, seed=seed)
        return fef_after_filter(x, dp, um, p, ft, restarts=restarts, seed=seed)

    def numeric(alpha: float) -> float:
        dp = DilatonParams(mass, alpha, omega)
        state = combined_state(x, mode_coefficients(dp), um, p)
        if ft is not None:
            state = local_filter(state, ft).state
        return fef_numeric(x_to_matrix(state), restarts=restarts, seed=seed).f

    try:
        delta = closed(alpha0).f - closed(0.0).f
        method = "closed_form"
    except ConditionError:
        delta = numeric(alpha0) - numeric(0.0)
        method = "numeric_fallback"
    return DeltaAlphaResult(alpha0=float(alpha0), delta=float(delta), method=method)


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def optimize_filter(
    x: XState,
    dp: DilatonParams,
    um: UnruhMode,
    p: float,
    grid: int = 64,
    refine_tol: float = 1e-10,
    restarts: int = 20,
    seed: int = 0,
) -> FilterOptimum:
    """Best filter strength for the given hole, mode and damping.

    Scans ft over a coarse grid in [0.01, 0.99], then refines around the
    best point by golden-section search until the bracket is narrower than
    ``refine_tol``.  Fully deterministic; grid points whose filter
    annihilates the state are excluded from the search.
    """
    if grid < 16:
        raise DomainError(f"grid must be >= 16, got {grid}")

    def value(ft: float) -> Optional[float]:
        try:
            return fef_after_filter(
                x, dp, um, p, ft, restarts=restarts, seed=seed
            ).f
        except ConditionError as exc:
            return exc.fallback.f
        except ZeroProbabilityError:
            return None

    points = np.linspace(0.01, 0.99, grid)
    values = [value(ft) for ft in points]
    if all(v is None for v in values):
        raise ZeroProbabilityError("every candidate filter annihilates the state")
    best = max(
        (i for i, v in enumerate(values) if v is not None), key=lambda i: values[i]
    )
    lo = points[max(best - 1, 0)]
    hi = points[min(best + 1, grid - 1)]

    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc = value(c) or -math.inf
    fd = value(d) or -math.inf
    while b - a > refine_tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = value(c) or -math.inf
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = value(d) or -math.inf
    ft_star = (a + b) / 2.0
    f_star = value(ft_star)
    z1_star = ft_star * (1.0 - p) * (x.r33 + x.r44) - (ft_star - 1.0) * (
        x.r11 + x.r22 + p * x.r33 + p * x.r44
    )
    return FilterOptimum(float(ft_star), float(f_star), float(z1_star))
