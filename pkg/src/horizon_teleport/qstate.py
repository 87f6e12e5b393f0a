"""Two-qubit X-state algebra and general density-matrix utilities.

An X-type two-qubit state is parameterized by six nonnegative reals: four
populations and two anti-diagonal coherence magnitudes.  The matrix stores
the coherences with explicit minus signs,

    [[ r11,    0,    0, -r14],
     [   0,  r22, -r23,    0],
     [   0, -r23,  r33,    0],
     [-r14,    0,    0,  r44]]

in the product basis {|00>, |01>, |10>, |11>}.  Every downstream closed
form assumes this sign convention, so it is enforced rather than silently
normalized away.
"""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass

import numpy as np

from .errors import (
    ConventionError,
    DimensionError,
    DomainError,
    PositivityError,
    ShapeError,
    TraceError,
)

# Tolerances: 1e-12 for algebraic identities (trace, hermiticity, sparsity),
# 1e-10 of eigenvalue headroom so 32/64-dimensional oracle pipelines do not
# trip on accumulated round-off.
ALGEBRA_TOL = 1e-12
EIGEN_TOL = 1e-10


@dataclass(frozen=True)
class XState:
    """Parameters of an X-type two-qubit density matrix.

    ``r11 .. r44`` are the populations, ``r14`` and ``r23`` the magnitudes
    of the anti-diagonal coherences (carried negatively in the matrix).
    Instances are immutable; build validated ones with :func:`make_x_state`.
    """

    r11: float
    r22: float
    r33: float
    r44: float
    r14: float
    r23: float

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return astuple(self)


@dataclass(frozen=True)
class StateReport:
    """Diagnostics from :func:`validate`."""

    trace_error: float
    hermiticity_error: float
    min_eigenvalue: float
    is_valid: bool


def make_x_state(r11, r22, r33, r44, r14, r23) -> XState:
    """Build an X-state, verifying unit trace and positivity.

    Raises TraceError if the populations do not sum to one, PositivityError
    if any field is negative or the 4x4 matrix is not positive
    semidefinite.  Nothing is renormalized on the caller's behalf.
    """
    fields = (r11, r22, r33, r44, r14, r23)
    if not all(math.isfinite(v) for v in fields):
        raise DomainError(f"x-state fields must be finite, got {fields}")
    if min(fields) < -ALGEBRA_TOL:
        raise PositivityError(f"x-state fields must be nonnegative, got {fields}")
    trace = r11 + r22 + r33 + r44
    if abs(trace - 1.0) > ALGEBRA_TOL:
        raise TraceError(f"populations sum to {trace!r}, expected 1")
    if r22 * r33 < r23 * r23 - ALGEBRA_TOL:
        raise PositivityError(
            f"inner block not PSD: r22*r33={r22 * r33!r} < r23^2={r23 * r23!r}"
        )
    if r11 * r44 < r14 * r14 - ALGEBRA_TOL:
        raise PositivityError(
            f"outer block not PSD: r11*r44={r11 * r44!r} < r14^2={r14 * r14!r}"
        )
    x = XState(*(float(v) for v in fields))
    smallest = float(np.linalg.eigvalsh(x_to_matrix(x)).min())
    if smallest < -EIGEN_TOL:
        raise PositivityError(f"smallest eigenvalue {smallest!r} below -{EIGEN_TOL}")
    return x


def x_to_matrix(x: XState) -> np.ndarray:
    """4x4 complex density matrix for an X-state (minus-sign convention)."""
    return np.array(
        [
            [x.r11, 0.0, 0.0, -x.r14],
            [0.0, x.r22, -x.r23, 0.0],
            [0.0, -x.r23, x.r33, 0.0],
            [-x.r14, 0.0, 0.0, x.r44],
        ],
        dtype=complex,
    )


# Positions allowed to be nonzero in an X-shaped 4x4 matrix.
_X_MASK = np.array(
    [
        [True, False, False, True],
        [False, True, True, False],
        [False, True, True, False],
        [True, False, False, True],
    ]
)


def matrix_to_x(m: np.ndarray) -> XState:
    """Read X-state fields back out of a 4x4 matrix.

    The matrix must be X-shaped (all other entries below ``ALGEBRA_TOL``)
    and its anti-diagonal entries must be real and nonpositive, i.e. written
    in the same minus-sign convention produced by :func:`x_to_matrix`.
    Raises ShapeError or ConventionError otherwise; the result is validated
    like any other X-state.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ShapeError(f"expected a 4x4 matrix, got shape {m.shape}")
    stray = np.abs(np.where(_X_MASK, 0.0, m)).max()
    if stray > ALGEBRA_TOL:
        raise ShapeError(f"non-X entries as large as {stray!r}")
    if np.abs(np.imag(m[_X_MASK])).max() > ALGEBRA_TOL:
        raise ConventionError("X entries must be real")
    off14 = (m[0, 3].real + m[3, 0].real) / 2.0
    off23 = (m[1, 2].real + m[2, 1].real) / 2.0
    if abs(m[0, 3].real - m[3, 0].real) > ALGEBRA_TOL or abs(
        m[1, 2].real - m[2, 1].real
    ) > ALGEBRA_TOL:
        raise ConventionError("anti-diagonal entries are not symmetric")
    if off14 > ALGEBRA_TOL or off23 > ALGEBRA_TOL:
        raise ConventionError(
            "anti-diagonal entries must be nonpositive (minus-sign convention)"
        )
    return make_x_state(
        m[0, 0].real, m[1, 1].real, m[2, 2].real, m[3, 3].real, -off14, -off23
    )


def partial_trace(m: np.ndarray, factor_dims, keep) -> np.ndarray:
    """Trace out all tensor factors not listed in ``keep``.

    ``factor_dims`` gives the dimension of each factor in order; their
    product must equal the matrix dimension.  The reduced matrix is ordered
    as the indices appear in ``keep``.
    """
    dims = [int(d) for d in factor_dims]
    if any(d < 1 for d in dims):
        raise DimensionError(f"factor dimensions must be positive, got {dims}")
    total = math.prod(dims)
    m = np.asarray(m, dtype=complex)
    if m.shape != (total, total):
        raise DimensionError(
            f"matrix shape {m.shape} does not match factor dims {dims}"
        )
    keep = [int(k) for k in keep]
    n = len(dims)
    if len(set(keep)) != len(keep) or any(k < 0 or k >= n for k in keep):
        raise DimensionError(f"keep indices {keep} invalid for {n} factors")

    reshaped = m.reshape(dims + dims)
    row_labels = list(range(n))
    # Traced factors reuse their row label on the column side, which einsum
    # contracts as a trace; kept factors get fresh column labels.
    col_labels = [n + i if i in keep else i for i in range(n)]
    out_labels = [i for i in keep] + [n + i for i in keep]
    reduced = np.einsum(reshaped, row_labels + col_labels, out_labels)
    kept_dim = math.prod(dims[i] for i in keep)
    return reduced.reshape(kept_dim, kept_dim)


def validate(m: np.ndarray) -> StateReport:
    """Report trace, hermiticity and eigenvalue diagnostics; never raises."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        return StateReport(math.inf, math.inf, -math.inf, False)
    trace_error = abs(np.trace(m) - 1.0)
    hermiticity_error = float(np.abs(m - m.conj().T).max())
    hermitian_part = (m + m.conj().T) / 2.0
    min_eigenvalue = float(np.linalg.eigvalsh(hermitian_part).min())
    is_valid = (
        trace_error <= ALGEBRA_TOL
        and hermiticity_error <= ALGEBRA_TOL
        and min_eigenvalue >= -EIGEN_TOL
    )
    return StateReport(float(trace_error), hermiticity_error, min_eigenvalue, is_valid)


def is_entangled_x(x: XState) -> bool:
    """Partial-transpose test specialized to X-states.

    The partial transpose swaps the two anti-diagonal coherences between
    the 2x2 blocks, so a negative eigenvalue appears exactly when
    ``r22*r33 < r14^2`` or ``r11*r44 < r23^2``.
    """
    return x.r22 * x.r33 < x.r14 * x.r14 or x.r11 * x.r44 < x.r23 * x.r23
