"""Average mixing of discrete walks driven by rational orthogonal matrices.

The transition matrix at step t is U^t with U orthogonal.  Two limits
are of interest.  The physical average mixing matrix is the Cesaro
limit of the step distributions |(U^t)_{uv}|^2 and equals
sum_r E_r o conj(E_r) over the spectral idempotents of U; it is doubly
stochastic with nonnegative entries.  The literal average mixing
matrix sum_r E_r o E_r drops the conjugation and is the Cesaro limit
of the forward-backward products U^t o U^-t, whose (u, v) entry is
(U^t)_{uv} (U^t)_{vu}; it is symmetric and rational but generally
neither nonnegative nor stochastic.  The two agree exactly when U is
symmetric.

Both variants are computed exactly by the same trace-functional device
used for continuous walks: idempotent entries become polynomials modulo
the squarefree part of the characteristic polynomial, and sums over its
roots become rational traces.  Complex eigenvalues need no special
handling because every trace taken is a symmetric function of the
roots.  Inverting y modulo the squarefree part realises the conjugate
(= inverse) eigenvalue pairing without leaving rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import (
    ExactMatrix,
    ExactPolynomial,
    char_poly,
    compose_mod,
    inverse_mod,
    resolvent_coeffs,
    squarefree_part,
    trace_mod,
)

F = Fraction


def _require_orthogonal(u: ExactMatrix) -> None:
    if not u.is_square:
        raise ValueError("an orthogonal matrix must be square")
    n = u.nrows
    if u.transpose() * u != ExactMatrix.identity(n):
        raise ValueError("the matrix is not orthogonal")


def _entry_polynomials(u: ExactMatrix):
    """Shared setup: psi, the per-entry root-interpolants g_uv with
    g_uv(theta_r) = (E_r)_{uv}, returned as a matrix of polynomials."""
    psi = squarefree_part(char_poly(u))
    coeffs = resolvent_coeffs(u, psi)
    w = inverse_mod(psi.derivative(), psi)
    n = u.nrows
    table = [
        [
            (
                ExactPolynomial(
                    [b[row, col] for b in coeffs.matrices]
                )
                * w
            )
            % psi
            for col in range(n)
        ]
        for row in range(n)
    ]
    return psi, table


def avg_mixing_literal(u: ExactMatrix) -> ExactMatrix:
    """sum_r E_r o E_r, exactly; symmetric and rational, but its rows
    need not sum to 1 when U is not symmetric."""
    _require_orthogonal(u)
    psi, table = _entry_polynomials(u)
    n = u.nrows
    rows = [
        [trace_mod((g * g) % psi, psi) for g in row]
        for row in table
    ]
    out = ExactMatrix(rows)
    if not out.is_symmetric():
        raise AssertionError("the literal average mixing matrix must be symmetric")
    return out


def avg_mixing_physical(u: ExactMatrix) -> ExactMatrix:
    """sum_r E_r o conj(E_r), exactly: the Cesaro limit of the step
    mixing matrices, doubly stochastic with nonnegative entries."""
    _require_orthogonal(u)
    psi, table = _entry_polynomials(u)
    n = u.nrows
    y_inverse = inverse_mod(ExactPolynomial.x(), psi)
    rows = []
    for row in table:
        out_row = []
        for g in row:
            paired = compose_mod(g, y_inverse, psi)
            out_row.append(trace_mod((g * paired) % psi, psi))
        rows.append(out_row)
    out = ExactMatrix(rows)
    if not out.is_symmetric():
        raise AssertionError("the average mixing matrix must be symmetric")
    if any(x < 0 for x in out.entries()):
        raise AssertionError("the average mixing matrix must be nonnegative")
    if any(s != 1 for s in out.row_sums()):
        raise AssertionError("the average mixing matrix must be doubly stochastic")
    return out


# ---------------------------------------------------------------------------
# Cesaro partial averages
# ---------------------------------------------------------------------------


def cesaro_partial(u: ExactMatrix, steps: int) -> np.ndarray:
    """(1/N) sum_{t<N} (U^t o U^-t) as floats.

    U^-t is the transpose of U^t, so each term has entries
    (U^t)_{uv} (U^t)_{vu}; the average converges to the literal form.
    """
    _require_orthogonal(u)
    if steps < 1:
        raise ValueError("the number of steps must be positive")
    n = u.nrows
    array = np.array(u.to_float())
    power = np.eye(n)
    total = np.zeros((n, n))
    for _ in range(steps):
        total += power * power.T
        power = power @ array
    return total / steps


def _numeric_idempotents(u: ExactMatrix):
    """Projectors E_r from the exact resolvent at numeric roots of psi."""
    psi = squarefree_part(char_poly(u))
    coeffs = resolvent_coeffs(u, psi)
    mats = [np.array(b.to_float(), dtype=complex) for b in coeffs.matrices]
    roots = np.roots([float(c) for c in reversed(psi.coeffs)])
    derivative = psi.derivative()
    projectors = []
    for theta in roots:
        value = sum(
            complex(c) * theta**k for k, c in enumerate(derivative.coeffs)
        )
        total = sum(mats[k] * theta**k for k in range(len(mats)))
        projectors.append(total / value)
    return roots, projectors


def cesaro_error_bound(u: ExactMatrix, steps: int) -> float:
    """A priori bound on the gap between the partial average and the
    literal limit.

    The cross term of eigenvalues theta_r, theta_s contributes a
    geometric sum of ratio theta_r / theta_s, bounded entrywise by
    2 max|E_r o E_s| / (N |1 - theta_r / theta_s|).
    """
    _require_orthogonal(u)
    if steps < 1:
        raise ValueError("the number of steps must be positive")
    roots, projectors = _numeric_idempotents(u)
    bound = 0.0
    for r in range(len(roots)):
        for s in range(len(roots)):
            if r == s:
                continue
            ratio = roots[r] / roots[s]
            size = float(np.max(np.abs(projectors[r] * projectors[s])))
            bound += 2.0 * size / (steps * abs(1.0 - ratio))
    return bound


@dataclass(frozen=True)
class DiscreteWalk:
    """A validated orthogonal step matrix with the mixing computations."""

    matrix: ExactMatrix

    def __post_init__(self) -> None:
        _require_orthogonal(self.matrix)

    @property
    def n(self) -> int:
        return self.matrix.nrows

    def literal(self) -> ExactMatrix:
        return avg_mixing_literal(self.matrix)

    def physical(self) -> ExactMatrix:
        return avg_mixing_physical(self.matrix)

    def partial_average(self, steps: int) -> np.ndarray:
        return cesaro_partial(self.matrix, steps)

    def error_bound(self, steps: int) -> float:
        return cesaro_error_bound(self.matrix, steps)
