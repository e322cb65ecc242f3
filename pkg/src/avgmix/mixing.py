"""Exact average mixing matrices of continuous walks on integer symmetric matrices.

For a symmetric M with spectral decomposition M = sum_r theta_r E_r, the
average mixing matrix is the Cesaro limit of |exp(itM)|^2 entrywise,

    Mhat = sum_r E_r schur E_r.

Everything is computed over Q without ever representing an eigenvalue.
With psi the minimal (squarefree characteristic) polynomial of M, the
entries of E_r are values of rational polynomials at the roots of psi:
Phi(M, y) = sum_j B_j y^j satisfies Phi(M, theta_r) = psi'(theta_r) E_r,
so with w the inverse of psi' mod psi,

    Mhat[u][v] = sum_r (f_uv * w)^2 (theta_r),   f_uv(y) = sum_j B_j[u][v] y^j,

and the sum over roots is a trace form evaluated through Newton power
sums.  The implementation factors w^2 out of every entry: with tau_k the
trace of y^k w(y)^2, each entry is an integer dot product

    Mhat[u][v] = sum_k (f_uv^2)_k tau_k

against a precomputed rational vector, identical to reducing mod psi and
applying the trace because evaluation at a root is a ring homomorphism.
Entries only share read-only precomputed state, so distinct entries may
be computed concurrently in any order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    ExactMatrix,
    ExactPolynomial,
    _charpoly_int,
    _int_derivative,
    _int_disc,
    _int_power_sums,
    _int_squarefree,
    inverse_mod,
    lcm_int,
)


@dataclass(frozen=True)
class IntegralityCertificates:
    """Denominator-bound flags for an average mixing matrix.

    With D the discriminant of the minimal polynomial, D^2 Mhat is always
    integral, and D_char Mhat is integral whenever the spectrum is simple;
    both are hard guarantees.  Integrality of D Mhat for non-simple
    spectra is only observed, never asserted.
    """

    d2_integral: bool
    d_integral_simple: bool
    d_integral_minpoly: bool


@dataclass(frozen=True)
class AvgMixReport:
    """Average mixing matrix together with its exact spectral certificates."""

    mixing: ExactMatrix
    min_poly: ExactPolynomial
    char_poly: ExactPolynomial
    disc_min: Fraction
    disc_char: Fraction
    simple_spectrum: bool
    common_denominator: int
    certificates: IntegralityCertificates

    @property
    def n(self) -> int:
        return self.mixing.nrows


def _entry_numerator(f: list[int], weights: list[int]) -> int:
    """Dot product of the coefficients of f^2 with the trace weights."""
    m = len(f)
    total = 0
    for k in range(2 * m - 1):
        lo = max(0, k - m + 1)
        hi = k // 2
        acc = 0
        for i in range(lo, hi + 1):
            j = k - i
            if i == j:
                acc += f[i] * f[i]
            else:
                acc += 2 * f[i] * f[j]
        if acc:
            total += acc * weights[k]
    return total


def average_mixing(m: ExactMatrix) -> AvgMixReport:
    """Exact average mixing matrix of an integer symmetric matrix."""
    if not m.is_square:
        raise ValueError("average mixing needs a square matrix")
    if not m.is_integral():
        raise ValueError("average mixing needs integer entries")
    if not m.is_symmetric():
        raise ValueError("average mixing needs a symmetric matrix")
    n = m.nrows
    rows = [[int(m[i, j]) for j in range(n)] for i in range(n)]

    phi = _charpoly_int(rows)
    psi = _int_squarefree(phi)
    deg = len(psi) - 1
    disc_char = _int_disc(phi)
    disc_min = disc_char if deg == n else _int_disc(psi)

    # B_{deg-1} = I, B_{j-1} = M B_j + psi_j I  (Horner on the matrix)
    adjacency = [
        [(j, w) for j, w in enumerate(row) if w] for row in rows
    ]
    current = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    mats = [current]
    for j in range(deg - 1, 0, -1):
        c = psi[j]
        nxt = []
        for i in range(n):
            acc_row = [0] * n
            for t, w in adjacency[i]:
                brow = current[t]
                for k in range(n):
                    acc_row[k] += w * brow[k]
            acc_row[i] += c
            nxt.append(acc_row)
        current = nxt
        mats.append(current)
    mats.reverse()

    # w = 1/psi' in Q[y]/(psi); tau_k = trace of y^k w^2 over the roots
    psi_poly = ExactPolynomial(psi)
    w = inverse_mod(ExactPolynomial(_int_derivative(psi)), psi_poly)
    w2 = (w * w) % psi_poly
    denom = lcm_int(c.denominator for c in w2.coeffs) if not w2.is_zero() else 1
    w2_int = [0] * deg
    for j, c in enumerate(w2.coeffs):
        w2_int[j] = int(c * denom)
    sums = _int_power_sums(psi, 3 * deg - 3 if deg > 1 else 0)
    tau_num = [
        sum(w2_int[j] * sums[j + k] for j in range(deg) if w2_int[j])
        for k in range(2 * deg - 1)
    ]

    entries: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    for u in range(n):
        for v in range(u, n):
            f = [mats[j][u][v] for j in range(deg)]
            value = Fraction(_entry_numerator(f, tau_num), denom)
            entries[u][v] = value
            entries[v][u] = value

    mixing = ExactMatrix(entries)
    _check_mixing_invariants(mixing)
    simple = disc_char != 0
    return AvgMixReport(
        mixing=mixing,
        min_poly=ExactPolynomial(psi),
        char_poly=ExactPolynomial(phi),
        disc_min=Fraction(disc_min),
        disc_char=Fraction(disc_char),
        simple_spectrum=simple,
        common_denominator=lcm_int(x.denominator for x in mixing.entries()),
        certificates=_certify(mixing, disc_min, disc_char, simple),
    )


def _check_mixing_invariants(mixing: ExactMatrix) -> None:
    # guaranteed by the algebra; a violation means the pipeline is broken
    for row in mixing.to_lists():
        for x in row:
            if x < 0:
                raise AssertionError("average mixing entry below zero")
    if any(s != 1 for s in mixing.row_sums()):
        raise AssertionError("average mixing row sum differs from 1")
    if not mixing.is_symmetric():
        raise AssertionError("average mixing matrix is not symmetric")


def _certify(
    mixing: ExactMatrix, d_min: int, d_char: int, simple: bool
) -> IntegralityCertificates:
    denoms = [x.denominator for x in mixing.entries()]
    d2 = d_min * d_min
    d2_ok = all(d2 % q == 0 for q in denoms)
    if not d2_ok:
        raise AssertionError("D^2 Mhat must be integral")
    if simple:
        simple_ok = all(d_char % q == 0 for q in denoms)
        if not simple_ok:
            raise AssertionError("D Mhat must be integral for simple spectra")
    else:
        simple_ok = True  # vacuous
    minpoly_ok = all(d_min % q == 0 for q in denoms)
    return IntegralityCertificates(d2_ok, simple_ok, minpoly_ok)


def certify_integrality(report: AvgMixReport) -> IntegralityCertificates:
    """Check the denominator bounds on an average mixing matrix.

    Failure of a guaranteed bound (D^2 always, D_char for simple spectra)
    raises instead of returning False; the minimal-polynomial bound for
    repeated spectra carries no guarantee and is reported as observed.
    """
    return _certify(
        report.mixing,
        int(report.disc_min),
        int(report.disc_char),
        report.simple_spectrum,
    )


def strong_cospectral_kernel(report: AvgMixReport, u: int, v: int) -> bool:
    """Whether e_u - e_v lies in the kernel of Mhat, i.e. columns u, v agree.

    For symmetric idempotents this is exactly strong cospectrality of the
    pair: E_r e_u = +- E_r e_v for every r.
    """
    n = report.n
    if not (0 <= u < n and 0 <= v < n):
        raise IndexError("vertex out of range")
    if u == v:
        raise ValueError("strong cospectrality needs two distinct vertices")
    return report.mixing.column(u) == report.mixing.column(v)


def minpoly_integrality_counterexamples(
    matrices: list[ExactMatrix],
) -> list[int]:
    """Indices whose average mixing matrix violates D_min * Mhat integral.

    Whether the minimal-polynomial discriminant always clears the
    denominators is open for repeated spectra; this scans a batch of
    candidates and reports any violation found (none are known).
    """
    bad = []
    for idx, m in enumerate(matrices):
        report = average_mixing(m)
        if not report.certificates.d_integral_minpoly:
            bad.append(idx)
    return bad
