"""Exact rational linear algebra and univariate polynomial arithmetic.

Scalars are `fractions.Fraction` (always stored reduced, denominator > 0).
Matrices are dense and immutable; polynomials are dense coefficient tuples
in ascending order with no trailing zeros, so the zero polynomial is the
empty tuple and `degree` of zero is -1.

Everything here is exact.  The characteristic polynomial is computed by
fraction-free (Bareiss) elimination at integer sample points followed by
Newton interpolation, never by cofactor expansion.  Polynomial gcds and
resultants over the integers use the primitive and subresultant remainder
sequences, which keep intermediate coefficients at subresultant size
instead of exploding the way naive rational remainder sequences do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class NonInvertibleError(ValueError):
    """Raised when an element of Q[y]/(m) has no inverse."""


class NotAnnihilatingError(ValueError):
    """Raised when a polynomial claimed to annihilate a matrix does not."""


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an integer or Fraction, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class ExactMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[Scalar]]):
        data = tuple(tuple(_as_fraction(x) for x in row) for row in rows)
        if not data:
            raise ValueError("matrix must have at least one row")
        width = len(data[0])
        if width == 0:
            raise ValueError("matrix must have at least one column")
        if any(len(row) != width for row in data):
            raise ValueError("rows have unequal lengths")
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "ExactMatrix":
        ncols = nrows if ncols is None else ncols
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def ones(cls, n: int) -> "ExactMatrix":
        return cls([[1] * n for _ in range(n)])

    # -- access ------------------------------------------------------------

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._rows)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self._rows]

    def to_float(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self._rows]

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entries(self) -> Iterable[Fraction]:
        for row in self._rows:
            yield from row

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ]
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-a for a in row] for row in self._rows])

    def __mul__(self, other: "ExactMatrix | Scalar") -> "ExactMatrix":
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError(
                    f"cannot multiply {self.nrows}x{self.ncols} by "
                    f"{other.nrows}x{other.ncols}"
                )
            cols = [other.column(j) for j in range(other.ncols)]
            return ExactMatrix(
                [
                    [sum(a * b for a, b in zip(row, col)) for col in cols]
                    for row in self._rows
                ]
            )
        c = _as_fraction(other)
        return ExactMatrix([[c * a for a in row] for row in self._rows])

    def __rmul__(self, other: Scalar) -> "ExactMatrix":
        c = _as_fraction(other)
        return ExactMatrix([[c * a for a in row] for row in self._rows])

    def __pow__(self, k: int) -> "ExactMatrix":
        if not self.is_square or k < 0:
            raise ValueError("matrix power needs a square base and k >= 0")
        result = ExactMatrix.identity(self.nrows)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(str(x) for x in row) for row in self._rows
        )
        return f"ExactMatrix({self.nrows}x{self.ncols}: {body})"

    def _check_same_shape(self, other: "ExactMatrix") -> None:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("matrix shapes differ")

    # -- structure ---------------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [self.column(j) for j in range(self.ncols)]
        )

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.nrows)), Fraction(0))

    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        return all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self.ncols)
        )

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries())

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(row, Fraction(0)) for row in self._rows)

    def schur(self, other: "ExactMatrix") -> "ExactMatrix":
        """Entrywise (Schur) product."""
        self._check_same_shape(other)
        return ExactMatrix(
            [
                [a * b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ]
        )

    def deleted(self, i: int, j: int | None = None) -> "ExactMatrix":
        """Copy with row i and column j removed (j defaults to i)."""
        j = i if j is None else j
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError("row or column out of range")
        return ExactMatrix(
            [
                [x for c, x in enumerate(row) if c != j]
                for r, row in enumerate(self._rows)
                if r != i
            ]
        )

    def determinant(self) -> Fraction:
        """Exact determinant by rational Gaussian elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        work = [list(row) for row in self._rows]
        det = Fraction(1)
        for k in range(n):
            pivot_row = next(
                (r for r in range(k, n) if work[r][k] != 0), None
            )
            if pivot_row is None:
                return Fraction(0)
            if pivot_row != k:
                work[k], work[pivot_row] = work[pivot_row], work[k]
                det = -det
            pivot = work[k][k]
            det *= pivot
            for r in range(k + 1, n):
                factor = work[r][k] / pivot
                if factor:
                    work[r] = [
                        a - factor * b for a, b in zip(work[r], work[k])
                    ]
        return det

    def leading_principal_minors(self) -> tuple[Fraction, ...]:
        """Determinants of the k x k top-left blocks, k = 1..n."""
        if not self.is_square:
            raise ValueError("principal minors of a non-square matrix")
        return tuple(
            ExactMatrix([row[: k + 1] for row in self._rows[: k + 1]]).determinant()
            for k in range(self.nrows)
        )


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class ExactPolynomial:
    """Univariate polynomial over the rationals, dense ascending coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "ExactPolynomial":
        return cls([])

    @classmethod
    def one(cls) -> "ExactPolynomial":
        return cls([1])

    @classmethod
    def x(cls) -> "ExactPolynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c: Scalar) -> "ExactPolynomial":
        return cls([c])

    # -- access ------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_monic(self) -> bool:
        return bool(self._coeffs) and self._coeffs[-1] == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "ExactPolynomial(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "ExactPolynomial(" + " + ".join(terms) + ")"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ExactPolynomial(out)

    def __sub__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return self + (-other)

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial([-c for c in self._coeffs])

    def __mul__(self, other: "ExactPolynomial | Scalar") -> "ExactPolynomial":
        if not isinstance(other, ExactPolynomial):
            c = _as_fraction(other)
            return ExactPolynomial([c * a for a in self._coeffs])
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return ExactPolynomial.zero()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return ExactPolynomial(out)

    def __rmul__(self, other: Scalar) -> "ExactPolynomial":
        return self * other

    def __divmod__(
        self, other: "ExactPolynomial"
    ) -> tuple["ExactPolynomial", "ExactPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        div = other._coeffs
        dd = len(div) - 1
        lead = div[-1]
        if len(rem) - 1 < dd:
            return ExactPolynomial.zero(), ExactPolynomial(rem)
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c / lead
            quot[k - dd] = q
            for i in range(dd + 1):
                rem[k - dd + i] -= q * div[i]
        return ExactPolynomial(quot), ExactPolynomial(rem)

    def __floordiv__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return divmod(self, other)[1]

    def derivative(self) -> "ExactPolynomial":
        return ExactPolynomial(
            [i * c for i, c in enumerate(self._coeffs)][1:]
        )

    def monic(self) -> "ExactPolynomial":
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        lead = self._coeffs[-1]
        if lead == 1:
            return self
        return ExactPolynomial([c / lead for c in self._coeffs])

    def __call__(self, x: Scalar) -> Fraction:
        """Evaluate by Horner's rule."""
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def at_matrix(self, m: ExactMatrix) -> ExactMatrix:
        """Evaluate at a square matrix by Horner's rule."""
        if not m.is_square:
            raise ValueError("polynomial evaluation needs a square matrix")
        acc = ExactMatrix.zeros(m.nrows)
        ident = ExactMatrix.identity(m.nrows)
        for c in reversed(self._coeffs):
            acc = acc * m + ident * c
        return acc


@dataclass(frozen=True)
class ResolventCoefficients:
    """Matrices B_0..B_{m-1} with Phi(M, y) = sum_j B_j y^j.

    Phi(x, y) = (psi(x) - psi(y)) / (x - y) for a monic annihilating
    polynomial psi of degree m; evaluating at a root theta_r of psi gives
    Phi(M, theta_r) = psi'(theta_r) E_r, the scaled spectral idempotent.
    """

    matrices: tuple[ExactMatrix, ...]

    @property
    def count(self) -> int:
        return len(self.matrices)


# ---------------------------------------------------------------------------
# integer polynomial kernels (plain int lists, ascending, no trailing zeros)
# ---------------------------------------------------------------------------


def _int_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _int_content(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def _int_primitive(p: list[int]) -> list[int]:
    """Divide out the content; normalize the leading coefficient positive."""
    if not p:
        return []
    g = _int_content(p)
    if p[-1] < 0:
        g = -g
    if g != 1:
        p = [c // g for c in p]
    return p


def _int_derivative(p: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(p)][1:]


def _int_prem(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f reduced mod g."""
    r = list(f)
    dg = len(g) - 1
    lead = g[-1]
    steps = len(f) - len(g) + 1
    while len(_int_trim(r)) - 1 >= dg and r:
        dr = len(r) - 1
        top = r[-1]
        r = [lead * c for c in r]
        shift = dr - dg
        for i in range(dg + 1):
            r[shift + i] -= top * g[i]
        r = _int_trim(r)
        steps -= 1
    # early exit leaves unapplied lc factors
    if steps > 0 and r:
        scale = lead**steps
        r = [scale * c for c in r]
    return r


def _int_gcd(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Gcd of integer polynomials via the primitive remainder sequence.

    Returns a primitive polynomial with positive leading coefficient
    (an integer constant collapses to [1]; gcd of two zeros is []).
    """
    a = _int_trim(list(f))
    b = _int_trim(list(g))
    if not a:
        return _int_primitive(b)
    if not b:
        return _int_primitive(a)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_primitive(_int_prem(a, b))
        a, b = b, r
    a = _int_primitive(a)
    if len(a) == 1:
        return [1]
    return a


def _int_resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of integer polynomials via the subresultant sequence."""
    a = _int_trim(list(f))
    b = _int_trim(list(g))
    if not a or not b:
        return 0
    sign = 1
    if len(a) < len(b):
        if ((len(a) - 1) * (len(b) - 1)) % 2 == 1:
            sign = -sign
        a, b = b, a
    if len(b) == 1:
        return sign * b[0] ** (len(a) - 1)
    ca, cb = _int_content(a), _int_content(b)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    scale = ca ** (len(b) - 1) * cb ** (len(a) - 1)
    g_ = 1
    h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        r = _int_prem(a, b)
        if not r:
            return 0  # common factor of positive degree
        divisor = g_ * h**delta
        a, b = b, [c // divisor for c in r]
        g_ = a[-1]
        if delta > 0:
            h = g_**delta // h ** (delta - 1)
        if len(b) == 1:
            da = len(a) - 1
            h = b[0] ** da // h ** (da - 1) if da > 0 else h
            return sign * scale * h


def _int_squarefree(p: Sequence[int]) -> list[int]:
    """Monic squarefree part of a monic integer polynomial."""
    work = _int_trim(list(p))
    if not work or work[-1] != 1:
        raise ValueError("expected a monic integer polynomial")
    if len(work) == 2:
        return work
    g = _int_gcd(work, _int_derivative(work))
    if len(g) == 1:
        return work
    # exact division: g is primitive and divides the monic work, so the
    # quotient is again monic with integer coefficients
    q = _int_exact_div(work, g)
    return q


def _int_exact_div(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Quotient f / g when g divides f exactly over the integers."""
    rem = list(f)
    dg = len(g) - 1
    lead = g[-1]
    quot = [0] * (len(f) - dg)
    for k in range(len(rem) - 1, dg - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        q, leftover = divmod(c, lead)
        if leftover:
            raise ArithmeticError("division was expected to be exact")
        quot[k - dg] = q
        for i in range(dg + 1):
            rem[k - dg + i] -= q * g[i]
    if any(rem):
        raise ArithmeticError("division was expected to be exact")
    return _int_trim(quot)


def _int_power_sums(psi: Sequence[int], upto: int) -> list[int]:
    """Power sums p_0..p_upto of the roots of a monic integer polynomial."""
    m = len(psi) - 1
    p = [0] * (upto + 1)
    p[0] = m
    for k in range(1, upto + 1):
        if k <= m:
            acc = k * psi[m - k]
            for i in range(1, k):
                acc += psi[m - i] * p[k - i]
        else:
            acc = 0
            for i in range(1, m + 1):
                acc += psi[m - i] * p[k - i]
        p[k] = -acc
    return p


def _int_disc(psi: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial."""
    m = len(psi) - 1
    if m < 1:
        raise ValueError("discriminant needs degree >= 1")
    if m == 1:
        return 1
    res = _int_resultant(psi, _int_derivative(psi))
    return -res if (m * (m - 1) // 2) % 2 == 1 else res


# ---------------------------------------------------------------------------
# determinants and characteristic polynomials (fraction-free)
# ---------------------------------------------------------------------------


def _bareiss_det(rows: list[list[int]]) -> int:
    """Determinant of an integer matrix by Bareiss fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    work = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if work[k][k] == 0:
            pivot_row = next(
                (r for r in range(k + 1, n) if work[r][k] != 0), None
            )
            if pivot_row is None:
                return 0
            work[k], work[pivot_row] = work[pivot_row], work[k]
            sign = -sign
        pivot = work[k][k]
        row_k = work[k]
        for r in range(k + 1, n):
            row_r = work[r]
            factor = row_r[k]
            for j in range(k + 1, n):
                row_r[j] = (pivot * row_r[j] - factor * row_k[j]) // prev
            row_r[k] = 0
        prev = pivot
    return sign * work[n - 1][n - 1]


def _charpoly_int(rows: list[list[int]]) -> list[int]:
    """det(xI - M) for an integer matrix, ascending integer coefficients.

    Evaluates the determinant at n+1 integer points with Bareiss
    elimination and recovers the coefficients by Newton interpolation;
    the result is monic of degree n by construction.
    """
    n = len(rows)
    points: list[int] = []
    k = 0
    while len(points) < n + 1:
        points.append(k)
        k = -k if k > 0 else -k + 1
    values = []
    for x in points:
        shifted = [
            [(x if i == j else 0) - rows[i][j] for j in range(n)]
            for i in range(n)
        ]
        values.append(_bareiss_det(shifted))
    # Newton's divided differences, then Horner expansion to monomials
    coeffs_nd = [Fraction(v) for v in values]
    for level in range(1, n + 1):
        for i in range(n, level - 1, -1):
            coeffs_nd[i] = (coeffs_nd[i] - coeffs_nd[i - 1]) / (
                points[i] - points[i - level]
            )
    poly = [Fraction(0)] * (n + 1)
    for i in range(n, -1, -1):
        new = [Fraction(0)] * (n + 1)
        for j in range(n, 0, -1):
            new[j] = poly[j - 1] - points[i] * poly[j]
        new[0] = coeffs_nd[i] - points[i] * poly[0]
        poly = new
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ArithmeticError("interpolation did not produce integers")
        out.append(c.numerator)
    if not out or out[-1] != 1 or len(out) != n + 1:
        raise ArithmeticError("characteristic polynomial is not monic")
    return out


def char_poly(m: ExactMatrix) -> ExactPolynomial:
    """Characteristic polynomial det(xI - M), monic of degree n."""
    if not m.is_square:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = m.nrows
    denom = 1
    for x in m.entries():
        denom = denom * x.denominator // math.gcd(denom, x.denominator)
    scaled = [
        [int(m[i, j] * denom) for j in range(n)] for i in range(n)
    ]
    ints = _charpoly_int(scaled)
    if denom == 1:
        return ExactPolynomial(ints)
    # char_M(x) = denom^-n * char_{denom*M}(denom * x)
    return ExactPolynomial(
        [Fraction(c, denom ** (n - k)) for k, c in enumerate(ints)]
    )


# ---------------------------------------------------------------------------
# rational-coefficient operations built on the integer kernels
# ---------------------------------------------------------------------------


def _clear_denominators(p: ExactPolynomial) -> tuple[list[int], Fraction]:
    """Write p = c * P with P primitive integer, positive leading coeff."""
    if p.is_zero():
        return [], Fraction(0)
    denom = 1
    for c in p.coeffs:
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    ints = [int(c * denom) for c in p.coeffs]
    g = _int_content(ints)
    if ints[-1] < 0:
        g = -g
    ints = [c // g for c in ints]
    return ints, Fraction(g, denom)


def squarefree_part(p: ExactPolynomial) -> ExactPolynomial:
    """Monic product of the distinct irreducible factors of p."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree == 0:
        return ExactPolynomial.one()
    ints, _ = _clear_denominators(p)
    g = _int_gcd(ints, _int_derivative(ints))
    if len(g) == 1:
        q = ints
    else:
        q = _int_exact_div(ints, g)
    lead = q[-1]
    if lead == 1:
        return ExactPolynomial(q)
    return ExactPolynomial([Fraction(c, lead) for c in q])


def discriminant(p: ExactPolynomial) -> Fraction:
    """disc(p) = (-1)^(m(m-1)/2) Res(p, p') / lc(p), zero iff p has a repeated root."""
    m = p.degree
    if m < 1:
        raise ValueError("discriminant needs degree >= 1")
    if m == 1:
        return Fraction(1)
    ints, c = _clear_denominators(p)
    res = Fraction(_int_resultant(ints, _int_derivative(ints)))
    res *= c ** (2 * m - 2)
    res /= ints[-1]
    return -res if (m * (m - 1) // 2) % 2 == 1 else res


def poly_gcd(p: ExactPolynomial, q: ExactPolynomial) -> ExactPolynomial:
    """Monic gcd over the rationals (zero if both inputs are zero)."""
    if p.is_zero() and q.is_zero():
        return ExactPolynomial.zero()
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    a, _ = _clear_denominators(p)
    b, _ = _clear_denominators(q)
    g = _int_gcd(a, b)
    return ExactPolynomial(g).monic()


def inverse_mod(a: ExactPolynomial, m: ExactPolynomial) -> ExactPolynomial:
    """Inverse of a in Q[y]/(m) by the extended Euclidean algorithm."""
    if m.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    r0, s0 = m, ExactPolynomial.zero()
    r1, s1 = a % m, ExactPolynomial.one()
    if r1.is_zero():
        raise NonInvertibleError("zero is not invertible")
    # keep every remainder monic so coefficient growth stays tame
    lead = r1.leading
    if lead != 1:
        r1 = r1.monic()
        s1 = s1 * (1 / lead)
    while not r1.is_zero() and r1.degree > 0:
        q, r2 = divmod(r0, r1)
        s2 = s0 - q * s1
        if not r2.is_zero():
            lead = r2.leading
            if lead != 1:
                r2 = r2.monic()
                s2 = s2 * (1 / lead)
        r0, s0 = r1, s1
        r1, s1 = r2, s2
    if r1.is_zero():
        raise NonInvertibleError(
            f"gcd with the modulus has degree {r0.degree}"
        )
    # r1 is the constant 1 after normalization
    return s1 % m


def power_sums(p: ExactPolynomial, upto: int) -> list[Fraction]:
    """Power sums p_0..p_upto of the roots of monic p, with multiplicity.

    Newton's identities; no root is ever computed.
    """
    if not p.is_monic() or p.degree < 1:
        raise ValueError("power sums need a monic polynomial of degree >= 1")
    if upto < 0:
        raise ValueError("upto must be >= 0")
    m = p.degree
    c = p.coeffs
    sums = [Fraction(0)] * (upto + 1)
    sums[0] = Fraction(m)
    for k in range(1, upto + 1):
        if k <= m:
            acc = k * c[m - k]
            for i in range(1, k):
                acc += c[m - i] * sums[k - i]
        else:
            acc = Fraction(0)
            for i in range(1, m + 1):
                acc += c[m - i] * sums[k - i]
        sums[k] = -acc
    return sums


def trace_mod(h: ExactPolynomial, psi: ExactPolynomial) -> Fraction:
    """Sum of h over the roots of psi: sum_j h_j p_j with p the power sums.

    psi must be monic and squarefree with deg(h) < deg(psi); together with
    linearity this evaluates sum_r h(theta_r) without touching any root.
    """
    if not psi.is_monic() or psi.degree < 1:
        raise ValueError("trace needs a monic modulus of degree >= 1")
    if h.degree >= psi.degree:
        raise ValueError("polynomial degree must be below the modulus degree")
    if h.is_zero():
        return Fraction(0)
    sums = power_sums(psi, h.degree)
    return sum(
        (c * sums[j] for j, c in enumerate(h.coeffs)), Fraction(0)
    )


def resolvent_coeffs(
    m: ExactMatrix, psi: ExactPolynomial
) -> ResolventCoefficients:
    """Coefficients B_j of Phi(M, y) = (psi(M) - psi(y.I))/(M - y.I), as matrices.

    Horner recurrence: B_{m-1} = I and B_{j-1} = M B_j + c_j I, where c_j are
    the coefficients of psi.  The final step reconstructs psi(M), which must
    vanish; otherwise psi does not annihilate M and the call fails.
    """
    if not m.is_square:
        raise ValueError("resolvent coefficients need a square matrix")
    if not psi.is_monic() or psi.degree < 1:
        raise ValueError("psi must be monic of degree >= 1")
    deg = psi.degree
    ident = ExactMatrix.identity(m.nrows)
    mats = [ident]
    current = ident
    for j in range(deg - 1, 0, -1):
        current = m * current + ident * psi.coeff(j)
        mats.append(current)
    check = m * current + ident * psi.coeff(0)
    if not check.is_zero():
        raise NotAnnihilatingError("psi(M) != 0")
    mats.reverse()
    return ResolventCoefficients(tuple(mats))


def compose_mod(
    g: ExactPolynomial, u: ExactPolynomial, psi: ExactPolynomial
) -> ExactPolynomial:
    """g(u(y)) reduced mod psi, by Horner with reduction at every step."""
    acc = ExactPolynomial.zero()
    for c in reversed(g.coeffs):
        acc = (acc * u + ExactPolynomial.constant(c)) % psi
    return acc


def lcm_int(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def matrix_in_span(target: ExactMatrix, basis: Sequence[ExactMatrix]) -> bool:
    """Exact consistency of sum_i x_i B_i = T by Gaussian elimination."""
    rows = [
        [b[i, j] for b in basis] + [target[i, j]]
        for i in range(target.nrows)
        for j in range(target.ncols)
    ]
    cols = len(basis)
    pivot = 0
    for col in range(cols):
        hit = next(
            (r for r in range(pivot, len(rows)) if rows[r][col] != 0), None
        )
        if hit is None:
            continue
        rows[pivot], rows[hit] = rows[hit], rows[pivot]
        lead = rows[pivot][col]
        for r in range(len(rows)):
            if r != pivot and rows[r][col] != 0:
                factor = rows[r][col] / lead
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot])]
        pivot += 1
    return all(row[-1] == 0 for row in rows[pivot:])
