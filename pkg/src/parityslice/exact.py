"""Exact coefficient fields, labeled dense matrices, and univariate polynomials.

Everything here is exact: the rationals use ``fractions.Fraction``, prime
fields reduce modulo a verified prime, and rank computations over the
rationals run fraction-free (Bareiss) elimination so intermediate values
stay integral.  Matrices are small and dense by design; there is no
floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Scalar = int | Fraction


def is_prime(n: int) -> bool:
    """Trial-division primality test (inputs here are small)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CoefficientField:
    """The rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    def convert(self, x: Scalar) -> Scalar:
        """Canonical representative of ``x`` in this field."""
        if self.p is None:
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def inverse(self, x: Scalar) -> Scalar:
        if self.p is None:
            return Fraction(1) / x
        return pow(int(x), -1, self.p)

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F_{self.p}"


RATIONALS = CoefficientField()


def prime_field(p: int) -> CoefficientField:
    return CoefficientField(p)


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), with value 0 outside 0 <= k <= n.

    >>> binom(3, 1), binom(3, 2), binom(5, -1), binom(4, 7)
    (3, 3, 0, 0)
    """
    if n < 0:
        raise ValueError(f"binom requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class LabeledMatrix:
    """Dense matrix over an exact field whose rows and columns carry labels.

    Labels are opaque to this module (callers use monomial exponent vectors
    or w-power integers).  Entries are converted to canonical field form at
    construction, so a matrix over F_p always stores reduced residues.
    """

    entries: tuple[tuple[Scalar, ...], ...]
    row_labels: tuple
    col_labels: tuple
    field: CoefficientField

    def __post_init__(self) -> None:
        rows = tuple(tuple(self.field.convert(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))
        if len(self.row_labels) != len(rows):
            raise ValueError("row label count does not match row count")
        ncols = len(self.col_labels)
        if any(len(row) != ncols for row in rows):
            raise ValueError("column label count does not match a row length")

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.col_labels)

    def with_field(self, field: CoefficientField) -> "LabeledMatrix":
        """The same matrix with entries mapped into ``field``."""
        return LabeledMatrix(self.entries, self.row_labels, self.col_labels, field)

    def transpose(self) -> "LabeledMatrix":
        cols = tuple(zip(*self.entries)) if self.entries else ()
        return LabeledMatrix(cols, self.col_labels, self.row_labels, self.field)


def _clear_denominators(row: Sequence[Scalar]) -> list[int]:
    lcm = 1
    for x in row:
        if isinstance(x, Fraction):
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return [int(x * lcm) for x in row]


def _rank_bareiss(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    Every intermediate entry is a minor of the input (up to sign), so the
    divisions are exact and coefficient growth is bounded by determinants.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank_ = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank_, nrows) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank_], rows[piv] = rows[piv], rows[rank_]
        pivot = rows[rank_][col]
        for r in range(rank_ + 1, nrows):
            factor = rows[r][col]
            for c in range(col + 1, ncols):
                rows[r][c] = (pivot * rows[r][c] - factor * rows[rank_][c]) // prev
            rows[r][col] = 0
        prev = pivot
        rank_ += 1
        if rank_ == nrows:
            break
    return rank_


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank_ = 0
    for col in range(ncols):
        piv = next((r for r in range(rank_, nrows) if rows[r][col] % p != 0), None)
        if piv is None:
            continue
        rows[rank_], rows[piv] = rows[piv], rows[rank_]
        inv = pow(rows[rank_][col], -1, p)
        rows[rank_] = [x * inv % p for x in rows[rank_]]
        for r in range(rank_ + 1, nrows):
            factor = rows[r][col]
            if factor:
                rows[r] = [(a - factor * b) % p for a, b in zip(rows[r], rows[rank_])]
        rank_ += 1
        if rank_ == nrows:
            break
    return rank_


def rank(matrix: LabeledMatrix) -> int:
    """Exact rank of ``matrix`` over its coefficient field."""
    if matrix.field.is_rationals:
        rows = [_clear_denominators(row) for row in matrix.entries]
        return _rank_bareiss(rows)
    rows = [[int(x) for x in row] for row in matrix.entries]
    return _rank_mod_p(rows, matrix.field.p)


def _rref(rows: list[list[Scalar]], field: CoefficientField) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inverse(rows[r][col])
        rows[r] = [field.convert(x * inv) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [field.convert(a - factor * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def _normalize_leading(vec: list[Scalar], field: CoefficientField) -> tuple[Scalar, ...]:
    lead = next((x for x in vec if x != 0), None)
    if lead is None or lead == 1:
        return tuple(vec)
    inv = field.inverse(lead)
    return tuple(field.convert(x * inv) for x in vec)


def left_kernel(matrix: LabeledMatrix) -> list[tuple[Scalar, ...]]:
    """Basis of {v : v . matrix = 0}, each vector scaled so its first
    nonzero coordinate is 1.  Dimension equals nrows - rank."""
    field = matrix.field
    # v . M = 0 is the right kernel of the transpose.
    rows = [list(row) for row in matrix.transpose().entries]
    n = matrix.nrows
    if not rows:
        # No constraints: the kernel is everything.
        basis = []
        for i in range(n):
            vec = [0] * n
            vec[i] = 1
            basis.append(tuple(vec))
        return basis
    rref_rows, pivots = _rref(rows, field)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec: list[Scalar] = [0] * n
        vec[free] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = field.convert(-rref_rows[r][free])
        basis.append(_normalize_leading(vec, field))
    return basis


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial; coefficient index = degree.

    The zero polynomial has an empty coefficient tuple; otherwise the
    trailing coefficient is nonzero.
    """

    coeffs: tuple[Scalar, ...]
    field: CoefficientField = RATIONALS

    def __post_init__(self) -> None:
        cs = [self.field.convert(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls, field: CoefficientField = RATIONALS) -> "UniPoly":
        return cls((), field)

    @classmethod
    def constant(cls, c: Scalar, field: CoefficientField = RATIONALS) -> "UniPoly":
        return cls((c,), field)

    @classmethod
    def x_power(cls, n: int, field: CoefficientField = RATIONALS) -> "UniPoly":
        return cls((0,) * n + (1,), field)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with the convention deg(0) = -1."""
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> Scalar:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def _check_field(self, other: "UniPoly") -> None:
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check_field(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            tuple(self.coefficient(i) + other.coefficient(i) for i in range(n)),
            self.field,
        )

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs), self.field)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._check_field(other)
        if self.is_zero or other.is_zero:
            return UniPoly.zero(self.field)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(tuple(out), self.field)

    def scale(self, c: Scalar) -> "UniPoly":
        return UniPoly(tuple(c * a for a in self.coeffs), self.field)

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly.constant(1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                x = "x" if i == 1 else f"x^{i}"
                parts.append(x if c == 1 else f"{c}*{x}")
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += " - " + part[1:]
            else:
                out += " + " + part
        return out


def poly_divrem(f: UniPoly, g: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Quotient and remainder with f = q*g + r and deg r < deg g."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    f._check_field(g)
    field = f.field
    lead_inv = field.inverse(g.coeffs[-1])
    rem = list(f.coeffs)
    dg = g.degree
    if f.degree < dg:
        return UniPoly.zero(field), f
    quo = [0] * (f.degree - dg + 1)
    for i in range(f.degree - dg, -1, -1):
        c = field.convert(rem[i + dg] * lead_inv)
        quo[i] = c
        if c != 0:
            for j, b in enumerate(g.coeffs):
                rem[i + j] = field.convert(rem[i + j] - c * b)
    return UniPoly(tuple(quo), field), UniPoly(tuple(rem[:dg]), field)
