"""Graded truncated polynomial rings k[x_1..x_m]/(x_1^{t_1}, ..., x_m^{t_m}).

These model the cohomology ring of a product of projective spaces: each
variable has polynomial degree 1 (cohomological degree 2, doubled only when
reports are printed) and dies at its truncation order.  Coefficients are
integers by default; a ring may instead be declared over the rationals or a
prime field.

>>> ring = make_ring([("a", 3)])
>>> a = ring.gen("a")
>>> print((ring.one() - a) * (ring.one() + a + a * a))
1
>>> print(inverse_unit(ring.one() - a))
1 + a + a^2
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import CoefficientField, Scalar


@dataclass(frozen=True)
class RingSpec:
    """A truncated polynomial ring with a fixed variable order.

    ``field`` is ``None`` for integer coefficients, otherwise the rationals
    or a prime field.
    """

    variables: tuple[tuple[str, int], ...]
    field: CoefficientField | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple((str(n), int(t)) for n, t in self.variables))
        names = [n for n, _ in self.variables]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name, t in self.variables:
            if t < 1:
                raise ValueError(f"truncation order of {name} must be >= 1, got {t}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.variables)

    @property
    def truncations(self) -> tuple[int, ...]:
        return tuple(t for _, t in self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def top_exponents(self) -> tuple[int, ...]:
        """Exponent vector of the top monomial prod x_i^{t_i - 1}."""
        return tuple(t - 1 for t in self.truncations)

    @property
    def max_degree(self) -> int:
        return sum(t - 1 for t in self.truncations)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r} in {self}") from None

    def _reduce(self, c: Scalar) -> Scalar:
        if self.field is None:
            return c
        return self.field.convert(c)

    def _check_unit(self, c: Scalar) -> Scalar:
        """Inverse of ``c`` in the coefficient domain, or raise."""
        if self.field is None:
            if c not in (1, -1):
                raise ValueError(f"{c} is not invertible over the integers")
            return c
        if self._reduce(c) == 0:
            raise ValueError(f"{c} is not invertible in {self.field}")
        return self.field.inverse(c)

    def zero(self) -> "TruncatedPoly":
        return TruncatedPoly(self, {})

    def one(self) -> "TruncatedPoly":
        return self.monomial((0,) * self.nvars)

    def gen(self, name: str) -> "TruncatedPoly":
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return self.monomial(tuple(exps))

    def monomial(self, exps: Sequence[int], coeff: Scalar = 1) -> "TruncatedPoly":
        """The term coeff * x^exps, truncated (possibly to zero)."""
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        coeff = self._reduce(coeff)
        if coeff == 0 or any(e >= t for e, t in zip(exps, self.truncations)):
            return TruncatedPoly(self, {})
        return TruncatedPoly(self, {exps: coeff})

    def from_terms(self, terms: Mapping[tuple[int, ...], Scalar]) -> "TruncatedPoly":
        out = self.zero()
        for exps, coeff in terms.items():
            out = out + self.monomial(exps, coeff)
        return out

    def __str__(self) -> str:
        coeff = "Z" if self.field is None else str(self.field)
        vars_ = ",".join(self.names)
        ideal = ",".join(f"{n}^{t}" for n, t in self.variables)
        return f"{coeff}[{vars_}]/({ideal})"


def make_ring(
    spec: Iterable[tuple[str, int]], field: CoefficientField | None = None
) -> RingSpec:
    """Build a ring from (name, truncation) pairs in the given order."""
    return RingSpec(tuple(spec), field)


def _term_sort_key(exps: tuple[int, ...]) -> tuple:
    # Graded order: by total degree, then earlier variables with larger
    # exponents first.  Gives "1 + a + a^2" and "w + z".
    return (sum(exps), tuple(-e for e in exps))


@dataclass(frozen=True, eq=False)
class TruncatedPoly:
    """Element of a truncated polynomial ring, as exponent vector -> coefficient.

    Instances are immutable by convention: every operation returns a new
    polynomial, no stored coefficient is zero, and every exponent is strictly
    below its truncation order.
    """

    ring: RingSpec
    terms: dict[tuple[int, ...], Scalar]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(exps), 0)

    @property
    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_degree(self) -> int | None:
        """Total degree if homogeneous and nonzero, else None for zero."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def _check_ring(self, other: "TruncatedPoly") -> None:
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "TruncatedPoly") -> "TruncatedPoly":
        self._check_ring(other)
        out = dict(self.terms)
        reduce = self.ring._reduce
        for exps, c in other.terms.items():
            v = reduce(out.get(exps, 0) + c)
            if v == 0:
                out.pop(exps, None)
            else:
                out[exps] = v
        return TruncatedPoly(self.ring, out)

    def __neg__(self) -> "TruncatedPoly":
        reduce = self.ring._reduce
        return TruncatedPoly(self.ring, {e: reduce(-c) for e, c in self.terms.items()})

    def __sub__(self, other: "TruncatedPoly") -> "TruncatedPoly":
        return self + (-other)

    def __mul__(self, other: "TruncatedPoly | Scalar") -> "TruncatedPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_ring(other)
        trunc = self.ring.truncations
        reduce = self.ring._reduce
        out: dict[tuple[int, ...], Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                if any(e >= t for e, t in zip(exps, trunc)):
                    continue
                v = reduce(out.get(exps, 0) + c1 * c2)
                if v == 0:
                    out.pop(exps, None)
                else:
                    out[exps] = v
        return TruncatedPoly(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "TruncatedPoly":
        c = self.ring._reduce(c)
        if c == 0:
            return self.ring.zero()
        reduce = self.ring._reduce
        out = {}
        for exps, a in self.terms.items():
            v = reduce(c * a)
            if v != 0:
                out[exps] = v
        return TruncatedPoly(self.ring, out)

    def __pow__(self, n: int) -> "TruncatedPoly":
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: _term_sort_key(kv[0]))

    def __str__(self) -> str:
        """Canonical text form: monomials sorted by degree then variable order."""
        if self.is_zero:
            return "0"
        names = self.ring.names
        parts = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            elif coeff == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{coeff}*" + "*".join(factors))
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += " - " + part[1:]
            else:
                out += " + " + part
        return out

    __repr__ = __str__


def multiply(f: TruncatedPoly, g: TruncatedPoly) -> TruncatedPoly:
    """Truncated product (the cup product in the cohomology model)."""
    return f * g


def monomial_basis(ring: RingSpec, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree below truncation,
    with earlier variables taking larger exponents first.

    >>> monomial_basis(make_ring([("w", 3), ("z", 3)]), 2)
    [(2, 0), (1, 1), (0, 2)]
    """
    if degree < 0:
        return []
    trunc = ring.truncations
    out: list[tuple[int, ...]] = []

    def rec(i: int, remaining: int, prefix: list[int]) -> None:
        if i == len(trunc):
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for e in range(min(remaining, trunc[i] - 1), -1, -1):
            prefix.append(e)
            rec(i + 1, remaining - e, prefix)
            prefix.pop()

    rec(0, degree, [])
    return out


def top_integral(f: TruncatedPoly) -> Scalar:
    """Coefficient of the top monomial prod x_i^{t_i - 1} (integration
    against the fundamental class)."""
    return f.coefficient(f.ring.top_exponents)


def inverse_unit(f: TruncatedPoly) -> TruncatedPoly:
    """The inverse of a unit: g with f*g = 1.

    Exists iff the constant term is invertible in the coefficient domain;
    the rest of f is nilpotent, so the truncated geometric series of
    1 - f/f_0 terminates.
    """
    c0 = f.constant_term
    u = f.ring._check_unit(c0)
    h = f.ring.one() - f.scale(u)
    result = f.ring.one()
    acc = f.ring.one()
    for _ in range(f.ring.max_degree):
        acc = acc * h
        if acc.is_zero:
            break
        result = result + acc
    return result.scale(u)
