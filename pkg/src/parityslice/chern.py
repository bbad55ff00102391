"""Chern/Euler class calculus on products of projective spaces.

A vector bundle enters only through its total Chern class, a list of
homogeneous classes in a truncated cohomology ring.  The two operations that
matter downstream are the Euler class of a bundle twisted by a line bundle
and the Euler class of the full resolution bundle, a product of 2l factors:
a line-bundle factor a_i + w and a twisted dual-quotient factor
sum_{j=0}^{q-1} a_i^j z^{q-1-j} for each index i.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .exact import CoefficientField
from .truncring import RingSpec, TruncatedPoly, inverse_unit, make_ring, multiply

if TYPE_CHECKING:
    from .pairing import SliceParams


@dataclass(frozen=True)
class BundleSpec:
    """A vector bundle described by its total Chern class.

    ``chern[i]`` is c_i, homogeneous of degree i (or zero); c_0 = 1 and the
    list has length rank + 1.
    """

    rank: int
    chern: tuple[TruncatedPoly, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "chern", tuple(self.chern))
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if len(self.chern) != self.rank + 1:
            raise ValueError(
                f"need rank+1 = {self.rank + 1} Chern classes, got {len(self.chern)}"
            )
        ring = self.chern[0].ring
        if self.chern[0] != ring.one():
            raise ValueError("c_0 must be 1")
        for i, c in enumerate(self.chern):
            if c.ring != ring:
                raise ValueError("Chern classes live in different rings")
            if not c.is_zero and c.homogeneous_degree() != i:
                raise ValueError(f"c_{i} is not homogeneous of degree {i}")

    @property
    def ring(self) -> RingSpec:
        return self.chern[0].ring


def _check_degree_one(c1: TruncatedPoly) -> None:
    if not c1.is_zero and c1.homogeneous_degree() != 1:
        raise ValueError("first Chern class of a line bundle must be homogeneous of degree 1")


def twist_euler(bundle: BundleSpec, c1_line: TruncatedPoly) -> TruncatedPoly:
    """Euler class of bundle (x) L: sum_{i=0}^{n} c_i * c_1(L)^{n-i}."""
    _check_degree_one(c1_line)
    n = bundle.rank
    out = bundle.ring.zero()
    for i, c in enumerate(bundle.chern):
        out = out + c * c1_line ** (n - i)
    return out


def quotient_dual_chern(ring: RingSpec, var: str) -> BundleSpec:
    """The dual quotient bundle on the projective-space factor of ``var``.

    The tautological sequence forces c(L) * c(T/L) = 1 with c(L) = 1 - var,
    so the total Chern class is the inverse unit of 1 - var: c_j = var^j for
    0 <= j <= q-1, a bundle of rank q-1 where q is the truncation of var.
    """
    idx = ring.index(var)
    q = ring.truncations[idx]
    total = inverse_unit(ring.one() - ring.gen(var))
    chern = []
    for j in range(q):
        exps = [0] * ring.nvars
        exps[idx] = j
        chern.append(ring.monomial(exps, total.coefficient(exps)))
    reassembled = functools.reduce(lambda f, g: f + g, chern, ring.zero())
    assert reassembled == total, "graded pieces do not reassemble to the inverse unit"
    return BundleSpec(q - 1, tuple(chern))


def split_bundle(roots: Sequence[TruncatedPoly]) -> BundleSpec:
    """Bundle with the given Chern roots: c_i = elementary symmetric e_i(roots)."""
    if not roots:
        raise ValueError("need at least one root (use a rank-0 bundle directly otherwise)")
    ring = roots[0].ring
    for r in roots:
        _check_degree_one(r)
        if r.ring != ring:
            raise ValueError("roots live in different rings")
    # e_i via the running product prod_k (1 + roots[k] t), one factor at a time.
    elementary: list[TruncatedPoly] = [ring.one()]
    for r in roots:
        nxt = elementary + [ring.zero()]
        for i in range(len(elementary), 0, -1):
            nxt[i] = nxt[i] + elementary[i - 1] * r
        elementary = nxt
    return BundleSpec(len(roots), tuple(elementary))


def splitting_oracle(
    roots: Sequence[TruncatedPoly], c1_line: TruncatedPoly
) -> TruncatedPoly:
    """Euler class of (sum of line bundles) (x) L by direct product expansion:
    prod_k (root_k + c_1(L))."""
    _check_degree_one(c1_line)
    out = c1_line.ring.one()
    for r in roots:
        _check_degree_one(r)
        out = out * (r + c1_line)
    return out


def cohomology_ring(params: "SliceParams", field: CoefficientField | None = None) -> RingSpec:
    """The truncated cohomology ring of Z = (P^{q-1})^{l+2}: variables
    w, a_1..a_l, z, all truncated at q."""
    q, l = params.q, params.l
    names = ["w"] + [f"a{i}" for i in range(1, l + 1)] + ["z"]
    return make_ring([(n, q) for n in names], field)


def _check_canonical_ring(params: "SliceParams", ring: RingSpec) -> None:
    expected = cohomology_ring(params, ring.field)
    if ring.variables != expected.variables:
        raise ValueError(
            f"ring {ring} does not match the canonical ring {expected} for (p,d,l)="
            f"({params.p},{params.d},{params.l})"
        )


def euler_factors(params: "SliceParams", ring: RingSpec) -> list[TruncatedPoly]:
    """The 2l Euler-class factors of the resolution bundle: for each i the
    line-bundle class a_i + w and the twisted dual-quotient class
    sum_{j=0}^{q-1} a_i^j z^{q-1-j}."""
    _check_canonical_ring(params, ring)
    w = ring.gen("w")
    z = ring.gen("z")
    factors = []
    for i in range(1, params.l + 1):
        a = ring.gen(f"a{i}")
        factors.append(a + w)
        factors.append(twist_euler(quotient_dual_chern(ring, f"a{i}"), z))
    return factors


def resolution_euler_class(params: "SliceParams", ring: RingSpec) -> TruncatedPoly:
    """Euler class of the resolution bundle:
    prod_{i=1}^{l} (a_i + w) * (sum_{j=0}^{q-1} a_i^j z^{q-1-j})."""
    return functools.reduce(multiply, euler_factors(params, ring), ring.one())
