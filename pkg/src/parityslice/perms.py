"""Permutations in one-line notation, with validity as first-class data.

The indexing permutation of the Schubert variety is printed as a nine-case
formula on {1..q(l+2)}; as printed it is not a bijection (the value 1 is
claimed twice and the value q never), so words here carry their exact
duplicate/missing witnesses instead of raising.  A minimal one-case repair
(q+1-j -> q+2-j on 2 <= j <= q) restores bijectivity and can be requested
explicitly; it is always labeled as a repair, never as the original
definition.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .exact import Scalar

if TYPE_CHECKING:
    from .pairing import SliceParams

Y_VARIANTS = ("verbatim", "case2")


@dataclass(frozen=True)
class PermutationWord:
    """One-line notation for a map {1..n} -> {1..n}, bijective or not.

    >>> PermutationWord(3, (2, 3, 1)).is_valid
    True
    >>> bad = PermutationWord(3, (1, 1, 2))
    >>> bad.is_valid, bad.duplicates, bad.missing
    (False, (1,), (3,))
    """

    n: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if len(self.images) != self.n:
            raise ValueError(f"expected {self.n} images, got {len(self.images)}")

    def apply(self, j: int) -> int:
        """Image of j under 1-indexed semantics."""
        if not 1 <= j <= self.n:
            raise ValueError(f"argument {j} outside 1..{self.n}")
        return self.images[j - 1]

    @functools.cached_property
    def _counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for v in self.images:
            counts[v] = counts.get(v, 0) + 1
        return counts

    @property
    def duplicates(self) -> tuple[int, ...]:
        """Values attained at least twice, sorted."""
        return tuple(sorted(v for v, c in self._counts.items() if c >= 2))

    @property
    def missing(self) -> tuple[int, ...]:
        """Values in 1..n never attained, sorted."""
        return tuple(sorted(v for v in range(1, self.n + 1) if v not in self._counts))

    @property
    def is_valid(self) -> bool:
        return sorted(self.images) == list(range(1, self.n + 1))

    def validity(self) -> dict:
        if self.is_valid:
            return {"valid": True}
        return {
            "valid": False,
            "duplicates": list(self.duplicates),
            "missing": list(self.missing),
        }


def schubert_permutation(params: "SliceParams", variant: str = "verbatim") -> PermutationWord:
    """The nine-case indexing permutation of S_{q(l+2)}, case by case.

    ``variant="verbatim"`` evaluates the cases exactly as printed (the result
    is not a bijection: 1 is hit at j=q and j=(l+1)q, and q is never hit).
    ``variant="case2"`` substitutes q+2-j on 2 <= j <= q only, the minimal
    change restoring bijectivity; it is a configuration convenience, not a
    claim about the intended definition.
    """
    if variant not in Y_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}, expected one of {Y_VARIANTS}")
    q, l, n = params.q, params.l, params.N
    images = []
    for j in range(1, n + 1):
        if j == 1:
            v = (l + 1) * q
        elif 2 <= j <= q:
            v = q + 1 - j if variant == "verbatim" else q + 2 - j
        elif j == q + 1:
            v = (l + 2) * q
        elif q + 2 <= j < (l + 1) * q:
            if j % q == 0:
                v = (l + 2) * q - j
            elif j % q == 1:
                v = (l + 2) * q + 2 - j
            else:
                v = (l + 2) * q + 1 - j
        elif j == (l + 1) * q:
            v = 1
        elif (l + 1) * q < j < (l + 2) * q:
            v = (2 * l + 3) * q - j
        else:  # j == (l + 2) * q
            v = q + 1
        images.append(v)
    return PermutationWord(n, tuple(images))


def block_antidiagonal_permutation(params: "SliceParams") -> PermutationWord:
    """The base point of the slice: an (l+2) x (l+2) block permutation whose
    nonzero blocks are all the q x q antidiagonal J.

    Block row 1 maps to block column 1, block rows 2..l+1 map to columns
    l+1 down to 2, and block row l+2 maps to column l+2; inside each block
    position i goes to q+1-i.  The matrix convention is entry (i, sigma(i)) = 1.

    >>> from parityslice.pairing import derive_dims
    >>> block_antidiagonal_permutation(derive_dims(3, 1, 3)).images
    (3, 2, 1, 12, 11, 10, 9, 8, 7, 6, 5, 4, 15, 14, 13)
    """
    q, l = params.q, params.l
    images = []
    for block_row in range(1, l + 3):
        if block_row == 1:
            block_col = 1
        elif block_row <= l + 1:
            block_col = l + 3 - block_row
        else:
            block_col = l + 2
        base = (block_col - 1) * q
        images.extend(base + (q + 1 - i) for i in range(1, q + 1))
    return PermutationWord(params.N, tuple(images))


def coxeter_length(word: PermutationWord) -> int:
    """Number of inversions #{i < j : w(i) > w(j)}.

    >>> coxeter_length(PermutationWord(3, (3, 2, 1)))
    3
    """
    if not word.is_valid:
        raise ValueError("length is only defined for valid permutations")
    images = word.images
    return sum(
        1
        for i in range(len(images))
        for j in range(i + 1, len(images))
        if images[i] > images[j]
    )


def _dominance_table(word: PermutationWord) -> list[list[int]]:
    """table[i][j] = #{k <= i : w(k) <= j}, 1-indexed with a zero border."""
    n = word.n
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        row, prev = table[i], table[i - 1]
        v = word.images[i - 1]
        for j in range(1, n + 1):
            row[j] = prev[j] + (1 if v <= j else 0)
    return table


def bruhat_leq(u: PermutationWord, w: PermutationWord) -> bool:
    """Bruhat order via the dominance criterion:

    u <= w iff #{k <= i : u(k) <= j} >= #{k <= i : w(k) <= j} for all i, j.

    >>> from parityslice.pairing import derive_dims
    >>> params = derive_dims(3, 1, 3)
    >>> e = PermutationWord(15, tuple(range(1, 16)))
    >>> bruhat_leq(e, block_antidiagonal_permutation(params))
    True
    """
    if not (u.is_valid and w.is_valid):
        raise ValueError("Bruhat comparison needs valid permutations")
    if u.n != w.n:
        raise ValueError(f"size mismatch: {u.n} vs {w.n}")
    tu = _dominance_table(u)
    tw = _dominance_table(w)
    return all(
        tu[i][j] >= tw[i][j] for i in range(1, u.n + 1) for j in range(1, u.n + 1)
    )


Matrix = tuple[tuple[Scalar, ...], ...]


def antidiagonal(q: int) -> Matrix:
    """The q x q antidiagonal permutation matrix J."""
    return tuple(
        tuple(1 if c == q - 1 - r else 0 for c in range(q)) for r in range(q)
    )


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in zip(*b)) for row in a
    )


@dataclass(frozen=True)
class SlicePoint:
    """A point of the slice: matrices A_1..A_l and B_1..B_l, all q x q."""

    a_blocks: tuple[Matrix, ...]
    b_blocks: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        if len(self.a_blocks) != len(self.b_blocks):
            raise ValueError("need as many A blocks as B blocks")


@dataclass(frozen=True)
class MembershipResult:
    is_member: bool
    residuals: tuple[Matrix, ...]


def slice_membership(point: SlicePoint, q: int) -> MembershipResult:
    """Check the defining equations B_i J A_i = 0 of the slice.

    Returns the verdict together with every product B_i J A_i so a failing
    index can be diagnosed directly.
    """
    j_matrix = antidiagonal(q)
    residuals = []
    for a, b in zip(point.a_blocks, point.b_blocks):
        for block in (a, b):
            if len(block) != q or any(len(row) != q for row in block):
                raise ValueError(f"blocks must be {q} x {q}")
        residuals.append(_matmul(_matmul(b, j_matrix), a))
    is_member = all(
        all(x == 0 for row in res for x in row) for res in residuals
    )
    return MembershipResult(is_member, tuple(residuals))
