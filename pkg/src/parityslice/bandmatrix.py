"""The banded binomial matrix and its exact rank over Q and over F_p.

The collapsed intersection form is the (q-l+1) x (q-1) matrix M with entry
(i, j) = binom(l, j-i+1): each row is a contiguous band of the coefficients
of (1+x)^l, the first row losing its constant term and the last row losing
its x^q term.  The rank claim verified here is

    rank M = q - l + 1 over the rationals,  q - l over F_p  (q = p^d),

with the modular drop witnessed by the explicit vector c_i = binom(q-l, i):
since (1+x)^{q-l} (1+x)^l = (1+x)^q = 1 + x^q mod p, the combination
sum_i c_i x^i (1+x)^l cancels both row corrections.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import (
    CoefficientField,
    LabeledMatrix,
    RATIONALS,
    UniPoly,
    binom,
    is_prime,
    left_kernel,
    poly_divrem,
    prime_field,
    rank,
)


def _check_band_params(q: int, l: int) -> None:
    if not q >= l >= 3:
        raise ValueError(f"need q >= l >= 3, got q={q}, l={l}")


def binomial_band_matrix(q: int, l: int) -> LabeledMatrix:
    """The (q-l+1) x (q-1) integer matrix with entry (i, j) = binom(l, j-i+1).

    Rows are labeled by the w-power i of the collapsed pairing; columns carry
    the reversed w-powers q-2..0 so that the band marches rightward.

    >>> binomial_band_matrix(4, 3).entries
    ((3, 3, 1), (1, 3, 3))
    """
    _check_band_params(q, l)
    entries = tuple(
        tuple(binom(l, j - i + 1) for j in range(q - 1)) for i in range(q - l + 1)
    )
    row_labels = tuple(range(q - l + 1))
    col_labels = tuple(range(q - 2, -1, -1))
    return LabeledMatrix(entries, row_labels, col_labels, RATIONALS)


def row_polynomials(q: int, l: int) -> list[UniPoly]:
    """The q-l+1 polynomials whose x^{j+1} coefficients are the matrix rows.

    Row 0 is (1+x)^l - 1, middle row i is x^i (1+x)^l, and the last row drops
    its x^q term; when q = l the single row carries both corrections.
    """
    _check_band_params(q, l)
    one = UniPoly.constant(1)
    base = (one + UniPoly.x_power(1)) ** l
    x_q = UniPoly.x_power(q)
    rows = []
    for i in range(q - l + 1):
        poly = UniPoly.x_power(i) * base if i else base - one
        if i == q - l:
            poly = poly - x_q
        rows.append(poly)
    return rows


@dataclass(frozen=True)
class LemmaRecord:
    """Computed vs predicted ranks of the banded binomial matrix.

    ``stated_fp_lower_bound`` is the weaker bound q-l-2 asserted in the
    source argument; the computation pins the exact value q-l.
    """

    q: int
    l: int
    p: int
    rank_q: int
    rank_fp: int
    expected_q: int
    expected_fp: int
    passed: bool
    stated_fp_lower_bound: int


def _is_prime_power_of(q: int, p: int) -> bool:
    if q < p:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def verify_rank_lemma(q: int, l: int, p: int) -> LemmaRecord:
    """Compute both ranks of the banded binomial matrix and compare them to
    the predicted values q-l+1 (rationals) and q-l (F_p); needs q = p^d."""
    _check_band_params(q, l)
    if not is_prime(p):
        raise ValueError(f"p is not prime: p={p}")
    if not _is_prime_power_of(q, p):
        raise ValueError(f"q is not a power of p: q={q}, p={p}")
    matrix = binomial_band_matrix(q, l)
    rank_q = rank(matrix)
    rank_fp = rank(matrix.with_field(prime_field(p)))
    expected_q = q - l + 1
    expected_fp = q - l
    return LemmaRecord(
        q=q, l=l, p=p,
        rank_q=rank_q, rank_fp=rank_fp,
        expected_q=expected_q, expected_fp=expected_fp,
        passed=(rank_q == expected_q and rank_fp == expected_fp),
        stated_fp_lower_bound=q - l - 2,
    )


def dependence_search(
    q: int, l: int, field: CoefficientField
) -> tuple[int, int, UniPoly] | None:
    """Search for constants (A, B) != 0 with (1+x)^l dividing A + B x^q.

    Reduces 1 and x^q modulo (1+x)^l and solves the two-unknown linear
    system on the remainders.  Over the rationals there is no solution (the
    candidate A + B x^q has distinct roots); over F_p with q = p^d the
    normalized solution is (1, 1) with cofactor (1+x)^{q-l}.
    """
    if not q >= l >= 2:
        raise ValueError(f"need q >= l >= 2, got q={q}, l={l}")
    one = UniPoly.constant(1, field)
    divisor = (one + UniPoly.x_power(1, field)) ** l
    _, rem_one = poly_divrem(one, divisor)
    _, rem_xq = poly_divrem(UniPoly.x_power(q, field), divisor)
    remainders = LabeledMatrix(
        (
            tuple(rem_one.coefficient(i) for i in range(l)),
            tuple(rem_xq.coefficient(i) for i in range(l)),
        ),
        ("A", "B"),
        tuple(range(l)),
        field,
    )
    kernel = left_kernel(remainders)
    if not kernel:
        return None
    a, b = kernel[0]
    combination = UniPoly.constant(a, field) + UniPoly.x_power(q, field).scale(b)
    cofactor, residue = poly_divrem(combination, divisor)
    assert residue.is_zero, "kernel vector does not give a divisible combination"
    return a, b, cofactor


def kernel_witness(q: int, l: int, p: int) -> tuple[int, ...]:
    """The vector c with c_i = binom(q-l, i), annihilating the matrix mod p.

    Comes from sum_i c_i x^i (1+x)^l = (1+x)^q = 1 + x^q over F_p, which
    cancels the corrections on the first and last rows; for q = l it
    degenerates to the scalar relation (1,) on the single vanishing row.
    """
    _check_band_params(q, l)
    if not is_prime(p):
        raise ValueError(f"p is not prime: p={p}")
    if not _is_prime_power_of(q, p):
        raise ValueError(f"q is not a power of p: q={q}, p={p}")
    return tuple(binom(q - l, i) for i in range(q - l + 1))
