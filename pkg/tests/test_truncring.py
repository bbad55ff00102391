import random
from fractions import Fraction

import pytest

from parityslice.exact import RATIONALS, prime_field
from parityslice.truncring import (
    inverse_unit,
    make_ring,
    monomial_basis,
    multiply,
    top_integral,
)


def random_poly(rng, ring, max_terms=4, lo=-3, hi=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(rng.randrange(t) for t in ring.truncations)
        terms[exps] = rng.randint(lo, hi)
    return ring.from_terms(terms)


def count_by_expansion(truncations, degree):
    """Oracle: coefficient of x^degree in prod_i (1 + x + ... + x^{t_i - 1})."""
    coeffs = [1]
    for t in truncations:
        block = [1] * t
        out = [0] * (len(coeffs) + t - 1)
        for i, a in enumerate(coeffs):
            for j, b in enumerate(block):
                out[i + j] += a * b
        coeffs = out
    return coeffs[degree] if degree < len(coeffs) else 0


class TestMakeRing:
    def test_five_variable_ring(self):
        ring = make_ring([("w", 3), ("a1", 3), ("a2", 3), ("a3", 3), ("z", 3)])
        assert ring.nvars == 5
        assert ring.names == ("w", "a1", "a2", "a3", "z")
        assert ring.truncations == (3, 3, 3, 3, 3)

    def test_truncation_one_kills_generator(self):
        ring = make_ring([("w", 1)])
        assert ring.gen("w").is_zero

    def test_ring_of_constants(self):
        ring = make_ring([])
        assert ring.one().constant_term == 1
        assert top_integral(ring.one()) == 1

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            make_ring([("a", 3), ("a", 2)])

    def test_zero_truncation_rejected(self):
        with pytest.raises(ValueError):
            make_ring([("a", 0)])


class TestMultiply:
    def test_truncation(self):
        ring = make_ring([("w", 3)])
        w = ring.gen("w")
        assert (w * w * w).is_zero

    def test_binomial_square(self):
        ring = make_ring([("a", 3), ("w", 3)])
        a, w = ring.gen("a"), ring.gen("w")
        square = (a + w) ** 2
        assert square == ring.from_terms({(2, 0): 1, (1, 1): 2, (0, 2): 1})

    def test_geometric_identity(self):
        ring = make_ring([("a", 3)])
        a, one = ring.gen("a"), ring.one()
        assert (one - a) * (one + a + a * a) == one

    def test_ring_mismatch_rejected(self):
        with pytest.raises(ValueError):
            multiply(make_ring([("a", 3)]).one(), make_ring([("b", 3)]).one())

    def test_ring_axioms(self):
        rng = random.Random(31)
        ring = make_ring([("a", 3), ("b", 2), ("c", 4)])
        one = ring.one()
        for _ in range(40):
            f, g, h = (random_poly(rng, ring) for _ in range(3))
            assert (f * g) * h == f * (g * h)
            assert f * g == g * f
            assert f * (g + h) == f * g + f * h
            assert f * one == f

    def test_grading(self):
        rng = random.Random(37)
        ring = make_ring([("a", 4), ("b", 4)])
        for _ in range(40):
            r, s = rng.randint(0, 3), rng.randint(0, 3)
            f = ring.from_terms(
                {e: rng.randint(-2, 2) for e in monomial_basis(ring, r)}
            )
            g = ring.from_terms(
                {e: rng.randint(-2, 2) for e in monomial_basis(ring, s)}
            )
            product = f * g
            if not product.is_zero:
                assert product.homogeneous_degree() == r + s


class TestMonomialBasis:
    def test_degree_zero(self):
        ring = make_ring([("a", 3), ("b", 3)])
        assert monomial_basis(ring, 0) == [(0, 0)]

    def test_degree_one_counts_variables(self):
        ring = make_ring([(f"x{i}", 3) for i in range(5)])
        assert len(monomial_basis(ring, 1)) == 5

    def test_two_variable_degree_two(self):
        ring = make_ring([("w", 3), ("z", 3)])
        assert monomial_basis(ring, 2) == [(2, 0), (1, 1), (0, 2)]

    def test_counts_match_expansion_oracle(self):
        rng = random.Random(41)
        for _ in range(30):
            truncs = [rng.randint(1, 4) for _ in range(rng.randint(0, 4))]
            ring = make_ring([(f"x{i}", t) for i, t in enumerate(truncs)])
            for degree in range(sum(t - 1 for t in truncs) + 2):
                assert len(monomial_basis(ring, degree)) == count_by_expansion(
                    truncs, degree
                )


class TestTopIntegral:
    def test_top_monomial(self):
        ring = make_ring([("w", 3), ("a1", 3), ("z", 3)])
        top = ring.monomial((2, 2, 2))
        assert top_integral(top) == 1

    def test_constant_integrates_to_zero(self):
        ring = make_ring([("w", 3)])
        assert top_integral(ring.one()) == 0

    def test_linearity(self):
        ring = make_ring([("w", 3), ("z", 2)])
        f = ring.monomial(ring.top_exponents, 3) + ring.gen("w")
        assert top_integral(f) == 3

    def test_pairing_is_symmetric_bilinear(self):
        rng = random.Random(43)
        ring = make_ring([("a", 3), ("b", 3)])
        for _ in range(30):
            f, g, h = (random_poly(rng, ring) for _ in range(3))
            c = rng.randint(-3, 3)
            assert top_integral(f * g) == top_integral(g * f)
            assert top_integral((f + h.scale(c)) * g) == top_integral(
                f * g
            ) + c * top_integral(h * g)


class TestInverseUnit:
    def test_geometric_series(self):
        for q in (2, 3, 5):
            ring = make_ring([("a", q)])
            inv = inverse_unit(ring.one() - ring.gen("a"))
            assert inv == ring.from_terms({(j,): 1 for j in range(q)})

    def test_one(self):
        ring = make_ring([("a", 3)])
        assert inverse_unit(ring.one()) == ring.one()

    def test_rational_constant(self):
        ring = make_ring([("a", 2)], RATIONALS)
        assert inverse_unit(ring.one().scale(2)) == ring.one().scale(Fraction(1, 2))

    def test_non_unit_rejected(self):
        ring = make_ring([("a", 3)])
        with pytest.raises(ValueError):
            inverse_unit(ring.one().scale(2))  # 2 is not a unit in Z
        modular = make_ring([("a", 3)], prime_field(3))
        with pytest.raises(ValueError):
            inverse_unit(modular.one().scale(3))

    def test_random_units_invert(self):
        rng = random.Random(47)
        for field in (None, RATIONALS, prime_field(5)):
            ring = make_ring([("a", 3), ("b", 3)], field)
            one = ring.one()
            for _ in range(25):
                unit = one + random_poly(rng, ring) * ring.gen("a") + random_poly(
                    rng, ring
                ) * ring.gen("b")
                if field is None and unit.constant_term not in (1, -1):
                    continue
                if unit.constant_term == 0:
                    continue
                assert inverse_unit(unit) * unit == one


class TestCanonicalText:
    def test_sorted_by_degree_then_variable(self):
        ring = make_ring([("w", 3), ("z", 3)])
        w, z = ring.gen("w"), ring.gen("z")
        assert str(ring.one() + w + z + w * w) == "1 + w + z + w^2"

    def test_signs_and_coefficients(self):
        ring = make_ring([("a", 4)])
        a = ring.gen("a")
        assert str(ring.one() - a + (a * a).scale(3)) == "1 - a + 3*a^2"

    def test_zero(self):
        assert str(make_ring([("a", 2)]).zero()) == "0"
