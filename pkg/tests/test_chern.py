import functools
import itertools
import random

import pytest

from parityslice.chern import (
    BundleSpec,
    cohomology_ring,
    euler_factors,
    quotient_dual_chern,
    resolution_euler_class,
    split_bundle,
    splitting_oracle,
    twist_euler,
)
from parityslice.pairing import derive_dims
from parityslice.truncring import make_ring, multiply, top_integral


def random_degree_one(rng, ring, lo=-2, hi=2):
    terms = {}
    for i in range(ring.nvars):
        c = rng.randint(lo, hi)
        if c:
            exps = [0] * ring.nvars
            exps[i] = 1
            terms[tuple(exps)] = c
    return ring.from_terms(terms)


class TestTwistEuler:
    def test_line_bundle(self):
        ring = make_ring([("a", 3), ("z", 3)])
        r, z = ring.gen("a"), ring.gen("z")
        bundle = BundleSpec(1, (ring.one(), r))
        assert twist_euler(bundle, z) == r + z

    def test_trivial_bundle(self):
        ring = make_ring([("z", 5)])
        z = ring.gen("z")
        bundle = BundleSpec(3, (ring.one(), ring.zero(), ring.zero(), ring.zero()))
        assert twist_euler(bundle, z) == z**3

    def test_dual_quotient_twist_gives_banded_sum(self):
        # e(B_i) = sum_{j=0}^{q-1} a^j z^{q-1-j}, termwise.
        for q in (3, 4, 5, 8, 9):
            ring = make_ring([("a", q), ("z", q)])
            euler = twist_euler(quotient_dual_chern(ring, "a"), ring.gen("z"))
            expected = ring.from_terms({(j, q - 1 - j): 1 for j in range(q)})
            assert euler == expected

    def test_inhomogeneous_twist_rejected(self):
        ring = make_ring([("a", 3)])
        bundle = BundleSpec(1, (ring.one(), ring.gen("a")))
        with pytest.raises(ValueError):
            twist_euler(bundle, ring.one() + ring.gen("a"))


class TestQuotientDualChern:
    def test_small_ranks(self):
        ring = make_ring([("a", 3)])
        a = ring.gen("a")
        bundle = quotient_dual_chern(ring, "a")
        assert bundle.rank == 2
        assert bundle.chern == (ring.one(), a, a * a)

    def test_rank_zero(self):
        ring = make_ring([("a", 1)])
        bundle = quotient_dual_chern(ring, "a")
        assert bundle.rank == 0 and bundle.chern == (ring.one(),)

    def test_truncation_two(self):
        ring = make_ring([("a", 2)])
        bundle = quotient_dual_chern(ring, "a")
        assert bundle.chern == (ring.one(), ring.gen("a"))

    def test_unknown_variable(self):
        with pytest.raises(KeyError):
            quotient_dual_chern(make_ring([("a", 3)]), "b")


class TestSplittingOracle:
    def test_single_root(self):
        ring = make_ring([("a", 3), ("z", 3)])
        r, z = ring.gen("a"), ring.gen("z")
        assert splitting_oracle([r], z) == r + z

    def test_zero_roots(self):
        ring = make_ring([("z", 5)])
        z = ring.gen("z")
        assert splitting_oracle([ring.zero()] * 3, z) == z**3

    def test_matches_twist_on_split_bundles(self):
        rng = random.Random(53)
        ring = make_ring([("a", 3), ("b", 3), ("z", 3)])
        z = ring.gen("z")
        for _ in range(50):
            roots = [random_degree_one(rng, ring) for _ in range(rng.randint(1, 5))]
            assert twist_euler(split_bundle(roots), z) == splitting_oracle(roots, z)


def enumerate_top_coefficient(params, sigma_exps, tau_exps):
    """Independent oracle for top_integral(sigma * tau * e): enumerate one term
    from each of the 2l Euler factors and count the choices whose combined
    exponent vector is exactly the top monomial."""
    q, l = params.q, params.l
    nvars = l + 2
    # Factor terms as exponent vectors over (w, a_1..a_l, z).
    factor_terms = []
    for i in range(1, l + 1):
        line = []
        for pick_a in (True, False):
            exps = [0] * nvars
            exps[i if pick_a else 0] = 1
            line.append(tuple(exps))
        factor_terms.append(line)
        dual = []
        for j in range(q):
            exps = [0] * nvars
            exps[i] = j
            exps[-1] = q - 1 - j
            dual.append(tuple(exps))
        factor_terms.append(dual)
    top = tuple([q - 1] * nvars)
    base = tuple(s + t for s, t in zip(sigma_exps, tau_exps))
    count = 0
    for choice in itertools.product(*factor_terms):
        total = list(base)
        for term in choice:
            total = [a + b for a, b in zip(total, term)]
        if tuple(total) == top:
            count += 1
    return count


class TestResolutionEulerClass:
    def test_closed_form_at_q3_l3(self):
        params = derive_dims(3, 1, 3)
        ring = cohomology_ring(params)
        w, z = ring.gen("w"), ring.gen("z")
        expected = ring.one()
        for i in (1, 2, 3):
            a = ring.gen(f"a{i}")
            expected = expected * (a + w) * (a * a + a * z + z * z)
        assert resolution_euler_class(params, ring) == expected

    def test_homogeneous_of_degree_lq(self):
        for triple in ((3, 1, 3), (2, 2, 3), (5, 1, 4)):
            params = derive_dims(*triple)
            ring = cohomology_ring(params)
            euler = resolution_euler_class(params, ring)
            assert euler.homogeneous_degree() == params.l * params.q

    def test_factor_order_irrelevant(self):
        rng = random.Random(59)
        params = derive_dims(2, 2, 3)
        ring = cohomology_ring(params)
        factors = euler_factors(params, ring)
        euler = resolution_euler_class(params, ring)
        for _ in range(5):
            shuffled = factors[:]
            rng.shuffle(shuffled)
            assert functools.reduce(multiply, shuffled, ring.one()) == euler

    def test_symmetric_under_index_permutations(self):
        rng = random.Random(61)
        params = derive_dims(2, 2, 3)
        ring = cohomology_ring(params)
        euler = resolution_euler_class(params, ring)
        for _ in range(5):
            perm = list(range(1, params.l + 1))
            rng.shuffle(perm)
            permuted = {}
            for exps, coeff in euler.terms.items():
                new = [exps[0]] + [exps[perm[i - 1]] for i in range(1, params.l + 1)]
                new.append(exps[-1])
                permuted[tuple(new)] = coeff
            assert permuted == euler.terms

    def test_top_coefficient_matches_enumeration_oracle(self):
        params = derive_dims(3, 1, 3)
        ring = cohomology_ring(params)
        euler = resolution_euler_class(params, ring)
        sigma = (0,) * 5
        tau = (0, 0, 0, 0, 1)  # the class z
        expected = enumerate_top_coefficient(params, sigma, tau)
        assert expected == 3
        product = multiply(multiply(ring.monomial(sigma), ring.monomial(tau)), euler)
        assert top_integral(product) == expected

    def test_mismatched_ring_rejected(self):
        params = derive_dims(3, 1, 3)
        other = make_ring([("w", 3), ("z", 3)])
        with pytest.raises(ValueError):
            resolution_euler_class(params, other)
