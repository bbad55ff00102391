import pytest

from parityslice.bandmatrix import binomial_band_matrix
from parityslice.exact import LabeledMatrix, RATIONALS, binom, prime_field, rank
from parityslice.pairing import (
    ClassConstancyError,
    Verdict,
    derive_dims,
    multiplicity,
    pairing_matrix,
    perversity_report,
    reduce_by_w,
    stratum_matrix,
)

SMALL_POINTS = [(3, 1, 3), (2, 2, 3), (5, 1, 3)]


class TestDeriveDims:
    def test_q3_l3(self):
        params = derive_dims(3, 1, 3)
        assert (params.q, params.N, params.dim_z, params.rank_e, params.n, params.m) == (
            3, 15, 10, 9, 19, 1,
        )

    def test_q4_l3(self):
        params = derive_dims(2, 2, 3)
        # N = q(l+2) throughout: 4 * 5 = 20.
        assert (params.q, params.N, params.dim_z, params.rank_e, params.n, params.m) == (
            4, 20, 15, 12, 27, 1,
        )

    def test_constraint_violations_name_the_inequality(self):
        with pytest.raises(ValueError, match="l > q"):
            derive_dims(3, 1, 4)
        with pytest.raises(ValueError, match="not prime"):
            derive_dims(4, 1, 3)
        with pytest.raises(ValueError, match="d < 1"):
            derive_dims(3, 0, 3)
        with pytest.raises(ValueError, match="l < 3"):
            derive_dims(3, 2, 2)

    def test_degree_bookkeeping(self):
        for triple in SMALL_POINTS + [(3, 2, 5), (7, 1, 4)]:
            params = derive_dims(*triple)
            q, l = params.q, params.l
            assert 2 * params.d_f - params.n - params.m == 2 * (q - l)
            assert 2 * params.d_f - params.n + params.m == 2 * (q - 2)


class TestPairingMatrix:
    def test_q3_l3_over_rationals(self):
        params = derive_dims(3, 1, 3)
        matrix = pairing_matrix(params, RATIONALS)
        assert matrix.row_labels == ((0, 0, 0, 0, 0),)
        assert matrix.col_labels == (
            (1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0),
            (0, 0, 0, 1, 0), (0, 0, 0, 0, 1),
        )
        assert matrix.entries == ((3, 3, 3, 3, 3),)

    def test_q3_l3_vanishes_mod_three(self):
        params = derive_dims(3, 1, 3)
        matrix = pairing_matrix(params, prime_field(3))
        assert all(x == 0 for row in matrix.entries for x in row)

    def test_value_law_entrywise(self):
        for triple in SMALL_POINTS:
            params = derive_dims(*triple)
            q, l = params.q, params.l
            matrix = pairing_matrix(params, RATIONALS)
            for i, row_label in enumerate(matrix.row_labels):
                for j, col_label in enumerate(matrix.col_labels):
                    combined_w = row_label[0] + col_label[0]
                    assert matrix.entries[i][j] == binom(l, q - 1 - combined_w)

    def test_s_l_equivariance(self):
        params = derive_dims(2, 2, 3)
        matrix = pairing_matrix(params, RATIONALS)
        row_index = {label: i for i, label in enumerate(matrix.row_labels)}
        col_index = {label: j for j, label in enumerate(matrix.col_labels)}

        def swap(label):  # exchange a_1 and a_2
            return (label[0], label[2], label[1], label[3], label[4])

        for i, row_label in enumerate(matrix.row_labels):
            for j, col_label in enumerate(matrix.col_labels):
                i2, j2 = row_index[swap(row_label)], col_index[swap(col_label)]
                assert matrix.entries[i][j] == matrix.entries[i2][j2]


class TestReduceByW:
    def test_q3_l3(self):
        params = derive_dims(3, 1, 3)
        reduced = reduce_by_w(pairing_matrix(params, RATIONALS), params)
        assert reduced.entries == ((3, 3),)
        assert reduced.row_labels == (0,)
        assert reduced.col_labels == (1, 0)

    def test_q4_l3_shape(self):
        params = derive_dims(2, 2, 3)
        reduced = reduce_by_w(pairing_matrix(params, RATIONALS), params)
        assert reduced.nrows == 2 and reduced.ncols == 3
        assert reduced.entries == binomial_band_matrix(4, 3).entries

    def test_rank_preserved(self):
        for triple in SMALL_POINTS:
            params = derive_dims(*triple)
            for field in (RATIONALS, prime_field(params.p)):
                full = pairing_matrix(params, field)
                assert rank(full) == rank(reduce_by_w(full, params))

    def test_class_constancy_violation_detected(self):
        params = derive_dims(3, 1, 3)
        good = pairing_matrix(params, RATIONALS)
        rows = [list(row) for row in good.entries]
        rows[0][1] = 99  # a_1 column now differs from the other w-power-0 columns
        corrupted = LabeledMatrix(
            tuple(tuple(r) for r in rows), good.row_labels, good.col_labels, good.field
        )
        with pytest.raises(ClassConstancyError):
            reduce_by_w(corrupted, params)


class TestMultiplicity:
    def test_q3_l3(self):
        params = derive_dims(3, 1, 3)
        assert multiplicity(params, RATIONALS) == 1
        assert multiplicity(params, prime_field(3)) == 0

    def test_q5_l3(self):
        params = derive_dims(5, 1, 3)
        assert multiplicity(params, RATIONALS) == 3
        assert multiplicity(params, prime_field(5)) == 2

    def test_oracles_agree(self):
        for triple in SMALL_POINTS:
            params = derive_dims(*triple)
            for field in (RATIONALS, prime_field(params.p)):
                assert multiplicity(params, field, oracle="full") == multiplicity(
                    params, field, oracle="reduced"
                )

    def test_unknown_oracle_rejected(self):
        with pytest.raises(ValueError):
            multiplicity(derive_dims(3, 1, 3), RATIONALS, oracle="sideways")


class TestStratumMatrix:
    def test_antidiagonal(self):
        for field in (RATIONALS, prime_field(2)):
            matrix = stratum_matrix(3, 0, field)
            assert matrix.entries == ((0, 0, 1), (0, 1, 0), (1, 0, 0))
            assert rank(matrix) == 3

    def test_corner(self):
        matrix = stratum_matrix(3, 2, RATIONALS)
        assert matrix.entries == ((1, 0, 0), (0, 0, 0), (0, 0, 0))
        assert rank(matrix) == 1

    def test_zero(self):
        assert rank(stratum_matrix(3, 3, prime_field(5))) == 0

    def test_rank_q_minus_s_any_field(self):
        for q in (3, 4, 5):
            for s in range(q + 1):
                for field in (RATIONALS, prime_field(2), prime_field(q if q in (3, 5) else 2)):
                    assert rank(stratum_matrix(q, s, field)) == q - s

    def test_exponent_out_of_range(self):
        with pytest.raises(ValueError):
            stratum_matrix(3, 4, RATIONALS)
        with pytest.raises(ValueError):
            stratum_matrix(3, -1, RATIONALS)


class TestPerversityReport:
    @pytest.mark.parametrize(
        "triple,expected",
        [
            ((3, 1, 3), (1, 0, 1)),
            ((2, 2, 3), (2, 1, 1)),
            ((5, 1, 5), (1, 0, 3)),
        ],
    )
    def test_examples(self, triple, expected):
        report = perversity_report(derive_dims(*triple))
        mult0, multp, stalk = expected
        assert report.mult_char0 == mult0
        assert report.mult_charp == multp
        assert report.stalk_degree == stalk
        assert report.verdict is Verdict.NOT_PERVERSE
        assert report.matches_expected

    def test_verdict_tracks_the_gap(self):
        report = perversity_report(derive_dims(7, 1, 4))
        assert (report.verdict is Verdict.NOT_PERVERSE) == (
            report.mult_char0 > report.mult_charp and report.stalk_degree > 0
        )
