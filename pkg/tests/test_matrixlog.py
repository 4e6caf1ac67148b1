"""Matrix-valued series: the flow expansion and its entry-wise logarithm."""

from fractions import Fraction

import pytest

from itoflow import (
    BracketWord,
    Expansion,
    MatrixExpansion,
    entry_letter,
    integrate_against,
    letter_entry,
    matrix_exp,
    matrix_ito_taylor,
    matrix_log,
    qsh,
)


class TestLetterEncoding:
    def test_row_major(self):
        assert entry_letter(1, 1, dim=2) == 1
        assert entry_letter(1, 2, dim=2) == 2
        assert entry_letter(2, 1, dim=2) == 3
        assert entry_letter(2, 2, dim=2) == 4

    def test_inverse(self):
        for dim in (1, 2, 3):
            for i in range(1, dim + 1):
                for j in range(1, dim + 1):
                    assert letter_entry(entry_letter(i, j, dim=dim), dim=dim) == (i, j)

    def test_bounds(self):
        with pytest.raises(ValueError):
            entry_letter(0, 1, dim=2)
        with pytest.raises(ValueError):
            entry_letter(1, 3, dim=2)
        with pytest.raises(ValueError):
            letter_entry(5, dim=2)


class TestMatrixExpansion:
    def test_identity(self):
        m = MatrixExpansion.identity(2)
        assert m[1, 1] == Expansion.unit()
        assert m[1, 2] == Expansion.zero()

    def test_arithmetic(self):
        m = MatrixExpansion.identity(2)
        two = m + m
        assert two[1, 1] == 2 * Expansion.unit()
        assert (two - m)[2, 2] == Expansion.unit()
        assert (3 * m)[1, 1] == 3 * Expansion.unit()

    def test_matmul_identity(self):
        m = matrix_ito_taylor(2, 2)
        ident = MatrixExpansion.identity(2)
        assert m.matmul(ident) == m
        assert ident.matmul(m) == m

    def test_matmul_entries_use_qsh(self):
        # (A B)_{13} for single-word entries is the quasi-shuffle of the words
        w1 = Expansion.of_word(BracketWord([(1,)]))
        w2 = Expansion.of_word(BracketWord([(2,)]))
        a = MatrixExpansion(1, ((w1,),))
        b = MatrixExpansion(1, ((w2,),))
        assert a.matmul(b)[1, 1] == qsh(BracketWord([(1,)]), BracketWord([(2,)]))

    def test_json_round_trip(self):
        m = matrix_ito_taylor(2, 2)
        assert MatrixExpansion.from_json_dict(m.to_json_dict()) == m


class TestTaylorSeries:
    def test_order_one_entries(self):
        m = matrix_ito_taylor(2, 1)
        # entry (i, j): unit if diagonal plus the single letter word for (i, j)
        for i in (1, 2):
            for j in (1, 2):
                e = m[i, j]
                letter_word = BracketWord([(entry_letter(i, j, dim=2),)])
                assert e[letter_word] == 1
                expected_len = 2 if i == j else 1
                assert len(e) == expected_len

    def test_order_two_entry_words_are_paths(self):
        m = matrix_ito_taylor(2, 2)
        # words of weight 2 in entry (1, 1) follow index paths 1 -> k -> 1
        e = m[1, 1].restrict_weight(2)
        assert set(e.words()) == {
            BracketWord([(1,), (1,)]),  # (1,1)(1,1)
            BracketWord([(2,), (3,)]),  # (1,2)(2,1)
        }

    def test_integrate_against_raises_weight(self):
        m0 = MatrixExpansion.identity(2)
        m1 = integrate_against(m0)
        assert m1.max_weight() == 1
        assert integrate_against(m1).max_weight() == 2

    def test_grading_by_order(self):
        m = matrix_ito_taylor(2, 3)
        assert m.max_weight() == 3


class TestMatrixLogExp:
    def test_log_has_no_constant_part(self):
        lg = matrix_log(2, 2)
        assert not lg.has_constant_part()

    def test_log_order_one_is_taylor_minus_identity(self):
        lg = matrix_log(2, 1)
        t = matrix_ito_taylor(2, 1)
        ident = MatrixExpansion.identity(2)
        assert lg == t - ident

    def test_log_diagonal_entry_order_two(self):
        lg = matrix_log(2, 2)
        e = lg[1, 1]
        assert e[BracketWord([(1,)])] == 1
        assert e[BracketWord([(1, 1)])] == Fraction(-1, 2)
        assert e[BracketWord([(2, 3)])] == Fraction(-1, 2)
        assert e[BracketWord([(2,), (3,)])] == Fraction(1, 2)
        assert e[BracketWord([(3,), (2,)])] == Fraction(-1, 2)
        # the squared diagonal letter cancels between (12) and (21)
        assert e[BracketWord([(1,), (1,)])] == 0

    @pytest.mark.parametrize("dim", (1, 2))
    @pytest.mark.parametrize("order", (1, 2, 3))
    def test_exp_undoes_log(self, dim, order):
        lg = matrix_log(dim, order)
        assert matrix_exp(lg, order) == matrix_ito_taylor(dim, order)

    def test_exp_rejects_constant_part(self):
        with pytest.raises(ValueError):
            matrix_exp(MatrixExpansion.identity(2), 2)
