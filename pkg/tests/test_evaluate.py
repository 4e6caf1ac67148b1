"""Pathwise evaluation of bracket words on discretized drivers."""

from fractions import Fraction

import numpy as np
import pytest

from itoflow import (
    BracketWord,
    DriverSpec,
    Evaluator,
    Expansion,
    SamplePath,
    PathBundle,
    evaluate,
    evaluate_path,
    make_grid,
    qsh,
    simulate_bundle,
)


def two_step_bundle(a1, a2, b1, b2):
    grid = [0.0, 1.0, 2.0]
    x = SamplePath(grid, [0.0, a1, a1 + a2])
    y = SamplePath(grid, [0.0, b1, b1 + b2])
    return PathBundle({1: x, 2: y})


class TestHandComputed:
    def test_single_letter_is_terminal(self):
        b = two_step_bundle(1.0, 2.0, 0.5, -0.5)
        assert evaluate(Expansion.of_word(BracketWord([(1,)])), b) == 3.0

    def test_two_letter_word_uses_left_endpoints(self):
        # integral of x dy on two cells: x_0 b1 + x_1 b2 = a1 * b2
        b = two_step_bundle(2.0, 9.0, 7.0, 3.0)
        assert evaluate_path(BracketWord([(1,), (2,)]), b)[-1] == pytest.approx(6.0)

    def test_bracket_block_is_increment_product_sum(self):
        b = two_step_bundle(2.0, 3.0, 5.0, 7.0)
        # [x, y] accumulates a1*b1 + a2*b2 = 10 + 21
        assert evaluate(Expansion.of_word(BracketWord([(1, 2)])), b) == pytest.approx(
            31.0
        )

    def test_unit_word_is_one(self):
        b = two_step_bundle(1.0, 1.0, 1.0, 1.0)
        assert evaluate(Expansion.unit(), b) == 1.0

    def test_word_path_starts_at_indicator(self):
        b = two_step_bundle(1.0, 1.0, 1.0, 1.0)
        path = evaluate_path(BracketWord([(1,)]), b)
        assert path[0] == 0.0
        unit_path = evaluate_path(BracketWord([]), b)
        assert unit_path[0] == 1.0


class TestQuasiShuffleIdentityNumerically:
    @pytest.mark.parametrize("steps", [16, 256])
    def test_product_rule_brownian(self, steps):
        grid = make_grid(1.0, steps)
        specs = {1: DriverSpec.brownian(1.0), 2: DriverSpec.brownian(0.5)}
        bundle = simulate_bundle(specs, grid, seed=9, path_index=0)
        u = BracketWord([(1,), (2,)])
        v = BracketWord([(1,)])
        lhs = evaluate(qsh(u, v), bundle)
        rhs = evaluate(Expansion.of_word(u), bundle) * evaluate(
            Expansion.of_word(v), bundle
        )
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    def test_square_of_single_letter(self):
        b = two_step_bundle(3.0, 4.0, 0.0, 0.0)
        total = evaluate(Expansion.of_word(BracketWord([(1,)])), b)
        sq = evaluate(qsh(BracketWord([(1,)]), BracketWord([(1,)])), b)
        assert sq == pytest.approx(total**2)


class TestEvaluator:
    def test_terminal_caching_returns_same_array_values(self):
        b = two_step_bundle(1.0, 2.0, 3.0, 4.0)
        ev = Evaluator.from_bundle(b)
        w = BracketWord([(1,), (2,)])
        assert ev.word_terminal(w) == ev.word_terminal(w)

    def test_unbound_letter_message(self):
        b = two_step_bundle(1.0, 2.0, 3.0, 4.0)
        ev = Evaluator.from_bundle(b)
        with pytest.raises(KeyError, match="letter 5"):
            ev.word_terminal(BracketWord([(5,)]))

    def test_expansion_with_rational_coefficients(self):
        b = two_step_bundle(1.0, 2.0, 3.0, 4.0)
        e = Fraction(1, 3) * Expansion.of_word(BracketWord([(1,)]))
        assert evaluate(e, b) == pytest.approx(1.0)

    def test_batched_paths(self):
        # evaluator broadcasts over leading axes of the increment arrays
        incs = {1: np.array([[1.0, 2.0], [3.0, 4.0]])}
        ev = Evaluator(incs)
        out = ev.word_terminal(BracketWord([(1,)]))
        assert out.shape == (2,)
        assert np.allclose(out, [3.0, 7.0])
