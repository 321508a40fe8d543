"""Elimination decisions, certificates, refutation and numeric oracles."""

import random
from fractions import Fraction

import pytest

from patmat import (
    DimensionError,
    PatternMatrix,
    RealizationMatrix,
    RefutationBudget,
    ValueDistribution,
    contains,
    derive_seed,
    full_column_rank,
    full_row_rank,
    grid_witness_search,
    hstack,
    identity_pattern,
    numeric_rank,
    pencil_full_rank,
    refute_full_rank,
    sample_member,
    strongly_nonsingular_square,
    verify_certificate,
)
from patmat.oracles import pencil_agreement, pencil_refutation_witness, rank_soundness

from helpers import random_pattern, random_shape

P = PatternMatrix.from_text
R = RealizationMatrix.from_rows

NO_DESCENT = RefutationBudget(max_random_restarts=0)


class TestFullRowRank:
    def test_triangular_two_by_two(self):
        pattern = P("* 0\n? *")
        verdict = full_row_rank(pattern)
        assert verdict.full_rank
        # the only eligible column at step one is the second one
        assert verdict.pivots == ((1, 1), (0, 0))
        assert verify_certificate(pattern, verdict.pivots)

    def test_all_star_square_stalls(self):
        verdict = full_row_rank(P("* *\n* *"))
        assert not verdict.full_rank
        assert verdict.stall.reason == "no eligible pivot column"
        assert verdict.stall.rows == (0, 1)
        # the all-ones member has rank 1
        assert numeric_rank(R([[1, 1], [1, 1]]), 0) == 1

    def test_identity_next_to_anything(self):
        rng = random.Random(3)
        for _ in range(100):
            n = rng.randint(1, 5)
            b = random_pattern(rng, n, rng.randint(1, 4))
            assert full_row_rank(hstack([identity_pattern(n), b])).full_rank

    def test_two_pivot_wide_pattern(self):
        pattern = P("* * 0\n0 * *")
        verdict = full_row_rank(pattern)
        assert verdict.full_rank
        assert len(verdict.pivots) == 2
        assert verify_certificate(pattern, verdict.pivots)
        member = sample_member(pattern, ValueDistribution(seed=5))
        assert numeric_rank(member, 0) == 2

    def test_more_rows_than_columns_short_circuits(self):
        verdict = full_row_rank(P("*\n*"))
        assert not verdict.full_rank
        assert verdict.stall.reason == "more rows than columns"
        assert verdict.pivots == ()

    def test_empty_matrix_is_vacuously_full_rank(self):
        assert full_row_rank(PatternMatrix(0, 3, ())).full_rank

    def test_quest_pivot_is_never_eligible(self):
        assert not full_row_rank(P("? 0\n0 *")).full_rank


class TestFullColumnRank:
    def test_single_column_with_star(self):
        verdict = full_column_rank(P("*\n?"))
        assert verdict.full_rank
        assert verdict.pivots == ((0, 0),)

    def test_all_quest_column_fails(self):
        verdict = full_column_rank(P("?\n?"))
        assert not verdict.full_rank
        witness_t = refute_full_rank(P("?\n?").transpose(), NO_DESCENT)
        assert witness_t is not None
        assert all(e == 0 for e in witness_t.entries)

    def test_wide_matrix_short_circuits(self):
        verdict = full_column_rank(P("* *"))
        assert not verdict.full_rank
        assert verdict.stall.reason == "more columns than rows"

    def test_square_row_and_column_verdicts_agree_exhaustively(self):
        import itertools

        from patmat.symbols import QUEST, STAR, ZERO

        for combo in itertools.product((ZERO, STAR, QUEST), repeat=9):
            pattern = PatternMatrix(3, 3, combo)
            assert (
                full_row_rank(pattern).full_rank
                == full_column_rank(pattern).full_rank
            )


class TestCertificates:
    def test_certificate_replays(self):
        rng = random.Random(23)
        for _ in range(200):
            rows = rng.randint(1, 4)
            pattern = random_pattern(rng, rows, rng.randint(rows, 6))
            verdict = full_row_rank(pattern)
            if verdict.full_rank:
                assert verify_certificate(pattern, verdict.pivots)
                assert len(verdict.pivots) == pattern.rows
                assert len({i for i, _ in verdict.pivots}) == pattern.rows
                assert len({j for _, j in verdict.pivots}) == pattern.rows

    def test_corrupted_certificates_fail(self):
        pattern = P("* * 0\n0 * *")
        pivots = full_row_rank(pattern).pivots
        assert verify_certificate(pattern, pivots)
        assert not verify_certificate(pattern, pivots[::-1])
        assert not verify_certificate(pattern, pivots[:1])
        assert not verify_certificate(pattern, ((0, 1), (1, 2)))
        assert not verify_certificate(pattern, ((0, 0), (0, 0)))


class TestPivotConfluence:
    def test_random_pivot_orders_never_change_the_verdict(self):
        rng = random.Random(29)
        for _ in range(500):
            pattern = random_pattern(rng, rng.randint(1, 5), rng.randint(1, 8))
            reference = full_row_rank(pattern).full_rank
            for trial in range(10):
                chooser_rng = random.Random(derive_seed(31, trial))
                verdict = full_row_rank(pattern, choose=chooser_rng.choice)
                assert verdict.full_rank == reference
                if verdict.full_rank:
                    assert verify_certificate(pattern, verdict.pivots)


class TestInvariances:
    def test_column_monotonicity(self):
        rng = random.Random(37)
        for _ in range(200):
            rows = rng.randint(1, 4)
            pattern = random_pattern(rng, rows, rng.randint(rows, 6))
            if not full_row_rank(pattern).full_rank:
                continue
            extra = random_pattern(rng, rows, rng.randint(1, 4))
            assert full_row_rank(hstack([pattern, extra])).full_rank

    def test_permutation_invariance(self):
        rng = random.Random(43)
        for _ in range(500):
            rows, cols = random_shape(rng, 4, 5)
            pattern = random_pattern(rng, rows, cols)
            reference = full_row_rank(pattern).full_rank
            row_perm = list(range(rows))
            col_perm = list(range(cols))
            rng.shuffle(row_perm)
            rng.shuffle(col_perm)
            permuted = PatternMatrix(
                rows,
                cols,
                tuple(
                    pattern[row_perm[i], col_perm[j]]
                    for i in range(rows)
                    for j in range(cols)
                ),
            )
            assert full_row_rank(permuted).full_rank == reference


class TestStronglyNonsingular:
    def test_unique_star_matching(self):
        assert strongly_nonsingular_square(P("* ?\n0 *"))

    def test_two_matchings(self):
        assert not strongly_nonsingular_square(P("* *\n* *"))

    def test_quest_on_the_unique_matching(self):
        assert not strongly_nonsingular_square(P("? 0\n0 *"))

    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            strongly_nonsingular_square(P("* 0"))

    def test_agrees_with_elimination_on_random_squares(self):
        rng = random.Random(47)
        for _ in range(500):
            n = rng.randint(1, 4)
            pattern = random_pattern(rng, n, n)
            assert (
                strongly_nonsingular_square(pattern)
                == full_row_rank(pattern).full_rank
            )


class TestNumericRank:
    def test_identity(self):
        assert numeric_rank(R([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 0) == 3

    def test_all_ones_wide(self):
        assert numeric_rank(R([[1, 1, 1], [1, 1, 1]]), 0) == 1

    def test_rank_two_example(self):
        assert numeric_rank(R([[1, 1], [1, 2]]), 0) == 2

    def test_exact_fractions_near_cancellation(self):
        tiny = Fraction(1, 10**30)
        assert numeric_rank(R([[1, 1], [1, 1 + tiny]]), 0) == 2
        assert numeric_rank(R([[1, 1], [1, 1]]), 0) == 1

    def test_float_tolerance(self):
        nearly = R([[1.0, 1.0], [1.0, 1.0 + 1e-13]])
        assert numeric_rank(nearly, 1e-9) == 1
        assert numeric_rank(nearly, 1e-15) == 2

    def test_complex_entries(self):
        assert numeric_rank(R([[1j, 1], [1, -1j]]), 1e-12) == 1
        assert numeric_rank(R([[1j, 1], [1, 1j]]), 1e-12) == 2

    def test_zero_and_empty(self):
        assert numeric_rank(RealizationMatrix.zeros(2, 3), 0) == 0
        assert numeric_rank(RealizationMatrix(0, 0, ()), 0) == 0

    def test_negative_tolerance_rejected(self):
        with pytest.raises(ValueError):
            numeric_rank(R([[1]]), -0.5)


class TestRefutation:
    def test_all_star_square_yields_all_ones(self):
        witness = refute_full_rank(P("* *\n* *"), NO_DESCENT)
        assert witness == R([[1, 1], [1, 1]])

    def test_equal_rows_heuristic_target(self):
        pattern = P("* * ?\n? * *")
        witness = refute_full_rank(pattern, NO_DESCENT)
        assert witness is not None
        assert witness.row(0) == witness.row(1) == (1, 1, 1)

    def test_strongly_full_rank_pattern_has_no_witness(self):
        assert refute_full_rank(P("* 0\n? *")) is None

    def test_more_rows_than_columns_trivial_witness(self):
        witness = refute_full_rank(P("*\n*"))
        assert witness is not None
        assert contains(P("*\n*"), witness, 0)

    def test_grid_search_finds_cancellations(self):
        witness = grid_witness_search(P("* *\n* *"))
        assert witness == R([[1, 1], [1, 1]])
        assert grid_witness_search(P("* 0\n0 *")) is None

    def test_witnesses_are_exact_members_with_deficient_rank(self):
        rng = random.Random(53)
        found = 0
        for _ in range(300):
            rows = rng.randint(1, 3)
            pattern = random_pattern(rng, rows, rng.randint(rows, 4))
            if full_row_rank(pattern).full_rank:
                continue
            witness = refute_full_rank(pattern, NO_DESCENT)
            assert witness is not None, pattern.to_text()
            assert witness.is_exact()
            assert contains(pattern, witness, 0)
            assert numeric_rank(witness, 0) < pattern.rows
            found += 1
        assert found > 50

    def test_row_subset_strategy_beyond_grid_and_equal_rows(self):
        # 14 free entries disable the grid and every row pair has a 0/*
        # clash, yet the three rows together support a vanishing
        # combination, so an exact witness must still be produced.
        pattern = P("* 0 * ? ? ?\n0 * ? * ? ?\n? ? 0 0 ? ?")
        assert not full_row_rank(pattern).full_rank
        witness = refute_full_rank(pattern, NO_DESCENT)
        assert witness is not None
        assert witness.is_exact()
        assert contains(pattern, witness, 0)
        assert numeric_rank(witness, 0) < 3

    def test_descent_output_is_exact_when_present(self):
        from patmat.rank import _descent_witness

        pattern = P("* *\n* *")
        witness = _descent_witness(pattern, RefutationBudget())
        if witness is not None:
            assert witness.is_exact()
            assert contains(pattern, witness, 0)
            assert numeric_rank(witness, 0) < 2

    def test_budget_validation(self):
        with pytest.raises(ValueError):
            RefutationBudget(grid_values=(0,))

    def test_refuter_agrees_with_elimination_on_all_2x3_patterns(self):
        import itertools

        from patmat.symbols import QUEST, STAR, ZERO

        for combo in itertools.product((ZERO, STAR, QUEST), repeat=6):
            pattern = PatternMatrix(2, 3, combo)
            if full_row_rank(pattern).full_rank:
                continue
            witness = refute_full_rank(pattern, NO_DESCENT)
            assert witness is not None, pattern.to_text()
            assert numeric_rank(witness, 0) < 2


class TestRankSoundnessSampling:
    def test_sampled_members_of_full_rank_patterns_have_full_rank(self):
        rng = random.Random(59)
        probs = (0.0, 0.25, 1.0)
        checked = 0
        for _ in range(40):
            rows = rng.randint(1, 3)
            pattern = random_pattern(rng, rows, rng.randint(rows, 5))
            if not full_row_rank(pattern).full_rank:
                continue
            for t in range(200):
                dist = ValueDistribution(
                    quest_zero_probability=probs[t % 3],
                    seed=derive_seed(61, checked, t),
                )
                member = sample_member(pattern, dist)
                assert numeric_rank(member, 0) == pattern.rows
            checked += 1
        assert checked > 3


class TestPencil:
    def test_disjoint_stars_spread_over_the_sum(self):
        assert pencil_full_rank(P("* 0"), P("0 *")).full_rank

    def test_single_star_pair_cancels(self):
        verdict = pencil_full_rank(P("*"), P("*"))
        assert not verdict.full_rank
        left, right, total = pencil_refutation_witness(P("*"), P("*"))
        # lambda = -1 turns the pencil into the sum, which is the zero matrix
        assert left - right.scaled(-1) == total
        assert total == R([[0]])
        assert left.entries[0] != 0 and right.entries[0] != 0

    def test_identity_pair_cancels(self):
        assert not pencil_full_rank(identity_pattern(2), identity_pattern(2)).full_rank

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            pencil_full_rank(P("*"), P("* 0"))

    def test_tall_pencil_uses_column_rank(self):
        assert pencil_full_rank(P("*\n0"), P("0\n*")).full_rank
        assert not pencil_full_rank(P("*\n0"), P("*\n0")).full_rank

    def test_sampling_agreement_on_random_pairs(self):
        rng = random.Random(67)
        for trial in range(30):
            a = random_pattern(rng, 3, 4, weights=(5, 3, 2))
            b = random_pattern(rng, 3, 4, weights=(5, 3, 2))
            result = pencil_agreement(a, b, trials=20, seed=trial, lam_count=8)
            assert result.ok, (a.to_text(), b.to_text(), result)


class TestRankOracleHelper:
    def test_full_rank_report(self):
        result = rank_soundness(P("* 0\n? *"), trials=50, seed=0)
        assert result.ok and result.trials == 50

    def test_deficient_report_carries_witness(self):
        result = rank_soundness(P("* *\n* *"), trials=50, seed=0)
        assert result.ok
        assert "witness" in result.detail
