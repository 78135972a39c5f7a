import math
import statistics
from pathlib import Path

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy import stats

from woabat.analysis import (
    MalformedInputError,
    ResultsMatrix,
    friedman_statistic,
    rank_by_mean,
    read_results,
    results_matrix_from_records,
    summarize_runs,
    win_count,
)

DATA = Path(__file__).parent / "data"


def brute_force_ranks(row):
    """Rank i = 1 + #(strictly smaller) + (#ties excluding i) / 2."""
    row = list(row)
    return [1 + sum(v < x for v in row) + 0.5 * (sum(v == x for v in row) - 1) for x in row]


def matrix(means):
    means = np.asarray(means, dtype=float)
    return ResultsMatrix([f"F{i}" for i in range(means.shape[0])],
                         [f"A{j}" for j in range(means.shape[1])], means)


finite = st.floats(-1e6, 1e6, allow_nan=False)
means_matrices = st.tuples(st.integers(1, 8), st.integers(1, 6)).flatmap(
    lambda s: arrays(float, s, elements=st.sampled_from([-2.0, 0.0, 1.0, 1.5, 3.0, 7.0]) | finite))


# -- summarize_runs ---------------------------------------------------------------

def test_summarize_examples():
    s = summarize_runs([1, 1, 1])
    assert (s.mean, s.std) == (1.0, 0.0)
    s = summarize_runs([0, 2])
    assert s.mean == 1.0 and s.std == pytest.approx(math.sqrt(2), abs=1e-15)
    s = summarize_runs([5])
    assert (s.mean, s.std, s.best, s.worst, s.median, s.n) == (5, 0, 5, 5, 5, 1)
    with pytest.raises(ValueError):
        summarize_runs([])


@given(st.lists(finite, min_size=1, max_size=40), st.randoms())
def test_summary_invariants(xs, rnd):
    s = summarize_runs(xs)
    assert s.best <= s.median <= s.worst
    assert s.best <= s.mean <= s.worst
    assert s.std >= 0
    if len(xs) > 1:
        assert s.std == pytest.approx(statistics.stdev(xs), rel=1e-9, abs=1e-6)
    shuffled = list(xs)
    rnd.shuffle(shuffled)
    t = summarize_runs(shuffled)
    assert (t.best, t.worst, t.median, t.n) == (s.best, s.worst, s.median, s.n)
    assert t.mean == pytest.approx(s.mean, rel=1e-12, abs=1e-9)


# -- rank_by_mean -------------------------------------------------------------------

def test_rank_examples():
    assert list(rank_by_mean(matrix([[3.0, 1.0, 2.0]])).per_function_ranks[0]) == [3, 1, 2]
    assert list(rank_by_mean(matrix([[1.0, 1.0, 5.0]])).per_function_ranks[0]) == [1.5, 1.5, 3]


@given(means_matrices)
def test_ranks_match_brute_force(means):
    table = rank_by_mean(matrix(means))
    for row, ranks in zip(means, table.per_function_ranks):
        assert list(ranks) == brute_force_ranks(row)
        k = len(row)
        assert ranks.sum() == k * (k + 1) / 2
        if len(set(row.tolist())) == k:
            assert sorted(ranks) == list(range(1, k + 1))
    np.testing.assert_allclose(table.overall_rank, table.per_algorithm_sum / means.shape[0])


@given(means_matrices, st.randoms())
def test_ranks_invariant_under_monotone_row_transform_and_equivariant(means, rnd):
    table = rank_by_mean(matrix(means))
    transformed = rank_by_mean(matrix(np.arctan(means / 1e3) * 7 + 2))
    # arctan is strictly increasing; collapse only happens if floats coincide
    for row, r0, r1 in zip(means, table.per_function_ranks, transformed.per_function_ranks):
        if len(set((np.arctan(row / 1e3) * 7 + 2).tolist())) == len(set(row.tolist())):
            np.testing.assert_array_equal(r0, r1)
    perm = list(range(means.shape[1]))
    rnd.shuffle(perm)
    permuted = rank_by_mean(matrix(means[:, perm]))
    np.testing.assert_array_equal(permuted.per_function_ranks, table.per_function_ranks[:, perm])


def test_results_matrix_validation():
    with pytest.raises(ValueError):
        ResultsMatrix(["F1"], ["a", "b"], [[1.0]])
    with pytest.raises(ValueError):
        ResultsMatrix(["F1"], ["a"], [[np.inf]])
    with pytest.raises(ValueError):
        ResultsMatrix(["F1", "F1"], ["a"], [[1.0], [2.0]])


# -- Friedman --------------------------------------------------------------------------

def test_friedman_examples():
    same_order = rank_by_mean(matrix(np.tile([1.0, 2.0, 3.0], (10, 1))))
    assert friedman_statistic(same_order) == pytest.approx(20.0, abs=1e-12)
    mixed = rank_by_mean(matrix([[1.0, 2.0], [2.0, 1.0]]))
    assert friedman_statistic(mixed) == 0.0
    with pytest.raises(ValueError):
        friedman_statistic(rank_by_mean(matrix([[1.0, 2.0]])))
    with pytest.raises(ValueError):
        friedman_statistic(rank_by_mean(matrix([[1.0], [2.0]])))


@given(st.integers(2, 10), st.integers(3, 6), st.integers(0, 2**32 - 1))
def test_friedman_matches_scipy_without_ties(N, k, seed):
    means = np.random.default_rng(seed).normal(size=(N, k))
    assume(all(len(set(r)) == k for r in means.tolist()))
    ours = friedman_statistic(rank_by_mean(matrix(means)))
    theirs = stats.friedmanchisquare(*means.T).statistic
    assert ours == pytest.approx(theirs, rel=1e-10, abs=1e-10)


@given(means_matrices)
def test_friedman_nonnegative_and_zero_iff_equal_mean_ranks(means):
    assume(means.shape[0] >= 2 and means.shape[1] >= 2)
    table = rank_by_mean(matrix(means))
    chi2 = friedman_statistic(table)
    assert chi2 >= 0
    mean_ranks = table.per_function_ranks.mean(axis=0)
    assert (chi2 == 0) == bool(np.allclose(mean_ranks, mean_ranks[0], rtol=0, atol=1e-12))


# -- win_count ---------------------------------------------------------------------------

def test_win_count_examples():
    assert win_count([1, 2, 3], [1, 2, 3]) == (0, 3, 0)
    assert win_count([1, 5], [2, 4]) == (1, 0, 1)
    with pytest.raises(ValueError):
        win_count([1, 2], [1])


@given(st.lists(st.tuples(finite, finite), max_size=30))
def test_win_count_antisymmetric(pairs):
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    w, t, l = win_count(a, b)
    assert win_count(b, a) == (l, t, w)
    assert w + t + l == len(pairs)


def test_published_table_win_counts():
    t9 = read_results(DATA / "table9_means.csv")
    w, t, l = win_count(t9.column("WOA-BAT"), t9.column("WOA"))
    assert (w, t, l) == (15, 1, 7)
    wins = [f for f, a, b in zip(t9.functions, t9.column("WOA-BAT"), t9.column("WOA")) if a < b]
    assert wins == ["F3", "F4", "F5", "F6", "F8", "F11", "F12", "F13", "F14", "F15", "F17",
                    "F19", "F20", "F22", "F23"]
    t10 = read_results(DATA / "table10_means.csv")
    assert win_count(t10.column("WOA-BAT"), t10.column("WOA")) == (13, 2, 10)
    t11 = read_results(DATA / "table11_means.csv")
    assert win_count(t11.column("WOA-BAT"), t11.column("WOA"))[0] == 7


def test_published_position_table_aggregates():
    table = rank_by_mean(read_results(DATA / "table13_positions.csv"))
    algs = list(table.algorithms)
    assert table.per_algorithm_sum[algs.index("WOA-BAT")] == 40
    assert table.overall_rank[algs.index("WOA-BAT")] == 40 / 25 == 1.6
    assert table.per_algorithm_sum[algs.index("BSO")] == 67
    assert table.overall_rank[algs.index("BSO")] == 2.68


# -- file input -------------------------------------------------------------------------------

def test_read_results_reports_offending_line(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("function,algorithm,mean\nF1,a,1.0\nF1,b,oops\n")
    with pytest.raises(MalformedInputError) as exc:
        read_results(p)
    assert exc.value.line == 3 and "oops" in str(exc.value)
    p.write_text("function,algo,mean\n")
    with pytest.raises(MalformedInputError):
        read_results(p)
    p.write_text("function,algorithm,mean\nF1,a,1\nF2,b,2\n")
    with pytest.raises(MalformedInputError):  # incomplete matrix
        read_results(p)


def test_records_keep_first_seen_order():
    m = results_matrix_from_records([("F2", "b", 1.0), ("F2", "a", 2.0), ("F1", "b", 3.0),
                                     ("F1", "a", 4.0)])
    assert m.functions == ("F2", "F1") and m.algorithms == ("b", "a")
    with pytest.raises(ValueError):
        results_matrix_from_records([("F1", "a", 1.0), ("F1", "a", 2.0)])
