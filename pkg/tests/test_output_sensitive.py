import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfrechet.errors import ContractViolation
from dfrechet.freespace import build_white_cells, intervals_from_column, runs
from dfrechet.generators import generate_lattice_sigma, lattice_center
from dfrechet.geometry import Norm, as_curve, pairwise
from dfrechet.oracle import dfd_decision_naive, dfd_dp, reachable_column_naive
from dfrechet.output_sensitive import (PairwiseDistanceSelector, SwitchingCellSet,
                                       columns_from_switching, compute_switching_cells,
                                       decision_switching, dfd_output_sensitive, merge_col,
                                       reachable_columns, select_pairwise_distance)
from dfrechet.stats import ProbeStats
from helpers import random_delta, random_pair

A2 = [(0, 0), (2, 0)]
B2 = [(0, 1), (2, 1)]


def test_switching_examples():
    s = compute_switching_cells(A2, B2, 1.5)
    assert s.rows == ([0], [1]) and s.total_count == 2 and s.white_count == 2
    big = compute_switching_cells(A2, B2, 100)
    assert big.rows == ([0, 1], [0, 1])
    assert big.lows == ([True, False], [True, False])
    assert big.highs == ([False, True], [False, True])
    assert compute_switching_cells(A2, B2, 0).rows == ([], [])


def brute_switching(a, b, delta, norm):
    white = pairwise(as_curve(a), as_curve(b), norm) <= delta
    n, m = white.shape
    rows = []
    for i in range(n):
        col = []
        for j in range(m):
            if not white[i, j]:
                continue
            low = j == 0 or not white[i, j - 1]
            high = j == m - 1 or not white[i, j + 1]
            if low or high:
                col.append((j, low, high))
        rows.append(col)
    return rows


def test_switching_vs_brute_force():
    rng = np.random.default_rng(0)
    for _ in range(300):
        a, b = random_pair(rng, max_n=25)
        norm = list(Norm)[int(rng.integers(3))]
        delta = random_delta(rng, a, b, norm)
        s = compute_switching_cells(a, b, delta, norm)
        want = brute_switching(a, b, delta, norm)
        got = [list(zip(r, lo, hi)) for r, lo, hi in zip(s.rows, s.lows, s.highs)]
        assert got == want
        w = build_white_cells(a, b, delta, norm)
        assert s.white_count == w.size
        n_runs = sum(len(intervals_from_column(w, i)) for i in range(len(a)))
        assert s.total_count <= 2 * n_runs and s.total_count <= 2 * w.size


def test_columns_from_switching_examples():
    s = SwitchingCellSet(([0, 3],), ([True, False],), ([False, True],), 4)
    assert columns_from_switching(s) == [[(0, 3)]]
    s = SwitchingCellSet(([2],), ([True],), ([True],), 1)
    assert columns_from_switching(s) == [[(2, 2)]]
    with pytest.raises(ContractViolation):
        columns_from_switching(SwitchingCellSet(([1, 2],), ([True, True],), ([False, False],), 2))
    with pytest.raises(ContractViolation):
        columns_from_switching(SwitchingCellSet(([1],), ([False],), ([True],), 1))
    with pytest.raises(ContractViolation):
        columns_from_switching(SwitchingCellSet(([1],), ([True],), ([False],), 1))


def test_columns_match_white_runs():
    rng = np.random.default_rng(1)
    for _ in range(200):
        a, b = random_pair(rng, max_n=30)
        delta = random_delta(rng, a, b)
        cols = columns_from_switching(compute_switching_cells(a, b, delta))
        w = build_white_cells(a, b, delta)
        assert cols == [intervals_from_column(w, i) for i in range(len(a))]


def test_merge_col_examples():
    # the three hand traces, shifted to 0-based rows
    assert merge_col([(0, 1)], [(1, 3)]) == [(1, 3)]
    assert merge_col([], [(0, 5)]) == []
    assert merge_col([(0, 0)], [(2, 4)]) == []


def test_merge_col_entry_rules():
    assert merge_col([(3, 4)], [(0, 9)]) == [(3, 9)]
    assert merge_col([(5, 5)], [(6, 7)]) == [(6, 7)]  # diagonal step
    assert merge_col([(1, 1), (4, 4)], [(0, 6)]) == [(1, 6)]  # second entry does not reopen
    assert merge_col([(0, 9)], [(1, 2), (4, 4), (7, 8)]) == [(1, 2), (4, 4), (7, 8)]
    assert merge_col([(2, 2)], [(0, 1), (3, 3)]) == [(3, 3)]


def reference_merge(r_prev, c_i):
    reach_prev = {j for lo, hi in r_prev for j in range(lo, hi + 1)}
    out = set()
    for lo, hi in c_i:
        for j in range(lo, hi + 1):
            if j in reach_prev or j - 1 in reach_prev or j - 1 in out:
                out.add(j)
    return runs(sorted(out))


def interval_lists(max_row=30):
    return st.lists(st.integers(0, max_row), max_size=20).map(lambda xs: runs(sorted(set(xs))))


@settings(max_examples=1000, deadline=None)
@given(interval_lists(), interval_lists())
def test_merge_col_matches_recurrence(r_prev, c_i):
    out = merge_col(r_prev, c_i)
    assert out == reference_merge(r_prev, c_i)
    covered = {j for lo, hi in c_i for j in range(lo, hi + 1)}
    assert all(j in covered for lo, hi in out for j in range(lo, hi + 1))
    assert len(out) <= len(c_i)


def test_reachable_columns_match_naive():
    rng = np.random.default_rng(2)
    for _ in range(150):
        a, b = random_pair(rng, max_n=20)
        norm = list(Norm)[int(rng.integers(3))]
        delta = random_delta(rng, a, b, norm)
        reach = reachable_columns(a, b, delta, norm)
        for i in range(len(a)):
            got = {j for lo, hi in reach[i] for j in range(lo, hi + 1)}
            assert got == reachable_column_naive(a, b, delta, norm, i)


def test_decision_examples():
    assert decision_switching(A2, B2, 1.5)
    assert not decision_switching(A2, B2, 0.99)
    assert decision_switching(A2, A2, 0.0)


def test_decision_matches_naive():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        a, b = random_pair(rng, max_n=20)
        norm = list(Norm)[int(rng.integers(3))]
        delta = random_delta(rng, a, b, norm)
        assert decision_switching(a, b, delta, norm) == dfd_decision_naive(a, b, delta, norm)


def test_selection_examples():
    assert select_pairwise_distance(A2, B2, 1) == 1.0
    assert select_pairwise_distance(A2, B2, 4) == math.sqrt(5)
    assert select_pairwise_distance(A2, A2, 1) == 0.0
    with pytest.raises(IndexError):
        select_pairwise_distance(A2, B2, 0)
    with pytest.raises(IndexError):
        select_pairwise_distance(A2, B2, 5)


def test_selection_matches_partition():
    rng = np.random.default_rng(4)
    a, b = rng.normal(size=(13, 2)), rng.normal(size=(7, 2))
    sel = PairwiseDistanceSelector(a, b)
    flat = pairwise(as_curve(a), as_curve(b), Norm.L2).ravel()
    for k in range(1, len(sel) + 1):
        assert sel.select(k) == np.partition(flat, k - 1)[k - 1]


def test_output_sensitive_value():
    r = dfd_output_sensitive(A2, B2)
    assert r.value == 1.0 and r.max_switching_cells >= 2
    r = dfd_output_sensitive(A2, A2)
    assert r.value == 0.0 and r.max_switching_cells > 0
    rng = np.random.default_rng(5)
    for _ in range(300):
        a, b = random_pair(rng, max_n=25)
        norm = list(Norm)[int(rng.integers(3))]
        stats = ProbeStats()
        r = dfd_output_sensitive(a, b, norm, stats)
        assert r.value == dfd_dp(a, b, norm).value
        assert stats.probes >= 1 and r.max_switching_cells == stats.max_switching


def test_lattice_switching_much_smaller_than_white():
    ratios = []
    for n in (27, 216, 1000, 4096):
        sigma, delta = generate_lattice_sigma(n)
        s = compute_switching_cells(lattice_center(n), sigma, delta)
        ratios.append(s.total_count / s.white_count)
    assert all(x > y for x, y in zip(ratios, ratios[1:]))
    sigma, delta = generate_lattice_sigma(216)
    pi = lattice_center(216, copies=3)
    r = dfd_output_sensitive(pi, sigma)
    assert r.value == dfd_dp(pi, sigma).value
