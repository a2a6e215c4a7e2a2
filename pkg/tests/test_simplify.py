import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dfrechet.geometry import Norm, as_curve, dist
from dfrechet.oracle import dfd_dp
from dfrechet.simplify import greedy_simplify
from helpers import random_pair, ulp_tol


def test_example_trace():
    s = greedy_simplify([(0, 0), (0.4, 0), (1.2, 0), (2.0, 0)], 1.0)
    assert s.index_map == (0, 2, 3)
    assert s.curve.tolist() == [[0, 0], [1.2, 0], [2.0, 0]]
    assert s.mu == 1.0


def test_mu_zero_distinct_is_identity():
    c = np.random.default_rng(0).normal(size=(20, 2))
    s = greedy_simplify(c, 0.0)
    assert s.index_map == tuple(range(20))
    np.testing.assert_array_equal(s.curve, c)


def test_mu_zero_collapses_duplicate_runs():
    c = [(0, 0), (0, 0), (1, 0), (1, 0), (1, 0), (2, 0), (2, 0)]
    assert greedy_simplify(c, 0.0).index_map == (0, 2, 5, 6)


def test_huge_mu_keeps_endpoints():
    c = np.random.default_rng(1).normal(size=(15, 3))
    assert greedy_simplify(c, 1e6).index_map == (0, 14)


def test_single_vertex_and_closed_curve():
    assert greedy_simplify([(1, 1)], 0.5).index_map == (0,)
    # last vertex coincides with the first: still appended once, by index
    assert greedy_simplify([(0, 0), (0.1, 0), (0, 0)], 1.0).index_map == (0, 2)
    with pytest.raises(ValueError):
        greedy_simplify([(0, 0)], -1)


def check_invariants(c, s, norm):
    idx = s.index_map
    n = len(c)
    assert idx[0] == 0 and idx[-1] == n - 1
    assert all(x < y for x, y in zip(idx, idx[1:]))
    np.testing.assert_array_equal(s.curve, np.asarray(c)[list(idx)])
    for k in range(len(idx) - 1):
        for t in range(idx[k], idx[k + 1]):
            assert dist(c[idx[k]], c[t], norm) <= s.mu
        if k < len(idx) - 2:
            assert dist(c[idx[k]], c[idx[k + 1]], norm) > s.mu


curves = st.integers(1, 4).flatmap(
    lambda d: arrays(np.float64, st.tuples(st.integers(1, 30), st.just(d)),
                     elements=st.integers(-20, 20).map(lambda k: k / 4)))


@settings(max_examples=400, deadline=None)
@given(curves, st.floats(0, 5), st.sampled_from(list(Norm)))
def test_invariants_property(c, mu, norm):
    s = greedy_simplify(c, mu, norm)
    check_invariants(c, s, norm)
    again = greedy_simplify(c, mu, norm)
    assert again.index_map == s.index_map
    np.testing.assert_array_equal(again.curve, s.curve)


def test_invariants_long_random_walks():
    rng = np.random.default_rng(2)
    for _ in range(200):
        c = np.cumsum(rng.normal(size=(int(rng.integers(1, 300)), 2)) * rng.uniform(0.01, 1), axis=0)
        norm = list(Norm)[int(rng.integers(3))]
        check_invariants(c, greedy_simplify(c, float(rng.uniform(0, 3)), norm), norm)


def test_sandwich_small_sample():
    rng = np.random.default_rng(3)
    for _ in range(500):
        a, b = random_pair(rng, max_n=25)
        norm = list(Norm)[int(rng.integers(3))]
        mu = float(rng.uniform(0, 2))
        v = dfd_dp(a, b, norm).value
        vs = dfd_dp(greedy_simplify(a, mu, norm).curve, greedy_simplify(b, mu, norm).curve,
                    norm).value
        tol = ulp_tol(v, vs, mu)
        assert v - 2 * mu - tol <= vs <= v + mu + tol


def test_output_is_read_only_and_input_untouched():
    c = as_curve(np.random.default_rng(4).normal(size=(10, 2)))
    before = c.copy()
    s = greedy_simplify(c, 0.5)
    assert not s.curve.flags.writeable
    np.testing.assert_array_equal(c, before)
