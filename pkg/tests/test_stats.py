import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats as sps

from mifdo.stats import (
    RunBatch,
    compare_algorithms,
    describe,
    signed_ranks,
    wilcoxon_signed_rank,
)


def enumeration_p(diffs):
    """Two-sided exact p by brute force over every sign assignment."""
    ranks, signs = signed_ranks(diffs)
    t_obs = ranks[signs > 0].sum()
    n = ranks.size
    t_all = [sum(r for r, s in zip(ranks, flips) if s) for flips in itertools.product((0, 1), repeat=n)]
    lower = sum(t <= t_obs + 1e-9 for t in t_all) / 2**n
    upper = sum(t >= t_obs - 1e-9 for t in t_all) / 2**n
    return min(1.0, 2 * min(lower, upper))


# -- describe -----------------------------------------------------------------


def test_describe_constant():
    s = describe(RunBatch((1.0, 1.0, 1.0)))
    assert (s.mean, s.sd, s.best, s.worst) == (1.0, 0.0, 1.0, 1.0)
    assert s.n_success is None


def test_describe_two_points():
    s = describe(RunBatch((1.0, 3.0), runtimes=(0.5, 1.5)))
    assert s.mean == 2.0
    assert s.sd == pytest.approx(math.sqrt(2))
    assert s.avg_runtime == 1.0


def test_describe_threshold():
    s = describe(RunBatch((1.0, 3.0), success_threshold=2.0))
    assert (s.n_success, s.n_failure) == (1, 1)


def test_batch_rejects_empty_and_mismatch():
    with pytest.raises(ValueError):
        RunBatch(())
    with pytest.raises(ValueError):
        RunBatch((1.0, 2.0), runtimes=(1.0,))


@given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=30))
def test_describe_sd_matches_numpy(vals):
    s = describe(RunBatch(vals))
    assert s.sd == pytest.approx(np.std(vals, ddof=1), rel=1e-9, abs=1e-6)
    assert s.best <= s.mean + 1e-6 and s.mean <= s.worst + 1e-6


# -- ranks --------------------------------------------------------------------


def test_signed_ranks_ties_and_zeros():
    ranks, signs = signed_ranks([0.0, 1.0, -1.0, 2.0, -3.0])
    np.testing.assert_array_equal(ranks, [1.5, 1.5, 3.0, 4.0])
    np.testing.assert_array_equal(signs, [1, -1, 1, -1])


# -- Wilcoxon -----------------------------------------------------------------


@pytest.mark.parametrize("n, p", [(5, 2 / 32), (6, 2 / 64), (8, 2 / 256)])
def test_exact_all_positive_textbook(n, p):
    res = wilcoxon_signed_rank(np.arange(1, n + 1) + 10.0, np.full(n, 10.0))
    assert res.t_plus == n * (n + 1) / 2 and res.t_minus == 0
    assert res.p_value == pytest.approx(p)


def test_exact_matches_enumeration_fixed_sample():
    a = [2.1, 3.4, 1.9, 5.0, 2.2, 4.1, 3.3, 2.8]
    b = [1.5, 3.9, 1.0, 3.0, 2.5, 2.9, 1.2, 2.9]
    diffs = np.subtract(a, b)
    res = wilcoxon_signed_rank(a, b)
    assert res.method == "exact" and res.n_effective == 8
    assert res.p_value == pytest.approx(enumeration_p(diffs), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6).filter(lambda v: v != 0), min_size=1, max_size=10))
def test_exact_matches_enumeration_with_ties(diffs):
    res = wilcoxon_signed_rank(np.array(diffs, dtype=float), np.zeros(len(diffs)))
    assert res.p_value == pytest.approx(enumeration_p(diffs), abs=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_t_sum_465(seed):
    gen = np.random.default_rng(seed)
    a, b = gen.normal(size=30), gen.normal(size=30)
    res = wilcoxon_signed_rank(a, b)
    assert res.t_plus + res.t_minus == 465
    assert res.method == "normal"


def test_identical_samples_tie():
    a = [1.0, 2.0, 3.0]
    res = wilcoxon_signed_rank(a, a)
    assert res.win == "tie" and res.p_value == 1.0 and res.symbol == "="


def test_length_mismatch():
    with pytest.raises(ValueError):
        wilcoxon_signed_rank([1.0, 2.0], [1.0])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(5, 30))
def test_antisymmetry(seed, n):
    gen = np.random.default_rng(seed)
    a, b = gen.normal(size=n), gen.normal(size=n)
    ab, ba = wilcoxon_signed_rank(a, b), wilcoxon_signed_rank(b, a)
    assert ab.t_plus == ba.t_minus and ab.t_minus == ba.t_plus
    assert ab.p_value == pytest.approx(ba.p_value)
    assert {ab.win, ba.win} in ({"tie"}, {"plus", "minus"})


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([0.25, 4.0, -8.0]))
def test_translation_invariance(seed, c):
    gen = np.random.default_rng(seed)
    a, b = gen.normal(size=15), gen.normal(size=15)
    r1, r2 = wilcoxon_signed_rank(a, b), wilcoxon_signed_rank(a + c, b + c)
    assert r1.t_plus == r2.t_plus and r1.p_value == pytest.approx(r2.p_value)


@pytest.mark.parametrize("n", [6, 10, 12])
def test_exact_matches_scipy(n):
    gen = np.random.default_rng(n)
    for _ in range(20):
        d = gen.normal(size=n)
        ours = wilcoxon_signed_rank(d, np.zeros(n)).p_value
        ref = sps.wilcoxon(d, method="exact").pvalue
        assert ours == pytest.approx(ref, abs=1e-12)


def test_normal_matches_scipy_approx():
    gen = np.random.default_rng(30)
    for _ in range(20):
        d = gen.normal(size=30)
        ours = wilcoxon_signed_rank(d, np.zeros(30)).p_value
        ref = sps.wilcoxon(d, method="approx", correction=True).pvalue
        assert ours == pytest.approx(ref, rel=1e-9)


def test_dominant_sample_wins():
    gen = np.random.default_rng(7)
    b = gen.uniform(1, 2, size=30)
    a = b - gen.uniform(0.1, 0.5, size=30)
    res = wilcoxon_signed_rank(a, b)
    assert res.win == "plus" and res.symbol == "+" and res.p_value < 1e-5


# -- comparison tables --------------------------------------------------------


def _batches(problems, algos, gen, shift=None):
    out = {}
    for p in problems:
        base = gen.uniform(0, 1, size=30)
        out[p] = {a: RunBatch(base - (shift or {}).get(a, 0.0)) for a in algos}
    return out


def test_compare_identical_all_ties():
    b = _batches(["p1", "p2", "p3"], ["mifdo", "fdo"], np.random.default_rng(0))
    table = compare_algorithms(b, "mifdo")
    assert table.tally("fdo") == (0, 3, 0)


def test_compare_dominant_reference_wins():
    gen = np.random.default_rng(1)
    b = {}
    for p in ["p1", "p2"]:
        base = gen.uniform(1, 2, size=30)
        b[p] = {"mifdo": RunBatch(base - gen.uniform(0.1, 0.2, size=30)), "fdo": RunBatch(base)}
    table = compare_algorithms(b, "mifdo")
    assert table.tally("fdo") == (2, 0, 0)
    # subsample check against the enumeration oracle
    ref = np.array(b["p1"]["mifdo"].final_bests[:8]) - np.array(b["p1"]["fdo"].final_bests[:8])
    assert enumeration_p(ref) == pytest.approx(2 / 256)


def test_tally_partitions_problems():
    gen = np.random.default_rng(2)
    b = {}
    for i, p in enumerate(["a", "b", "c", "d"]):
        base = gen.uniform(1, 2, size=30)
        delta = [-0.5, 0.0, 0.5, 0.0][i]
        b[p] = {"mifdo": RunBatch(base + delta), "fdo": RunBatch(base), "x": RunBatch(base * 2)}
    table = compare_algorithms(b, "mifdo")
    for comp in ("fdo", "x"):
        assert sum(table.tally(comp)) == 4
    assert table.tally("fdo") == (1, 2, 1)


def test_compare_missing_batch():
    gen = np.random.default_rng(3)
    b = {"p1": {"mifdo": RunBatch(gen.uniform(size=5)), "fdo": RunBatch(gen.uniform(size=5))},
         "p2": {"mifdo": RunBatch(gen.uniform(size=5))}}
    with pytest.raises(ValueError, match="fdo"):
        compare_algorithms(b, "mifdo")
