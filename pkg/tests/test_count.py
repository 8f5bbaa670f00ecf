import math

import numpy as np
import pytest

from qavail.count import (
    classical_queries,
    count,
    count_distribution,
    distribution_median,
    distribution_mode,
    grid_step,
    query_budgets,
)
from qavail.statevec import GuessPrep, Oracle

W = [0.64, 0.12, 0.12, 0.12]


def test_uniform_exact_count():
    for seed in range(10):
        est = count(GuessPrep.uniform(), Oracle(4, {0}), 6, seed)
        assert est.t_hat == 1.0
        assert est.t_true == 1
        assert not est.biased


def test_empty_oracle_counts_zero():
    est = count(GuessPrep.from_weights(W), Oracle(4), 8, 0)
    assert est.t_hat == 0.0 and est.biased


def test_weighted_overcount_mode():
    pairs = count_distribution(GuessPrep.from_weights(W), Oracle(4, {0}), 16)
    assert distribution_mode(pairs) == pytest.approx(4 * math.sin(5 * math.pi / 16) ** 2)
    assert distribution_mode(pairs) == pytest.approx(2.765, abs=0.01)
    assert distribution_median(pairs) > 1


@pytest.mark.parametrize(
    "prep, good, n, M, expected",
    [
        (GuessPrep.uniform(), {0}, 4, 6, [(1.0, 1.0)]),
        (GuessPrep.uniform(), set(), 4, 6, [(0.0, 1.0)]),
        (GuessPrep.uniform(), {0, 1, 2, 3}, 8, 8, [(4.0, 1.0)]),
    ],
)
def test_count_distribution_point_masses(prep, good, n, M, expected):
    pairs = [(v, p) for v, p in count_distribution(prep, Oracle(n, good), M) if p > 1e-9]
    assert len(pairs) == len(expected)
    for (v, p), (ev, ep) in zip(pairs, expected):
        assert v == ev
        assert p == pytest.approx(ep, abs=1e-9)


def test_count_distribution_merges_symmetric_outcomes():
    pairs = count_distribution(GuessPrep.from_weights(W), Oracle(4, {0}), 16)
    assert len(pairs) == 16 // 2 + 1
    assert sum(p for _, p in pairs) == pytest.approx(1.0, abs=1e-12)
    values = [v for v, _ in pairs]
    assert values == sorted(values)


@pytest.mark.parametrize("n, t, M", [(4, 1, 6), (8, 4, 8), (16, 4, 6), (16, 12, 3), (64, 16, 12)])
def test_uniform_faithfulness_exact_phase(n, t, M):
    # exact phase: asin(sqrt(t/n)) / pi = k / M
    k = M * math.asin(math.sqrt(t / n)) / math.pi
    assert k == pytest.approx(round(k), abs=1e-9)
    pairs = count_distribution(GuessPrep.uniform(), Oracle(n, set(range(t))), M)
    mass = sum(p for v, p in pairs if abs(v - t) < 1e-9)
    assert mass >= 1 - 1e-9


def _bias_grid():
    rng = np.random.default_rng(7)
    cases = []
    for n in (4, 8, 16, 32, 64):
        for _ in range(6):
            t = int(rng.integers(1, n))
            good = rng.choice(n, size=t, replace=False)
            factor = float(rng.choice([0.2, 0.35, 3.0, 6.0]))
            w = np.ones(n)
            w[good] *= factor
            cases.append((n, frozenset(good.tolist()), w))
    return cases


@pytest.mark.parametrize("n, good, w", _bias_grid())
def test_bias_direction(n, good, w):
    prep = GuessPrep.from_weights(w)
    oracle = Oracle(n, good)
    a = float(prep.weights[list(good)].sum())
    # a register fine enough that one grid step cannot cross from a*N to t
    M = 128
    med = distribution_median(count_distribution(prep, oracle, M))
    if a > oracle.t / n:
        assert med > oracle.t
    else:
        assert med < oracle.t


def test_mirrored_underweighting():
    pairs = count_distribution(GuessPrep.from_weights([0.12, 0.64, 0.12, 0.12]), Oracle(4, {0}), 16)
    assert distribution_median(pairs) < 1


def test_scaling_consistency():
    prep = GuessPrep.from_weights(np.arange(1, 40))
    oracle = Oracle(39, frozenset(range(19)))
    for seed in range(30):
        est = count(prep, oracle, 32, seed)
        assert est.t_hat == 39 * est.a_hat
        assert 0 <= est.t_hat <= 39
        assert est.q_applications == 32 * 31 // 2


def test_grid_step():
    assert grid_step(4, 1, 6) == pytest.approx(4 * (math.sin(math.pi / 3) ** 2 - 0.25))


def test_classical_vs_counting_budgets():
    assert classical_queries(1) == 1
    # (1 - 1/N)^q <= 1/3 -> q ~ N ln 3
    for n in (64, 1024, 2**14):
        q = classical_queries(n)
        assert (1 - 1 / n) ** q <= 1 / 3 < (1 - 1 / n) ** (q - 1)
        assert q == pytest.approx(n * math.log(3), rel=0.01)
    b = query_budgets(1024)
    assert b["M"] == 32
    assert b["counting_q_applications"] == 32 * 31 // 2
    assert b["counting_q_depth"] == 31
