"""Exit criteria. Each test prints one PASS/FAIL line (run with ``-s`` to see them)."""
import math
import time

import numpy as np

from qavail.amplify import closed_form_success, schedule, success_probability
from qavail.cognition import (
    GroupSpec,
    letter_position_oracle,
    run_letter_trials,
    run_names_scenario,
    sample_lexicon,
)
from qavail.count import count, count_distribution, distribution_median, distribution_mode
from qavail.estimate import (
    EstimationConfig,
    est_amp_distribution,
    estimate_from_outcome,
    kernel_distribution,
    total_variation,
)
from qavail.statevec import GuessPrep, Oracle, apply_q, good_probability, prepare


def report(number, name, passed, detail):
    print(f"\n[{'PASS' if passed else 'FAIL'}] criterion {number}: {name} -- {detail}")
    assert passed, detail


def single_good(a, n):
    w = np.full(n, (1 - a) / (n - 1))
    w[0] = a
    return GuessPrep.from_weights(w), Oracle(n, {0})


def test_1_amplification_guarantee():
    start = time.perf_counter()
    worst = math.inf
    for n in (16, 256):
        for k in range(1, 100):
            a = k / 100
            prep, oracle = single_good(a, n)
            p = success_probability(prep, oracle, math.floor(math.pi / (4 * math.asin(math.sqrt(a))) + 1e-9))
            assert schedule(a).m == math.floor(math.pi / (4 * math.asin(math.sqrt(a))) + 1e-9)
            worst = min(worst, p - max(a, 1 - a))
    elapsed = time.perf_counter() - start
    report(1, "amplification guarantee", worst >= -1e-9 and elapsed < 5,
           f"min(p - max(a,1-a)) = {worst:.3e}, {elapsed:.2f}s")


def test_2_closed_form_rotation():
    start = time.perf_counter()
    rng = np.random.default_rng(2)
    worst = 0.0
    for n in (1, 2, 5, 16, 33, 64):
        preps = [GuessPrep.uniform()] + [GuessPrep.from_weights(rng.random(n)) for _ in range(3)]
        for prep in preps:
            oracle = Oracle(n, frozenset(rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False).tolist()))
            s = prepare(prep, n)
            a = good_probability(s, oracle)
            st = s
            for m in range(51):
                worst = max(worst, abs(good_probability(st, oracle) - closed_form_success(a, m)))
                st = apply_q(st, prep, oracle)
    elapsed = time.perf_counter() - start
    report(2, "closed-form rotation", worst <= 1e-9 and elapsed < 5, f"max error {worst:.3e}, {elapsed:.2f}s")


def test_3_speedup_shape():
    vals = {k: schedule(1 / 2**k).m * math.sqrt(1 / 2**k) for k in (10, 14, 18)}
    ok = all(0.75 <= v <= 0.81 for v in vals.values())
    report(3, "speedup shape", ok, ", ".join(f"N=2^{k}: {v:.5f}" for k, v in vals.items()))


def test_4_oracle_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(4)
    worst = 0.0
    cases = 0
    for n in (4, 16, 64):
        preps = [(GuessPrep.uniform(), Oracle(n, frozenset(range(max(1, n // 4)))))]
        for _ in range(10):
            good = rng.choice(n, size=int(rng.integers(1, n)), replace=False)
            preps.append((GuessPrep.from_weights(rng.random(n)), Oracle(n, frozenset(good.tolist()))))
        for M in (4, 8, 16, 32):
            for prep, oracle in preps:
                cfg = EstimationConfig(M, prep, oracle)
                worst = max(worst, total_variation(est_amp_distribution(cfg), kernel_distribution(cfg.a, M)))
                cases += 1
    elapsed = time.perf_counter() - start
    report(4, "estimation oracle equivalence", worst <= 1e-8 and elapsed < 60,
           f"{cases} cases, max TV {worst:.3e}, {elapsed:.2f}s")


def test_5_exact_phase_determinism():
    prep, oracle = GuessPrep.uniform(), Oracle(4, {0})
    dist = est_amp_distribution(EstimationConfig(6, prep, oracle))
    mass = sum(p for y, p in enumerate(dist) if estimate_from_outcome(y, 6) == 0.25)
    t_hats = {count(prep, oracle, 6, seed).t_hat for seed in range(20)}
    report(5, "exact-phase determinism", mass >= 1 - 1e-9 and t_hats == {1.0},
           f"P(a_hat = 0.25) = {mass:.12f}, t_hat values {sorted(t_hats)}")


def test_6_counting_bias():
    oracle = Oracle(4, {0})
    over = count_distribution(GuessPrep.from_weights([0.64, 0.12, 0.12, 0.12]), oracle, 16)
    under = count_distribution(GuessPrep.from_weights([0.12, 0.64, 0.12, 0.12]), oracle, 16)
    med_over, mode_over, med_under = distribution_median(over), distribution_mode(over), distribution_median(under)
    ok = med_over > 1 and abs(mode_over - 2.765) <= 0.01 and med_under < 1
    report(6, "counting bias", ok,
           f"over-weighted median {med_over:.4f}, mode {mode_over:.4f}; under-weighted median {med_under:.4f}")


def _names_expected_rate(groups, M, budget):
    """Exact agreement rate (ties excluded) from binomial recall counts and the
    exact count distributions."""
    from scipy.stats import binom

    from qavail.amplify import availability_by_speed
    from qavail.cognition import names_guess_state

    prep, oracles = names_guess_state(groups)
    s = prepare(prep, oracles[0].dim)
    recall, est = [], []
    for o in oracles:
        a = good_probability(s, o)
        attempts = budget // availability_by_speed(a)
        p = success_probability(prep, o, schedule(a).m)
        recall.append(binom.pmf(np.arange(attempts + 1), attempts, p))
        est.append(count_distribution(prep, o, M))
    joint = np.outer(recall[0], recall[1])
    diff = np.subtract.outer(np.arange(recall[0].size), np.arange(recall[1].size))
    r_gt, r_lt = joint[diff > 0].sum(), joint[diff < 0].sum()
    e_gt = sum(p * q for v, p in est[0] for u, q in est[1] if v > u)
    e_lt = sum(p * q for v, p in est[0] for u, q in est[1] if v < u)
    agree, disagree = r_gt * e_gt + r_lt * e_lt, r_gt * e_lt + r_lt * e_gt
    return agree / (agree + disagree)


def test_7_availability_correlation():
    groups = [GroupSpec("famous", 19, 2.0), GroupSpec("other", 20, 1.0)]
    start = time.perf_counter()
    rep = run_names_scenario(groups, M=32, budget=100, seed=0, trials=100)
    elapsed = time.perf_counter() - start
    s = rep.summary
    expected = _names_expected_rate(groups, 32, 100)
    # golden for seed base 0, budget 100
    assert (s.n_agree, s.n_disagree, s.n_ties) == (94, 6, 0)
    report(7, "availability correlation", s.agreement_rate >= 0.95 and elapsed < 30,
           f"agreement {s.agreement_rate:.3f} ({s.n_agree}/{s.n_agree + s.n_disagree}, {s.n_ties} ties), "
           f"exact expectation {expected:.4f}, rank corr {s.rank_correlation:.3f}, {elapsed:.2f}s")


def test_8_letter_bias_reproduction():
    lex = sample_lexicon()
    first, third = letter_position_oracle(lex, "r", 1), letter_position_oracle(lex, "r", 3)
    start = time.perf_counter()
    biased = run_letter_trials(lex, "r", boost=4.0, M=256, budget=60, seed=0, trials=100)
    control = run_letter_trials(lex, "r", boost=1.0, M=256, budget=60, seed=0, trials=100)
    elapsed = time.perf_counter() - start
    a1, a3 = biased[0].per_group[0].a, biased[0].per_group[1].a
    contradict = sum(r.per_group[0].a_hat > r.per_group[1].a_hat for r in biased)
    follow = sum(r.per_group[0].a_hat < r.per_group[1].a_hat for r in control)
    ok = first.t < third.t and a1 > a3 and contradict >= 95 and follow >= 95 and elapsed < 30
    report(8, "letter-R bias reproduction", ok,
           f"t = ({first.t}, {third.t}), boosted a = ({a1:.4f}, {a3:.4f}); "
           f"estimate contradicts counts {contradict}/100, control follows counts {follow}/100, {elapsed:.2f}s")
