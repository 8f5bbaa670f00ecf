"""Amplitude amplification: iteration schedule, exact success probabilities,
sampled retrieval runs and the two availability measures built on them."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .statevec import (
    GuessPrep,
    NoGoodItemsError,
    Oracle,
    apply_q_power,
    good_probability,
    measure,
    prepare,
)

# floor(pi / (4 theta)) lands a few ulps under an integer at a = 0.5
FLOOR_SLACK = 1e-9


class InfiniteRetrievalTime(ValueError):
    """Retrieval time is unbounded because the good-item probability is zero."""


@dataclass(frozen=True)
class AmplificationSchedule:
    a: float
    theta: float
    m: int


@dataclass(frozen=True)
class RetrievalRun:
    item: int
    is_good: bool
    iterations_used: int
    oracle_calls: int


def _check_a(a: float) -> float:
    a = float(a)
    if not 0.0 <= a <= 1.0 or math.isnan(a):
        raise ValueError(f"probability must lie in [0, 1], got {a!r}")
    return a


def schedule(a: float) -> AmplificationSchedule:
    """Iteration count ``m = floor(pi / (4 arcsin sqrt(a)))``.

    Floor rather than round-to-nearest: at ``a = 0.25`` rounding 1.5 up to 2
    drops the success probability to 0.25.
    """
    a = _check_a(a)
    if a == 0.0:
        raise NoGoodItemsError("a = 0: no good items to amplify")
    theta = math.asin(math.sqrt(a))
    m = math.floor(math.pi / (4.0 * theta) + FLOOR_SLACK)
    return AmplificationSchedule(a=a, theta=theta, m=m)


def closed_form_success(a: float, m: int) -> float:
    """Good probability after ``m`` steps from the 2D rotation picture."""
    theta = math.asin(math.sqrt(_check_a(a)))
    return math.sin((2 * m + 1) * theta) ** 2


def success_probability(prep: GuessPrep, oracle: Oracle, m: int) -> float:
    """Exact good-item probability of ``Q^m A|0>``, from the statevector."""
    if oracle.t == 0:
        raise NoGoodItemsError("oracle has no good items")
    state = apply_q_power(prepare(prep, oracle.dim), prep, oracle, m)
    return good_probability(state, oracle)


def retrieve(prep: GuessPrep, oracle: Oracle, seed: int) -> RetrievalRun:
    """Prepare, amplify for ``schedule(a).m`` steps, measure once.

    A bad outcome is reported as such; there is no retry.
    """
    if oracle.t == 0:
        raise NoGoodItemsError("oracle has no good items")
    state = prepare(prep, oracle.dim)
    a = good_probability(state, oracle)
    m = schedule(a).m
    final = apply_q_power(state, prep, oracle, m)
    item = int(measure(final, seed, shots=1)[0])
    return RetrievalRun(item=item, is_good=oracle(item), iterations_used=m, oracle_calls=m)


def availability_by_speed(a: float) -> int:
    """Retrieval-time proxy: ``m + 1`` steps (amplification plus one measurement)."""
    a = _check_a(a)
    if a == 0.0:
        raise InfiniteRetrievalTime("a = 0: a good item is never retrieved")
    return schedule(a).m + 1


def availability_by_number(a: float, budget: int) -> int:
    """Complete retrievals that fit in ``budget`` time units."""
    a = _check_a(a)
    if budget < 0:
        raise ValueError("budget must be non-negative")
    if a == 0.0 or budget == 0:
        return 0
    return budget // availability_by_speed(a)


def sampled_recall(prep: GuessPrep, oracle: Oracle, budget: int, rng: np.random.Generator) -> int:
    """Run repeated retrievals until ``budget`` is spent; count good outcomes.

    Every attempt costs ``availability_by_speed(a)`` whether it succeeds or not.
    """
    if oracle.t == 0:
        return 0
    a = good_probability(prepare(prep, oracle.dim), oracle)
    if a == 0.0:
        return 0
    cost = availability_by_speed(a)
    recalled = 0
    spent = 0
    while spent + cost <= budget:
        seed = int(rng.integers(0, 2**63 - 1))
        recalled += retrieve(prep, oracle, seed).is_good
        spent += cost
    return recalled
