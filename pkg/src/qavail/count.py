"""Quantum counting as ``N`` times the amplitude estimate.

With the flat guess state this estimates ``t``; with a weighted guess state it
estimates ``a N``, which over- or under-counts depending on whether the good
items carry more or less than their share ``t/N`` of the weight.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .estimate import EstimationConfig, est_amp, est_amp_distribution, estimate_from_outcome


@dataclass(frozen=True)
class CountEstimate:
    t_hat: float
    a_hat: float
    t_true: int
    N: int
    y: int
    M: int
    biased: bool
    q_applications: int


def count(prep, oracle, M: int, seed: int, max_joint_dim: int | None = None) -> CountEstimate:
    cfg = EstimationConfig(M, prep, oracle, max_joint_dim=max_joint_dim)
    out = est_amp(cfg, seed)
    return CountEstimate(
        t_hat=oracle.dim * out.a_hat,
        a_hat=out.a_hat,
        t_true=oracle.t,
        N=oracle.dim,
        y=out.y,
        M=M,
        biased=not prep.is_uniform,
        q_applications=out.q_applications,
    )


def count_distribution(prep, oracle, M: int, max_joint_dim: int | None = None) -> list[tuple[float, float]]:
    """Exact distribution of ``t_hat`` as ``(value, probability)`` pairs.

    Outcomes ``y`` and ``M - y`` give the same estimate and are merged by
    index, not by float comparison. Sorted by increasing ``t_hat``.
    """
    cfg = EstimationConfig(M, prep, oracle, max_joint_dim=max_joint_dim)
    dist = est_amp_distribution(cfg)
    merged: dict[int, float] = {}
    for y, p in enumerate(dist):
        key = min(y, M - y) if y else 0
        merged[key] = merged.get(key, 0.0) + float(p)
    pairs = [(oracle.dim * estimate_from_outcome(y, M), p) for y, p in merged.items()]
    pairs.sort(key=lambda vp: vp[0])
    return pairs


def distribution_median(pairs) -> float:
    """Lower weighted median: smallest value whose cumulative mass reaches 1/2."""
    total = 0.0
    for value, p in pairs:
        total += p
        if total >= 0.5 - 1e-12:
            return value
    return pairs[-1][0]


def distribution_mode(pairs) -> float:
    return max(pairs, key=lambda vp: vp[1])[0]


def grid_step(N: int, y: int, M: int) -> float:
    """Width of one register step in ``t_hat`` units around outcome ``y``."""
    lo = estimate_from_outcome(y, M)
    return N * max(abs(estimate_from_outcome(y + 1, M) - lo), abs(lo - estimate_from_outcome(y - 1, M)))


def classical_queries(N: int, confidence: float = 2.0 / 3.0) -> int:
    """Random oracle queries needed to find the single good item among ``N``
    with probability ``confidence`` when sampling with replacement.

    This is the budget a classical frequency estimator needs to tell ``t = 1``
    from ``t = 0``; it grows linearly in ``N``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if N == 1:
        return 1
    return math.ceil(math.log1p(-confidence) / math.log1p(-1.0 / N))


def query_budgets(N: int, M: int | None = None) -> dict:
    """Classical versus counting oracle budgets, side by side.

    ``M`` defaults to ``ceil(sqrt(N))``. ``counting_q_applications`` counts
    every controlled-Q over all register slices; ``counting_q_depth`` is the
    largest power applied to a single slice.
    """
    if M is None:
        M = math.ceil(math.sqrt(N))
    return {
        "N": N,
        "M": M,
        "classical_queries": classical_queries(N),
        "counting_q_applications": M * (M - 1) // 2,
        "counting_q_depth": M - 1,
    }

