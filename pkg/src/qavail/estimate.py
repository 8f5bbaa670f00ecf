"""Amplitude estimation through an M-dimensional Fourier register.

The joint register/item state is simulated slice by slice: register value
``j`` holds ``Q^j A|0>``. After an inverse Fourier transform on the register
index, the marginal over register outcomes ``y`` gives the estimate
``a_hat = sin^2(pi y / M)``.

:func:`kernel_distribution` is an independent closed form of the same
distribution and is what the simulation is checked against.
"""
from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .statevec import (
    CapExceededError,
    GuessPrep,
    Oracle,
    _dft,
    good_probability,
    prepare,
    q_power_iter,
)

JOINT_CAP_ENV = "QAVAIL_MAX_JOINT_DIM"
DEFAULT_MAX_JOINT_DIM = 2**24
DEFAULT_MIN_M = 8


def max_joint_dim() -> int:
    raw = os.environ.get(JOINT_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_JOINT_DIM
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{JOINT_CAP_ENV} must be a positive integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{JOINT_CAP_ENV} must be a positive integer, got {raw!r}")
    return cap


@dataclass(frozen=True)
class EstimationConfig:
    M: int
    prep: GuessPrep
    oracle: Oracle
    max_joint_dim: int | None = None

    def __post_init__(self):
        if int(self.M) != self.M or self.M < 1:
            raise ValueError(f"register dimension M must be a positive integer, got {self.M!r}")
        object.__setattr__(self, "M", int(self.M))
        # raises on weight-count mismatch
        self.prep.implied_weights(self.oracle.dim)
        cap = max_joint_dim() if self.max_joint_dim is None else self.max_joint_dim
        if self.M * self.oracle.dim > cap:
            raise CapExceededError(
                f"joint dimension M*N = {self.M}*{self.oracle.dim} = {self.M * self.oracle.dim} exceeds cap {cap}"
            )

    @property
    def N(self) -> int:
        return self.oracle.dim

    @property
    def a(self) -> float:
        return good_probability(prepare(self.prep, self.N), self.oracle)

    @property
    def q_applications(self) -> int:
        return q_applications(self.M)


@dataclass(frozen=True, eq=False)
class EstimationOutcome:
    y: int
    M: int
    a_hat: float
    distribution: np.ndarray = field(repr=False)
    q_applications: int = 0


def q_applications(M: int) -> int:
    """Controlled-Q count of the register: ``sum_{j<M} j``."""
    return M * (M - 1) // 2


@functools.lru_cache(maxsize=65536)
def estimate_from_outcome(y: int, M: int) -> float:
    """``sin^2(pi y / M)``, correctly rounded to double precision.

    Plain float evaluation gives 0.24999999999999994 for ``y/M = 1/6``; exact
    register phases must map to exact estimates.
    """
    with mpmath.workdps(40):
        return float(mpmath.sin(mpmath.pi * y / M) ** 2)


def est_amp_distribution(cfg: EstimationConfig) -> np.ndarray:
    """Exact distribution of the register outcome ``y``, length ``M``."""
    M, N = cfg.M, cfg.N
    s = prepare(cfg.prep, N)
    joint = np.empty((M, N), dtype=np.complex128)
    for j, amps in enumerate(q_power_iter(s, cfg.prep, cfg.oracle, M)):
        joint[j] = amps
    joint /= math.sqrt(M)
    joint = _dft(joint, inverse=True, axis=0)
    probs = np.sum(np.abs(joint) ** 2, axis=1)
    return probs / probs.sum()


def est_amp(cfg: EstimationConfig, seed: int) -> EstimationOutcome:
    return sample_outcome(cfg, est_amp_distribution(cfg), seed)


def sample_outcome(cfg: EstimationConfig, dist: np.ndarray, seed: int) -> EstimationOutcome:
    """Draw the register outcome from a precomputed ``est_amp_distribution(cfg)``."""
    rng = np.random.default_rng(seed)
    y = int(rng.choice(cfg.M, p=dist))
    return EstimationOutcome(
        y=y,
        M=cfg.M,
        a_hat=estimate_from_outcome(y, cfg.M),
        distribution=dist,
        q_applications=cfg.q_applications,
    )


def fejer_kernel(delta: np.ndarray, M: int) -> np.ndarray:
    """``sin^2(M pi d) / (M^2 sin^2(pi d))``, equal to 1 at integer ``d``."""
    delta = np.asarray(delta, dtype=np.float64)
    # reduce to [-1/2, 1/2): the kernel has period 1
    d = delta - np.round(delta)
    den = (M * np.sin(np.pi * d)) ** 2
    num = np.sin(M * np.pi * d) ** 2
    tiny = np.abs(d) < 1e-12
    out = np.empty_like(d)
    out[~tiny] = num[~tiny] / den[~tiny]
    out[tiny] = 1.0
    return out


def kernel_distribution(a: float, M: int) -> np.ndarray:
    """Closed-form outcome distribution for good probability ``a``.

    The guess state splits evenly over the two eigenvectors of Q with
    eigenphase fractions ``+theta/pi`` and ``-theta/pi``. At ``a`` in
    ``{0, 1}`` the two fractions coincide modulo 1 and the formula reduces to
    the single-eigenvector case.
    """
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1], got {a!r}")
    if M < 1:
        raise ValueError("M must be >= 1")
    phase = math.asin(math.sqrt(a)) / math.pi
    y = np.arange(M) / M
    return 0.5 * (fejer_kernel(y - phase, M) + fejer_kernel(y + phase, M))


def choose_m(a_prior: float, min_m: int = DEFAULT_MIN_M) -> int:
    """``max(floor(1/sqrt(a_prior)), min_m)``."""
    a_prior = float(a_prior)
    if not 0.0 < a_prior <= 1.0:
        raise ValueError(f"a_prior must lie in (0, 1], got {a_prior!r}")
    return max(math.floor(1.0 / math.sqrt(a_prior) + 1e-9), int(min_m))


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    return 0.5 * float(np.sum(np.abs(np.asarray(p) - np.asarray(q))))
