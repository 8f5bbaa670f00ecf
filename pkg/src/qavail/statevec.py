"""Dense statevector engine.

Items are indexed ``0..N-1`` directly; there is no qubit tensor structure and
``N`` need not be a power of two. Every value is immutable and every operation
returns a new value.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

NORM_TOL = 1e-9
WEIGHT_SUM_TOL = 1e-12
DEFAULT_MAX_DIM = 2**20


class DimensionMismatchError(ValueError):
    pass


class CapExceededError(ValueError):
    """Requested simulation size is above the configured cap."""


class NoGoodItemsError(ValueError):
    """The oracle marks no item as good where at least one is required."""


def max_dim() -> int:
    return DEFAULT_MAX_DIM


def _check_dim(dim: int, cap: int | None = None) -> int:
    dim = int(dim)
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    cap = max_dim() if cap is None else cap
    if dim > cap:
        raise CapExceededError(f"dimension {dim} exceeds cap {cap}")
    return dim


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized complex amplitude vector over ``dim`` basis items."""

    amps: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        _check_dim(amps.size)
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: sum |amp|^2 = {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.size

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.probabilities())))

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"StateVector(dim={self.dim})"


@dataclass(frozen=True)
class Oracle:
    """Boolean partition of ``{0..dim-1}`` into good and bad items."""

    dim: int
    good: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        dim = _check_dim(self.dim)
        good = frozenset(int(x) for x in self.good)
        out_of_range = [x for x in good if not 0 <= x < dim]
        if out_of_range:
            raise ValueError(f"good indices out of range [0, {dim}): {sorted(out_of_range)}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "good", good)
        mask = np.zeros(dim, dtype=bool)
        mask[list(good)] = True
        mask.setflags(write=False)
        object.__setattr__(self, "_mask", mask)

    @classmethod
    def from_predicate(cls, dim: int, predicate) -> "Oracle":
        return cls(dim, frozenset(x for x in range(dim) if predicate(x)))

    @property
    def t(self) -> int:
        return len(self.good)

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    def __call__(self, x: int) -> bool:
        if not 0 <= x < self.dim:
            raise IndexError(f"item {x} out of range [0, {self.dim})")
        return x in self.good


class PrepKind(enum.Enum):
    UNIFORM_FOURIER = "uniform"
    WEIGHTED = "weighted"


@dataclass(frozen=True, eq=False)
class GuessPrep:
    """Preparation of the guess state.

    ``UNIFORM_FOURIER`` is the flat state ``F_N|0>``; ``WEIGHTED`` carries a
    probability mass per item and prepares amplitudes ``sqrt(w_x)``.
    """

    kind: PrepKind
    weights: np.ndarray | None = None

    def __post_init__(self):
        if self.kind is PrepKind.UNIFORM_FOURIER:
            if self.weights is not None:
                raise ValueError("uniform preparation takes no weights")
            return
        w = np.array(self.weights, dtype=np.float64).reshape(-1)
        if w.size == 0:
            raise ValueError("weighted preparation needs at least one weight")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1, got {w.sum()!r}; use GuessPrep.from_weights to normalize")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls) -> "GuessPrep":
        return cls(PrepKind.UNIFORM_FOURIER)

    @classmethod
    def from_weights(cls, weights: Iterable[float]) -> "GuessPrep":
        """Normalize non-negative weights and wrap them as a weighted prep."""
        w = np.array(list(weights), dtype=np.float64)
        if w.size == 0:
            raise ValueError("weighted preparation needs at least one weight")
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        total = w.sum()
        if not total > 0:
            raise ValueError("total weight is zero")
        return cls(PrepKind.WEIGHTED, w / total)

    @property
    def is_uniform(self) -> bool:
        return self.kind is PrepKind.UNIFORM_FOURIER

    def implied_weights(self, dim: int) -> np.ndarray:
        if self.is_uniform:
            dim = _check_dim(dim)
            return np.full(dim, 1.0 / dim)
        if self.weights.size != dim:
            raise DimensionMismatchError(f"prep has {self.weights.size} weights, dimension is {dim}")
        return self.weights


def _same_dim(state: StateVector, oracle: Oracle):
    if state.dim != oracle.dim:
        raise DimensionMismatchError(f"state dim {state.dim} != oracle dim {oracle.dim}")


def prepare(prep: GuessPrep, dim: int) -> StateVector:
    """Return ``A|0>``: real non-negative amplitudes ``sqrt(w_x)``."""
    w = prep.implied_weights(_check_dim(dim))
    return StateVector(np.sqrt(w).astype(np.complex128))


def good_probability(state: StateVector, oracle: Oracle) -> float:
    _same_dim(state, oracle)
    p = float(np.sum(state.probabilities()[oracle.mask]))
    return min(max(p, 0.0), 1.0)


def apply_sf(state: StateVector, oracle: Oracle) -> StateVector:
    _same_dim(state, oracle)
    return StateVector(np.where(oracle.mask, -state.amps, state.amps))


def _reflect(amps: np.ndarray, s: np.ndarray, mask: np.ndarray) -> np.ndarray:
    # (2|s><s| - I) S_f, in O(N); s is real so <s|v> = s . v
    v = np.where(mask, -amps, amps)
    return 2.0 * s * np.dot(s, v) - v


def apply_q(state: StateVector, prep: GuessPrep, oracle: Oracle) -> StateVector:
    """One amplification step ``Q = -A S_0 A^-1 S_f``.

    Uses ``A S_0 A^-1 = I - 2|s><s|`` with ``|s> = A|0>``, so the dense
    operator is never built.
    """
    _same_dim(state, oracle)
    s = np.sqrt(prep.implied_weights(state.dim))
    return StateVector(_reflect(state.amps, s, oracle.mask))


def q_power_iter(state: StateVector, prep: GuessPrep, oracle: Oracle, count: int):
    """Yield the raw amplitude arrays ``Q^j |state>`` for ``j = 0..count-1``."""
    _same_dim(state, oracle)
    s = np.sqrt(prep.implied_weights(state.dim))
    mask = oracle.mask
    amps = np.array(state.amps)
    for j in range(count):
        yield amps
        if j + 1 < count:
            amps = _reflect(amps, s, mask)


def apply_q_power(state: StateVector, prep: GuessPrep, oracle: Oracle, m: int) -> StateVector:
    if m < 0:
        raise ValueError("iteration count must be non-negative")
    amps = state.amps
    for amps in q_power_iter(state, prep, oracle, m + 1):
        pass
    return StateVector(amps)


def _dft(amps: np.ndarray, inverse: bool, axis: int = -1) -> np.ndarray:
    # forward kernel exp(+2*pi*i*x*y/N)/sqrt(N); numpy's ifft carries the + sign
    n = amps.shape[axis]
    if inverse:
        return np.fft.fft(amps, axis=axis) / np.sqrt(n)
    return np.fft.ifft(amps, axis=axis) * np.sqrt(n)


def qft(state: StateVector, direction: str = "forward") -> StateVector:
    """Unitary discrete Fourier transform on the item index.

    ``direction`` is ``"forward"`` (kernel ``exp(2 pi i x y / N)/sqrt(N)``) or
    ``"inverse"``.
    """
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    return StateVector(_dft(state.amps, inverse=direction == "inverse"))


def measure(state: StateVector, rng_seed: int, shots: int = 1) -> np.ndarray:
    """Sample ``shots`` computational-basis outcomes, i.i.d. and seeded."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p = state.probabilities()
    p = p / p.sum()
    rng = np.random.default_rng(rng_seed)
    return rng.choice(state.dim, size=shots, p=p)


def basis_state(dim: int, index: int) -> StateVector:
    amps = np.zeros(_check_dim(dim), dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(amps)

