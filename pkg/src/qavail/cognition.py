"""Availability-bias scenarios on top of amplification and estimation.

A guess state weights items by how vivid they are. Recall ease follows the
good-item probability ``a`` of that state (through the retrieval schedule),
and so do the probability and count judgements (through estimation). When
the weighting favours a group beyond its true share, both recall and
judgement favour it together, even against the true counts.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from .amplify import availability_by_number, availability_by_speed, sampled_recall
from .count import count
from .estimate import EstimationConfig, est_amp_distribution, sample_outcome
from .statevec import DimensionMismatchError, GuessPrep, Oracle, good_probability, prepare


class LexiconError(ValueError):
    pass


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Lexicon:
    words: tuple
    freqs: tuple | None = None

    def __post_init__(self):
        words = tuple(self.words)
        if not words:
            raise LexiconError("lexicon is empty")
        seen = set()
        for w in words:
            if not w:
                raise LexiconError("empty token")
            if w in seen:
                raise LexiconError(f"duplicate word {w!r}")
            seen.add(w)
        object.__setattr__(self, "words", words)
        if self.freqs is not None:
            freqs = tuple(float(f) for f in self.freqs)
            if len(freqs) != len(words):
                raise LexiconError(f"{len(freqs)} frequencies for {len(words)} words")
            if any(f < 0 or not math.isfinite(f) for f in freqs):
                raise LexiconError("frequencies must be finite and non-negative")
            if sum(freqs) <= 0:
                raise LexiconError("frequencies sum to zero")
            object.__setattr__(self, "freqs", freqs)

    def __len__(self):
        return len(self.words)


def load_lexicon(source) -> Lexicon:
    """Parse ``word`` or ``word<TAB>frequency`` lines.

    ``source`` may be a binary or text stream, ``bytes`` or ``str``. Words are
    lowercased; blank lines and ``#`` comments are skipped. Either every entry
    has a frequency or none does.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    words, freqs = [], []
    with_freq = None
    for lineno, raw in enumerate(io.StringIO(source), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) > 2:
            raise LexiconError(f"line {lineno}: expected 'word' or 'word<TAB>frequency'")
        has_freq = len(parts) == 2
        if with_freq is None:
            with_freq = has_freq
        elif with_freq != has_freq:
            raise LexiconError(f"line {lineno}: mixed entries with and without frequency")
        word = parts[0].strip().lower()
        if not word:
            raise LexiconError(f"line {lineno}: empty word")
        words.append(word)
        if has_freq:
            try:
                f = float(parts[1].strip())
            except ValueError:
                raise LexiconError(f"line {lineno}: malformed frequency {parts[1]!r}") from None
            if not math.isfinite(f) or f < 0:
                raise LexiconError(f"line {lineno}: frequency must be a non-negative number, got {parts[1]!r}")
            freqs.append(f)
    return Lexicon(tuple(words), tuple(freqs) if with_freq else None)


def sample_lexicon() -> Lexicon:
    """Bundled desk-scale English word list."""
    text = resources.files("qavail").joinpath("data/sample_lexicon.txt").read_bytes()
    return load_lexicon(text)


def letter_position_oracle(lex: Lexicon, letter: str, position: int) -> Oracle:
    """Good items are words with ``letter`` at 1-based ``position``."""
    if position < 1:
        raise ValueError("position is 1-based and must be >= 1")
    letter = letter.lower()
    i = position - 1
    return Oracle(len(lex), frozenset(k for k, w in enumerate(lex.words) if len(w) > i and w[i] == letter))


def build_guess_state(lex: Lexicon, boosts: Iterable[tuple[Oracle, float]] = ()) -> GuessPrep:
    """Base weight per word (frequency, or 1), times the factor of every boost
    oracle that marks the word good, normalized."""
    w = np.array(lex.freqs if lex.freqs is not None else [1.0] * len(lex), dtype=np.float64)
    for oracle, factor in boosts:
        if oracle.dim != len(lex):
            raise DimensionMismatchError(f"boost oracle dim {oracle.dim} != lexicon size {len(lex)}")
        if not factor > 0:
            raise ValueError(f"boost factor must be positive, got {factor!r}")
        w[oracle.mask] *= factor
    if not w.sum() > 0:
        raise ValueError("total guess weight is zero")
    return GuessPrep.from_weights(w)


@dataclass(frozen=True)
class GroupSpec:
    label: str
    size: int
    weight_factor: float = 1.0

    def __post_init__(self):
        if int(self.size) != self.size or self.size < 1:
            raise ValueError(f"group {self.label!r}: size must be a positive integer")
        if not self.weight_factor > 0:
            raise ValueError(f"group {self.label!r}: weight_factor must be positive")


@dataclass(frozen=True)
class GroupResult:
    label: str
    t: int
    a: float
    recalled: int
    speed: float
    a_hat: float
    t_hat: float


def _order(x: float, y: float) -> int:
    return (x > y) - (x < y)


def ordering_agreement(recall: Sequence[float], estimate: Sequence[float]) -> bool | None:
    """Whether the two-group recall ordering matches the estimate ordering.

    ``None`` is a tie in either ordering; ties never count as agreement.
    """
    r = _order(recall[0], recall[1])
    e = _order(estimate[0], estimate[1])
    if r == 0 or e == 0:
        return None
    return r == e


@dataclass(frozen=True)
class ScenarioResult:
    per_group: tuple
    # "a_hat" (probability judgement) or "t_hat" (count judgement)
    judged: str = "t_hat"
    seed: int | None = None

    @property
    def agreement(self) -> bool | None:
        g0, g1 = self.per_group
        return ordering_agreement(
            (g0.recalled, g1.recalled), (getattr(g0, self.judged), getattr(g1, self.judged))
        )

    @property
    def tie(self) -> bool:
        return self.agreement is None


def run_letter_scenario(
    lex: Lexicon,
    letter: str = "r",
    boost: float = 4.0,
    M: int = 256,
    budget: int = 60,
    seed: int = 0,
    positions: tuple = (1, 3),
) -> ScenarioResult:
    """Two partitions of one guess state: ``letter`` at each of ``positions``.

    Words with the letter at the first position are weighted by ``boost``.
    Recall per partition is ``availability_by_number`` under ``budget``; the
    probability judgement is one estimation run per partition.
    """
    return run_letter_trials(lex, letter, boost, M, budget, seed, trials=1, positions=positions)[0]


def run_letter_trials(
    lex: Lexicon,
    letter: str = "r",
    boost: float = 4.0,
    M: int = 256,
    budget: int = 60,
    seed: int = 0,
    trials: int = 1,
    positions: tuple = (1, 3),
) -> list[ScenarioResult]:
    """``trials`` letter-scenario runs with seeds ``seed, seed + 1, ...``.

    The exact outcome distribution of each partition is computed once and
    sampled per trial, so trial ``k`` equals ``run_letter_scenario(..., seed + k)``.
    """
    if not boost > 0:
        raise ValueError("boost must be positive")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    oracles = [letter_position_oracle(lex, letter, p) for p in positions]
    for p, o in zip(positions, oracles):
        if o.t == 0:
            raise ScenarioError(f"no words with {letter!r} at position {p}")
    prep = build_guess_state(lex, [(oracles[0], boost)])
    s = prepare(prep, len(lex))
    parts = []
    for p, o in zip(positions, oracles):
        cfg = EstimationConfig(M, prep, o)
        a = good_probability(s, o)
        parts.append((p, o, cfg, a, est_amp_distribution(cfg)))

    results = []
    for k in range(trials):
        seeds = np.random.SeedSequence(seed + k).generate_state(len(parts))
        groups = []
        for (p, o, cfg, a, dist), sd in zip(parts, seeds):
            out = sample_outcome(cfg, dist, int(sd))
            groups.append(
                GroupResult(
                    label=f"{letter}@{p}",
                    t=o.t,
                    a=a,
                    recalled=availability_by_number(a, budget),
                    speed=availability_by_speed(a),
                    a_hat=out.a_hat,
                    t_hat=len(lex) * out.a_hat,
                )
            )
        results.append(ScenarioResult(tuple(groups), judged="a_hat", seed=seed + k))
    return results


def names_guess_state(groups: Sequence[GroupSpec]) -> tuple[GuessPrep, list[Oracle]]:
    """Consecutive index blocks per group, weight proportional to the group's factor."""
    N = sum(g.size for g in groups)
    w = np.concatenate([np.full(g.size, float(g.weight_factor)) for g in groups])
    oracles, start = [], 0
    for g in groups:
        oracles.append(Oracle(N, frozenset(range(start, start + g.size))))
        start += g.size
    return GuessPrep.from_weights(w), oracles


@dataclass(frozen=True)
class CorrelationSummary:
    n_results: int
    n_agree: int
    n_disagree: int
    n_ties: int
    agreement_rate: float | None
    rank_correlation: float | None

    @property
    def no_signal(self) -> bool:
        return self.agreement_rate is None


@dataclass(frozen=True)
class NamesScenarioReport:
    results: tuple
    summary: CorrelationSummary
    groups: tuple = field(default=())


def run_names_scenario(
    groups: Sequence[GroupSpec],
    M: int = 32,
    budget: int = 100,
    seed: int = 0,
    trials: int = 100,
) -> NamesScenarioReport:
    """Famous-versus-less-famous list: recall and count judgement per group.

    Trial ``k`` uses seed ``seed + k``. Recall is sampled retrieval until the
    budget is spent; the count judgement is one counting run per group.
    """
    groups = tuple(groups)
    if len(groups) != 2:
        raise ValueError("the names scenario compares exactly two groups")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    prep, oracles = names_guess_state(groups)
    s = prepare(prep, oracles[0].dim)
    a_values = [good_probability(s, o) for o in oracles]
    results = []
    for k in range(trials):
        rng = np.random.default_rng(seed + k)
        per_group = []
        for g, o, a in zip(groups, oracles, a_values):
            recalled = sampled_recall(prep, o, budget, rng)
            est = count(prep, o, M, int(rng.integers(0, 2**63 - 1)))
            per_group.append(
                GroupResult(
                    label=g.label,
                    t=g.size,
                    a=a,
                    recalled=recalled,
                    speed=availability_by_speed(a),
                    a_hat=est.a_hat,
                    t_hat=est.t_hat,
                )
            )
        results.append(ScenarioResult(tuple(per_group), judged="t_hat", seed=seed + k))
    return NamesScenarioReport(tuple(results), correlation_summary(results), groups)


def correlation_summary(results: Sequence[ScenarioResult]) -> CorrelationSummary:
    """Sign agreement between recall and judgement orderings, plus the Spearman
    correlation of ``sqrt(a)`` against the judged quantity over all groups."""
    results = list(results)
    if len(results) < 2:
        raise ValueError("need at least two results")
    verdicts = [r.agreement for r in results]
    n_agree = sum(v is True for v in verdicts)
    n_disagree = sum(v is False for v in verdicts)
    n_ties = sum(v is None for v in verdicts)
    decided = n_agree + n_disagree
    rate = n_agree / decided if decided else None

    ease = [math.sqrt(g.a) for r in results for g in r.per_group]
    judged = [getattr(g, r.judged) for r in results for g in r.per_group]
    rho = None
    if len(set(ease)) > 1 and len(set(judged)) > 1:
        rho = float(stats.spearmanr(ease, judged).statistic)
    return CorrelationSummary(
        n_results=len(results),
        n_agree=n_agree,
        n_disagree=n_disagree,
        n_ties=n_ties,
        agreement_rate=rate,
        rank_correlation=rho,
    )
