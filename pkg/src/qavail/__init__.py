"""Simulator for amplitude amplification, amplitude estimation and quantum
counting over weighted guess states, with availability-bias scenarios."""

from .amplify import (
    AmplificationSchedule,
    InfiniteRetrievalTime,
    RetrievalRun,
    availability_by_number,
    availability_by_speed,
    retrieve,
    schedule,
    success_probability,
)
from .cognition import (
    GroupSpec,
    Lexicon,
    ScenarioError,
    ScenarioResult,
    build_guess_state,
    correlation_summary,
    letter_position_oracle,
    load_lexicon,
    run_letter_scenario,
    run_letter_trials,
    run_names_scenario,
    sample_lexicon,
)
from .count import CountEstimate, count, count_distribution
from .estimate import (
    EstimationConfig,
    EstimationOutcome,
    choose_m,
    est_amp,
    est_amp_distribution,
    kernel_distribution,
)
from .statevec import (
    CapExceededError,
    DimensionMismatchError,
    GuessPrep,
    NoGoodItemsError,
    Oracle,
    StateVector,
    apply_q,
    apply_sf,
    good_probability,
    measure,
    prepare,
    qft,
)

__version__ = "0.1.0"

__all__ = [
    "CountEstimate",
    "count",
    "count_distribution",
    "AmplificationSchedule",
    "InfiniteRetrievalTime",
    "RetrievalRun",
    "availability_by_number",
    "availability_by_speed",
    "retrieve",
    "schedule",
    "success_probability",
    "GroupSpec",
    "Lexicon",
    "ScenarioError",
    "ScenarioResult",
    "build_guess_state",
    "correlation_summary",
    "letter_position_oracle",
    "load_lexicon",
    "run_letter_scenario",
    "run_letter_trials",
    "run_names_scenario",
    "sample_lexicon",
    "EstimationConfig",
    "EstimationOutcome",
    "choose_m",
    "est_amp",
    "est_amp_distribution",
    "kernel_distribution",
    "CapExceededError",
    "DimensionMismatchError",
    "GuessPrep",
    "NoGoodItemsError",
    "Oracle",
    "StateVector",
    "apply_q",
    "apply_sf",
    "good_probability",
    "measure",
    "prepare",
    "qft",
]
