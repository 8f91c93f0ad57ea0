"""matchkit: instrumented deferred acceptance, accelerated, and verified.

A toolkit for one-to-one two-sided matching markets: the classic
man-proposing deferred acceptance engine, its accelerated variant with
pre-emptive rejections, the iterated-deletion normal form with both extremal
stable matchings, a biased random-instance generator, brute-force oracles,
and a benchmark harness that writes reproducible CSV results.
"""

__version__ = "0.1.0"

from .core import (
    MEN,
    WOMEN,
    BlockingPair,
    Instance,
    Matching,
    RankMatrix,
    find_blocking_pairs,
    is_stable,
    prefers,
    validate_instance,
)
from .engines import (
    ADA,
    DA,
    LockstepReport,
    RejectionKind,
    RoundEvents,
    RunMetrics,
    RunTrace,
    run_ada,
    run_da,
    run_lockstep,
)
from .experiments import (
    CrossingReport,
    ExperimentRecord,
    FinalPairCurve,
    SweepSpec,
    aggregate,
    check_pair,
    concavity_score,
    crossing_report,
    final_pair_curve,
    rep_seed,
    run_sweep,
)
from .generator import GeneratorParams, generate
from .idua import CandidateSets, NormalForm, delete_unattractive_step, normal_form
from .oracle import (
    enumerate_stable,
    man_optimal,
    probe_strategyproofness,
    verify_instance,
    woman_optimal,
    woman_truncation_report,
)
from .rng import GENERATOR_ID

__all__ = [
    "ADA",
    "DA",
    "MEN",
    "WOMEN",
    "BlockingPair",
    "CandidateSets",
    "CrossingReport",
    "ExperimentRecord",
    "FinalPairCurve",
    "GENERATOR_ID",
    "GeneratorParams",
    "Instance",
    "LockstepReport",
    "Matching",
    "NormalForm",
    "RankMatrix",
    "RejectionKind",
    "RoundEvents",
    "RunMetrics",
    "RunTrace",
    "SweepSpec",
    "aggregate",
    "check_pair",
    "concavity_score",
    "crossing_report",
    "delete_unattractive_step",
    "enumerate_stable",
    "final_pair_curve",
    "find_blocking_pairs",
    "generate",
    "is_stable",
    "man_optimal",
    "normal_form",
    "prefers",
    "probe_strategyproofness",
    "rep_seed",
    "run_ada",
    "run_da",
    "run_lockstep",
    "run_sweep",
    "validate_instance",
    "verify_instance",
    "woman_optimal",
    "woman_truncation_report",
]
