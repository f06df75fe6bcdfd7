"""Exact and statistical analysis of tile systems."""

from .distribution import (
    BiasReport,
    DistributionReport,
    ExtensibilityReport,
    PartitionSpec,
    Rule,
    expected_space,
    extensibility,
    partition_masses,
    terminal_distribution,
)
from .sampling import MonteCarloReport, monte_carlo
from .statespace import MAX_STATES_ENV, Node, StateGraph, explore
from .symbolic import (
    FairnessVerdict,
    Polynomial,
    RationalFunction,
    symbolic_outcome_functions,
    verify_fairness_pit,
    verify_fairness_symbolic,
)
from .truncated import TruncatedReport, truncated_partition_masses
from .twochoice import (
    FrontChain,
    TwoChoiceReport,
    classify_two_choice,
    front_chain,
    gaussian_solve,
    twochoice_expected_length,
)

__all__ = [
    "BiasReport",
    "DistributionReport",
    "ExtensibilityReport",
    "FairnessVerdict",
    "FrontChain",
    "MAX_STATES_ENV",
    "MonteCarloReport",
    "Node",
    "PartitionSpec",
    "Polynomial",
    "RationalFunction",
    "Rule",
    "StateGraph",
    "TruncatedReport",
    "TwoChoiceReport",
    "classify_two_choice",
    "expected_space",
    "explore",
    "extensibility",
    "front_chain",
    "gaussian_solve",
    "monte_carlo",
    "partition_masses",
    "symbolic_outcome_functions",
    "terminal_distribution",
    "truncated_partition_masses",
    "twochoice_expected_length",
    "verify_fairness_pit",
    "verify_fairness_symbolic",
]
