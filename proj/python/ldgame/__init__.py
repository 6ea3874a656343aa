"""Delegation games: exact evaluation, equilibrium certificates, optimal delegations."""

from ._core import (
    Digraph,
    DelegationGraph,
    EquilibriumReport,
    EvalEstimate,
    GameInstance,
    GuruDistribution,
    LdgError,
    MixedProfile,
    OptSolution,
    PureProfile,
    SolverConfig,
    SolverMode,
    SolverOutcome,
    StarCheck,
    best_response,
    certify_epsilon,
    deviation_values,
    enumerate_pure_nash,
    exact_expected_utility,
    exact_guru_distribution,
    exact_social_welfare,
    fixed_point_solve,
    gen_from_dominating_set,
    gen_lemma1,
    gen_lemma2,
    gen_random,
    gen_tight,
    lemma2_mixed_equilibrium,
    monte_carlo_utilities,
    narcissistic_avaricious,
    opt_exact,
    opt_greedy,
    pure_utility,
    restricted_best_response,
    social_welfare,
    star_welfare,
    sum_best_upper_bound,
    verify_star_structure,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
