#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ldgame/evaluation.hpp"
#include "ldgame/game.hpp"

namespace ldg {

// Per-agent regret certificate for a mixed profile. epsilon_i is
// 1 - u_i / v*_i (0 when v*_i = 0), the smallest eps making agent i
// eps-rational; the certified epsilon is the max over agents.
struct EquilibriumReport {
    std::vector<double> utility;         // u_i(x)
    std::vector<double> best_deviation;  // v*_i = max over pure deviations
    std::vector<double> epsilon_i;
    double epsilon = 0.0;
    double social_welfare = 0.0;
    std::optional<double> opt_value;
    std::optional<double> welfare_ratio;  // social_welfare / opt_value
};

enum class SolverMode { Plain, Averaged };

struct SolverConfig {
    double epsilon = 0.5;
    int max_iterations = 10000;
    double tolerance = 1e-9;
    double damping = 1.0;  // 1 = undamped; only used in Plain mode
    SolverMode mode = SolverMode::Plain;
    int exact_limit = kDefaultExactLimit;
};

struct SolverOutcome {
    MixedProfile profile;
    bool converged = false;
    int iterations = 0;
    EquilibriumReport report;
    std::vector<int> guru_set;
};

// All pure profiles (abstentions included) with no strictly improving
// unilateral pure deviation. Space is (n+1)^n, so n is capped.
std::vector<PureProfile> enumerate_pure_nash(const GameInstance& instance, int limit = 8);

EquilibriumReport certify_epsilon(const GameInstance& instance, const MixedProfile& mixed,
                                  std::optional<double> opt_value = std::nullopt,
                                  int exact_limit = kDefaultExactLimit);

// Pure best response; ties prefer self, then the lowest index. Abstain is
// weakly dominated and never returned.
int best_response(const GameInstance& instance, const MixedProfile& mixed, int i,
                  int exact_limit = kDefaultExactLimit);

// Maximizer of q_i over the restricted simplex {x_ii >= eps}: either a
// point mass on self, or eps on self and 1-eps on the best target.
std::vector<double> restricted_best_response(const GameInstance& instance,
                                             const MixedProfile& mixed, int i, double eps,
                                             int exact_limit = kDefaultExactLimit);

// Round-robin best-response dynamics from the star profile of guru_set:
// guru_set members update within the restricted set, everyone else plays
// unrestricted best responses. Convergence is only claimed when the
// profile is stationary AND the emitted certificate meets the epsilon and
// star-welfare bounds; otherwise the best-certified profile seen is
// returned with converged = false.
SolverOutcome fixed_point_solve(const GameInstance& instance, std::vector<int> guru_set,
                                const SolverConfig& config = {});

// Every agent votes self with probability p = (1 + sqrt(4 eps - 3)) / 2 and
// otherwise delegates to its single best target. Valid for eps in [3/4, 1].
std::pair<MixedProfile, EquilibriumReport> narcissistic_avaricious(
    const GameInstance& instance, double eps, int exact_limit = kDefaultExactLimit);

}  // namespace ldg
