#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldgame/game.hpp"

namespace ldg {

inline constexpr int kDefaultSubsetLimit = 24;

// A star-forest delegation: guru set D, and for every non-guru its assigned
// guru. welfare is the (weighted) star welfare of that structure.
struct OptSolution {
    std::vector<int> guru_set;                   // sorted ascending
    std::vector<std::optional<int>> assignment;  // size n; nullopt for gurus
    double welfare = 0.0;
    bool exact = false;
};

// f(D) = sum_{j in D} w_j u_jj + sum_{i not in D} w_i max_{j in D} u_ij.
double star_welfare(const GameInstance& instance, const std::vector<int>& guru_set);

// Exact optimum by subset enumeration (increasing bitmask order, first
// maximum kept). The result is canonicalized into a union of jolly stars:
// leaves assigned at utility 0 are promoted to singleton gurus.
OptSolution opt_exact(const GameInstance& instance, int subset_limit = kDefaultSubsetLimit);

// Greedy guru insertion by marginal gain, then single-swap local search.
OptSolution opt_greedy(const GameInstance& instance);

// sum_i w_i max_j u_ij; an upper bound on the optimal welfare.
double sum_best_upper_bound(const GameInstance& instance);

struct StarCheck {
    bool ok = true;
    std::vector<std::string> diagnostics;

    explicit operator bool() const { return ok; }
};

// Checks the jolly-star invariants and the welfare field of a solution.
StarCheck verify_star_structure(const GameInstance& instance, const OptSolution& solution);

}  // namespace ldg
