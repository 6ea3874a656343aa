#include "ldgame/optimization.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "ldgame/errors.hpp"

namespace ldg {

double star_welfare(const GameInstance& instance, const std::vector<int>& guru_set) {
    const int n = instance.size();
    if (guru_set.empty()) throw validation_error("guru set must be nonempty");
    std::vector<bool> is_guru(n, false);
    for (int j : guru_set) {
        check_agent_index(instance, j, "guru");
        is_guru[j] = true;
    }
    double w = 0.0;
    for (int j = 0; j < n; ++j) {
        if (is_guru[j]) w += instance.weight(j) * instance.utility(j, j);
    }
    for (int i = 0; i < n; ++i) {
        if (is_guru[i]) continue;
        double best = 0.0;
        for (int j = 0; j < n; ++j) {
            if (is_guru[j]) best = std::max(best, instance.utility(i, j));
        }
        w += instance.weight(i) * best;
    }
    return w;
}

namespace {

// Assigns every non-guru to its max-utility guru (ties: lowest index).
std::vector<std::optional<int>> assign_leaves(const GameInstance& instance,
                                              const std::vector<bool>& is_guru) {
    const int n = instance.size();
    std::vector<std::optional<int>> assignment(n);
    for (int i = 0; i < n; ++i) {
        if (is_guru[i]) continue;
        int best = -1;
        double best_u = -1.0;
        for (int j = 0; j < n; ++j) {
            if (is_guru[j] && instance.utility(i, j) > best_u) {
                best_u = instance.utility(i, j);
                best = j;
            }
        }
        assignment[i] = best;
    }
    return assignment;
}

double welfare_of(const GameInstance& instance, const std::vector<int>& gurus,
                  const std::vector<std::optional<int>>& assignment) {
    double w = 0.0;
    for (int j : gurus) w += instance.weight(j) * instance.utility(j, j);
    for (int i = 0; i < instance.size(); ++i) {
        if (assignment[i]) w += instance.weight(i) * instance.utility(i, *assignment[i]);
    }
    return w;
}

OptSolution build_solution(const GameInstance& instance, std::uint32_t mask, bool exact) {
    const int n = instance.size();
    std::vector<bool> is_guru(n, false);
    for (int j = 0; j < n; ++j) is_guru[j] = (mask >> j) & 1u;
    auto assignment = assign_leaves(instance, is_guru);

    // Canonicalize to jolly stars: a leaf whose assigned utility is 0 can
    // vote itself instead without changing welfare.
    bool promoted = false;
    for (int i = 0; i < n; ++i) {
        if (assignment[i] && instance.utility(i, *assignment[i]) == 0.0) {
            is_guru[i] = true;
            promoted = true;
        }
    }
    if (promoted) assignment = assign_leaves(instance, is_guru);

    OptSolution out;
    for (int j = 0; j < n; ++j) {
        if (is_guru[j]) out.guru_set.push_back(j);
    }
    out.assignment = std::move(assignment);
    out.welfare = welfare_of(instance, out.guru_set, out.assignment);
    out.exact = exact;
    return out;
}

// Depth-first enumeration of guru subsets, deciding the highest agent
// first and "excluded" before "included", which visits subsets in
// increasing bitmask order. The first strict maximum is kept.
class SubsetSearch {
public:
    explicit SubsetSearch(const GameInstance& instance)
        : instance_(instance), n_(instance.size()), leaf_best_(n_, 0.0) {}

    std::uint32_t run() {
        descend(n_ - 1, 0u, 0.0);
        return best_mask_;
    }

private:
    void descend(int agent, std::uint32_t mask, double guru_sum) {
        if (agent < 0) {
            if (mask == 0) return;
            double f = guru_sum;
            for (int i = 0; i < n_; ++i) {
                if (!((mask >> i) & 1u)) f += instance_.weight(i) * leaf_best_[i];
            }
            if (f > best_value_) {
                best_value_ = f;
                best_mask_ = mask;
            }
            return;
        }
        descend(agent - 1, mask, guru_sum);

        std::vector<double> saved = leaf_best_;
        for (int i = 0; i < n_; ++i) {
            leaf_best_[i] = std::max(leaf_best_[i], instance_.utility(i, agent));
        }
        descend(agent - 1, mask | (1u << agent), guru_sum + instance_.weight(agent) * instance_.utility(agent, agent));
        leaf_best_ = std::move(saved);
    }

    const GameInstance& instance_;
    int n_;
    std::vector<double> leaf_best_;  // max utility over included gurus
    double best_value_ = -1.0;
    std::uint32_t best_mask_ = 0;
};

}  // namespace

OptSolution opt_exact(const GameInstance& instance, int subset_limit) {
    const int n = instance.size();
    if (subset_limit > 30) {
        throw validation_error("subset enumeration limit capped at 30 agents");
    }
    if (n > subset_limit) {
        throw size_limit_error("exact optimum limited to " + std::to_string(subset_limit) +
                               " agents, instance has " + std::to_string(n) +
                               " (use the greedy method instead)");
    }
    SubsetSearch search(instance);
    return build_solution(instance, search.run(), true);
}

OptSolution opt_greedy(const GameInstance& instance) {
    const int n = instance.size();
    std::vector<bool> is_guru(n, false);
    std::vector<double> leaf_best(n, 0.0);
    double value = 0.0;
    int members = 0;

    // Insertion phase: add the guru with the largest marginal gain while
    // it is positive (the first guru is always added).
    while (true) {
        int pick = -1;
        double pick_gain = 0.0;
        for (int j = 0; j < n; ++j) {
            if (is_guru[j]) continue;
            double gain = instance.weight(j) * (instance.utility(j, j) - leaf_best[j]);
            for (int i = 0; i < n; ++i) {
                if (i == j || is_guru[i]) continue;
                gain += instance.weight(i) * std::max(0.0, instance.utility(i, j) - leaf_best[i]);
            }
            if (pick < 0 || gain > pick_gain) {
                pick = j;
                pick_gain = gain;
            }
        }
        if (pick < 0) break;
        if (members > 0 && pick_gain <= 0.0) break;
        is_guru[pick] = true;
        ++members;
        value += pick_gain;
        for (int i = 0; i < n; ++i) {
            leaf_best[i] = std::max(leaf_best[i], instance.utility(i, pick));
        }
    }

    // Single-swap local search.
    std::vector<int> gurus;
    for (int j = 0; j < n; ++j) {
        if (is_guru[j]) gurus.push_back(j);
    }
    value = star_welfare(instance, gurus);
    bool improved = true;
    while (improved) {
        improved = false;
        int best_out = -1, best_in = -1;
        double best_value = value;
        for (std::size_t a = 0; a < gurus.size(); ++a) {
            for (int k = 0; k < n; ++k) {
                if (is_guru[k]) continue;
                std::vector<int> candidate = gurus;
                candidate[a] = k;
                const double v = star_welfare(instance, candidate);
                if (v > best_value) {
                    best_value = v;
                    best_out = static_cast<int>(a);
                    best_in = k;
                }
            }
        }
        if (best_out >= 0) {
            is_guru[gurus[best_out]] = false;
            is_guru[best_in] = true;
            gurus[best_out] = best_in;
            std::sort(gurus.begin(), gurus.end());
            value = best_value;
            improved = true;
        }
    }

    std::uint32_t mask = 0;
    for (int j : gurus) mask |= 1u << j;
    if (n > 30) {
        // Beyond the bitmask width, build the solution directly.
        auto assignment = assign_leaves(instance, is_guru);
        OptSolution out;
        out.guru_set = gurus;
        for (int i = 0; i < n; ++i) {
            if (assignment[i] && instance.utility(i, *assignment[i]) == 0.0) {
                out.guru_set.push_back(i);
                is_guru[i] = true;
            }
        }
        std::sort(out.guru_set.begin(), out.guru_set.end());
        out.assignment = assign_leaves(instance, is_guru);
        out.welfare = welfare_of(instance, out.guru_set, out.assignment);
        out.exact = false;
        return out;
    }
    return build_solution(instance, mask, false);
}

double sum_best_upper_bound(const GameInstance& instance) {
    const int n = instance.size();
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double best = 0.0;
        for (int j = 0; j < n; ++j) best = std::max(best, instance.utility(i, j));
        total += instance.weight(i) * best;
    }
    return total;
}

StarCheck verify_star_structure(const GameInstance& instance, const OptSolution& solution) {
    const int n = instance.size();
    StarCheck check;
    auto fail = [&check](std::string msg) {
        check.ok = false;
        check.diagnostics.push_back(std::move(msg));
    };

    if (solution.guru_set.empty()) fail("guru set is empty");
    std::vector<bool> is_guru(n, false);
    for (int j : solution.guru_set) {
        if (j < 0 || j >= n) {
            fail("guru index " + std::to_string(j + 1) + " out of range");
            return check;
        }
        if (is_guru[j]) fail("guru " + std::to_string(j + 1) + " listed twice");
        is_guru[j] = true;
    }
    if (solution.assignment.size() != static_cast<std::size_t>(n)) {
        fail("assignment has " + std::to_string(solution.assignment.size()) +
             " entries, expected " + std::to_string(n));
        return check;
    }
    for (int i = 0; i < n; ++i) {
        const auto& a = solution.assignment[i];
        if (is_guru[i]) {
            if (a) fail("guru " + std::to_string(i + 1) + " also has an assignment");
            continue;
        }
        if (!a) {
            fail("non-guru " + std::to_string(i + 1) + " is unassigned");
            continue;
        }
        if (*a < 0 || *a >= n || !is_guru[*a]) {
            fail("agent " + std::to_string(i + 1) + " assigned to non-guru " +
                 std::to_string(*a + 1));
            continue;
        }
        if (instance.utility(i, *a) <= 0.0) {
            fail("leaf " + std::to_string(i + 1) + " is not happy: utility for guru " +
                 std::to_string(*a + 1) + " is zero");
        }
    }
    if (check.ok) {
        const double recomputed = welfare_of(instance, solution.guru_set, solution.assignment);
        if (std::abs(recomputed - solution.welfare) > 1e-12 * std::max(1.0, std::abs(recomputed))) {
            fail("welfare field " + std::to_string(solution.welfare) +
                 " does not match structure welfare " + std::to_string(recomputed));
        }
    }
    return check;
}

}  // namespace ldg
