#include "ldgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ldgame/errors.hpp"
#include "ldgame/optimization.hpp"

namespace ldg {

namespace {

constexpr double kStrictImprovement = 1e-12;

// Guru of i after i unilaterally deviates to `target` (-1 = abstain),
// with everyone else playing `choice`. `stamp`/`mark` implement visited
// marking without clearing between calls.
int deviation_guru(const std::vector<int>& choice, int i, int target, std::vector<int>& mark,
                   int stamp) {
    if (target < 0) return -1;
    if (target == i) return i;
    mark[i] = stamp;
    int v = target;
    while (mark[v] != stamp) {
        mark[v] = stamp;
        const int c = choice[v];
        if (c < 0) return -1;
        if (c == v) return v;
        v = c;
    }
    return -1;  // walked into i or an earlier vertex: delegation cycle
}

}  // namespace

std::vector<PureProfile> enumerate_pure_nash(const GameInstance& instance, int limit) {
    const int n = instance.size();
    if (n > limit) {
        throw size_limit_error("pure Nash enumeration limited to " + std::to_string(limit) +
                               " agents, instance has " + std::to_string(n));
    }

    std::vector<PureProfile> found;
    // Odometer over (n+1)^n joint choices; digit n means abstain.
    std::vector<int> digits(n, 0);
    std::vector<int> choice(n);
    std::vector<int> mark(n, -1);
    int stamp = 0;
    while (true) {
        for (int i = 0; i < n; ++i) choice[i] = digits[i] == n ? -1 : digits[i];

        bool is_ne = true;
        for (int i = 0; i < n && is_ne; ++i) {
            const int base_guru = deviation_guru(choice, i, choice[i], mark, ++stamp);
            const double base = base_guru >= 0 ? instance.utility(i, base_guru) : 0.0;
            for (int target = -1; target < n; ++target) {
                if (target == choice[i]) continue;
                const int g = deviation_guru(choice, i, target, mark, ++stamp);
                const double u = g >= 0 ? instance.utility(i, g) : 0.0;
                if (u > base + kStrictImprovement) {
                    is_ne = false;
                    break;
                }
            }
        }
        if (is_ne) {
            PureProfile p;
            p.choices.resize(n);
            for (int i = 0; i < n; ++i) {
                p.choices[i] = choice[i] < 0 ? std::nullopt : std::optional<int>(choice[i]);
            }
            found.push_back(std::move(p));
        }

        int pos = 0;
        while (pos < n && ++digits[pos] > n) digits[pos++] = 0;
        if (pos == n) break;
    }
    return found;
}

EquilibriumReport certify_epsilon(const GameInstance& instance, const MixedProfile& mixed,
                                  std::optional<double> opt_value, int exact_limit) {
    const int n = instance.size();
    EquilibriumReport report;
    report.utility.resize(n);
    report.best_deviation.resize(n);
    report.epsilon_i.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto q = deviation_values(instance, mixed, i, exact_limit);
        double best = 0.0;  // abstain is always available and worth 0
        for (int j = 0; j < n; ++j) best = std::max(best, q[j]);
        const double u = exact_expected_utility(instance, mixed, i, exact_limit);
        report.utility[i] = u;
        report.best_deviation[i] = best;
        report.epsilon_i[i] = best > 0.0 ? std::clamp(1.0 - u / best, 0.0, 1.0) : 0.0;
    }
    report.epsilon = *std::max_element(report.epsilon_i.begin(), report.epsilon_i.end());
    report.social_welfare = exact_social_welfare(instance, mixed, exact_limit);
    if (opt_value) {
        report.opt_value = opt_value;
        report.welfare_ratio = *opt_value > 0.0 ? report.social_welfare / *opt_value : 0.0;
    }
    return report;
}

namespace {

// Argmax of q over {abstain} union V with the house tie rule: self first,
// then lowest index. All-non-positive q falls back to self, since
// abstaining is weakly dominated.
int pick_best_target(const std::vector<double>& q, int n, int self) {
    double best = 0.0;
    for (int j = 0; j < n; ++j) best = std::max(best, q[j]);
    if (best <= 0.0 || q[self] == best) return self;
    for (int j = 0; j < n; ++j) {
        if (q[j] == best) return j;
    }
    return self;
}

}  // namespace

int best_response(const GameInstance& instance, const MixedProfile& mixed, int i,
                  int exact_limit) {
    const auto q = deviation_values(instance, mixed, i, exact_limit);
    return pick_best_target(q, instance.size(), i);
}

std::vector<double> restricted_best_response(const GameInstance& instance,
                                             const MixedProfile& mixed, int i, double eps,
                                             int exact_limit) {
    if (eps < 0.0 || eps > 1.0) {
        throw validation_error("restriction epsilon must be within [0,1]");
    }
    const int n = instance.size();
    const auto q = deviation_values(instance, mixed, i, exact_limit);
    const int target = pick_best_target(q, n, i);

    std::vector<double> row(n + 1, 0.0);
    if (target == i || q[target] <= q[i]) {
        row[i] = 1.0;
    } else {
        row[i] = eps;
        row[target] = 1.0 - eps;
    }
    return row;
}

namespace {

MixedProfile star_profile(const GameInstance& instance, const std::vector<int>& guru_set) {
    const int n = instance.size();
    std::vector<bool> is_guru(n, false);
    for (int j : guru_set) is_guru[j] = true;
    std::vector<std::vector<double>> rows(n, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < n; ++i) {
        if (is_guru[i]) {
            rows[i][i] = 1.0;
            continue;
        }
        int best = -1;
        double best_u = -1.0;
        for (int j : guru_set) {
            if (instance.utility(i, j) > best_u) {
                best_u = instance.utility(i, j);
                best = j;
            }
        }
        rows[i][best] = 1.0;
    }
    return MixedProfile(std::move(rows));
}

}  // namespace

SolverOutcome fixed_point_solve(const GameInstance& instance, std::vector<int> guru_set,
                                const SolverConfig& config) {
    const int n = instance.size();
    if (guru_set.empty()) throw validation_error("guru set must be nonempty");
    std::sort(guru_set.begin(), guru_set.end());
    guru_set.erase(std::unique(guru_set.begin(), guru_set.end()), guru_set.end());
    for (int j : guru_set) check_agent_index(instance, j, "guru");
    if (config.epsilon < 0.0 || config.epsilon > 1.0) {
        throw validation_error("target epsilon must be within [0,1]");
    }
    if (config.damping <= 0.0 || config.damping > 1.0) {
        throw validation_error("damping must be within (0,1]");
    }
    if (config.max_iterations < 1) throw validation_error("max_iterations must be at least 1");

    std::vector<bool> is_guru(n, false);
    for (int j : guru_set) is_guru[j] = true;

    const double star_w = star_welfare(instance, guru_set);
    const double sw_floor = config.epsilon * star_w - 1e-6;

    MixedProfile profile = star_profile(instance, guru_set);
    MixedProfile best_profile = profile;
    EquilibriumReport best_report;
    bool have_best = false;

    std::vector<double> next_row(n + 1);
    int pass = 0;
    while (pass < config.max_iterations) {
        ++pass;
        double delta = 0.0;
        for (int i = 0; i < n; ++i) {
            std::vector<double> target;
            if (is_guru[i]) {
                target = restricted_best_response(instance, profile, i, config.epsilon,
                                                  config.exact_limit);
            } else {
                target.assign(n + 1, 0.0);
                target[best_response(instance, profile, i, config.exact_limit)] = 1.0;
            }
            const auto old_row = profile.row(i);
            if (config.mode == SolverMode::Averaged) {
                // Running average of best responses; the initial row counts
                // as the first sample.
                const double t = static_cast<double>(pass);
                for (int j = 0; j <= n; ++j) {
                    next_row[j] = old_row[j] + (target[j] - old_row[j]) / (t + 1.0);
                }
            } else if (config.damping < 1.0) {
                for (int j = 0; j <= n; ++j) {
                    next_row[j] = config.damping * target[j] + (1.0 - config.damping) * old_row[j];
                }
            } else {
                std::copy(target.begin(), target.end(), next_row.begin());
            }
            // Compensate accumulated rounding drift; plain-mode rows stay
            // bit-exact so restricted feasibility is preserved.
            double sum = 0.0;
            for (int j = 0; j <= n; ++j) sum += next_row[j];
            if (std::abs(sum - 1.0) > 1e-14) {
                for (int j = 0; j <= n; ++j) next_row[j] /= sum;
            }
            for (int j = 0; j <= n; ++j) {
                delta = std::max(delta, std::abs(next_row[j] - old_row[j]));
            }
            profile.set_row(i, next_row);
        }

        EquilibriumReport report = certify_epsilon(instance, profile, std::nullopt, config.exact_limit);
        if (!have_best || report.epsilon < best_report.epsilon) {
            best_profile = profile;
            best_report = report;
            have_best = true;
        }
        const bool certified =
            report.epsilon <= config.epsilon + config.tolerance && report.social_welfare >= sw_floor;
        if (delta <= config.tolerance && certified) {
            return {std::move(profile), true, pass, std::move(report), std::move(guru_set)};
        }
        if (delta == 0.0) {
            // Exactly stationary without a valid certificate: the update
            // map is deterministic, so nothing further can change.
            break;
        }
    }
    return {std::move(best_profile), false, pass, std::move(best_report), std::move(guru_set)};
}

std::pair<MixedProfile, EquilibriumReport> narcissistic_avaricious(const GameInstance& instance,
                                                                   double eps, int exact_limit) {
    if (eps < 0.75 || eps > 1.0) {
        throw validation_error(
            "narcissistic-avaricious epsilon must be within [3/4, 1]: the self-vote "
            "probability p solves eps = 1 - p(1-p), which has no solution below 3/4");
    }
    const int n = instance.size();
    const double p = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * (1.0 - eps))));

    std::vector<std::vector<double>> rows(n, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < n; ++i) {
        int fav = 0;
        double fav_u = instance.utility(i, 0);
        for (int j = 1; j < n; ++j) {
            if (instance.utility(i, j) > fav_u) {
                fav_u = instance.utility(i, j);
                fav = j;
            }
        }
        if (fav == i) {
            rows[i][i] = 1.0;
        } else {
            rows[i][i] = p;
            rows[i][fav] = 1.0 - p;
        }
    }
    MixedProfile profile(std::move(rows));
    EquilibriumReport report = certify_epsilon(instance, profile, std::nullopt, exact_limit);
    return {std::move(profile), std::move(report)};
}

}  // namespace ldg
