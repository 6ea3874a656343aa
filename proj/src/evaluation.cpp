#include "ldgame/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>

#include "ldgame/errors.hpp"
#include "ldgame/rng.hpp"

namespace ldg {

namespace {

constexpr double kRowSumTolerance = 1e-12;
constexpr double kPruneThreshold = 1e-15;

void validate_row(std::span<const double> row, int n, int i) {
    if (row.size() != static_cast<std::size_t>(n + 1)) {
        throw validation_error("mixed row " + std::to_string(i + 1) + " has " +
                               std::to_string(row.size()) + " entries, expected " +
                               std::to_string(n + 1));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
        const double v = row[j];
        if (!std::isfinite(v) || v < 0.0) {
            throw validation_error("mixed row " + std::to_string(i + 1) + ", entry " +
                                   std::to_string(j + 1) + " must be a non-negative real");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
        throw validation_error("mixed row " + std::to_string(i + 1) + " sums to " +
                               std::to_string(sum) + ", expected 1");
    }
}

}  // namespace

MixedProfile::MixedProfile(std::vector<std::vector<double>> rows) {
    if (rows.empty()) throw validation_error("mixed profile needs at least one row");
    n_ = static_cast<int>(rows.size());
    rows_.reserve(static_cast<std::size_t>(n_) * (n_ + 1));
    for (int i = 0; i < n_; ++i) {
        validate_row(rows[i], n_, i);
        rows_.insert(rows_.end(), rows[i].begin(), rows[i].end());
    }
}

MixedProfile MixedProfile::from_pure(const PureProfile& profile) {
    const int n = profile.size();
    validate_profile(profile, n);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < n; ++i) {
        if (profile.choices[i]) {
            rows[i][*profile.choices[i]] = 1.0;
        } else {
            rows[i][n] = 1.0;
        }
    }
    return MixedProfile(std::move(rows));
}

MixedProfile MixedProfile::all_self(int n) {
    return from_pure(PureProfile::all_self(n));
}

std::vector<std::vector<double>> MixedProfile::row_vectors() const {
    std::vector<std::vector<double>> out(n_);
    for (int i = 0; i < n_; ++i) {
        auto r = row(i);
        out[i].assign(r.begin(), r.end());
    }
    return out;
}

void MixedProfile::set_row(int i, std::span<const double> row) {
    if (i < 0 || i >= n_) {
        throw validation_error("row index " + std::to_string(i + 1) + " out of range");
    }
    validate_row(row, n_, i);
    std::copy(row.begin(), row.end(), rows_.begin() + static_cast<std::size_t>(i) * (n_ + 1));
}

double GuruDistribution::total() const {
    double t = no_guru;
    for (double m : mass) t += m;
    return t;
}

namespace {

void check_exact_limit(int n, int exact_limit) {
    if (exact_limit > kExactLimitCeiling) {
        throw validation_error("exact-mode limit " + std::to_string(exact_limit) +
                               " exceeds the bitmask ceiling of " +
                               std::to_string(kExactLimitCeiling));
    }
    if (n > exact_limit) {
        throw size_limit_error("exact evaluation limited to " + std::to_string(exact_limit) +
                               " agents, instance has " + std::to_string(n) +
                               " (use Monte Carlo instead)");
    }
}

// Sum over simple delegation paths, memoized on (current vertex, set of
// vertices already on the path). State value: conditional probability of
// ending at each guru, plus the no-guru mass in the last slot.
class WalkDp {
public:
    WalkDp(const GameInstance& instance, const MixedProfile& mixed) : n_(instance.size()) {
        // Prune negligible mass and renormalize so branching stays tight.
        rows_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            auto row = mixed.row(i);
            auto& r = rows_[i];
            r.assign(row.begin(), row.end());
            double sum = 0.0;
            for (double& v : r) {
                if (v < kPruneThreshold) v = 0.0;
                sum += v;
            }
            for (double& v : r) v /= sum;
        }
    }

    // Distribution of the walk started at v with `visited` already on the
    // path (v itself not included in the mask).
    const std::vector<double>& eval(int v, std::uint32_t visited) {
        const std::uint64_t key = (static_cast<std::uint64_t>(visited) << 5) | static_cast<std::uint64_t>(v);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        std::vector<double> dist(n_ + 1, 0.0);
        const auto& row = rows_[v];
        dist[v] += row[v];    // self-loop: v is the guru
        dist[n_] += row[n_];  // abstaining sink
        const std::uint32_t next_visited = visited | (1u << v);
        for (int w = 0; w < n_; ++w) {
            if (w == v) continue;
            const double p = row[w];
            if (p == 0.0) continue;
            if (visited >> w & 1u) {
                dist[n_] += p;  // closes a delegation cycle
            } else {
                const auto& sub = eval(w, next_visited);
                for (int t = 0; t <= n_; ++t) dist[t] += p * sub[t];
            }
        }
        return memo_.emplace(key, std::move(dist)).first->second;
    }

    int size() const { return n_; }

private:
    int n_;
    std::vector<std::vector<double>> rows_;
    std::unordered_map<std::uint64_t, std::vector<double>> memo_;
};

GuruDistribution to_distribution(const std::vector<double>& dist, int n) {
    GuruDistribution out;
    out.mass.assign(dist.begin(), dist.begin() + n);
    out.no_guru = dist[n];
    return out;
}

}  // namespace

GuruDistribution exact_guru_distribution(const GameInstance& instance, const MixedProfile& mixed,
                                         int i, int exact_limit) {
    const int n = instance.size();
    check_agent_index(instance, i, "agent");
    if (mixed.size() != n) throw validation_error("profile size does not match instance");
    check_exact_limit(n, exact_limit);
    WalkDp dp(instance, mixed);
    return to_distribution(dp.eval(i, 0), n);
}

double exact_expected_utility(const GameInstance& instance, const MixedProfile& mixed, int i,
                              int exact_limit) {
    const GuruDistribution dist = exact_guru_distribution(instance, mixed, i, exact_limit);
    double u = 0.0;
    for (int j = 0; j < instance.size(); ++j) u += dist.mass[j] * instance.utility(i, j);
    return u;
}

std::vector<double> deviation_values(const GameInstance& instance, const MixedProfile& mixed,
                                     int i, int exact_limit) {
    const int n = instance.size();
    check_agent_index(instance, i, "agent");
    if (mixed.size() != n) throw validation_error("profile size does not match instance");
    check_exact_limit(n, exact_limit);

    WalkDp dp(instance, mixed);
    std::vector<double> q(n + 1, 0.0);
    for (int j = 0; j < n; ++j) {
        if (j == i) {
            q[i] = instance.utility(i, i);  // i votes self: guaranteed guru
            continue;
        }
        // i delegates to j: walk from j with i blocked.
        const auto& dist = dp.eval(j, 1u << i);
        double u = 0.0;
        for (int t = 0; t < n; ++t) u += dist[t] * instance.utility(i, t);
        q[j] = u;
    }
    q[n] = 0.0;  // abstain
    return q;
}

double exact_social_welfare(const GameInstance& instance, const MixedProfile& mixed,
                            int exact_limit) {
    double sw = 0.0;
    for (int i = 0; i < instance.size(); ++i) {
        sw += instance.weight(i) * exact_expected_utility(instance, mixed, i, exact_limit);
    }
    return sw;
}

namespace {

// Guru resolution over a sampled functional graph; memoized per sample.
void resolve_all(const std::vector<int>& choice, int n, std::vector<int>& guru,
                 std::vector<unsigned char>& state, std::vector<int>& path) {
    std::fill(state.begin(), state.end(), 0);
    for (int start = 0; start < n; ++start) {
        if (state[start]) continue;
        path.clear();
        int v = start;
        int result = -1;
        while (true) {
            if (state[v] == 2) {
                result = guru[v];
                break;
            }
            if (state[v] == 1) {
                result = -1;  // cycle of length >= 2
                break;
            }
            const int c = choice[v];
            if (c < 0) {
                state[v] = 2;
                guru[v] = -1;
                path.push_back(v);
                result = -1;
                break;
            }
            if (c == v) {
                state[v] = 2;
                guru[v] = v;
                path.push_back(v);
                result = v;
                break;
            }
            state[v] = 1;
            path.push_back(v);
            v = c;
        }
        for (int u : path) {
            state[u] = 2;
            guru[u] = result;
        }
    }
}

}  // namespace

std::vector<EvalEstimate> monte_carlo_utilities(const GameInstance& instance,
                                                const MixedProfile& mixed, long long samples,
                                                std::uint64_t seed) {
    const int n = instance.size();
    if (mixed.size() != n) throw validation_error("profile size does not match instance");
    if (samples < 1) throw validation_error("samples must be at least 1");

    std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
    std::vector<int> choice(n), guru(n), path;
    std::vector<unsigned char> state(n);

    for (long long s = 0; s < samples; ++s) {
        SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(s)));
        for (int i = 0; i < n; ++i) {
            const double u = rng.next_double();
            const auto row = mixed.row(i);
            double cdf = 0.0;
            int picked = n;  // falls through to abstain
            for (int j = 0; j <= n; ++j) {
                cdf += row[j];
                if (u < cdf) {
                    picked = j;
                    break;
                }
            }
            choice[i] = picked == n ? -1 : picked;
        }
        resolve_all(choice, n, guru, state, path);
        for (int i = 0; i < n; ++i) {
            const double u = guru[i] >= 0 ? instance.utility(i, guru[i]) : 0.0;
            sum[i] += u;
            sumsq[i] += u * u;
        }
    }

    std::vector<EvalEstimate> out(n);
    for (int i = 0; i < n; ++i) {
        const double mean = sum[i] / static_cast<double>(samples);
        double se = 0.0;
        if (samples > 1) {
            const double var =
                std::max(0.0, (sumsq[i] - static_cast<double>(samples) * mean * mean) /
                                  static_cast<double>(samples - 1));
            se = std::sqrt(var / static_cast<double>(samples));
        }
        out[i] = {mean, se, samples, seed};
    }
    return out;
}

}  // namespace ldg
