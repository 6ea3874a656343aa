#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ldgame/delegation.hpp"
#include "ldgame/game.hpp"

namespace ldg {

// Exact evaluation enumerates simple paths with a (vertex, visited-bitmask)
// memo, so cost grows like n * 2^n. The default cap keeps desk runs sane;
// the bitmask representation itself tops out at kExactLimitCeiling agents.
inline constexpr int kDefaultExactLimit = 20;
inline constexpr int kExactLimitCeiling = 25;

// Per-agent probability row over {targets 1..n} + abstain. Row i has n+1
// entries; the last one is the abstain mass. Rows sum to 1 within 1e-12.
class MixedProfile {
public:
    explicit MixedProfile(std::vector<std::vector<double>> rows);

    static MixedProfile from_pure(const PureProfile& profile);
    static MixedProfile all_self(int n);

    int size() const { return n_; }
    // Probability that i picks target j (j in [0, n)).
    double prob(int i, int j) const { return rows_[static_cast<std::size_t>(i) * (n_ + 1) + j]; }
    double abstain(int i) const { return rows_[static_cast<std::size_t>(i) * (n_ + 1) + n_]; }
    std::span<const double> row(int i) const {
        return {rows_.data() + static_cast<std::size_t>(i) * (n_ + 1), static_cast<std::size_t>(n_ + 1)};
    }
    std::vector<std::vector<double>> row_vectors() const;

    // Membership in the restricted strategy set: self-mass at least eps.
    bool restricted_feasible(int i, double eps) const { return prob(i, i) >= eps; }

    // Replaces row i (must have n+1 non-negative entries summing to 1).
    void set_row(int i, std::span<const double> row);

    bool operator==(const MixedProfile&) const = default;

private:
    int n_;
    std::vector<double> rows_;  // row-major n x (n+1)
};

// P(g(i) = j) for every target j plus the no-guru mass; sums to 1.
struct GuruDistribution {
    std::vector<double> mass;  // size n
    double no_guru = 0.0;

    double total() const;
};

struct EvalEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long long samples = 0;
    std::uint64_t seed = 0;
};

GuruDistribution exact_guru_distribution(const GameInstance& instance, const MixedProfile& mixed,
                                         int i, int exact_limit = kDefaultExactLimit);

double exact_expected_utility(const GameInstance& instance, const MixedProfile& mixed, int i,
                              int exact_limit = kDefaultExactLimit);

// q_i(j) for every pure strategy j of agent i, abstain last (always 0).
// Multilinearity: u_i(x) = sum_j x_ij * q_i(j).
std::vector<double> deviation_values(const GameInstance& instance, const MixedProfile& mixed,
                                     int i, int exact_limit = kDefaultExactLimit);

double exact_social_welfare(const GameInstance& instance, const MixedProfile& mixed,
                            int exact_limit = kDefaultExactLimit);

// Sampled per-agent expected utilities. Sample s draws every agent's choice
// from substream (seed, s), so results are reproducible and independent of
// how samples are scheduled.
std::vector<EvalEstimate> monte_carlo_utilities(const GameInstance& instance,
                                                const MixedProfile& mixed, long long samples,
                                                std::uint64_t seed);

}  // namespace ldg
