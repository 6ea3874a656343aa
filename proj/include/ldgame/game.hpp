#pragma once

#include <string>
#include <vector>

namespace ldg {

// A delegation game: n agents, utility u(i,j) for having j as guru, and
// per-agent voting weights (all 1 unless set). Immutable after construction.
class GameInstance {
public:
    // utilities must be a square n x n matrix with entries in [0,1];
    // relaxed mode only requires entries >= 0. weights: empty means all 1.
    explicit GameInstance(std::vector<std::vector<double>> utilities,
                          std::vector<double> weights = {},
                          bool relaxed = false);

    int size() const { return n_; }
    double utility(int i, int j) const { return utilities_[static_cast<std::size_t>(i) * n_ + j]; }
    double weight(int i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }
    bool relaxed() const { return relaxed_; }

    // Optional display names, kept for file round-trips. Empty if unset.
    const std::vector<std::string>& names() const { return names_; }
    void set_names(std::vector<std::string> names);

    std::vector<std::vector<double>> utility_rows() const;

    // Same utilities, every weight multiplied by factor.
    GameInstance with_scaled_weights(double factor) const;

private:
    int n_;
    std::vector<double> utilities_;  // row-major n x n
    std::vector<double> weights_;
    std::vector<std::string> names_;
    bool relaxed_;
};

void check_agent_index(const GameInstance& instance, int i, const char* what);

}  // namespace ldg
