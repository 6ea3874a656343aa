#include "ldgame/game.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ldgame/errors.hpp"

namespace ldg {

namespace {

std::string entry_msg(int i, int j, double v, const char* why) {
    return "utilities[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "] = " +
           std::to_string(v) + " " + why;
}

}  // namespace

GameInstance::GameInstance(std::vector<std::vector<double>> utilities, std::vector<double> weights,
                           bool relaxed)
    : relaxed_(relaxed) {
    const std::size_t n = utilities.size();
    if (n == 0) throw validation_error("instance needs at least one agent");
    n_ = static_cast<int>(n);
    utilities_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (utilities[i].size() != n) {
            throw validation_error("utilities row " + std::to_string(i + 1) + " has " +
                                   std::to_string(utilities[i].size()) + " entries, expected " +
                                   std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double v = utilities[i][j];
            if (!std::isfinite(v)) {
                throw validation_error(entry_msg(static_cast<int>(i), static_cast<int>(j), v, "is not finite"));
            }
            if (v < 0.0) {
                throw validation_error(entry_msg(static_cast<int>(i), static_cast<int>(j), v, "is negative"));
            }
            if (!relaxed && v > 1.0) {
                throw validation_error(entry_msg(static_cast<int>(i), static_cast<int>(j), v,
                                                 "is outside [0,1] (use relaxed mode for that)"));
            }
            utilities_.push_back(v);
        }
    }
    if (weights.empty()) {
        weights_.assign(n, 1.0);
    } else {
        if (weights.size() != n) {
            throw validation_error("weights has " + std::to_string(weights.size()) +
                                   " entries, expected " + std::to_string(n));
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
                throw validation_error("weights[" + std::to_string(i + 1) +
                                       "] must be a non-negative real");
            }
        }
        weights_ = std::move(weights);
    }
}

void GameInstance::set_names(std::vector<std::string> names) {
    if (!names.empty() && names.size() != static_cast<std::size_t>(n_)) {
        throw validation_error("names has " + std::to_string(names.size()) + " entries, expected " +
                               std::to_string(n_));
    }
    names_ = std::move(names);
}

std::vector<std::vector<double>> GameInstance::utility_rows() const {
    std::vector<std::vector<double>> rows(n_);
    for (int i = 0; i < n_; ++i) {
        rows[i].assign(utilities_.begin() + static_cast<std::size_t>(i) * n_,
                       utilities_.begin() + static_cast<std::size_t>(i + 1) * n_);
    }
    return rows;
}

GameInstance GameInstance::with_scaled_weights(double factor) const {
    std::vector<double> scaled = weights_;
    for (double& w : scaled) w *= factor;
    GameInstance copy(utility_rows(), std::move(scaled), relaxed_);
    copy.set_names(names_);
    return copy;
}

void check_agent_index(const GameInstance& instance, int i, const char* what) {
    if (i < 0 || i >= instance.size()) {
        throw validation_error(std::string(what) + " index " + std::to_string(i + 1) +
                               " out of range 1.." + std::to_string(instance.size()));
    }
}

}  // namespace ldg
