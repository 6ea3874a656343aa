#pragma once

#include <string>
#include <vector>

#include "ldgame/equilibrium.hpp"
#include "ldgame/game.hpp"

namespace ldg {

struct SweepRow {
    double epsilon = 0.0;
    std::string mode;  // "fixed-point" or "na"
    bool converged = false;
    double certified_epsilon = 0.0;  // re-certified on the emitted profile
    double sw = 0.0;
    double opt = 0.0;
    double ratio = 0.0;
    int iterations = 0;
    double seconds = 0.0;  // solve + certification, I/O excluded
    bool heuristic_baseline = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

// Runs fixed_point_solve with the exact guru set at every epsilon in the
// grid, plus the narcissistic-avaricious profile where eps >= 3/4.
SweepResult pos_sweep(const GameInstance& instance, const std::vector<double>& eps_grid,
                      const SolverConfig& base_config = {});

// Columns: epsilon,mode,converged,certified_epsilon,sw,opt,ratio,iterations,seconds
std::string sweep_to_csv(const SweepResult& result);
std::string sweep_to_json(const SweepResult& result);

// "0.1:1.0:0.05" (inclusive endpoints), "0.25,0.5,0.75", or a single value.
std::vector<double> parse_eps_grid(const std::string& text);

struct BatchRound {
    std::string file;
    bool ok = false;
    std::string error;
    double sw = 0.0;
    double opt = 0.0;
    double ratio = 0.0;
    bool converged = true;
    bool heuristic_baseline = false;
};

struct BatchResult {
    std::vector<BatchRound> rounds;
    double cumulative_sw = 0.0;
    double cumulative_opt = 0.0;
    double cumulative_ratio = 0.0;
};

// Applies one single-instance command ("solve na --epsilon E",
// "solve fixed-point --epsilon E [--mode M] [--max-iter N]", or
// "opt [--method exact|greedy]") to each instance file. Per-file failures
// are recorded in the round, never fatal.
BatchResult batch_run(const std::vector<std::string>& instance_files, const std::string& command);

std::string batch_to_json(const BatchResult& result);

}  // namespace ldg
