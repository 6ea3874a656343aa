#include "ldgame/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "ldgame/errors.hpp"
#include "ldgame/instances.hpp"
#include "ldgame/optimization.hpp"

namespace ldg {

using nlohmann::json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// OPT baseline for ratios: exact when enumerable, greedy otherwise.
std::pair<OptSolution, bool> opt_baseline(const GameInstance& instance) {
    if (instance.size() <= kDefaultSubsetLimit) {
        return {opt_exact(instance), false};
    }
    return {opt_greedy(instance), true};
}

}  // namespace

std::vector<double> parse_eps_grid(const std::string& text) {
    std::vector<double> grid;
    const auto parse_one = [](const std::string& s) {
        try {
            return std::stod(s);
        } catch (const std::exception&) {
            throw validation_error("cannot parse epsilon value '" + s + "'");
        }
    };
    if (text.find(':') != std::string::npos) {
        std::stringstream ss(text);
        std::string a, b, c;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c)) {
            throw validation_error("epsilon grid must be start:end:step");
        }
        const double start = parse_one(a), end = parse_one(b), step = parse_one(c);
        if (step <= 0.0) throw validation_error("epsilon grid step must be positive");
        for (double v = start; v <= end + 1e-12; v += step) grid.push_back(std::min(v, end));
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) grid.push_back(parse_one(item));
        }
    }
    if (grid.empty()) throw validation_error("epsilon grid is empty");
    for (double v : grid) {
        if (v < 0.0 || v > 1.0) {
            throw validation_error("epsilon " + std::to_string(v) + " outside [0,1]");
        }
    }
    return grid;
}

SweepResult pos_sweep(const GameInstance& instance, const std::vector<double>& eps_grid,
                      const SolverConfig& base_config) {
    SweepResult result;
    const auto [baseline, heuristic] = opt_baseline(instance);
    const double opt = baseline.welfare;
    const std::vector<int>& gurus = baseline.guru_set;

    for (double eps : eps_grid) {
        {
            SolverConfig config = base_config;
            config.epsilon = eps;
            const auto start = std::chrono::steady_clock::now();
            SolverOutcome outcome = fixed_point_solve(instance, gurus, config);
            // Certify the emitted profile afresh; the row never trusts the
            // solver's own claim.
            EquilibriumReport report =
                certify_epsilon(instance, outcome.profile, opt, config.exact_limit);
            const double elapsed = seconds_since(start);
            result.rows.push_back({eps, "fixed-point", outcome.converged, report.epsilon,
                                   report.social_welfare, opt,
                                   report.welfare_ratio.value_or(0.0), outcome.iterations, elapsed,
                                   heuristic});
        }
        if (eps >= 0.75) {
            const auto start = std::chrono::steady_clock::now();
            auto [profile, solver_report] =
                narcissistic_avaricious(instance, eps, base_config.exact_limit);
            EquilibriumReport report =
                certify_epsilon(instance, profile, opt, base_config.exact_limit);
            const double elapsed = seconds_since(start);
            result.rows.push_back({eps, "na", true, report.epsilon, report.social_welfare, opt,
                                   report.welfare_ratio.value_or(0.0), 1, elapsed, heuristic});
        }
    }
    return result;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::string out = "epsilon,mode,converged,certified_epsilon,sw,opt,ratio,iterations,seconds\n";
    for (const auto& r : result.rows) {
        out += fmt17(r.epsilon) + "," + r.mode + "," + (r.converged ? "true" : "false") + "," +
               fmt17(r.certified_epsilon) + "," + fmt17(r.sw) + "," + fmt17(r.opt) + "," +
               fmt17(r.ratio) + "," + std::to_string(r.iterations) + "," + fmt17(r.seconds) + "\n";
    }
    return out;
}

std::string sweep_to_json(const SweepResult& result) {
    json rows = json::array();
    for (const auto& r : result.rows) {
        json row;
        row["epsilon"] = r.epsilon;
        row["mode"] = r.mode;
        row["converged"] = r.converged;
        row["certified_epsilon"] = r.certified_epsilon;
        row["sw"] = r.sw;
        row["opt"] = r.opt;
        row["ratio"] = r.ratio;
        row["iterations"] = r.iterations;
        row["seconds"] = r.seconds;
        if (r.heuristic_baseline) row["opt_baseline"] = "heuristic";
        rows.push_back(std::move(row));
    }
    json doc;
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

namespace {

struct BatchCommand {
    enum class Kind { SolveNa, SolveFixedPoint, Opt } kind = Kind::Opt;
    double epsilon = 0.5;
    SolverMode mode = SolverMode::Plain;
    int max_iterations = 10000;
    std::string opt_method = "exact";
};

BatchCommand parse_batch_command(const std::string& command) {
    std::stringstream ss(command);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    if (tokens.empty()) throw validation_error("batch command is empty");

    BatchCommand cmd;
    std::size_t pos = 0;
    if (tokens[0] == "solve") {
        if (tokens.size() < 2) throw validation_error("batch: 'solve' needs a subcommand");
        if (tokens[1] == "na") {
            cmd.kind = BatchCommand::Kind::SolveNa;
        } else if (tokens[1] == "fixed-point") {
            cmd.kind = BatchCommand::Kind::SolveFixedPoint;
        } else {
            throw validation_error("batch: unknown solve subcommand '" + tokens[1] + "'");
        }
        pos = 2;
    } else if (tokens[0] == "opt") {
        cmd.kind = BatchCommand::Kind::Opt;
        pos = 1;
    } else {
        throw validation_error("batch: unsupported command '" + tokens[0] +
                               "' (expected solve na, solve fixed-point, or opt)");
    }
    while (pos < tokens.size()) {
        const std::string& flag = tokens[pos];
        const auto need_value = [&]() -> std::string {
            if (pos + 1 >= tokens.size()) {
                throw validation_error("batch: flag '" + flag + "' needs a value");
            }
            return tokens[++pos];
        };
        if (flag == "--epsilon") {
            cmd.epsilon = std::stod(need_value());
        } else if (flag == "--mode") {
            const std::string v = need_value();
            if (v == "plain") {
                cmd.mode = SolverMode::Plain;
            } else if (v == "averaged") {
                cmd.mode = SolverMode::Averaged;
            } else {
                throw validation_error("batch: unknown mode '" + v + "'");
            }
        } else if (flag == "--max-iter") {
            cmd.max_iterations = std::stoi(need_value());
        } else if (flag == "--method") {
            cmd.opt_method = need_value();
        } else {
            throw validation_error("batch: unknown flag '" + flag + "'");
        }
        ++pos;
    }
    return cmd;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

BatchResult batch_run(const std::vector<std::string>& instance_files, const std::string& command) {
    const BatchCommand cmd = parse_batch_command(command);
    BatchResult result;
    for (const auto& file : instance_files) {
        BatchRound round;
        round.file = file;
        try {
            const GameInstance instance = parse_instance(read_file(file));
            const auto [baseline, heuristic] = opt_baseline(instance);
            round.opt = baseline.welfare;
            round.heuristic_baseline = heuristic;
            switch (cmd.kind) {
                case BatchCommand::Kind::SolveNa: {
                    auto [profile, report] = narcissistic_avaricious(instance, cmd.epsilon);
                    round.sw = report.social_welfare;
                    break;
                }
                case BatchCommand::Kind::SolveFixedPoint: {
                    SolverConfig config;
                    config.epsilon = cmd.epsilon;
                    config.mode = cmd.mode;
                    config.max_iterations = cmd.max_iterations;
                    SolverOutcome outcome = fixed_point_solve(instance, baseline.guru_set, config);
                    round.sw = certify_epsilon(instance, outcome.profile).social_welfare;
                    round.converged = outcome.converged;
                    break;
                }
                case BatchCommand::Kind::Opt: {
                    const OptSolution sol =
                        cmd.opt_method == "greedy" ? opt_greedy(instance) : opt_exact(instance);
                    round.sw = sol.welfare;
                    break;
                }
            }
            round.ratio = round.opt > 0.0 ? round.sw / round.opt : 0.0;
            round.ok = true;
        } catch (const error& e) {
            round.ok = false;
            round.error = e.what();
        }
        result.rounds.push_back(std::move(round));
    }
    for (const auto& r : result.rounds) {
        if (!r.ok) continue;
        result.cumulative_sw += r.sw;
        result.cumulative_opt += r.opt;
    }
    result.cumulative_ratio =
        result.cumulative_opt > 0.0 ? result.cumulative_sw / result.cumulative_opt : 0.0;
    return result;
}

std::string batch_to_json(const BatchResult& result) {
    json rounds = json::array();
    for (const auto& r : result.rounds) {
        json row;
        row["file"] = r.file;
        row["ok"] = r.ok;
        if (!r.ok) {
            row["error"] = r.error;
        } else {
            row["sw"] = r.sw;
            row["opt"] = r.opt;
            row["ratio"] = r.ratio;
            row["converged"] = r.converged;
            if (r.heuristic_baseline) row["opt_baseline"] = "heuristic";
        }
        rounds.push_back(std::move(row));
    }
    json doc;
    doc["rounds"] = std::move(rounds);
    doc["cumulative_sw"] = result.cumulative_sw;
    doc["cumulative_opt"] = result.cumulative_opt;
    doc["cumulative_ratio"] = result.cumulative_ratio;
    return doc.dump(2) + "\n";
}

}  // namespace ldg
