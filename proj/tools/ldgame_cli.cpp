#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldgame/ldgame.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ldg::parse_error("cannot open file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ldg::error("cannot write file: " + path);
    out << content;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
}

ldg::GameInstance load_instance(const std::string& path) {
    return ldg::parse_instance(read_file(path));
}

json report_to_json(const ldg::EquilibriumReport& report) {
    json agents = json::array();
    const int n = static_cast<int>(report.utility.size());
    for (int i = 0; i < n; ++i) {
        agents.push_back({{"agent", i + 1},
                          {"utility", report.utility[i]},
                          {"best_deviation", report.best_deviation[i]},
                          {"epsilon", report.epsilon_i[i]}});
    }
    json doc;
    doc["per_agent"] = std::move(agents);
    doc["certified_epsilon"] = report.epsilon;
    doc["social_welfare"] = report.social_welfare;
    if (report.opt_value) doc["opt"] = *report.opt_value;
    if (report.welfare_ratio) doc["ratio"] = *report.welfare_ratio;
    return doc;
}

json opt_to_json(const ldg::OptSolution& solution) {
    json gurus = json::array();
    for (int j : solution.guru_set) gurus.push_back(j + 1);
    json assignment = json::object();
    for (std::size_t i = 0; i < solution.assignment.size(); ++i) {
        if (solution.assignment[i]) {
            assignment[std::to_string(i + 1)] = *solution.assignment[i] + 1;
        }
    }
    json doc;
    doc["gurus"] = std::move(gurus);
    doc["assignment"] = std::move(assignment);
    doc["welfare"] = solution.welfare;
    doc["exact"] = solution.exact;
    return doc;
}

json profile_to_json(const ldg::MixedProfile& profile) {
    json doc;
    doc["type"] = "mixed";
    doc["rows"] = profile.row_vectors();
    return doc;
}

std::vector<int> parse_guru_list(const std::string& text, int n) {
    std::vector<int> gurus;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        int v = 0;
        try {
            v = std::stoi(item);
        } catch (const std::exception&) {
            throw ldg::validation_error("cannot parse guru index '" + item + "'");
        }
        if (v < 1 || v > n) {
            throw ldg::validation_error("guru index " + std::to_string(v) + " out of range 1.." +
                                        std::to_string(n));
        }
        gurus.push_back(v - 1);
    }
    if (gurus.empty()) throw ldg::validation_error("guru list is empty");
    return gurus;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delegation-game toolkit: exact evaluation, equilibrium certificates, "
                 "welfare-optimal delegations, and experiments"};
    app.require_subcommand(1);

    // ---- generate ----
    auto* generate = app.add_subcommand("generate", "Write a game instance file");
    generate->require_subcommand(1);
    std::string gen_out;
    double gen_delta = 0.1;
    int gen_n = 1;
    std::string gen_graph, gen_model = "uniform";
    std::uint64_t gen_seed = 1;

    auto* gen_lemma1_cmd = generate->add_subcommand("lemma1", "3-agent instance with no pure Nash equilibrium");
    gen_lemma1_cmd->add_option("--out", gen_out, "Output file (default stdout)");

    auto* gen_lemma2_cmd = generate->add_subcommand("lemma2", "3-agent cyclic instance with diagonal delta");
    gen_lemma2_cmd->add_option("--delta", gen_delta, "Diagonal utility")->required();
    gen_lemma2_cmd->add_option("--out", gen_out, "Output file (default stdout)");

    auto* gen_tight_cmd = generate->add_subcommand("tight", "n+2 agent tight price-of-stability instance");
    gen_tight_cmd->add_option("--n", gen_n, "Number of delegating agents")->required();
    gen_tight_cmd->add_option("--delta", gen_delta, "Utility of agent 1 for itself")->required();
    gen_tight_cmd->add_option("--out", gen_out, "Output file (default stdout)");

    auto* gen_domset_cmd = generate->add_subcommand("domset", "0/1 instance from a digraph (dominating-set reduction)");
    gen_domset_cmd->add_option("--graph", gen_graph, "Digraph JSON file")->required();
    gen_domset_cmd->add_option("--out", gen_out, "Output file (default stdout)");

    auto* gen_random_cmd = generate->add_subcommand("random", "Random utility matrix");
    gen_random_cmd->add_option("--n", gen_n, "Agent count")->required();
    gen_random_cmd->add_option("--model", gen_model, "uniform | sparse:P | diagonal-boost:B");
    gen_random_cmd->add_option("--seed", gen_seed, "RNG seed");
    gen_random_cmd->add_option("--out", gen_out, "Output file (default stdout)");

    // ---- opt ----
    auto* opt_cmd = app.add_subcommand("opt", "Welfare-optimal delegation (exact or greedy)");
    std::string opt_instance, opt_method = "exact", opt_out;
    opt_cmd->add_option("--instance", opt_instance, "Instance JSON file")->required();
    opt_cmd->add_option("--method", opt_method, "exact | greedy")
        ->check(CLI::IsMember({"exact", "greedy"}));
    opt_cmd->add_option("--out", opt_out, "Output file (default stdout)");

    // ---- eval ----
    auto* eval_cmd = app.add_subcommand("eval", "Guru distributions and expected utilities");
    std::string eval_instance, eval_profile, eval_out;
    long long eval_samples = 0;
    std::uint64_t eval_seed = 1;
    eval_cmd->add_option("--instance", eval_instance, "Instance JSON file")->required();
    eval_cmd->add_option("--profile", eval_profile, "Profile JSON file (pure or mixed)")->required();
    eval_cmd->add_option("--samples", eval_samples,
                         "Monte Carlo sample count (0 = exact evaluation)");
    eval_cmd->add_option("--seed", eval_seed, "Monte Carlo seed");
    eval_cmd->add_option("--out", eval_out, "Output file (default stdout)");

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "Certify the epsilon of a profile");
    std::string verify_instance, verify_profile, verify_out;
    std::optional<double> verify_opt;
    verify_cmd->add_option("--instance", verify_instance, "Instance JSON file")->required();
    verify_cmd->add_option("--profile", verify_profile, "Profile JSON file (pure or mixed)")->required();
    verify_cmd->add_option("--opt", verify_opt, "OPT value for the welfare ratio");
    verify_cmd->add_option("--out", verify_out, "Output file (default stdout)");

    // ---- pure-nash ----
    auto* pn_cmd = app.add_subcommand("pure-nash", "Enumerate all pure Nash equilibria");
    std::string pn_instance, pn_out;
    pn_cmd->add_option("--instance", pn_instance, "Instance JSON file")->required();
    pn_cmd->add_option("--out", pn_out, "Output file (default stdout)");

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "Compute an approximate equilibrium");
    solve->require_subcommand(1);
    std::string solve_instance, solve_out, solve_out_profile;
    double solve_eps = 0.5;
    std::string solve_gurus = "auto", solve_mode = "plain";
    int solve_max_iter = 10000;
    double solve_damping = 1.0, solve_tolerance = 1e-9;

    auto* solve_fp = solve->add_subcommand("fixed-point", "Restricted best-response dynamics on a guru set");
    solve_fp->add_option("--instance", solve_instance, "Instance JSON file")->required();
    solve_fp->add_option("--epsilon", solve_eps, "Target epsilon in [0,1]")->required();
    solve_fp->add_option("--gurus", solve_gurus, "auto (= exact OPT gurus) or 1-based list like 1,4,5");
    solve_fp->add_option("--mode", solve_mode, "plain | averaged")
        ->check(CLI::IsMember({"plain", "averaged"}));
    solve_fp->add_option("--max-iter", solve_max_iter, "Iteration cap");
    solve_fp->add_option("--damping", solve_damping, "Damping in (0,1], 1 = undamped");
    solve_fp->add_option("--tolerance", solve_tolerance, "Stationarity tolerance");
    solve_fp->add_option("--out", solve_out, "Report output file (default stdout)");
    solve_fp->add_option("--out-profile", solve_out_profile, "Also write the profile JSON here");

    auto* solve_na = solve->add_subcommand("na", "Narcissistic-avaricious profile (epsilon in [3/4,1])");
    solve_na->add_option("--instance", solve_instance, "Instance JSON file")->required();
    solve_na->add_option("--epsilon", solve_eps, "Target epsilon in [3/4,1]")->required();
    solve_na->add_option("--out", solve_out, "Report output file (default stdout)");
    solve_na->add_option("--out-profile", solve_out_profile, "Also write the profile JSON here");

    // ---- experiment ----
    auto* experiment = app.add_subcommand("experiment", "Sweeps and batch runs");
    experiment->require_subcommand(1);
    std::string exp_instance, exp_eps = "0.1:1.0:0.1", exp_csv, exp_json, exp_cmd_str, exp_out;
    std::vector<std::string> exp_instances;
    std::string exp_mode = "plain";
    int exp_max_iter = 10000;

    auto* exp_sweep = experiment->add_subcommand("pos-sweep", "Welfare-ratio sweep over an epsilon grid");
    exp_sweep->add_option("--instance", exp_instance, "Instance JSON file")->required();
    exp_sweep->add_option("--eps", exp_eps, "Grid: start:end:step or comma list");
    exp_sweep->add_option("--mode", exp_mode, "Solver mode: plain | averaged")
        ->check(CLI::IsMember({"plain", "averaged"}));
    exp_sweep->add_option("--max-iter", exp_max_iter, "Solver iteration cap");
    exp_sweep->add_option("--out-csv", exp_csv, "CSV output file");
    exp_sweep->add_option("--out-json", exp_json, "JSON output file");

    auto* exp_batch = experiment->add_subcommand("batch", "Apply one command across instance files");
    exp_batch->add_option("--instances", exp_instances, "Instance JSON files")->required()->expected(-1);
    exp_batch->add_option("--cmd", exp_cmd_str, "Command, e.g. \"solve na --epsilon 0.8\"")->required();
    exp_batch->add_option("--out", exp_out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_lemma1_cmd->parsed()) {
            emit(ldg::serialize_instance(ldg::gen_lemma1()), gen_out);
        } else if (gen_lemma2_cmd->parsed()) {
            emit(ldg::serialize_instance(ldg::gen_lemma2(gen_delta)), gen_out);
        } else if (gen_tight_cmd->parsed()) {
            emit(ldg::serialize_instance(ldg::gen_tight(gen_n, gen_delta)), gen_out);
        } else if (gen_domset_cmd->parsed()) {
            const ldg::Digraph g = ldg::parse_digraph(read_file(gen_graph));
            emit(ldg::serialize_instance(ldg::gen_from_dominating_set(g)), gen_out);
        } else if (gen_random_cmd->parsed()) {
            emit(ldg::serialize_instance(
                     ldg::gen_random(gen_n, ldg::RandomModel::parse(gen_model), gen_seed)),
                 gen_out);
        } else if (opt_cmd->parsed()) {
            const ldg::GameInstance instance = load_instance(opt_instance);
            const ldg::OptSolution solution =
                opt_method == "greedy" ? ldg::opt_greedy(instance) : ldg::opt_exact(instance);
            emit(opt_to_json(solution).dump(2) + "\n", opt_out);
        } else if (eval_cmd->parsed()) {
            const ldg::GameInstance instance = load_instance(eval_instance);
            const auto parsed = ldg::parse_profile(read_file(eval_profile));
            const ldg::MixedProfile mixed =
                std::holds_alternative<ldg::PureProfile>(parsed)
                    ? ldg::MixedProfile::from_pure(std::get<ldg::PureProfile>(parsed))
                    : std::get<ldg::MixedProfile>(parsed);
            json doc;
            if (eval_samples > 0) {
                const auto estimates =
                    ldg::monte_carlo_utilities(instance, mixed, eval_samples, eval_seed);
                json agents = json::array();
                for (int i = 0; i < instance.size(); ++i) {
                    agents.push_back({{"agent", i + 1},
                                      {"utility", estimates[i].value},
                                      {"std_error", estimates[i].std_error}});
                }
                doc["method"] = "monte-carlo";
                doc["samples"] = eval_samples;
                doc["seed"] = eval_seed;
                doc["per_agent"] = std::move(agents);
            } else {
                json agents = json::array();
                double sw = 0.0;
                for (int i = 0; i < instance.size(); ++i) {
                    const auto dist = ldg::exact_guru_distribution(instance, mixed, i);
                    const double u = ldg::exact_expected_utility(instance, mixed, i);
                    sw += instance.weight(i) * u;
                    json guru_mass = json::object();
                    for (int j = 0; j < instance.size(); ++j) {
                        if (dist.mass[j] > 0.0) guru_mass[std::to_string(j + 1)] = dist.mass[j];
                    }
                    agents.push_back({{"agent", i + 1},
                                      {"utility", u},
                                      {"guru_distribution", std::move(guru_mass)},
                                      {"no_guru", dist.no_guru}});
                }
                doc["method"] = "exact";
                doc["per_agent"] = std::move(agents);
                doc["social_welfare"] = sw;
            }
            emit(doc.dump(2) + "\n", eval_out);
        } else if (verify_cmd->parsed()) {
            const ldg::GameInstance instance = load_instance(verify_instance);
            const auto parsed = ldg::parse_profile(read_file(verify_profile));
            const ldg::MixedProfile mixed =
                std::holds_alternative<ldg::PureProfile>(parsed)
                    ? ldg::MixedProfile::from_pure(std::get<ldg::PureProfile>(parsed))
                    : std::get<ldg::MixedProfile>(parsed);
            const auto report = ldg::certify_epsilon(instance, mixed, verify_opt);
            emit(report_to_json(report).dump(2) + "\n", verify_out);
        } else if (pn_cmd->parsed()) {
            const ldg::GameInstance instance = load_instance(pn_instance);
            const auto equilibria = ldg::enumerate_pure_nash(instance);
            json list = json::array();
            for (const auto& profile : equilibria) {
                json choices = json::array();
                for (const auto& c : profile.choices) {
                    if (c) {
                        choices.push_back(*c + 1);
                    } else {
                        choices.push_back("abstain");
                    }
                }
                list.push_back(std::move(choices));
            }
            json doc;
            doc["count"] = equilibria.size();
            doc["equilibria"] = std::move(list);
            emit(doc.dump(2) + "\n", pn_out);
        } else if (solve_fp->parsed()) {
            const ldg::GameInstance instance = load_instance(solve_instance);
            std::vector<int> gurus;
            if (solve_gurus == "auto") {
                gurus = ldg::opt_exact(instance).guru_set;
            } else {
                gurus = parse_guru_list(solve_gurus, instance.size());
            }
            ldg::SolverConfig config;
            config.epsilon = solve_eps;
            config.max_iterations = solve_max_iter;
            config.damping = solve_damping;
            config.tolerance = solve_tolerance;
            config.mode = solve_mode == "averaged" ? ldg::SolverMode::Averaged : ldg::SolverMode::Plain;
            const ldg::SolverOutcome outcome = ldg::fixed_point_solve(instance, gurus, config);
            json doc;
            doc["converged"] = outcome.converged;
            doc["iterations"] = outcome.iterations;
            json gurus_json = json::array();
            for (int j : outcome.guru_set) gurus_json.push_back(j + 1);
            doc["gurus"] = std::move(gurus_json);
            doc["report"] = report_to_json(outcome.report);
            doc["profile"] = profile_to_json(outcome.profile);
            emit(doc.dump(2) + "\n", solve_out);
            if (!solve_out_profile.empty()) {
                write_file(solve_out_profile, ldg::serialize_mixed_profile(outcome.profile));
            }
            return outcome.converged ? 0 : 2;
        } else if (solve_na->parsed()) {
            const ldg::GameInstance instance = load_instance(solve_instance);
            const auto [profile, report] = ldg::narcissistic_avaricious(instance, solve_eps);
            json doc;
            doc["report"] = report_to_json(report);
            doc["profile"] = profile_to_json(profile);
            emit(doc.dump(2) + "\n", solve_out);
            if (!solve_out_profile.empty()) {
                write_file(solve_out_profile, ldg::serialize_mixed_profile(profile));
            }
        } else if (exp_sweep->parsed()) {
            const ldg::GameInstance instance = load_instance(exp_instance);
            ldg::SolverConfig config;
            config.mode = exp_mode == "averaged" ? ldg::SolverMode::Averaged : ldg::SolverMode::Plain;
            config.max_iterations = exp_max_iter;
            const ldg::SweepResult result =
                ldg::pos_sweep(instance, ldg::parse_eps_grid(exp_eps), config);
            if (exp_csv.empty() && exp_json.empty()) {
                std::cout << ldg::sweep_to_csv(result);
            }
            if (!exp_csv.empty()) write_file(exp_csv, ldg::sweep_to_csv(result));
            if (!exp_json.empty()) write_file(exp_json, ldg::sweep_to_json(result));
        } else if (exp_batch->parsed()) {
            const ldg::BatchResult result = ldg::batch_run(exp_instances, exp_cmd_str);
            emit(ldg::batch_to_json(result), exp_out);
        }
    } catch (const ldg::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
