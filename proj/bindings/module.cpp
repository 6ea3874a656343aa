#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ldgame/ldgame.hpp"

namespace py = pybind11;

namespace {

std::optional<int> to_internal_choice(const py::object& c, int n) {
    if (c.is_none()) return std::nullopt;
    const int v = c.cast<int>();
    if (v < 0 || v >= n) {
        throw ldg::validation_error("choice out of range 0.." + std::to_string(n - 1));
    }
    return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Delegation games: exact mixed-profile evaluation, epsilon-Nash "
              "certificates, and welfare-optimal delegation structures.";

    py::register_exception<ldg::error>(m, "LdgError", PyExc_ValueError);

    py::class_<ldg::GameInstance>(m, "GameInstance")
        .def(py::init<std::vector<std::vector<double>>, std::vector<double>, bool>(),
             py::arg("utilities"), py::arg("weights") = std::vector<double>{},
             py::arg("relaxed") = false)
        .def_property_readonly("n", &ldg::GameInstance::size)
        .def("utility", &ldg::GameInstance::utility, py::arg("i"), py::arg("j"))
        .def_property_readonly("utilities", &ldg::GameInstance::utility_rows)
        .def_property_readonly("weights", &ldg::GameInstance::weights)
        .def("with_scaled_weights", &ldg::GameInstance::with_scaled_weights, py::arg("factor"))
        .def("to_json", [](const ldg::GameInstance& g) { return ldg::serialize_instance(g); })
        .def_static("from_json", [](const std::string& text) { return ldg::parse_instance(text); })
        .def("__repr__", [](const ldg::GameInstance& g) {
            return "<GameInstance n=" + std::to_string(g.size()) + ">";
        });

    py::class_<ldg::PureProfile>(m, "PureProfile")
        .def(py::init([](const std::vector<py::object>& choices) {
                 ldg::PureProfile p;
                 const int n = static_cast<int>(choices.size());
                 p.choices.resize(n);
                 for (int i = 0; i < n; ++i) p.choices[i] = to_internal_choice(choices[i], n);
                 return p;
             }),
             py::arg("choices"), "0-based targets; None = abstain")
        .def_static("all_self", &ldg::PureProfile::all_self, py::arg("n"))
        .def_static("all_abstain", &ldg::PureProfile::all_abstain, py::arg("n"))
        .def_property_readonly("choices",
                               [](const ldg::PureProfile& p) {
                                   std::vector<py::object> out;
                                   for (const auto& c : p.choices) {
                                       out.push_back(c ? py::cast(*c) : py::none());
                                   }
                                   return out;
                               })
        .def("to_json", [](const ldg::PureProfile& p) { return ldg::serialize_pure_profile(p); })
        .def_static("from_json",
                    [](const std::string& text) { return ldg::parse_pure_profile(text); });

    py::class_<ldg::MixedProfile>(m, "MixedProfile")
        .def(py::init<std::vector<std::vector<double>>>(), py::arg("rows"),
             "n rows of n+1 probabilities; the last entry is the abstain mass")
        .def_static("from_pure", &ldg::MixedProfile::from_pure, py::arg("profile"))
        .def_static("all_self", &ldg::MixedProfile::all_self, py::arg("n"))
        .def_property_readonly("n", &ldg::MixedProfile::size)
        .def_property_readonly("rows", &ldg::MixedProfile::row_vectors)
        .def("restricted_feasible", &ldg::MixedProfile::restricted_feasible, py::arg("i"),
             py::arg("eps"))
        .def("to_json", [](const ldg::MixedProfile& p) { return ldg::serialize_mixed_profile(p); })
        .def_static("from_json",
                    [](const std::string& text) { return ldg::parse_mixed_profile(text); });

    py::class_<ldg::DelegationGraph>(m, "DelegationGraph")
        .def(py::init<const ldg::PureProfile&>(), py::arg("profile"))
        .def_property_readonly("n", &ldg::DelegationGraph::size)
        .def("guru",
             [](const ldg::DelegationGraph& g, int i) -> py::object {
                 const auto r = ldg::resolve_guru(g, i);
                 return r ? py::cast(*r) : py::none();
             },
             py::arg("i"));

    py::class_<ldg::GuruDistribution>(m, "GuruDistribution")
        .def_readonly("mass", &ldg::GuruDistribution::mass)
        .def_readonly("no_guru", &ldg::GuruDistribution::no_guru)
        .def("total", &ldg::GuruDistribution::total);

    py::class_<ldg::EvalEstimate>(m, "EvalEstimate")
        .def_readonly("value", &ldg::EvalEstimate::value)
        .def_readonly("std_error", &ldg::EvalEstimate::std_error)
        .def_readonly("samples", &ldg::EvalEstimate::samples)
        .def_readonly("seed", &ldg::EvalEstimate::seed);

    py::class_<ldg::EquilibriumReport>(m, "EquilibriumReport")
        .def_readonly("utility", &ldg::EquilibriumReport::utility)
        .def_readonly("best_deviation", &ldg::EquilibriumReport::best_deviation)
        .def_readonly("epsilon_i", &ldg::EquilibriumReport::epsilon_i)
        .def_readonly("epsilon", &ldg::EquilibriumReport::epsilon)
        .def_readonly("social_welfare", &ldg::EquilibriumReport::social_welfare)
        .def_readonly("opt_value", &ldg::EquilibriumReport::opt_value)
        .def_readonly("welfare_ratio", &ldg::EquilibriumReport::welfare_ratio);

    py::enum_<ldg::SolverMode>(m, "SolverMode")
        .value("PLAIN", ldg::SolverMode::Plain)
        .value("AVERAGED", ldg::SolverMode::Averaged);

    py::class_<ldg::SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("epsilon", &ldg::SolverConfig::epsilon)
        .def_readwrite("max_iterations", &ldg::SolverConfig::max_iterations)
        .def_readwrite("tolerance", &ldg::SolverConfig::tolerance)
        .def_readwrite("damping", &ldg::SolverConfig::damping)
        .def_readwrite("mode", &ldg::SolverConfig::mode)
        .def_readwrite("exact_limit", &ldg::SolverConfig::exact_limit);

    py::class_<ldg::SolverOutcome>(m, "SolverOutcome")
        .def_readonly("profile", &ldg::SolverOutcome::profile)
        .def_readonly("converged", &ldg::SolverOutcome::converged)
        .def_readonly("iterations", &ldg::SolverOutcome::iterations)
        .def_readonly("report", &ldg::SolverOutcome::report)
        .def_readonly("guru_set", &ldg::SolverOutcome::guru_set);

    py::class_<ldg::OptSolution>(m, "OptSolution")
        .def_readonly("guru_set", &ldg::OptSolution::guru_set)
        .def_property_readonly("assignment",
                               [](const ldg::OptSolution& s) {
                                   std::vector<py::object> out;
                                   for (const auto& a : s.assignment) {
                                       out.push_back(a ? py::cast(*a) : py::none());
                                   }
                                   return out;
                               })
        .def_readonly("welfare", &ldg::OptSolution::welfare)
        .def_readonly("exact", &ldg::OptSolution::exact);

    py::class_<ldg::StarCheck>(m, "StarCheck")
        .def_readonly("ok", &ldg::StarCheck::ok)
        .def_readonly("diagnostics", &ldg::StarCheck::diagnostics)
        .def("__bool__", [](const ldg::StarCheck& c) { return c.ok; });

    py::class_<ldg::Digraph>(m, "Digraph")
        .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("m"), py::arg("arcs"))
        .def_readonly("m", &ldg::Digraph::m)
        .def_readonly("arcs", &ldg::Digraph::arcs);

    // core
    m.def("pure_utility",
          py::overload_cast<const ldg::GameInstance&, const ldg::PureProfile&, int>(
              &ldg::pure_utility),
          py::arg("instance"), py::arg("profile"), py::arg("i"));
    m.def("social_welfare", &ldg::social_welfare, py::arg("instance"), py::arg("profile"));

    // evaluation
    m.def("exact_guru_distribution", &ldg::exact_guru_distribution, py::arg("instance"),
          py::arg("mixed"), py::arg("i"), py::arg("exact_limit") = ldg::kDefaultExactLimit);
    m.def("exact_expected_utility", &ldg::exact_expected_utility, py::arg("instance"),
          py::arg("mixed"), py::arg("i"), py::arg("exact_limit") = ldg::kDefaultExactLimit);
    m.def("deviation_values", &ldg::deviation_values, py::arg("instance"), py::arg("mixed"),
          py::arg("i"), py::arg("exact_limit") = ldg::kDefaultExactLimit);
    m.def("exact_social_welfare", &ldg::exact_social_welfare, py::arg("instance"),
          py::arg("mixed"), py::arg("exact_limit") = ldg::kDefaultExactLimit);
    m.def("monte_carlo_utilities", &ldg::monte_carlo_utilities, py::arg("instance"),
          py::arg("mixed"), py::arg("samples"), py::arg("seed"));

    // equilibrium
    m.def("enumerate_pure_nash", &ldg::enumerate_pure_nash, py::arg("instance"),
          py::arg("limit") = 8);
    m.def("certify_epsilon", &ldg::certify_epsilon, py::arg("instance"), py::arg("mixed"),
          py::arg("opt_value") = std::nullopt, py::arg("exact_limit") = ldg::kDefaultExactLimit);
    m.def("best_response", &ldg::best_response, py::arg("instance"), py::arg("mixed"),
          py::arg("i"), py::arg("exact_limit") = ldg::kDefaultExactLimit);
    m.def("restricted_best_response", &ldg::restricted_best_response, py::arg("instance"),
          py::arg("mixed"), py::arg("i"), py::arg("eps"),
          py::arg("exact_limit") = ldg::kDefaultExactLimit);
    m.def("fixed_point_solve", &ldg::fixed_point_solve, py::arg("instance"), py::arg("guru_set"),
          py::arg("config") = ldg::SolverConfig{});
    m.def("narcissistic_avaricious", &ldg::narcissistic_avaricious, py::arg("instance"),
          py::arg("eps"), py::arg("exact_limit") = ldg::kDefaultExactLimit);

    // optimization
    m.def("star_welfare", &ldg::star_welfare, py::arg("instance"), py::arg("guru_set"));
    m.def("opt_exact", &ldg::opt_exact, py::arg("instance"),
          py::arg("subset_limit") = ldg::kDefaultSubsetLimit);
    m.def("opt_greedy", &ldg::opt_greedy, py::arg("instance"));
    m.def("sum_best_upper_bound", &ldg::sum_best_upper_bound, py::arg("instance"));
    m.def("verify_star_structure", &ldg::verify_star_structure, py::arg("instance"),
          py::arg("solution"));

    // instances
    m.def("gen_lemma1", &ldg::gen_lemma1);
    m.def("gen_lemma2", &ldg::gen_lemma2, py::arg("delta"));
    m.def("lemma2_mixed_equilibrium", &ldg::lemma2_mixed_equilibrium, py::arg("delta"));
    m.def("gen_tight", &ldg::gen_tight, py::arg("n"), py::arg("delta"));
    m.def("gen_from_dominating_set", &ldg::gen_from_dominating_set, py::arg("g"));
    m.def("gen_random",
          [](int n, const std::string& model, std::uint64_t seed) {
              return ldg::gen_random(n, ldg::RandomModel::parse(model), seed);
          },
          py::arg("n"), py::arg("model") = "uniform", py::arg("seed") = 1);
}
