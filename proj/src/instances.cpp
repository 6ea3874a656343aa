#include "ldgame/instances.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include <json.hpp>

#include "ldgame/errors.hpp"
#include "ldgame/rng.hpp"

namespace ldg {

using nlohmann::json;

Digraph::Digraph(int m_, std::vector<std::pair<int, int>> arcs_) : m(m_), arcs(std::move(arcs_)) {
    if (m < 1) throw validation_error("digraph needs at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (const auto& [a, b] : arcs) {
        if (a < 0 || a >= m || b < 0 || b >= m) {
            throw validation_error("arc (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                                   ") out of range 1.." + std::to_string(m));
        }
        if (!seen.insert({a, b}).second) {
            throw validation_error("duplicate arc (" + std::to_string(a + 1) + "," +
                                   std::to_string(b + 1) + ")");
        }
    }
}

GameInstance gen_lemma1() {
    return GameInstance({{0.5, 1.0, 0.0}, {0.0, 0.5, 1.0}, {1.0, 0.0, 0.5}});
}

GameInstance gen_lemma2(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw validation_error("delta must be within (0,1), got " + std::to_string(delta));
    }
    return GameInstance({{delta, 1.0, 0.0}, {0.0, delta, 1.0}, {1.0, 0.0, delta}});
}

MixedProfile lemma2_mixed_equilibrium(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw validation_error("delta must be within (0,1), got " + std::to_string(delta));
    }
    return MixedProfile({{delta, 1.0 - delta, 0.0, 0.0},
                         {0.0, delta, 1.0 - delta, 0.0},
                         {1.0 - delta, 0.0, delta, 0.0}});
}

GameInstance gen_tight(int n, double delta) {
    if (n < 1) throw validation_error("n must be at least 1, got " + std::to_string(n));
    if (!(delta > 0.0 && delta < 1.0)) {
        throw validation_error("delta must be within (0,1), got " + std::to_string(delta));
    }
    const int total = n + 2;
    std::vector<std::vector<double>> u(total, std::vector<double>(total, 0.0));
    u[0][0] = delta;
    u[1][0] = delta;
    for (int i = 2; i < total; ++i) u[i][1] = 1.0;
    return GameInstance(std::move(u));
}

GameInstance gen_from_dominating_set(const Digraph& g) {
    std::vector<std::vector<double>> u(g.m, std::vector<double>(g.m, 0.0));
    for (const auto& [a, b] : g.arcs) u[a][b] = 1.0;
    return GameInstance(std::move(u));
}

RandomModel RandomModel::parse(const std::string& text) {
    if (text == "uniform") return uniform();
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string head = text.substr(0, colon);
        double value = 0.0;
        try {
            value = std::stod(text.substr(colon + 1));
        } catch (const std::exception&) {
            throw validation_error("cannot parse model parameter in '" + text + "'");
        }
        if (head == "sparse") return sparse(value);
        if (head == "diagonal-boost") return diagonal_boost(value);
    }
    throw validation_error("unknown random model '" + text +
                           "' (expected uniform, sparse:P, or diagonal-boost:B)");
}

std::string RandomModel::to_string() const {
    switch (kind) {
        case Kind::Uniform: return "uniform";
        case Kind::Sparse: return "sparse:" + std::to_string(param);
        case Kind::DiagonalBoost: return "diagonal-boost:" + std::to_string(param);
    }
    return "uniform";
}

GameInstance gen_random(int n, const RandomModel& model, std::uint64_t seed) {
    if (n < 1) throw validation_error("n must be at least 1, got " + std::to_string(n));
    if (model.kind == RandomModel::Kind::Sparse && (model.param < 0.0 || model.param > 1.0)) {
        throw validation_error("sparse keep probability must be within [0,1]");
    }
    if (model.kind == RandomModel::Kind::DiagonalBoost &&
        (model.param < 0.0 || model.param > 1.0)) {
        throw validation_error("diagonal boost factor must be within [0,1]");
    }

    SplitMix64 rng(seed);
    std::vector<std::vector<double>> u(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) u[i][j] = rng.next_double();
    }
    switch (model.kind) {
        case RandomModel::Kind::Uniform:
            break;
        case RandomModel::Kind::Sparse:
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (i != j && rng.next_double() >= model.param) u[i][j] = 0.0;
                }
            }
            break;
        case RandomModel::Kind::DiagonalBoost:
            for (int i = 0; i < n; ++i) u[i][i] *= model.param;
            break;
    }
    return GameInstance(std::move(u));
}

namespace {

json parse_json(const std::string& text, const char* what) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw parse_error(std::string(what) + ": not valid JSON");
    }
    return doc;
}

double number_at(const json& v, const std::string& where) {
    if (!v.is_number()) throw parse_error(where + " must be a number");
    return v.get<double>();
}

}  // namespace

GameInstance parse_instance(const std::string& text) {
    const json doc = parse_json(text, "instance");
    if (!doc.is_object()) throw parse_error("instance: top level must be an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) {
        throw parse_error("instance: field 'n' must be an integer");
    }
    const int n = doc["n"].get<int>();
    if (n < 1) throw parse_error("instance: 'n' must be positive");
    if (!doc.contains("utilities") || !doc["utilities"].is_array()) {
        throw parse_error("instance: field 'utilities' must be an array");
    }
    const auto& rows = doc["utilities"];
    if (rows.size() != static_cast<std::size_t>(n)) {
        throw parse_error("instance: 'utilities' has " + std::to_string(rows.size()) +
                          " rows, expected n = " + std::to_string(n));
    }
    const bool relaxed = doc.value("relaxed", false);
    std::vector<std::vector<double>> utilities(n);
    for (int i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != static_cast<std::size_t>(n)) {
            throw parse_error("instance: 'utilities' row " + std::to_string(i + 1) +
                              " must be an array of " + std::to_string(n) + " numbers");
        }
        utilities[i].resize(n);
        for (int j = 0; j < n; ++j) {
            utilities[i][j] = number_at(rows[i][j], "instance: utilities[" + std::to_string(i + 1) +
                                                        "][" + std::to_string(j + 1) + "]");
        }
    }
    std::vector<double> weights;
    if (doc.contains("weights")) {
        if (!doc["weights"].is_array() || doc["weights"].size() != static_cast<std::size_t>(n)) {
            throw parse_error("instance: 'weights' must be an array of " + std::to_string(n) +
                              " numbers");
        }
        weights.resize(n);
        for (int i = 0; i < n; ++i) {
            weights[i] = number_at(doc["weights"][i], "instance: weights[" + std::to_string(i + 1) + "]");
        }
    }
    std::vector<std::string> names;
    if (doc.contains("names")) {
        if (!doc["names"].is_array() || doc["names"].size() != static_cast<std::size_t>(n)) {
            throw parse_error("instance: 'names' must be an array of " + std::to_string(n) +
                              " strings");
        }
        names.reserve(n);
        for (int i = 0; i < n; ++i) {
            if (!doc["names"][i].is_string()) {
                throw parse_error("instance: names[" + std::to_string(i + 1) + "] must be a string");
            }
            names.push_back(doc["names"][i].get<std::string>());
        }
    }
    try {
        GameInstance instance(std::move(utilities), std::move(weights), relaxed);
        instance.set_names(std::move(names));
        return instance;
    } catch (const validation_error& e) {
        throw parse_error(std::string("instance: ") + e.what());
    }
}

std::string serialize_instance(const GameInstance& instance) {
    json doc;
    doc["n"] = instance.size();
    doc["utilities"] = instance.utility_rows();
    bool unit_weights = true;
    for (double w : instance.weights()) unit_weights = unit_weights && w == 1.0;
    if (!unit_weights) doc["weights"] = instance.weights();
    if (!instance.names().empty()) doc["names"] = instance.names();
    if (instance.relaxed()) doc["relaxed"] = true;
    return doc.dump(2) + "\n";
}

PureProfile parse_pure_profile(const std::string& text) {
    const json doc = parse_json(text, "profile");
    if (!doc.is_object() || doc.value("type", "") != "pure") {
        throw parse_error("profile: expected an object with \"type\": \"pure\"");
    }
    if (!doc.contains("choices") || !doc["choices"].is_array() || doc["choices"].empty()) {
        throw parse_error("profile: 'choices' must be a nonempty array");
    }
    const auto& entries = doc["choices"];
    const int n = static_cast<int>(entries.size());
    PureProfile profile;
    profile.choices.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto& e = entries[i];
        if (e.is_string()) {
            if (e.get<std::string>() != "abstain") {
                throw parse_error("profile: choices[" + std::to_string(i + 1) +
                                  "] must be an agent index or \"abstain\"");
            }
            profile.choices[i] = std::nullopt;
        } else if (e.is_number_integer()) {
            const int target = e.get<int>();
            if (target < 1 || target > n) {
                throw parse_error("profile: choices[" + std::to_string(i + 1) + "] = " +
                                  std::to_string(target) + " out of range 1.." + std::to_string(n));
            }
            profile.choices[i] = target - 1;
        } else {
            throw parse_error("profile: choices[" + std::to_string(i + 1) +
                              "] must be an agent index or \"abstain\"");
        }
    }
    return profile;
}

std::string serialize_pure_profile(const PureProfile& profile) {
    json choices = json::array();
    for (const auto& c : profile.choices) {
        if (c) {
            choices.push_back(*c + 1);
        } else {
            choices.push_back("abstain");
        }
    }
    json doc;
    doc["type"] = "pure";
    doc["choices"] = std::move(choices);
    return doc.dump(2) + "\n";
}

MixedProfile parse_mixed_profile(const std::string& text) {
    const json doc = parse_json(text, "profile");
    if (!doc.is_object() || doc.value("type", "") != "mixed") {
        throw parse_error("profile: expected an object with \"type\": \"mixed\"");
    }
    if (!doc.contains("rows") || !doc["rows"].is_array() || doc["rows"].empty()) {
        throw parse_error("profile: 'rows' must be a nonempty array");
    }
    const auto& rows = doc["rows"];
    const int n = static_cast<int>(rows.size());
    std::vector<std::vector<double>> data(n);
    for (int i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != static_cast<std::size_t>(n + 1)) {
            throw parse_error("profile: row " + std::to_string(i + 1) + " must have n+1 = " +
                              std::to_string(n + 1) + " entries (abstain mass last)");
        }
        data[i].resize(n + 1);
        for (int j = 0; j <= n; ++j) {
            data[i][j] = number_at(rows[i][j], "profile: rows[" + std::to_string(i + 1) + "][" +
                                                   std::to_string(j + 1) + "]");
        }
    }
    try {
        return MixedProfile(std::move(data));
    } catch (const validation_error& e) {
        throw parse_error(std::string("profile: ") + e.what());
    }
}

std::string serialize_mixed_profile(const MixedProfile& profile) {
    json doc;
    doc["type"] = "mixed";
    doc["rows"] = profile.row_vectors();
    return doc.dump(2) + "\n";
}

std::variant<PureProfile, MixedProfile> parse_profile(const std::string& text) {
    const json doc = parse_json(text, "profile");
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
        throw parse_error("profile: expected an object with a string 'type' field");
    }
    const std::string type = doc["type"].get<std::string>();
    if (type == "pure") return parse_pure_profile(text);
    if (type == "mixed") return parse_mixed_profile(text);
    throw parse_error("profile: unknown type '" + type + "' (expected pure or mixed)");
}

Digraph parse_digraph(const std::string& text) {
    const json doc = parse_json(text, "digraph");
    if (!doc.is_object() || !doc.contains("m") || !doc["m"].is_number_integer()) {
        throw parse_error("digraph: field 'm' must be an integer");
    }
    const int m = doc["m"].get<int>();
    if (m < 1) throw parse_error("digraph: 'm' must be positive");
    if (!doc.contains("arcs") || !doc["arcs"].is_array()) {
        throw parse_error("digraph: field 'arcs' must be an array");
    }
    std::vector<std::pair<int, int>> arcs;
    for (std::size_t k = 0; k < doc["arcs"].size(); ++k) {
        const auto& e = doc["arcs"][k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer()) {
            throw parse_error("digraph: arcs[" + std::to_string(k + 1) +
                              "] must be a pair of agent indices");
        }
        const int a = e[0].get<int>(), b = e[1].get<int>();
        if (a < 1 || a > m || b < 1 || b > m) {
            throw parse_error("digraph: arcs[" + std::to_string(k + 1) + "] out of range 1.." +
                              std::to_string(m));
        }
        arcs.emplace_back(a - 1, b - 1);
    }
    try {
        return Digraph(m, std::move(arcs));
    } catch (const validation_error& e) {
        throw parse_error(std::string("digraph: ") + e.what());
    }
}

std::string serialize_digraph(const Digraph& g) {
    json arcs = json::array();
    for (const auto& [a, b] : g.arcs) arcs.push_back({a + 1, b + 1});
    json doc;
    doc["m"] = g.m;
    doc["arcs"] = std::move(arcs);
    return doc.dump(2) + "\n";
}

}  // namespace ldg
