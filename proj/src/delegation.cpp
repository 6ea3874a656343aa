#include "ldgame/delegation.hpp"

#include <numeric>
#include <string>

#include "ldgame/errors.hpp"

namespace ldg {

PureProfile PureProfile::all_self(int n) {
    PureProfile p;
    p.choices.resize(n);
    for (int i = 0; i < n; ++i) p.choices[i] = i;
    return p;
}

PureProfile PureProfile::all_abstain(int n) {
    PureProfile p;
    p.choices.assign(n, std::nullopt);
    return p;
}

void validate_profile(const PureProfile& profile, int n) {
    if (profile.size() != n) {
        throw validation_error("profile has " + std::to_string(profile.size()) +
                               " choices, expected " + std::to_string(n));
    }
    for (int i = 0; i < n; ++i) {
        const auto& c = profile.choices[i];
        if (c && (*c < 0 || *c >= n)) {
            throw validation_error("choice of agent " + std::to_string(i + 1) +
                                   " targets invalid agent " + std::to_string(*c + 1));
        }
    }
}

namespace {

// Union-find over the weak components of the 1-forest.
struct DisjointSet {
    std::vector<int> parent;

    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

DelegationGraph::DelegationGraph(const PureProfile& profile)
    : n_(profile.size()), profile_(profile) {
    validate_profile(profile_, n_);
    guru_.assign(n_, std::nullopt);
    component_.assign(n_, -1);

    // Guru resolution: path traversal with visited marking, memoized so the
    // whole pass is linear.
    enum : unsigned char { White, Gray, Done };
    std::vector<unsigned char> state(n_, White);
    std::vector<int> path;
    for (int start = 0; start < n_; ++start) {
        if (state[start] != White) continue;
        path.clear();
        int v = start;
        std::optional<int> result;
        while (true) {
            if (state[v] == Done) {
                result = guru_[v];
                break;
            }
            if (state[v] == Gray) {
                // re-entered the current path: delegation cycle of length >= 2
                result = std::nullopt;
                break;
            }
            const auto& c = profile_.choices[v];
            if (!c) {
                state[v] = Done;
                path.push_back(v);
                result = std::nullopt;  // abstaining sink
                break;
            }
            if (*c == v) {
                state[v] = Done;
                guru_[v] = v;
                path.push_back(v);
                result = v;
                break;
            }
            state[v] = Gray;
            path.push_back(v);
            v = *c;
        }
        for (int u : path) {
            state[u] = Done;
            guru_[u] = result;
        }
    }

    // Weak components and their classification.
    DisjointSet ds(n_);
    for (int i = 0; i < n_; ++i) {
        if (profile_.choices[i]) ds.unite(i, *profile_.choices[i]);
    }
    std::vector<int> root_to_id(n_, -1);
    for (int i = 0; i < n_; ++i) {
        int r = ds.find(i);
        if (root_to_id[r] < 0) {
            root_to_id[r] = static_cast<int>(kinds_.size());
            kinds_.push_back(ComponentKind::Sink);
        }
        component_[i] = root_to_id[r];
    }
    for (int i = 0; i < n_; ++i) {
        const auto& c = profile_.choices[i];
        if (c && *c == i) {
            kinds_[component_[i]] = ComponentKind::Guru;
        }
    }
    // A component without a guru but where every vertex has an out-arc
    // must contain a cycle of length >= 2.
    std::vector<bool> has_sink(kinds_.size(), false);
    for (int i = 0; i < n_; ++i) {
        if (!profile_.choices[i]) has_sink[component_[i]] = true;
    }
    for (std::size_t c = 0; c < kinds_.size(); ++c) {
        if (kinds_[c] == ComponentKind::Sink && !has_sink[c]) kinds_[c] = ComponentKind::Cycle;
    }
}

std::optional<int> resolve_guru(const DelegationGraph& graph, int i) {
    if (i < 0 || i >= graph.size()) {
        throw validation_error("agent index " + std::to_string(i + 1) + " out of range 1.." +
                               std::to_string(graph.size()));
    }
    return graph.guru(i);
}

double pure_utility(const GameInstance& instance, const DelegationGraph& graph, int i) {
    check_agent_index(instance, i, "agent");
    const auto g = graph.guru(i);
    return g ? instance.utility(i, *g) : 0.0;
}

double pure_utility(const GameInstance& instance, const PureProfile& profile, int i) {
    validate_profile(profile, instance.size());
    return pure_utility(instance, DelegationGraph(profile), i);
}

double social_welfare(const GameInstance& instance, const PureProfile& profile) {
    validate_profile(profile, instance.size());
    DelegationGraph graph(profile);
    double sw = 0.0;
    for (int i = 0; i < instance.size(); ++i) {
        sw += instance.weight(i) * pure_utility(instance, graph, i);
    }
    return sw;
}

}  // namespace ldg
