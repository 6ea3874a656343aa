#pragma once

#include <optional>
#include <vector>

#include "ldgame/game.hpp"

namespace ldg {

// One pure choice per agent: nullopt = abstain, i = vote self, j = delegate.
// Indices are 0-based throughout the library; file formats are 1-based.
struct PureProfile {
    std::vector<std::optional<int>> choices;

    int size() const { return static_cast<int>(choices.size()); }

    static PureProfile all_self(int n);
    static PureProfile all_abstain(int n);

    bool operator==(const PureProfile&) const = default;
};

void validate_profile(const PureProfile& profile, int n);

enum class ComponentKind {
    Guru,   // the unique cycle is a self-loop: everyone here has a guru
    Cycle,  // delegation cycle of length >= 2: nobody has a guru
    Sink,   // an abstaining sink: nobody has a guru
};

// Derived view of a pure profile: the induced 1-forest, its weakly
// connected components, and the guru of every agent (if any).
class DelegationGraph {
public:
    explicit DelegationGraph(const PureProfile& profile);

    int size() const { return n_; }
    const PureProfile& profile() const { return profile_; }

    std::optional<int> guru(int i) const { return guru_[i]; }
    int component(int i) const { return component_[i]; }
    int component_count() const { return static_cast<int>(kinds_.size()); }
    ComponentKind component_kind(int c) const { return kinds_[c]; }

private:
    int n_;
    PureProfile profile_;
    std::vector<std::optional<int>> guru_;
    std::vector<int> component_;
    std::vector<ComponentKind> kinds_;
};

// The guru casting i's vote, or nullopt if i's chain ends in an abstaining
// sink or a delegation cycle.
std::optional<int> resolve_guru(const DelegationGraph& graph, int i);

double pure_utility(const GameInstance& instance, const DelegationGraph& graph, int i);
double pure_utility(const GameInstance& instance, const PureProfile& profile, int i);

// Weighted sum of pure utilities; with unit weights this is plain SW.
double social_welfare(const GameInstance& instance, const PureProfile& profile);

}  // namespace ldg
