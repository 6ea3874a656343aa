#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ldgame/delegation.hpp"
#include "ldgame/evaluation.hpp"
#include "ldgame/game.hpp"

namespace ldg {

struct Digraph {
    int m = 0;
    std::vector<std::pair<int, int>> arcs;  // 0-based, no duplicates

    Digraph(int m, std::vector<std::pair<int, int>> arcs);
};

// The 3-agent instance with no pure Nash equilibrium:
// u_1=(1/2,1,0), u_2=(0,1/2,1), u_3=(1,0,1/2).
GameInstance gen_lemma1();

// The 3-agent cyclic instance with diagonal delta; its unique mixed Nash
// equilibrium has welfare 3*delta against OPT = 1 + 2*delta.
GameInstance gen_lemma2(double delta);

// The rows of that unique mixed equilibrium, for delta in (0,1).
MixedProfile lemma2_mixed_equilibrium(double delta);

// n+2 agents: 1 and 2 value only agent 1 at delta; the rest value only
// agent 2 at 1. OPT = delta + n, and any eps-Nash profile has welfare at
// most eps*OPT + 2(1-eps)*delta.
GameInstance gen_tight(int n, double delta);

// Reduction from dominating set: u_ij = 1 iff (i,j) is an arc.
GameInstance gen_from_dominating_set(const Digraph& g);

struct RandomModel {
    enum class Kind { Uniform, Sparse, DiagonalBoost };
    Kind kind = Kind::Uniform;
    double param = 0.0;  // keep probability p, or diagonal factor beta

    static RandomModel uniform() { return {Kind::Uniform, 0.0}; }
    static RandomModel sparse(double p) { return {Kind::Sparse, p}; }
    static RandomModel diagonal_boost(double beta) { return {Kind::DiagonalBoost, beta}; }

    // "uniform", "sparse:P", "diagonal-boost:B"
    static RandomModel parse(const std::string& text);
    std::string to_string() const;
};

GameInstance gen_random(int n, const RandomModel& model, std::uint64_t seed);

// JSON file formats (agent indices are 1-based on disk):
//   instance: {"n": int, "utilities": [[...]], "weights": [...],
//              "names": [...], "relaxed": bool}; weights/names/relaxed optional
//   pure profile:  {"type": "pure", "choices": [int | "abstain", ...]}
//   mixed profile: {"type": "mixed", "rows": [[n+1 reals], ...]}
//   digraph: {"m": int, "arcs": [[i, j], ...]}
GameInstance parse_instance(const std::string& text);
std::string serialize_instance(const GameInstance& instance);

PureProfile parse_pure_profile(const std::string& text);
std::string serialize_pure_profile(const PureProfile& profile);

MixedProfile parse_mixed_profile(const std::string& text);
std::string serialize_mixed_profile(const MixedProfile& profile);

// Either kind, dispatched on the "type" field.
std::variant<PureProfile, MixedProfile> parse_profile(const std::string& text);

Digraph parse_digraph(const std::string& text);
std::string serialize_digraph(const Digraph& g);

}  // namespace ldg
