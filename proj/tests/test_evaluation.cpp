#include <doctest.h>

#include <cmath>

#include "ldgame/ldgame.hpp"
#include "oracles.hpp"

using namespace ldg;

TEST_CASE("mixed profile validation") {
    // Two agents need rows of three entries each.
    CHECK_THROWS_AS(MixedProfile({{0.5, 0.5}, {0.5, 0.5}}), validation_error);
    CHECK_THROWS_AS(MixedProfile({{0.5, 0.6, 0.0}, {1.0, 0.0, 0.0}}), validation_error);
    CHECK_THROWS_AS(MixedProfile({{1.2, -0.2, 0.0}, {1.0, 0.0, 0.0}}), validation_error);
    MixedProfile ok({{0.25, 0.5, 0.25}, {0.0, 1.0, 0.0}});
    CHECK(ok.abstain(0) == 0.25);
    CHECK(ok.restricted_feasible(1, 1.0));
    CHECK_FALSE(ok.restricted_feasible(0, 0.3));
}

TEST_CASE("pure profiles embed as point-mass distributions") {
    const GameInstance instance = gen_lemma2(0.1);
    PureProfile pure;
    pure.choices = {std::optional<int>(0), std::optional<int>(1), std::optional<int>(0)};
    const MixedProfile mixed = MixedProfile::from_pure(pure);
    for (int i = 0; i < 3; ++i) {
        const auto dist = exact_guru_distribution(instance, mixed, i);
        const auto guru = resolve_guru(DelegationGraph(pure), i);
        for (int j = 0; j < 3; ++j) {
            CHECK(dist.mass[j] == (guru && *guru == j ? 1.0 : 0.0));
        }
        CHECK(dist.no_guru == (guru ? 0.0 : 1.0));
    }
}

TEST_CASE("lemma2 equilibrium evaluates to its known values") {
    const double delta = 0.1;
    const GameInstance instance = gen_lemma2(delta);
    const MixedProfile mne = lemma2_mixed_equilibrium(delta);

    // Frozen from the realization-enumeration oracle: (0.1, 0.09, 0.081),
    // no-guru 0.729.
    const auto dist = exact_guru_distribution(instance, mne, 0);
    CHECK(dist.mass[0] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(dist.mass[1] == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(dist.mass[2] == doctest::Approx(0.081).epsilon(1e-12));
    CHECK(dist.no_guru == doctest::Approx(0.729).epsilon(1e-12));

    for (int i = 0; i < 3; ++i) {
        CHECK(exact_expected_utility(instance, mne, i) == doctest::Approx(delta).epsilon(1e-12));
    }
    CHECK(exact_social_welfare(instance, mne) == doctest::Approx(3 * delta).epsilon(1e-13));
}

TEST_CASE("everyone abstaining has zero welfare") {
    const GameInstance instance = gen_lemma1();
    const MixedProfile abstain = MixedProfile::from_pure(PureProfile::all_abstain(3));
    CHECK(exact_social_welfare(instance, abstain) == 0.0);
    const auto dist = exact_guru_distribution(instance, abstain, 1);
    CHECK(dist.no_guru == 1.0);
}

TEST_CASE("guru masses sum to one") {
    ldg::SplitMix64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 5);
        const GameInstance instance = oracle::random_instance(n, rng);
        const MixedProfile mixed = oracle::random_mixed(n, rng);
        for (int i = 0; i < n; ++i) {
            CHECK(exact_guru_distribution(instance, mixed, i).total() ==
                  doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("exact distribution matches realization enumeration") {
    ldg::SplitMix64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 4);
        const GameInstance instance = oracle::random_instance(n, rng);
        const MixedProfile mixed = oracle::random_mixed(n, rng);
        const auto expected = oracle::guru_distributions(instance, mixed);
        for (int i = 0; i < n; ++i) {
            const auto dist = exact_guru_distribution(instance, mixed, i);
            for (int j = 0; j < n; ++j) {
                CHECK(dist.mass[j] == doctest::Approx(expected[i][j]).epsilon(1e-9));
            }
            CHECK(dist.no_guru == doctest::Approx(expected[i][n]).epsilon(1e-9));
        }
        const double sw = exact_social_welfare(instance, mixed);
        double per_agent = 0.0;
        for (int i = 0; i < n; ++i) {
            per_agent += instance.weight(i) * exact_expected_utility(instance, mixed, i);
        }
        CHECK(sw == doctest::Approx(per_agent).epsilon(1e-12));
    }
}

TEST_CASE("deviation values at the lemma 2 equilibrium") {
    const double delta = 0.1;
    const GameInstance instance = gen_lemma2(delta);
    const MixedProfile mne = lemma2_mixed_equilibrium(delta);
    const auto q = deviation_values(instance, mne, 0);
    // Indifference across the support: q_1(1) = q_1(2) = delta; q_1(3) = 0.
    CHECK(q[0] == doctest::Approx(delta).epsilon(1e-12));
    CHECK(q[1] == doctest::Approx(delta).epsilon(1e-12));
    CHECK(q[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(q[3] == 0.0);
}

TEST_CASE("a certain self-vote earns the diagonal") {
    ldg::SplitMix64 rng(19);
    const GameInstance instance = oracle::random_instance(5, rng);
    const MixedProfile all_self = MixedProfile::all_self(5);
    for (int i = 0; i < 5; ++i) {
        CHECK(exact_expected_utility(instance, all_self, i) == instance.utility(i, i));
    }
}

TEST_CASE("deviations against fixed voters are one-step") {
    ldg::SplitMix64 rng(31);
    const int n = 5;
    const GameInstance instance = oracle::random_instance(n, rng);
    const MixedProfile all_self = MixedProfile::all_self(n);
    for (int i = 0; i < n; ++i) {
        const auto q = deviation_values(instance, all_self, i);
        for (int j = 0; j < n; ++j) {
            CHECK(q[j] == doctest::Approx(instance.utility(i, j)).epsilon(1e-12));
        }
    }
}

TEST_CASE("multilinearity ties utilities to deviation values") {
    ldg::SplitMix64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 7);
        const GameInstance instance = oracle::random_instance(n, rng);
        const MixedProfile mixed = oracle::random_mixed(n, rng);
        for (int i = 0; i < n; ++i) {
            const auto q = deviation_values(instance, mixed, i);
            double u = 0.0;
            for (int j = 0; j < n; ++j) u += mixed.prob(i, j) * q[j];
            CHECK(exact_expected_utility(instance, mixed, i) ==
                  doctest::Approx(u).epsilon(1e-9));
        }
    }
}

TEST_CASE("deviation values match the brute-force oracle") {
    ldg::SplitMix64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 3);
        const GameInstance instance = oracle::random_instance(n, rng);
        const MixedProfile mixed = oracle::random_mixed(n, rng);
        for (int i = 0; i < n; ++i) {
            const auto q = deviation_values(instance, mixed, i);
            for (int j = 0; j < n; ++j) {
                CHECK(q[j] ==
                      doctest::Approx(oracle::deviation_value(instance, mixed, i, j)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("raising a self-vote never hurts its guru mass") {
    ldg::SplitMix64 rng(43);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 3 + static_cast<int>(rng.next() % 3);
        const GameInstance instance = oracle::random_instance(n, rng);
        const MixedProfile mixed = oracle::random_mixed(n, rng);
        const int j = static_cast<int>(rng.next() % n);

        auto rows = mixed.row_vectors();
        const double old_self = rows[j][j];
        const double boost = 0.5 * (1.0 - old_self);
        if (1.0 - old_self < 1e-9) continue;
        rows[j][j] = old_self + boost;
        const double scale = (1.0 - rows[j][j]) / (1.0 - old_self);
        for (int w = 0; w <= n; ++w) {
            if (w != j) rows[j][w] *= scale;
        }
        const MixedProfile boosted(rows);
        for (int i = 0; i < n; ++i) {
            const double before = exact_guru_distribution(instance, mixed, i).mass[j];
            const double after = exact_guru_distribution(instance, boosted, i).mass[j];
            CHECK(after >= before - 1e-9);
        }
    }
}

TEST_CASE("exact evaluation refuses oversized instances") {
    const int n = 21;
    std::vector<std::vector<double>> u(n, std::vector<double>(n, 0.0));
    const GameInstance instance(u);
    const MixedProfile mixed = MixedProfile::all_self(n);
    CHECK_THROWS_AS(exact_guru_distribution(instance, mixed, 0), size_limit_error);
    CHECK_THROWS_AS(deviation_values(instance, mixed, 0), size_limit_error);
    CHECK_NOTHROW(exact_expected_utility(instance, mixed, 0, 25));
    CHECK_THROWS_AS(exact_expected_utility(instance, mixed, 0, 26), validation_error);
}

TEST_CASE("monte carlo is deterministic and consistent") {
    const double delta = 0.1;
    const GameInstance instance = gen_lemma2(delta);
    const MixedProfile mne = lemma2_mixed_equilibrium(delta);

    const auto run1 = monte_carlo_utilities(instance, mne, 100000, 424242);
    const auto run2 = monte_carlo_utilities(instance, mne, 100000, 424242);
    for (int i = 0; i < 3; ++i) {
        CHECK(run1[i].value == run2[i].value);
        CHECK(run1[i].std_error == run2[i].std_error);
        CHECK(run1[i].value == doctest::Approx(delta).epsilon(4.0 * run1[i].std_error / delta));
        CHECK(run1[i].samples == 100000);
    }

    // A deterministic profile has zero variance and the exact value.
    PureProfile pure;
    pure.choices = {std::optional<int>(0), std::optional<int>(1), std::optional<int>(0)};
    const auto exact = monte_carlo_utilities(instance, MixedProfile::from_pure(pure), 1000, 7);
    CHECK(exact[2].value == 1.0);
    CHECK(exact[2].std_error == 0.0);

    CHECK_THROWS_AS(monte_carlo_utilities(instance, mne, 0, 1), validation_error);
}
