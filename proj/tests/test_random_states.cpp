#include "cvcorr/json_io.hpp"
#include "cvcorr/random_states.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace cvcorr;

TEST_CASE("random state round-trips its symplectic eigenvalues") {
    std::mt19937_64 rng(42);
    for (int k = 0; k < 200; ++k) {
        double nu1 = 0, nu2 = 0;
        const GaussianState s = random_state(rng, 5.0, 1.5, &nu1, &nu2);
        auto nu = symplectic_eigenvalues(s);
        std::vector<double> drawn{nu1, nu2};
        std::sort(drawn.begin(), drawn.end());
        CHECK(nu[0] == doctest::Approx(drawn[0]).epsilon(1e-8));
        CHECK(nu[1] == doctest::Approx(drawn[1]).epsilon(1e-8));
    }
}

TEST_CASE("vacuum-forced draw") {
    std::mt19937_64 rng(1);
    const GaussianState s = random_state(rng, 1.0, 0.0);
    CHECK(s.cov().isApprox(Eigen::MatrixXd::Identity(4, 4), 1e-10));
}

TEST_CASE("scatter is deterministic and matches the serial reference") {
    SamplerSpec spec;
    spec.count = 16;
    spec.seed = 7;
    spec.n_max = 12;
    const RunManifest m{"scatter", {}, {{"seed", 7}}, "", "test"};
    const std::string a = scatter_csv(scatter(spec), m);
    const std::string b = scatter_csv(scatter(spec), m);
    const std::string c = scatter_csv(scatter_serial(spec), m);
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("scatter records satisfy basic ordering properties") {
    SamplerSpec spec;
    spec.count = 60;
    spec.seed = 3;
    spec.with_mid = false;
    const auto recs = scatter(spec);
    REQUIRE(static_cast<int>(recs.size()) == spec.count);
    for (const auto& r : recs) {
        CHECK(r.report.mutual_info >= r.report.discord_left - 1e-6);
        CHECK(r.report.mutual_info >= r.report.discord_right - 1e-6);
        CHECK(r.report.discord_two_way ==
              std::max(r.report.discord_left, r.report.discord_right));
        REQUIRE(r.report.amid.has_value());
        CHECK(*r.report.amid >= r.report.discord_two_way - 1e-3);
    }
}

TEST_CASE("spec validation") {
    SamplerSpec spec;
    spec.count = 0;
    CHECK_THROWS_AS(scatter(spec), std::invalid_argument);
    spec.count = 1;
    spec.nu_max = 0.5;
    CHECK_THROWS_AS(scatter(spec), std::invalid_argument);
}
