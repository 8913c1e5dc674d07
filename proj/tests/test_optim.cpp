#include "cvcorr/optim.hpp"

#include <doctest.h>

#include <cmath>

using namespace cvcorr;

TEST_CASE("nelder-mead quadratic") {
    const auto res = nelder_mead(
        [](const std::vector<double>& x) {
            return (x[0] - 1.5) * (x[0] - 1.5) + 3.0 * (x[1] + 0.5) * (x[1] + 0.5);
        },
        {0.0, 0.0});
    CHECK(res.x[0] == doctest::Approx(1.5).epsilon(1e-5));
    CHECK(res.x[1] == doctest::Approx(-0.5).epsilon(1e-5));
    CHECK(res.value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("nelder-mead rosenbrock") {
    const auto res = nelder_mead(
        [](const std::vector<double>& x) {
            const double a = 1.0 - x[0];
            const double b = x[1] - x[0] * x[0];
            return a * a + 100.0 * b * b;
        },
        {-1.2, 1.0}, 0.5, 1e-14, 10000);
    CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(res.x[1] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("multistart keeps the best minimum") {
    // double well with asymmetric depths
    const auto f = [](const std::vector<double>& x) {
        const double t = x[0];
        return (t * t - 1.0) * (t * t - 1.0) - 0.2 * t;
    };
    const auto res = multistart_nelder_mead(f, {{-1.5}, {1.5}});
    CHECK(res.x[0] == doctest::Approx(1.0248).epsilon(1e-3));
}

TEST_CASE("golden section") {
    const auto res =
        golden_section([](double x) { return (x - 0.7) * (x - 0.7); }, 0.0, 3.0);
    CHECK(res.x == doctest::Approx(0.7).epsilon(1e-7));
    CHECK(res.bracketed);

    const auto mono = golden_section([](double x) { return x; }, 0.0, 1.0);
    CHECK(mono.x == doctest::Approx(0.0).epsilon(1e-6));
    CHECK_FALSE(mono.bracketed);
}
