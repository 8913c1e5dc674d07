#include "cvcorr/channels.hpp"
#include "cvcorr/correlations.hpp"
#include "cvcorr/mid.hpp"

#include <doctest.h>

#include <cmath>

using namespace cvcorr;

TEST_CASE("gauss-hermite rule") {
    std::vector<double> x, w;
    gauss_hermite(21, x, w);
    double m0 = 0, m2 = 0, m4 = 0;
    for (int i = 0; i < 21; ++i) {
        m0 += w[i];
        m2 += w[i] * x[i] * x[i];
        m4 += w[i] * std::pow(x[i], 4);
    }
    const double z = std::sqrt(2.0 * M_PI);
    CHECK(m0 == doctest::Approx(z).epsilon(1e-12));
    CHECK(m2 == doctest::Approx(z).epsilon(1e-12));        // <y^2> = 1
    CHECK(m4 == doctest::Approx(3.0 * z).epsilon(1e-12));  // <y^4> = 3
}

TEST_CASE("thermal photon distribution matches geometric oracle") {
    const double nbar = 1.0;
    const GaussianState s(Eigen::VectorXd::Zero(4),
                          (2 * nbar + 1) * Eigen::MatrixXd::Identity(4, 4));
    const Eigen::MatrixXd p = photon_number_distribution(s, 30);
    double tv = 0.0;
    for (int n = 0; n <= 30; ++n)
        for (int m = 0; m <= 30; ++m) {
            const double pn = std::pow(nbar, n) / std::pow(nbar + 1, n + 1);
            const double pm = std::pow(nbar, m) / std::pow(nbar + 1, m + 1);
            tv += std::abs(p(n, m) - pn * pm);
        }
    CHECK(tv < 1e-6);
}

TEST_CASE("tmsv photon distribution is diagonal tanh^2n / cosh^2") {
    const double r = 0.5;
    const Eigen::MatrixXd p = photon_number_distribution(GaussianState::tmsv(r), 30);
    const double t2 = std::tanh(r) * std::tanh(r);
    const double c2 = std::cosh(r) * std::cosh(r);
    double tv = 0.0;
    for (int n = 0; n <= 30; ++n)
        for (int m = 0; m <= 30; ++m) {
            const double ref = n == m ? std::pow(t2, n) / c2 : 0.0;
            tv += std::abs(p(n, m) - ref);
        }
    CHECK(tv < 1e-6);
}

TEST_CASE("nonzero mean shifts the distribution") {
    // displaced vacuum: Poisson photon statistics with mean |alpha|^2
    const GaussianState d = displace(
        GaussianState::vacuum(2), Eigen::Vector4d(1.0, 0.0, 0.0, 0.0));
    const Eigen::MatrixXd p = photon_number_distribution(d, 12);
    const double mean_n = 0.25;  // |alpha|^2 = (x^2+p^2)/4 in vacuum-1 units
    for (int n = 0; n <= 4; ++n) {
        const double poisson =
            std::exp(-mean_n) * std::pow(mean_n, n) / std::tgamma(n + 1.0);
        CHECK(p(n, 0) == doctest::Approx(poisson).epsilon(1e-8));
    }
}

TEST_CASE("serial and parallel kernels are bit-identical") {
    const GaussianState s = GaussianState::tmsv(0.8);
    const Eigen::MatrixXd a = photon_number_distribution_serial(s, 20);
    const Eigen::MatrixXd b = photon_number_distribution(s, 20);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("mid values") {
    const GaussianState prod(Eigen::VectorXd::Zero(4),
                             3.0 * Eigen::MatrixXd::Identity(4, 4));
    CHECK(mid(prod, 30) == doctest::Approx(0.0).epsilon(1e-6));

    // pure TMSV: Fock detection is the eigenbasis, so the classical MI equals
    // S(rho_A) and MID = 2 S(rho_A) - S(rho_A) = S(rho_A)
    const double r = 0.5;
    const double sa = entropy_kernel(std::cosh(2 * r));
    CHECK(mid(GaussianState::tmsv(r), 30) == doctest::Approx(sa).epsilon(1e-6));
}

TEST_CASE("truncation guard") {
    CHECK_THROWS_AS(mid(GaussianState::tmsv(0.5), 5), std::invalid_argument);
    // hot state: mass at n_max=10 falls short
    const GaussianState hot(Eigen::VectorXd::Zero(4),
                            41.0 * Eigen::MatrixXd::Identity(4, 4));
    CHECK_THROWS_AS(mid(hot, 10), TruncationError);
}
