#pragma once

#include "cvcorr/gaussian.hpp"

#include <stdexcept>

namespace cvcorr {

struct TruncationError : std::runtime_error {
    double mass;
    explicit TruncationError(double m)
        : std::runtime_error("photon-number distribution mass " + std::to_string(m) +
                             " below 1 - 1e-6; raise n_max"),
          mass(m) {}
};

// Gauss-Hermite nodes/weights for the weight exp(-y^2/2) (Golub-Welsch).
void gauss_hermite(int order, std::vector<double>& nodes, std::vector<double>& weights);

// Joint photon-number distribution p(n,m), n,m = 0..n_max, of a two-mode
// Gaussian state, computed exactly (up to a geometrically suppressed folded
// tail) by evaluating the closed-form generating function tr(rho z_a^n z_b^m)
// on roots of unity and inverting with a discrete Fourier transform.
// order = 0 sizes the grid automatically from the covariance spectrum; a
// positive order overrides the grid size (rounded up to even).
// The parallel kernel processes independent grid rows and sums them in index
// order, so results are bit-identical for any thread count and match the
// serial reference exactly.
Eigen::MatrixXd photon_number_distribution_serial(const GaussianState& state,
                                                  int n_max, int order = 0);
Eigen::MatrixXd photon_number_distribution(const GaussianState& state, int n_max,
                                           int order = 0);

// Measurement-induced disturbance: quantum mutual information minus the
// Shannon mutual information of local Fock-detection outcomes.
// Throws TruncationError when the retained mass falls below 1 - 1e-6.
double mid(const GaussianState& state, int n_max, int order = 0);

}  // namespace cvcorr
