#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace cvcorr {

// Quadrature ordering is x1,p1,...,xn,pn with vacuum covariance = identity
// (unit vacuum variance). Paper-style values quoted in conventions with
// vacuum variance 1/4 convert by scaling variances by 4.

struct PhysicalityError : std::runtime_error {
    double min_eigenvalue;
    explicit PhysicalityError(double min_eig)
        : std::runtime_error("covariance matrix violates gamma + i*Omega >= 0 "
                             "(min eigenvalue " + std::to_string(min_eig) + ")"),
          min_eigenvalue(min_eig) {}
};

// Omega = direct sum of n blocks [[0,1],[-1,0]].
Eigen::MatrixXd symplectic_form(int n_modes);

class GaussianState {
public:
    // Validates symmetry (1e-12 relative) and physicality (min eig of
    // gamma + i*Omega >= -1e-9); throws std::invalid_argument / PhysicalityError.
    GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

    static GaussianState vacuum(int n_modes);
    static GaussianState thermal(double nbar, int n_modes = 1);
    // Two-mode squeezed vacuum: diagonal blocks cosh(2r)*I, off-diagonal
    // sinh(2r)*diag(-1, 1) (x anticorrelated, p correlated), so that the
    // Duan combination (x_A + x_B, p_A - p_B) is squeezed.
    static GaussianState tmsv(double r);

    int n_modes() const { return n_; }
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& cov() const { return cov_; }

private:
    int n_;
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
};

struct ModeBipartition {
    std::vector<int> left;
    std::vector<int> right;
    // Throws std::invalid_argument unless left/right are disjoint and cover 0..n-1.
    void validate(int n_modes) const;
};

// The n positive eigenvalues of i*Omega*gamma, ascending. Low-level variant
// takes a bare (possibly unphysical) symmetric matrix, e.g. a partial transpose.
std::vector<double> symplectic_eigenvalues_of(const Eigen::MatrixXd& cov);
std::vector<double> symplectic_eigenvalues(const GaussianState& state);

GaussianState reduce(const GaussianState& state, const std::vector<int>& modes);

// Sign-flips the p rows/columns of the right-side modes. The result may be
// unphysical, hence a bare matrix (mean handling is not needed by PPT).
Eigen::MatrixXd partial_transpose(const GaussianState& state,
                                  const ModeBipartition& cut);

struct PptResult {
    double min_nu;
    bool separable;       // min_nu >= 1 - 1e-9
    bool conclusive;      // true when one side of the cut is a single mode
};
PptResult ppt_separable(const GaussianState& state, const ModeBipartition& cut);

// gamma - I positive semidefinite within 1e-9.
bool is_p_classical(const GaussianState& state);

double purity(const GaussianState& state);

}  // namespace cvcorr
