#include "cvcorr/gaussian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

namespace cvcorr {

namespace {
constexpr double kSymTol = 1e-12;
constexpr double kPhysTol = 1e-9;
constexpr double kSepThreshold = 1.0 - 1e-9;
}  // namespace

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int i = 0; i < n_modes; ++i) {
        omega(2 * i, 2 * i + 1) = 1.0;
        omega(2 * i + 1, 2 * i) = -1.0;
    }
    return omega;
}

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (cov_.rows() != cov_.cols() || cov_.rows() % 2 != 0 || cov_.rows() == 0)
        throw std::invalid_argument("covariance matrix must be 2n x 2n");
    n_ = static_cast<int>(cov_.rows()) / 2;
    if (mean_.size() != 2 * n_)
        throw std::invalid_argument("mean vector length must be 2n");
    const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > kSymTol * scale)
        throw std::invalid_argument("covariance matrix is not symmetric");
    cov_ = ((cov_ + cov_.transpose()) / 2.0).eval();

    Eigen::MatrixXcd m = cov_.cast<std::complex<double>>();
    m += std::complex<double>(0.0, 1.0) * symplectic_form(n_).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -kPhysTol) throw PhysicalityError(min_eig);
}

GaussianState GaussianState::vacuum(int n_modes) {
    return GaussianState(Eigen::VectorXd::Zero(2 * n_modes),
                         Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState GaussianState::thermal(double nbar, int n_modes) {
    if (nbar < 0) throw std::invalid_argument("thermal occupation must be >= 0");
    return GaussianState(Eigen::VectorXd::Zero(2 * n_modes),
                         (2.0 * nbar + 1.0) *
                             Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState GaussianState::tmsv(double r) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4) * std::cosh(2.0 * r);
    const double s = std::sinh(2.0 * r);
    g(0, 2) = g(2, 0) = -s;
    g(1, 3) = g(3, 1) = s;
    return GaussianState(Eigen::VectorXd::Zero(4), g);
}

void ModeBipartition::validate(int n_modes) const {
    std::vector<char> seen(n_modes, 0);
    auto mark = [&](const std::vector<int>& side) {
        for (int m : side) {
            if (m < 0 || m >= n_modes)
                throw std::invalid_argument("bipartition mode index out of range");
            if (seen[m]) throw std::invalid_argument("bipartition sides overlap");
            seen[m] = 1;
        }
    };
    mark(left);
    mark(right);
    if (left.empty() || right.empty())
        throw std::invalid_argument("bipartition side is empty");
    for (char c : seen)
        if (!c) throw std::invalid_argument("bipartition does not cover all modes");
}

std::vector<double> symplectic_eigenvalues_of(const Eigen::MatrixXd& cov) {
    const int n = static_cast<int>(cov.rows()) / 2;
    Eigen::MatrixXcd m =
        std::complex<double>(0.0, 1.0) *
        (symplectic_form(n) * cov).cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<double> nu;
    for (int i = 0; i < 2 * n; ++i) {
        const double re = es.eigenvalues()(i).real();
        if (re > 0) nu.push_back(re);
    }
    std::sort(nu.begin(), nu.end());
    // Eigenvalues come in +-nu pairs; zero crossings would leave fewer than n.
    while (static_cast<int>(nu.size()) < n) nu.insert(nu.begin(), 0.0);
    return nu;
}

std::vector<double> symplectic_eigenvalues(const GaussianState& state) {
    return symplectic_eigenvalues_of(state.cov());
}

GaussianState reduce(const GaussianState& state, const std::vector<int>& modes) {
    if (modes.empty()) throw std::invalid_argument("mode set is empty");
    for (int m : modes)
        if (m < 0 || m >= state.n_modes())
            throw std::invalid_argument("mode index out of range");
    const int k = static_cast<int>(modes.size());
    Eigen::VectorXd mean(2 * k);
    Eigen::MatrixXd cov(2 * k, 2 * k);
    for (int a = 0; a < k; ++a) {
        mean.segment<2>(2 * a) = state.mean().segment<2>(2 * modes[a]);
        for (int b = 0; b < k; ++b)
            cov.block<2, 2>(2 * a, 2 * b) =
                state.cov().block<2, 2>(2 * modes[a], 2 * modes[b]);
    }
    return GaussianState(std::move(mean), std::move(cov));
}

Eigen::MatrixXd partial_transpose(const GaussianState& state,
                                  const ModeBipartition& cut) {
    cut.validate(state.n_modes());
    Eigen::VectorXd f = Eigen::VectorXd::Ones(2 * state.n_modes());
    for (int m : cut.right) f(2 * m + 1) = -1.0;
    return f.asDiagonal() * state.cov() * f.asDiagonal();
}

PptResult ppt_separable(const GaussianState& state, const ModeBipartition& cut) {
    const auto nu = symplectic_eigenvalues_of(partial_transpose(state, cut));
    PptResult res;
    res.min_nu = nu.front();
    res.separable = res.min_nu >= kSepThreshold;
    res.conclusive = cut.left.size() == 1 || cut.right.size() == 1;
    return res;
}

bool is_p_classical(const GaussianState& state) {
    Eigen::MatrixXd m =
        state.cov() - Eigen::MatrixXd::Identity(2 * state.n_modes(), 2 * state.n_modes());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -1e-9;
}

double purity(const GaussianState& state) {
    return 1.0 / std::sqrt(state.cov().determinant());
}

}  // namespace cvcorr
