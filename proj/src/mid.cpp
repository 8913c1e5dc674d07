#include "cvcorr/mid.hpp"

#include "cvcorr/correlations.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <omp.h>

#include <cmath>
#include <complex>
#include <vector>

namespace cvcorr {

void gauss_hermite(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    // Jacobi matrix of the probabilists' Hermite recurrence, beta_k = sqrt(k).
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double b = std::sqrt(static_cast<double>(k));
        j(k, k - 1) = b;
        j(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    const double total = std::sqrt(2.0 * M_PI);
    nodes.resize(order);
    weights.resize(order);
    for (int i = 0; i < order; ++i) {
        nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        weights[i] = total * v0 * v0;
    }
}

namespace {

using cd = std::complex<double>;

// Grid size for the generating-function inversion. Aliasing folds photon
// numbers beyond the grid back into p(n,m); the per-mode tail decays at least
// geometrically with base (lam-1)/(lam+1), lam the largest eigenvalue of the
// covariance, so the grid is sized to push the folded tail below roundoff.
int grid_size(const GaussianState& state, int n_max, double lam_max) {
    double k = std::max(64.0, 2.0 * n_max + 4.0);
    if (lam_max > 1.0 + 1e-9) {
        const double base = (lam_max - 1.0) / (lam_max + 1.0);
        k = std::max(k, n_max + 30.0 / (-std::log(base)));
    }
    k += 2.0 * state.mean().squaredNorm();
    int ki = static_cast<int>(std::ceil(k));
    return ki + (ki & 1);
}

// Joint photon-number distribution via the factorial generating function
//   G(z_a, z_b) = tr(rho z_a^{n_a} z_b^{n_b}),
// which for a Gaussian state is the Wigner overlap with a "thermal" operator
// of complex covariance i t I per mode, t = cot(theta/2) on z = e^{i theta}:
//   G = 4 exp(-mu^T (gamma + iT)^{-1} mu / 2)
//       / [(1-z_a)(1-z_b) sqrt(det gamma) prod_k sqrt(1 + i tau_k)],
// tau_k the eigenvalues of gamma^{-1/2} T gamma^{-1/2}.  Taking the principal
// square root factor by factor fixes the branch (each factor has positive real
// part, and scaling T -> sT traces the continuation from G > 0 at z = -1).
// |G| <= 1 on the unit circle, so inverting by a discrete Fourier transform on
// K-th roots of unity is free of cancellation; the only error is the folded
// tail p(n + jK, m + lK), suppressed by the grid-size choice above.
// The grid z_j = exp(i pi (2j+1) / K) avoids the removable point z = 1.
Eigen::MatrixXd photon_distribution_impl(const GaussianState& state, int n_max,
                                         int order, bool parallel) {
    if (state.n_modes() != 2)
        throw std::invalid_argument("photon-number distribution expects two modes");
    if (n_max < 10) throw std::invalid_argument("n_max must be >= 10");

    const Eigen::Matrix4d gamma = state.cov();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eg(gamma);
    const double sqrt_det_gamma = std::sqrt(eg.eigenvalues().prod());
    const Eigen::Matrix4d gihalf =
        eg.eigenvectors() *
        eg.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        eg.eigenvectors().transpose();
    // gamma^{-1/2} diag(1,1,0,0) gamma^{-1/2} and the mode-b counterpart
    const Eigen::Matrix4d pa = gihalf.leftCols<2>() * gihalf.topRows<2>();
    const Eigen::Matrix4d pb = gihalf.rightCols<2>() * gihalf.bottomRows<2>();

    const bool displaced = state.mean().squaredNorm() > 0.0;
    const Eigen::Vector4cd mean_c = state.mean().cast<cd>();

    const int k = order > 0 ? order + (order & 1)
                            : grid_size(state, n_max, eg.eigenvalues().maxCoeff());
    std::vector<double> theta(k), t(k);
    std::vector<cd> z(k);
    for (int j = 0; j < k; ++j) {
        theta[j] = M_PI * (2.0 * j + 1.0) / k;
        z[j] = std::polar(1.0, theta[j]);
        t[j] = std::cos(0.5 * theta[j]) / std::sin(0.5 * theta[j]);
    }

    // f(j, m) = sum_l G(z_j, z_l) conj(z_l)^m, rows independent.
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(k, n_max + 1);

#pragma omp parallel for schedule(dynamic) if (parallel && !omp_in_parallel())
    for (int j = 0; j < k; ++j) {
        const cd da = 1.0 - z[j];
        for (int l = 0; l < k; ++l) {
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(t[j] * pa + t[l] * pb);
            cd s = sqrt_det_gamma;
            for (int q = 0; q < 4; ++q) s *= std::sqrt(cd(1.0, es.eigenvalues()(q)));
            cd g = 4.0 / (da * (1.0 - z[l]) * s);
            if (displaced) {
                Eigen::Matrix4cd a = gamma.cast<cd>();
                a(0, 0) += cd(0.0, t[j]);
                a(1, 1) += cd(0.0, t[j]);
                a(2, 2) += cd(0.0, t[l]);
                a(3, 3) += cd(0.0, t[l]);
                const Eigen::Vector4cd y = a.partialPivLu().solve(mean_c);
                g *= std::exp(-0.5 * mean_c.dot(y));  // mean_c real, so no conjugation effect
            }
            cd pw = 1.0;
            const cd zc = std::conj(z[l]);
            for (int m = 0; m <= n_max; ++m) {
                f(j, m) += g * pw;
                pw *= zc;
            }
        }
    }

    // p(n, m) = Re sum_j conj(z_j)^n f(j, m) / K^2, rows independent and the
    // j-sum runs in index order, so the result is bit-identical for any
    // thread count and matches the serial reference exactly.
    Eigen::MatrixXd p(n_max + 1, n_max + 1);
    const double norm = 1.0 / (static_cast<double>(k) * k);
#pragma omp parallel for schedule(static) if (parallel && !omp_in_parallel())
    for (int n = 0; n <= n_max; ++n) {
        Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(n_max + 1);
        for (int j = 0; j < k; ++j)
            acc += std::polar(1.0, -static_cast<double>(n) * theta[j]) * f.row(j);
        p.row(n) = norm * acc.real();
    }
    return p;
}

double shannon(const Eigen::VectorXd& p) {
    double h = 0.0;
    for (int i = 0; i < p.size(); ++i)
        if (p(i) > 0.0) h -= p(i) * std::log(p(i));
    return h;
}

}  // namespace

Eigen::MatrixXd photon_number_distribution_serial(const GaussianState& state,
                                                  int n_max, int order) {
    return photon_distribution_impl(state, n_max, order, false);
}

Eigen::MatrixXd photon_number_distribution(const GaussianState& state, int n_max,
                                           int order) {
    return photon_distribution_impl(state, n_max, order, true);
}

double mid(const GaussianState& state, int n_max, int order) {
    Eigen::MatrixXd p = photon_number_distribution(state, n_max, order);
    const double mass = p.sum();
    if (mass < 1.0 - 1e-6) throw TruncationError(mass);
    p = p.cwiseMax(0.0);

    const Eigen::VectorXd pa = p.rowwise().sum();
    const Eigen::VectorXd pb = p.colwise().sum();
    double h_joint = 0.0;
    for (int i = 0; i < p.rows(); ++i)
        for (int j = 0; j < p.cols(); ++j)
            if (p(i, j) > 0.0) h_joint -= p(i, j) * std::log(p(i, j));
    const double classical_mi = shannon(pa) + shannon(pb) - h_joint;

    return mutual_information(state, {{0}, {1}}) - classical_mi;
}

}  // namespace cvcorr
