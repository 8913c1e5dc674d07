#include "cvcorr/channels.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace cvcorr {

bool is_symplectic(const Eigen::MatrixXd& s, double tol) {
    const int n = static_cast<int>(s.rows()) / 2;
    const Eigen::MatrixXd omega = symplectic_form(n);
    return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff() <= tol;
}

GaussianState apply_symplectic(const GaussianState& state, const Eigen::MatrixXd& s) {
    return GaussianState(s * state.mean(), s * state.cov() * s.transpose());
}

Eigen::MatrixXd beam_splitter_symplectic(int n_modes, int mode_i, int mode_j,
                                         double transmittance, double phase) {
    if (mode_i == mode_j) throw std::invalid_argument("beam splitter needs two distinct modes");
    if (mode_i < 0 || mode_i >= n_modes || mode_j < 0 || mode_j >= n_modes)
        throw std::invalid_argument("beam splitter mode index out of range");
    if (transmittance < 0.0 || transmittance > 1.0)
        throw std::invalid_argument("transmittance must be in [0,1]");
    const double a = std::sqrt(transmittance);
    const double b = std::sqrt(1.0 - transmittance);
    Eigen::Matrix2d rot;
    rot << std::cos(phase), -std::sin(phase), std::sin(phase), std::cos(phase);
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    s.block<2, 2>(2 * mode_i, 2 * mode_i) = a * Eigen::Matrix2d::Identity();
    s.block<2, 2>(2 * mode_i, 2 * mode_j) = b * rot;
    s.block<2, 2>(2 * mode_j, 2 * mode_i) = -b * rot.transpose();
    s.block<2, 2>(2 * mode_j, 2 * mode_j) = a * Eigen::Matrix2d::Identity();
    return s;
}

GaussianState beam_splitter(const GaussianState& state, int mode_i, int mode_j,
                            double transmittance, double phase) {
    return apply_symplectic(
        state, beam_splitter_symplectic(state.n_modes(), mode_i, mode_j,
                                        transmittance, phase));
}

GaussianState squeeze(const GaussianState& state, int mode, double r, double angle) {
    if (mode < 0 || mode >= state.n_modes())
        throw std::invalid_argument("mode index out of range");
    if (!std::isfinite(r)) throw std::invalid_argument("squeezing must be finite");
    Eigen::Matrix2d rot;
    rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    Eigen::Matrix2d sq = rot * Eigen::Vector2d(std::exp(-r), std::exp(r)).asDiagonal() *
                         rot.transpose();
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * state.n_modes(), 2 * state.n_modes());
    s.block<2, 2>(2 * mode, 2 * mode) = sq;
    return apply_symplectic(state, s);
}

GaussianState phase_rotation(const GaussianState& state, int mode, double angle) {
    if (mode < 0 || mode >= state.n_modes())
        throw std::invalid_argument("mode index out of range");
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * state.n_modes(), 2 * state.n_modes());
    s.block<2, 2>(2 * mode, 2 * mode) << std::cos(angle), -std::sin(angle),
        std::sin(angle), std::cos(angle);
    return apply_symplectic(state, s);
}

GaussianState attenuate(const GaussianState& state, int mode, double eta) {
    if (mode < 0 || mode >= state.n_modes())
        throw std::invalid_argument("mode index out of range");
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("eta must be in [0,1]");
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(2 * state.n_modes());
    scale.segment<2>(2 * mode).setConstant(std::sqrt(eta));
    Eigen::MatrixXd cov = scale.asDiagonal() * state.cov() * scale.asDiagonal();
    cov(2 * mode, 2 * mode) += 1.0 - eta;
    cov(2 * mode + 1, 2 * mode + 1) += 1.0 - eta;
    return GaussianState(scale.asDiagonal() * state.mean(), std::move(cov));
}

GaussianState add_classical_noise(const GaussianState& state,
                                  const Eigen::MatrixXd& noise) {
    if (noise.rows() != state.cov().rows() || noise.cols() != state.cov().cols())
        throw std::invalid_argument("noise matrix dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(noise, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12)
        throw std::invalid_argument("noise covariance is not positive semidefinite");
    return GaussianState(state.mean(), state.cov() + noise);
}

GaussianState displace(const GaussianState& state, const Eigen::VectorXd& d) {
    if (d.size() != state.mean().size())
        throw std::invalid_argument("displacement vector length mismatch");
    return GaussianState(state.mean() + d, state.cov());
}

}  // namespace cvcorr
