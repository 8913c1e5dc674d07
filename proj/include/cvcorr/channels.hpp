#pragma once

#include "cvcorr/gaussian.hpp"

namespace cvcorr {

// Symplectic matrix check: S Omega S^T = Omega within 1e-10.
bool is_symplectic(const Eigen::MatrixXd& s, double tol = 1e-10);

GaussianState apply_symplectic(const GaussianState& state, const Eigen::MatrixXd& s);

// Two-mode mixing with transmittance t and phase phi. Convention:
//   out_i = sqrt(t) in_i + sqrt(1-t) R(phi) in_j
//   out_j = -sqrt(1-t) R(phi)^T in_i + sqrt(t) in_j
// with R the 2x2 rotation on (x,p).
Eigen::MatrixXd beam_splitter_symplectic(int n_modes, int mode_i, int mode_j,
                                         double transmittance, double phase = 0.0);
GaussianState beam_splitter(const GaussianState& state, int mode_i, int mode_j,
                            double transmittance, double phase = 0.0);

// Single-mode squeezer: variance e^{-2r} along the axis rotated by `angle`.
GaussianState squeeze(const GaussianState& state, int mode, double r,
                      double angle = 0.0);

GaussianState phase_rotation(const GaussianState& state, int mode, double angle);

// Pure loss: gamma -> eta*gamma + (1-eta)*I on the mode, mean -> sqrt(eta)*mean.
GaussianState attenuate(const GaussianState& state, int mode, double eta);

// Ensemble-averaged classical displacement noise: gamma -> gamma + N.
GaussianState add_classical_noise(const GaussianState& state,
                                  const Eigen::MatrixXd& noise);

GaussianState displace(const GaussianState& state, const Eigen::VectorXd& d);

}  // namespace cvcorr
