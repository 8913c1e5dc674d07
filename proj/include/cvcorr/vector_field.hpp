#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace cvcorr {

enum class FieldBasis { Points, HermiteGauss };

// Two-DoF optical field: four complex amplitudes indexed by
// (spatial element, polarization element) with the polarization index varying
// fastest, i.e. [e(s1,H), e(s1,V), e(s2,H), e(s2,V)]. Spatial elements are
// either two points {x1, x2} or the modes {psi_10, psi_01}.
struct TDoFField {
    FieldBasis basis = FieldBasis::HermiteGauss;
    Eigen::Vector4cd amplitudes = Eigen::Vector4cd::Zero();

    double norm2() const { return amplitudes.squaredNorm(); }
    TDoFField normalized() const;
    // psi_10 * H + psi_01 * V, the radially polarized mode.
    static TDoFField radial();
};

// 4x4 Hermitian PSD coherence matrix in polarization-major ordering
// (polarization slot first in tensor products), trace-normalized on demand.
struct CoherenceMatrix4 {
    Eigen::Matrix4cd gamma = Eigen::Matrix4cd::Zero();
    void validate() const;  // Hermitian 1e-12, eigenvalues >= -1e-10, trace > 0
    CoherenceMatrix4 normalized() const;
};

struct StokesVector {
    double s[4] = {0, 0, 0, 0};
};

struct TDoFStokes {
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
};

struct MuellerMatrix {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
};

// Pauli basis fixed so that the radial probe's TDoF Stokes table is
// diag(1,1,-1,1): sigma = (I, sigma_z, sigma_y, sigma_x) in the (H, V) and
// (psi_10, psi_01) bases.
const Eigen::Matrix2cd& pauli(int j);

// Sum_k w_k |psi_k)(psi_k| for weights >= 0 summing to 1.
CoherenceMatrix4 coherence_matrix(const std::vector<TDoFField>& fields,
                                  const std::vector<double>& weights = {});

// E^2 = 2 [1 - tr(Gamma_j^2) / (tr Gamma_j)^2] from the reduced matrix of the
// kept DoF. which_dof: 0 = polarization, 1 = spatial (equal for any Gamma of a
// pure field; equal by construction of the linear entropy for mixed ones too).
double entanglement_degree_sq(const CoherenceMatrix4& gamma, int which_dof = 0);
double entanglement_degree(const CoherenceMatrix4& gamma, int which_dof = 0);

// Reduced polarization matrix -> P = |(S1,S2,S3)| / S0.
double polarization_degree(const CoherenceMatrix4& gamma);

struct CoherencePredictability {
    std::complex<double> mu;  // trace coherence between the two spatial points
    double delta;             // intensity predictability (I1 - I2)/(I1 + I2)
};
CoherencePredictability coherence_and_predictability(const CoherenceMatrix4& gamma);

// | E^2 - (1 - delta^2)(1 - |mu|^2) | for a pure field.
double verify_entanglement_identity(const TDoFField& field);

// K = 1 / sum(lambda_i^2), Schmidt probabilities of the 2x2 amplitude matrix.
double schmidt_weight(const TDoFField& field);

// C = 2 |e00 e11 - e01 e10| on the normalized field.
double concurrence(const TDoFField& field);

// S_jk = tr[rho (sigma_j x sigma_k)], polarization slot first.
TDoFStokes tdof_stokes(const CoherenceMatrix4& gamma);
CoherenceMatrix4 tdof_stokes_inverse(const TDoFStokes& stokes);

// Mueller matrix of a pure Jones operator, M_jk = (1/2) tr(sigma_j J sigma_k J^+).
MuellerMatrix mueller_of_jones(const Eigen::Matrix2cd& jones);

// Cloude coherency matrix of M (inverse of the linear Jones->Mueller map
// lifted to mixtures); M is physical iff this is PSD.
Eigen::Matrix4cd cloude_coherency(const MuellerMatrix& m);

struct CloudeDecomposition {
    std::vector<Eigen::Matrix2cd> jones;  // scaled by sqrt of coherency eigenvalue
    double min_eigenvalue;
};
// Throws std::invalid_argument when min coherency eigenvalue < -1e-9.
CloudeDecomposition cloude_decompose(const MuellerMatrix& m);

// Gamma -> sum_k (J_k x I) Gamma (J_k x I)^+ over the Cloude components.
CoherenceMatrix4 apply_mueller(const CoherenceMatrix4& gamma, const MuellerMatrix& m);

// Single-shot recovery from the radial probe: M_jk = S_out_jk * lambda_k,
// lambda = (1, 1, -1, 1).
MuellerMatrix recover_mueller_single_shot(const CoherenceMatrix4& gamma_out);

// Classic four-probe recovery: solves the 16x16 system S_out(alpha) = M S(alpha).
// Throws std::invalid_argument when the probes do not span rank 4.
MuellerMatrix conventional_polarimetry(const MuellerMatrix& m,
                                       const std::vector<StokesVector>& probes);

struct KinematicResult {
    StokesVector stokes;   // spatially integrated global Stokes vector
    double x0_hat;         // edge position recovered from the calibration curve
};

// Knife edge blocking x < x0 across a radially polarized Gaussian beam
// (waist 1). Integrated Stokes by 2D midpoint quadrature of the masked
// HG10/HG01 field; x0_hat from a 401-point monotone calibration of S1/S0.
// |x0| <= 3 required.
KinematicResult kinematic_sense(double x0, int resolution = 201);

}  // namespace cvcorr
