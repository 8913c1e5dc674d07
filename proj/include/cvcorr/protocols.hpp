#pragma once

#include "cvcorr/gaussian.hpp"

#include <string>
#include <vector>

namespace cvcorr {

// Entanglement distribution by separable ancilla. Modes: 0 = A, 1 = B, 2 = C.
// A is momentum squeezed, C position squeezed, B vacuum; correlated classical
// displacements (variance v_d) are applied, A and C interfere on BS1, then
// C and B on BS2, and mode B suffers loss eta_b.
struct DistributionConfig {
    double r = 0.5;
    double v_d = -1.0;  // < 0 picks the default 2(e^{2r} - 1)
    double eta_b = 0.5;
    double gain_min = 0.0;
    double gain_max = 3.0;
    void validate() const;
    double displacement_variance() const;
    // 6x6 ensemble covariance of the correlated displacements:
    //   dp_A = -p, dx_B = sqrt(2) x, dp_B = sqrt(2) p, dx_C = x,
    // with x, p independent zero-mean Gaussians of variance v_d.
    Eigen::MatrixXd noise_matrix() const;
};

struct StageRecord {
    std::string name;
    GaussianState state;
    std::vector<double> ppt_min_nu;   // one-vs-rest cuts, indexed by single mode
    std::vector<bool> separable;
};

struct ProtocolTrace {
    std::vector<StageRecord> stages;
    double discord_c_ab = 0.0;   // discord across C-(AB) at the intermediate stage
    double g_opt = 0.0;
    double duan = 1.0;
    bool gain_bracketed = true;
};

// Product-of-variances criterion
//   Delta^2(g x_A + x_B) Delta^2(g p_A - p_B) / (g^2 + 1)^2, < 1 entangled.
double duan_value(const GaussianState& state, double gain, int mode_a, int mode_b);

struct GainOpt {
    double g_opt;
    double value;
    bool bracketed;
};
GainOpt optimize_gain(const GaussianState& state, int mode_a, int mode_b,
                      double gain_min = 0.0, double gain_max = 3.0);

ProtocolTrace run_distribution(const DistributionConfig& config);

// Entanglement from discord at a beam splitter (vacuum port A, thermal B
// correlated with ancilla C through classical x-displacement noise).
// correlation in [0,1] scales the B-C noise cross term.
ProtocolTrace run_bs_discord_entanglement(double nbar, double correlation);

}  // namespace cvcorr
