#include "cvcorr/protocols.hpp"

#include "cvcorr/channels.hpp"
#include "cvcorr/correlations.hpp"
#include "cvcorr/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace cvcorr {

void DistributionConfig::validate() const {
    if (r < 0) throw std::invalid_argument("squeezing r must be >= 0");
    if (eta_b < 0 || eta_b > 1)
        throw std::invalid_argument("eta_b must lie in [0, 1]");
    if (!(gain_min < gain_max))
        throw std::invalid_argument("gain range must satisfy gain_min < gain_max");
}

double DistributionConfig::displacement_variance() const {
    return v_d < 0 ? 2.0 * (std::exp(2.0 * r) - 1.0) : v_d;
}

Eigen::MatrixXd DistributionConfig::noise_matrix() const {
    // Columns of L multiply the shared Gaussians (x, p); N = v_d L L^T.
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(6, 2);
    l(1, 1) = -1.0;             // dp_A = -p
    l(2, 0) = std::sqrt(2.0);   // dx_B = sqrt(2) x
    l(3, 1) = std::sqrt(2.0);   // dp_B = sqrt(2) p
    l(4, 0) = 1.0;              // dx_C = x
    return displacement_variance() * l * l.transpose();
}

double duan_value(const GaussianState& state, double gain, int mode_a, int mode_b) {
    const int n = state.n_modes();
    if (mode_a < 0 || mode_a >= n || mode_b < 0 || mode_b >= n || mode_a == mode_b)
        throw std::invalid_argument("duan_value needs two distinct modes");
    const Eigen::MatrixXd& g = state.cov();
    const int xa = 2 * mode_a, pa = xa + 1, xb = 2 * mode_b, pb = xb + 1;
    const double var_x =
        gain * gain * g(xa, xa) + 2.0 * gain * g(xa, xb) + g(xb, xb);
    const double var_p =
        gain * gain * g(pa, pa) - 2.0 * gain * g(pa, pb) + g(pb, pb);
    const double norm = (gain * gain + 1.0) * (gain * gain + 1.0);
    return var_x * var_p / norm;
}

GainOpt optimize_gain(const GaussianState& state, int mode_a, int mode_b,
                      double gain_min, double gain_max) {
    auto f = [&](double g) { return duan_value(state, g, mode_a, mode_b); };
    const GoldenResult res = golden_section(f, gain_min, gain_max);
    return {res.x, res.value, res.bracketed};
}

namespace {

StageRecord record_stage(std::string name, const GaussianState& state) {
    StageRecord rec{std::move(name), state, {}, {}};
    for (int m = 0; m < state.n_modes(); ++m) {
        std::vector<int> rest;
        for (int o = 0; o < state.n_modes(); ++o)
            if (o != m) rest.push_back(o);
        const PptResult ppt = ppt_separable(state, {{m}, rest});
        rec.ppt_min_nu.push_back(ppt.min_nu);
        rec.separable.push_back(ppt.separable);
    }
    return rec;
}

}  // namespace

ProtocolTrace run_distribution(const DistributionConfig& config) {
    config.validate();
    ProtocolTrace trace;

    // Modes: 0 = A (momentum squeezed), 1 = B (vacuum), 2 = C (position
    // squeezed); correlated displacements from Eq. of the noise matrix.
    GaussianState state = GaussianState::vacuum(3);
    state = squeeze(state, 0, -config.r);
    state = squeeze(state, 2, config.r);
    state = add_classical_noise(state, config.noise_matrix());
    trace.stages.push_back(record_stage("prepared", state));

    state = beam_splitter(state, 0, 2, 0.5);
    trace.stages.push_back(record_stage("afterBS1", state));
    trace.discord_c_ab = discord_measuring(state, 2);

    state = beam_splitter(state, 2, 1, 0.5);
    // Flip the reflected port so the entangled quadrature combinations carry a
    // positive gain.
    state = phase_rotation(state, 1, M_PI);
    state = attenuate(state, 1, config.eta_b);
    trace.stages.push_back(record_stage("afterBS2", state));

    const GainOpt opt =
        optimize_gain(state, 0, 1, config.gain_min, config.gain_max);
    trace.g_opt = opt.g_opt;
    trace.duan = opt.value;
    trace.gain_bracketed = opt.bracketed;
    return trace;
}

ProtocolTrace run_bs_discord_entanglement(double nbar, double correlation) {
    if (!(nbar > 0)) throw std::invalid_argument("nbar must be > 0");
    if (correlation < 0 || correlation > 1)
        throw std::invalid_argument("noise correlation must lie in [0, 1]");
    ProtocolTrace trace;

    // Modes: 0 = A (vacuum BS port), 1 = B, 2 = C. B carries hidden x
    // squeezing buried under classical x noise so that its local state is
    // exactly thermal(nbar); C shares anticorrelated x noise with B.
    const double r = 0.5 * std::log(2.0 * nbar + 1.0);
    const double v_noise = (2.0 * nbar + 1.0) - std::exp(-2.0 * r);

    GaussianState state = GaussianState::vacuum(3);
    state = squeeze(state, 1, r);
    Eigen::MatrixXd noise = Eigen::MatrixXd::Zero(6, 6);
    noise(2, 2) = v_noise;
    noise(4, 4) = v_noise;
    noise(2, 4) = noise(4, 2) = -correlation * v_noise;
    state = add_classical_noise(state, noise);
    trace.stages.push_back(record_stage("prepared", state));
    trace.discord_c_ab = discord_measuring(state, 2);

    state = beam_splitter(state, 0, 1, 0.5);
    trace.stages.push_back(record_stage("afterBS1", state));

    const GainOpt opt = optimize_gain(state, 0, 1);
    trace.g_opt = opt.g_opt;
    trace.duan = opt.value;
    trace.gain_bracketed = opt.bracketed;
    return trace;
}

}  // namespace cvcorr
