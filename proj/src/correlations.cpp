#include "cvcorr/correlations.hpp"

#include "cvcorr/mid.hpp"
#include "cvcorr/optim.hpp"

#include <cmath>
#include <random>

namespace cvcorr {

namespace {
constexpr double kLnLambdaMax = 15.0;

std::vector<std::vector<double>> measurement_starts(int dims, std::uint64_t seed) {
    // Deterministic grid plus a few seeded random starts per spec'd multistart.
    std::vector<std::vector<double>> starts;
    const double lns[] = {-12.0, 0.0, 12.0};
    const double phis[] = {0.4, 1.9};
    if (dims == 2) {
        for (double l : lns)
            for (double p : phis) starts.push_back({l, p});
    } else {
        for (double l : lns)
            for (double p : phis) starts.push_back({l, p, l, p});
        starts.push_back({-12.0, 0.4, 12.0, 1.9});
        starts.push_back({12.0, 1.9, -12.0, 0.4});
    }
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> uln(-kLnLambdaMax, kLnLambdaMax);
    std::uniform_real_distribution<double> uphi(0.0, M_PI);
    for (int k = 0; k < 4; ++k) {
        std::vector<double> s;
        for (int d = 0; d < dims / 2; ++d) {
            s.push_back(uln(rng));
            s.push_back(uphi(rng));
        }
        starts.push_back(std::move(s));
    }
    return starts;
}

double clamp_lnl(double v) {
    return std::clamp(v, -kLnLambdaMax, kLnLambdaMax);
}
}  // namespace

Eigen::Matrix2d GaussianMeasurement::seed_cov() const {
    if (lambda <= 0) throw std::invalid_argument("measurement seed lambda must be > 0");
    Eigen::Matrix2d rot;
    rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    return rot * Eigen::Vector2d(lambda, 1.0 / lambda).asDiagonal() * rot.transpose();
}

std::string to_string(StateClass c) {
    switch (c) {
        case StateClass::Product: return "Product";
        case StateClass::QC: return "QC";
        default: return "QQ";
    }
}

double entropy_kernel(double nu) {
    if (nu <= 1.0 + 1e-12) return 0.0;
    const double a = (nu + 1.0) / 2.0;
    const double b = (nu - 1.0) / 2.0;
    return a * std::log(a) - b * std::log(b);
}

double von_neumann_entropy(const GaussianState& state) {
    double s = 0.0;
    for (double nu : symplectic_eigenvalues(state)) s += entropy_kernel(nu);
    return s;
}

double renyi_entropy(const GaussianState& state, double alpha) {
    if (alpha <= 0) throw std::invalid_argument("Renyi order must be > 0");
    if (std::abs(alpha - 1.0) < 1e-12) return von_neumann_entropy(state);
    if (alpha == 2.0) return 0.5 * std::log(state.cov().determinant());
    double s = 0.0;
    for (double nu : symplectic_eigenvalues(state)) {
        const double nup = std::max(nu, 1.0);
        s += std::log((std::pow(nup + 1.0, alpha) - std::pow(nup - 1.0, alpha)) /
                      std::pow(2.0, alpha)) /
             (alpha - 1.0);
    }
    return s;
}

double mutual_information(const GaussianState& state, const ModeBipartition& cut) {
    cut.validate(state.n_modes());
    return von_neumann_entropy(reduce(state, cut.left)) +
           von_neumann_entropy(reduce(state, cut.right)) - von_neumann_entropy(state);
}

Eigen::Matrix2d conditional_cm(const GaussianState& state, int measured_mode,
                               const GaussianMeasurement& meas) {
    if (state.n_modes() != 2)
        throw std::invalid_argument("conditional_cm expects a two-mode state");
    if (measured_mode != 0 && measured_mode != 1)
        throw std::invalid_argument("measured mode must be 0 or 1");
    const int kept = 1 - measured_mode;
    const Eigen::Matrix2d ga = state.cov().block<2, 2>(2 * kept, 2 * kept);
    const Eigen::Matrix2d gb =
        state.cov().block<2, 2>(2 * measured_mode, 2 * measured_mode);
    const Eigen::Matrix2d c = state.cov().block<2, 2>(2 * kept, 2 * measured_mode);
    return ga - c * (gb + meas.seed_cov()).inverse() * c.transpose();
}

double discord_measuring(const GaussianState& state, int measured_mode,
                         std::uint64_t opt_seed) {
    const int n = state.n_modes();
    if (measured_mode < 0 || measured_mode >= n)
        throw std::invalid_argument("measured mode out of range");
    std::vector<int> rest;
    for (int m = 0; m < n; ++m)
        if (m != measured_mode) rest.push_back(m);

    const double s_meas = von_neumann_entropy(reduce(state, {measured_mode}));
    const double s_joint = von_neumann_entropy(state);

    const int nr = 2 * (n - 1);
    Eigen::MatrixXd ga(nr, nr), c(nr, 2);
    for (int i = 0; i < n - 1; ++i) {
        c.block<2, 2>(2 * i, 0) =
            state.cov().block<2, 2>(2 * rest[i], 2 * measured_mode);
        for (int j = 0; j < n - 1; ++j)
            ga.block<2, 2>(2 * i, 2 * j) =
                state.cov().block<2, 2>(2 * rest[i], 2 * rest[j]);
    }
    const Eigen::Matrix2d gb =
        state.cov().block<2, 2>(2 * measured_mode, 2 * measured_mode);

    auto objective = [&](const std::vector<double>& t) {
        GaussianMeasurement m{std::exp(clamp_lnl(t[0])), t[1]};
        const Eigen::MatrixXd gc =
            ga - c * (gb + m.seed_cov()).inverse() * c.transpose();
        double s = 0.0;
        for (double nu : symplectic_eigenvalues_of(gc)) s += entropy_kernel(nu);
        return s;
    };
    const auto best =
        multistart_nelder_mead(objective, measurement_starts(2, opt_seed));
    return std::max(0.0, s_meas - s_joint + best.value);
}

double gaussian_discord(const GaussianState& state, DiscordDirection dir,
                        std::uint64_t opt_seed) {
    if (state.n_modes() != 2)
        throw std::invalid_argument("gaussian_discord supports two-mode states only");
    return discord_measuring(state, dir == DiscordDirection::Left ? 1 : 0, opt_seed);
}

double amid(const GaussianState& state, std::uint64_t opt_seed) {
    if (state.n_modes() != 2)
        throw std::invalid_argument("amid supports two-mode states only");
    const double mi = mutual_information(state, {{0}, {1}});

    auto neg_classical_mi = [&](const std::vector<double>& t) {
        GaussianMeasurement ma{std::exp(clamp_lnl(t[0])), t[1]};
        GaussianMeasurement mb{std::exp(clamp_lnl(t[2])), t[3]};
        Eigen::Matrix4d sigma = state.cov();
        sigma.block<2, 2>(0, 0) += ma.seed_cov();
        sigma.block<2, 2>(2, 2) += mb.seed_cov();
        const double da = sigma.block<2, 2>(0, 0).determinant();
        const double db = sigma.block<2, 2>(2, 2).determinant();
        return -0.5 * std::log(da * db / sigma.determinant());
    };
    const auto best =
        multistart_nelder_mead(neg_classical_mi, measurement_starts(4, opt_seed));
    return std::max(0.0, mi + best.value);
}

StateClass classify(const GaussianState& state, std::uint64_t opt_seed) {
    const double dl = gaussian_discord(state, DiscordDirection::Left, opt_seed);
    const double dr = gaussian_discord(state, DiscordDirection::Right, opt_seed);
    const bool zl = dl < 1e-6, zr = dr < 1e-6;
    if (zl && zr) return StateClass::Product;
    if (zl || zr) return StateClass::QC;
    return StateClass::QQ;
}

CorrelationReport correlation_report(const GaussianState& state, int n_max,
                                     std::uint64_t opt_seed) {
    if (state.n_modes() != 2)
        throw std::invalid_argument("correlation_report expects a two-mode state");
    CorrelationReport rep;
    rep.mutual_info = mutual_information(state, {{0}, {1}});
    rep.discord_left = gaussian_discord(state, DiscordDirection::Left, opt_seed);
    rep.discord_right = gaussian_discord(state, DiscordDirection::Right, opt_seed);
    rep.discord_two_way = std::max(rep.discord_left, rep.discord_right);
    rep.amid = amid(state, opt_seed);
    if (n_max > 0) {
        try {
            rep.mid = mid(state, n_max);
        } catch (const TruncationError&) {
            rep.mid = std::nullopt;
        }
    }
    rep.p_classical = is_p_classical(state);
    const bool zl = rep.discord_left < 1e-6, zr = rep.discord_right < 1e-6;
    rep.classification = (zl && zr)   ? StateClass::Product
                         : (zl || zr) ? StateClass::QC
                                      : StateClass::QQ;
    return rep;
}

}  // namespace cvcorr
