#pragma once

#include "cvcorr/gaussian.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace cvcorr {

// Pure single-mode general-dyne seed covariance R(phi) diag(lambda, 1/lambda) R(phi)^T.
// lambda = 1 is heterodyne; ln(lambda) -> +-inf approaches homodyne.
struct GaussianMeasurement {
    double lambda = 1.0;
    double phi = 0.0;
    Eigen::Matrix2d seed_cov() const;
};

enum class StateClass { Product, QC, QQ };
std::string to_string(StateClass c);

struct CorrelationReport {
    double mutual_info = 0.0;
    double discord_left = 0.0;    // measurement on B, information about A
    double discord_right = 0.0;   // measurement on A
    double discord_two_way = 0.0;
    std::optional<double> mid;
    std::optional<double> amid;
    bool p_classical = false;
    StateClass classification = StateClass::Product;
};

// Binary entropy kernel f(nu) = ((nu+1)/2)ln((nu+1)/2) - ((nu-1)/2)ln((nu-1)/2),
// clamped to f(1) = 0 against roundoff below nu = 1.
double entropy_kernel(double nu);

// All entropies in nats.
double von_neumann_entropy(const GaussianState& state);
double renyi_entropy(const GaussianState& state, double alpha);
double mutual_information(const GaussianState& state, const ModeBipartition& cut);

// Outcome-independent conditional covariance after a general-dyne measurement
// of one mode of a two-mode state: gamma_A - C (gamma_B + gamma_M)^{-1} C^T.
// measured_mode is 0 or 1; the returned matrix describes the other mode.
Eigen::Matrix2d conditional_cm(const GaussianState& state, int measured_mode,
                               const GaussianMeasurement& meas);

enum class DiscordDirection { Left, Right };  // Left: measure B; Right: measure A

// Gaussian discord via multistart Nelder-Mead over (ln lambda, phi).
double gaussian_discord(const GaussianState& state, DiscordDirection dir,
                        std::uint64_t opt_seed = 0);

// Discord of the (rest)-(measured_mode) split of an n-mode state, with the
// general-dyne measurement performed on measured_mode.
double discord_measuring(const GaussianState& state, int measured_mode,
                         std::uint64_t opt_seed = 0);

// Gaussian AMID: I(AB) minus the best classical MI of joint general-dyne outcomes.
double amid(const GaussianState& state, std::uint64_t opt_seed = 0);

StateClass classify(const GaussianState& state, std::uint64_t opt_seed = 0);

// Full report for a two-mode state. n_max <= 0 skips MID.
CorrelationReport correlation_report(const GaussianState& state, int n_max = 30,
                                     std::uint64_t opt_seed = 0);

}  // namespace cvcorr
