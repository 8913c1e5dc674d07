#pragma once

#include "cvcorr/correlations.hpp"
#include "cvcorr/gaussian.hpp"

#include <cstdint>
#include <random>

namespace cvcorr {

struct SamplerSpec {
    int count = 1000;
    std::uint64_t seed = 0;
    double nu_max = 5.0;       // thermal symplectic eigenvalues drawn from [1, nu_max]
    double squeeze_max = 1.5;  // squeezing of the random symplectic, [0, squeeze_max]
    bool with_mid = true;
    int n_max = 30;            // Fock truncation for MID
    void validate() const;
};

struct ScatterRecord {
    int index = 0;
    double nu1 = 1.0;
    double nu2 = 1.0;
    CorrelationReport report;
};

// Random mixed two-mode Gaussian state in Williamson form,
// gamma = S diag(nu1, nu1, nu2, nu2) S^T, with S = passive * squeeze * passive
// and the passive factors drawn Haar-uniformly from U(2).
GaussianState random_state(std::mt19937_64& rng, double nu_max, double squeeze_max,
                           double* nu1 = nullptr, double* nu2 = nullptr);

// One record per state. Each state gets its own splitmix64-derived RNG stream,
// so the output is bit-identical for any thread count; the parallel variant
// distributes states across OpenMP threads.
std::vector<ScatterRecord> scatter_serial(const SamplerSpec& spec);
std::vector<ScatterRecord> scatter(const SamplerSpec& spec);

}  // namespace cvcorr
