#include "cvcorr/random_states.hpp"

#include "cvcorr/channels.hpp"

#include <omp.h>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace cvcorr {

void SamplerSpec::validate() const {
    if (count <= 0) throw std::invalid_argument("count must be > 0");
    if (nu_max < 1.0) throw std::invalid_argument("nu_max must be >= 1");
    if (squeeze_max < 0.0) throw std::invalid_argument("squeeze_max must be >= 0");
    if (with_mid && n_max < 10) throw std::invalid_argument("n_max must be >= 10");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Haar-random U(2) mapped to the quadrature representation: each complex
// entry u becomes the 2x2 block [[Re u, -Im u], [Im u, Re u]].
Eigen::Matrix4d random_passive(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Eigen::Matrix2cd z;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) z(i, j) = {gauss(rng), gauss(rng)};
    const Eigen::HouseholderQR<Eigen::Matrix2cd> qr(z);
    Eigen::Matrix2cd q = qr.householderQ();
    const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < 2; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));

    Eigen::Matrix4d s;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const std::complex<double> u = q(i, j);
            s.block<2, 2>(2 * i, 2 * j) << u.real(), -u.imag(), u.imag(), u.real();
        }
    return s;
}

}  // namespace

GaussianState random_state(std::mt19937_64& rng, double nu_max, double squeeze_max,
                           double* nu1_out, double* nu2_out) {
    std::uniform_real_distribution<double> unu(1.0, nu_max);
    std::uniform_real_distribution<double> ur(0.0, squeeze_max);
    const double nu1 = nu_max > 1.0 ? unu(rng) : 1.0;
    const double nu2 = nu_max > 1.0 ? unu(rng) : 1.0;
    const double r1 = ur(rng), r2 = ur(rng);

    Eigen::Matrix4d sq = Eigen::Matrix4d::Identity();
    sq.diagonal() << std::exp(-r1), std::exp(r1), std::exp(-r2), std::exp(r2);
    const Eigen::Matrix4d s = random_passive(rng) * sq * random_passive(rng);

    Eigen::Vector4d nu;
    nu << nu1, nu1, nu2, nu2;
    const Eigen::Matrix4d cov = s * nu.asDiagonal() * s.transpose();
    if (nu1_out) *nu1_out = nu1;
    if (nu2_out) *nu2_out = nu2;
    return {Eigen::VectorXd::Zero(4), 0.5 * (cov + cov.transpose())};
}

namespace {

ScatterRecord make_record(const SamplerSpec& spec, int index) {
    const std::uint64_t stream = splitmix64(spec.seed ^ splitmix64(index + 1));
    std::mt19937_64 rng(stream);
    ScatterRecord rec;
    rec.index = index;
    const GaussianState state =
        random_state(rng, spec.nu_max, spec.squeeze_max, &rec.nu1, &rec.nu2);
    rec.report = correlation_report(state, spec.with_mid ? spec.n_max : 0, stream);
    return rec;
}

}  // namespace

std::vector<ScatterRecord> scatter_serial(const SamplerSpec& spec) {
    spec.validate();
    std::vector<ScatterRecord> out(spec.count);
    for (int i = 0; i < spec.count; ++i) out[i] = make_record(spec, i);
    return out;
}

std::vector<ScatterRecord> scatter(const SamplerSpec& spec) {
    spec.validate();
    std::vector<ScatterRecord> out(spec.count);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < spec.count; ++i) out[i] = make_record(spec, i);
    return out;
}

}  // namespace cvcorr
