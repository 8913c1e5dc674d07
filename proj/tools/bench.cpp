// Serial vs OpenMP comparison for the two hot kernels: the Gauss-Hermite
// photon-number quadrature and the random-state scatter sweep.

#include "cvcorr/mid.hpp"
#include "cvcorr/random_states.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>

using namespace cvcorr;

namespace {

template <typename F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", omp_get_max_threads());

    const GaussianState s = GaussianState::tmsv(0.8);
    const int n_max = 30;
    Eigen::MatrixXd a, b;
    const double t_serial =
        time_ms([&] { a = photon_number_distribution_serial(s, n_max); });
    const double t_par = time_ms([&] { b = photon_number_distribution(s, n_max); });
    std::printf("photon distribution n_max=%d: serial %.1f ms, parallel %.1f ms, "
                "speedup %.2fx, max|diff| %.1e\n",
                n_max, t_serial, t_par, t_serial / t_par,
                (a - b).cwiseAbs().maxCoeff());

    SamplerSpec spec;
    spec.count = 64;
    spec.seed = 1;
    spec.n_max = 20;
    std::vector<ScatterRecord> r1, r2;
    const double sc_serial = time_ms([&] { r1 = scatter_serial(spec); });
    const double sc_par = time_ms([&] { r2 = scatter(spec); });
    bool identical = true;
    for (std::size_t i = 0; i < r1.size(); ++i)
        identical = identical &&
                    r1[i].report.mutual_info == r2[i].report.mutual_info &&
                    r1[i].report.mid == r2[i].report.mid;
    std::printf("scatter n=%d: serial %.1f ms, parallel %.1f ms, speedup %.2fx, "
                "identical: %s\n",
                spec.count, sc_serial, sc_par, sc_serial / sc_par,
                identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
