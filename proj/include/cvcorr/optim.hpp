#pragma once

#include <functional>
#include <vector>

namespace cvcorr {

struct NelderMeadResult {
    std::vector<double> x;
    double value;
    int evaluations;
};

// Derivative-free simplex minimization; deterministic for a given start.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, double step = 0.5,
                             double ftol = 1e-10, int max_iter = 2000);

// Runs one Nelder-Mead per start and keeps the best minimum.
NelderMeadResult multistart_nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<std::vector<double>>& starts, double step = 0.5,
    double ftol = 1e-10, int max_iter = 2000);

struct GoldenResult {
    double x;
    double value;
    bool bracketed;  // false when the minimum sat on an interval boundary
};

GoldenResult golden_section(const std::function<double(double)>& f, double lo,
                            double hi, double tol = 1e-8);

}  // namespace cvcorr
