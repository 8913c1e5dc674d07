#include "cvcorr/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cvcorr {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, double step, double ftol,
                             int max_iter) {
    const int n = static_cast<int>(start.size());
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> simplex(n + 1, start);
    std::vector<double> fv(n + 1);
    for (int i = 0; i < n; ++i) simplex[i + 1][i] += step;
    for (int i = 0; i <= n; ++i) fv[i] = eval(simplex[i]);

    std::vector<int> order(n + 1);
    for (int iter = 0; iter < max_iter; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int best = order[0], worst = order[n], second = order[n - 1];
        if (std::abs(fv[worst] - fv[best]) <=
            ftol * (1.0 + std::abs(fv[best])))
            break;

        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i <= n; ++i)
            if (i != worst)
                for (int d = 0; d < n; ++d) centroid[d] += simplex[i][d] / n;

        auto mix = [&](double t) {
            std::vector<double> x(n);
            for (int d = 0; d < n; ++d)
                x[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
            return x;
        };

        auto reflected = mix(-1.0);
        double fr = eval(reflected);
        if (fr < fv[order[0]]) {
            auto expanded = mix(-2.0);
            double fe = eval(expanded);
            if (fe < fr) {
                simplex[worst] = std::move(expanded);
                fv[worst] = fe;
            } else {
                simplex[worst] = std::move(reflected);
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            simplex[worst] = std::move(reflected);
            fv[worst] = fr;
        } else {
            auto contracted = mix(fr < fv[worst] ? -0.5 : 0.5);
            double fc = eval(contracted);
            if (fc < std::min(fr, fv[worst])) {
                simplex[worst] = std::move(contracted);
                fv[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (int d = 0; d < n; ++d)
                        simplex[i][d] = 0.5 * (simplex[i][d] + simplex[best][d]);
                    fv[i] = eval(simplex[i]);
                }
            }
        }
    }
    int best = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    return {simplex[best], fv[best], evals};
}

NelderMeadResult multistart_nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<std::vector<double>>& starts, double step, double ftol,
    int max_iter) {
    NelderMeadResult best{{}, std::numeric_limits<double>::infinity(), 0};
    for (const auto& s : starts) {
        auto r = nelder_mead(f, s, step, ftol, max_iter);
        best.evaluations += r.evaluations;
        if (r.value < best.value) {
            best.value = r.value;
            best.x = std::move(r.x);
        }
    }
    return best;
}

GoldenResult golden_section(const std::function<double(double)>& f, double lo,
                            double hi, double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    const double x = (a + b) / 2.0;
    const double fx = f(x);
    const bool interior = x - lo > 2.0 * tol && hi - x > 2.0 * tol;
    return {x, fx, interior};
}

}  // namespace cvcorr
