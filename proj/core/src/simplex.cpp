#include "dmeta/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmeta {

namespace {

// z <- z .* exp(-step * g), renormalized. Exponents are shifted by their
// maximum before exponentiation.
std::vector<double> eg_step(const std::vector<double>& z, const std::vector<double>& g,
                            double step) {
    std::vector<double> out(z.size());
    double emax = -1e300;
    for (std::size_t k = 0; k < z.size(); ++k) {
        double e = (z[k] > 0.0) ? std::log(z[k]) - step * g[k] : -1e300;
        out[k] = e;
        emax = std::max(emax, e);
    }
    double total = 0.0;
    for (double& e : out) {
        e = std::exp(std::max(e - emax, -745.0));
        total += e;
    }
    for (double& e : out) e /= total;
    return out;
}

double l1_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
    return s;
}

}  // namespace

SimplexResult minimize_on_simplex(const SimplexObjective& objective, std::vector<double> z0,
                                  double tol, int max_iters) {
    if (z0.empty()) throw std::invalid_argument("minimize_on_simplex: empty start");
    const std::size_t n = z0.size();
    double total = 0.0;
    for (double v : z0) {
        if (v < 0.0) throw std::invalid_argument("minimize_on_simplex: negative start");
        total += v;
    }
    if (!(total > 0.0)) throw std::invalid_argument("minimize_on_simplex: zero start");
    for (double& v : z0) v /= total;

    std::vector<double> z = std::move(z0);
    std::vector<double> grad(n), probe_grad(n);
    double fz = objective(z, grad);
    double step = 1.0;
    SimplexResult result;

    int it = 0;
    for (; it < max_iters; ++it) {
        std::vector<double> probe = eg_step(z, grad, 1.0);
        double gm = l1_diff(z, probe);
        if (gm < tol) {
            result.grad_map_norm = gm;
            break;
        }
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<double> cand = eg_step(z, grad, step);
            double fc = objective(cand, probe_grad);
            if (fc < fz) {
                z = std::move(cand);
                fz = fc;
                grad = probe_grad;
                step = std::min(step * 1.5, 1e6);
                accepted = true;
                break;
            }
            step *= 0.5;
            if (step < 1e-18) break;
        }
        if (!accepted) {
            result.grad_map_norm = l1_diff(z, eg_step(z, grad, 1.0));
            break;
        }
    }
    result.z = std::move(z);
    result.objective = fz;
    result.iterations = it;
    return result;
}

}  // namespace dmeta
