#include "dmeta/ftrl.hpp"

#include <cmath>
#include <stdexcept>

#include "dmeta/simplex.hpp"

namespace dmeta {

namespace {

// Contiguous cell index range [first, last] covered by a ball.
struct BallSpan {
    std::size_t first = 0;
    std::size_t last = 0;
};

std::vector<BallSpan> ball_spans(const BallHistory& history, const CellPartition& partition) {
    std::vector<BallSpan> spans;
    spans.reserve(history.balls.size());
    for (const Interval& b : history.balls) {
        std::vector<int> ind = indicator_vector(partition, b);
        BallSpan span;
        bool seen = false;
        for (std::size_t k = 0; k < ind.size(); ++k) {
            if (!ind[k]) continue;
            if (!seen) span.first = k;
            span.last = k;
            seen = true;
        }
        if (!seen) throw std::invalid_argument("ftrl_update: ball covers no cell");
        spans.push_back(span);
    }
    return spans;
}

double span_sum(const std::vector<double>& w, const BallSpan& s) {
    double total = 0.0;
    for (std::size_t k = s.first; k <= s.last; ++k) total += w[k];
    return total;
}

}  // namespace

std::vector<double> uniform_reference(const CellPartition& partition) {
    const double vol = partition.domain().width();
    std::vector<double> v(partition.cell_count());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = partition.cell_width(k) / vol;
    return v;
}

double ftrl_objective(const BallHistory& history, const CellPartition& partition,
                      const std::vector<double>& probs, double eta) {
    std::vector<double> vhat = uniform_reference(partition);
    std::vector<BallSpan> spans = ball_spans(history, partition);
    double kl = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k)
        if (probs[k] > 0.0) kl += probs[k] * std::log(probs[k] / vhat[k]);
    double losses = 0.0;
    for (const BallSpan& s : spans) {
        double dot = span_sum(probs, s);
        if (!(dot > 0.0)) return 1e300;
        losses += -std::log(dot);
    }
    return kl + eta * losses;
}

CellDistribution ftrl_update(const BallHistory& history, const CellPartition& partition,
                             double gamma, double eta) {
    if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("ftrl_update: gamma outside [0, 1]");
    if (!(eta > 0.0)) throw std::invalid_argument("ftrl_update: eta must be positive");
    std::vector<double> vhat = uniform_reference(partition);

    // With no history or gamma = 1 the minimizer is the reference measure.
    if (history.balls.empty() || gamma == 1.0)
        return CellDistribution{partition, vhat, gamma};

    std::vector<BallSpan> spans = ball_spans(history, partition);
    const std::size_t n = vhat.size();
    const double residual = 1.0 - gamma;

    auto objective = [&](const std::vector<double>& z, std::vector<double>& grad) {
        double value = 0.0;
        std::vector<double> w(n);
        for (std::size_t k = 0; k < n; ++k) {
            w[k] = gamma * vhat[k] + residual * z[k];
            value += w[k] * std::log(w[k] / vhat[k]);
            grad[k] = residual * (std::log(w[k] / vhat[k]) + 1.0);
        }
        for (const BallSpan& s : spans) {
            double dot = span_sum(w, s);
            value += eta * -std::log(dot);
            double coeff = residual * eta / dot;
            for (std::size_t k = s.first; k <= s.last; ++k) grad[k] -= coeff;
        }
        return value;
    };

    SimplexResult sol = minimize_on_simplex(objective, vhat);
    std::vector<double> probs(n);
    for (std::size_t k = 0; k < n; ++k) probs[k] = gamma * vhat[k] + residual * sol.z[k];
    return CellDistribution{partition, std::move(probs), gamma};
}

Density to_density(const CellDistribution& dist) {
    std::vector<double> bps = dist.partition.breakpoints();
    std::vector<double> vals(dist.probs.size());
    for (std::size_t k = 0; k < vals.size(); ++k)
        vals[k] = dist.probs[k] / dist.partition.cell_width(k);
    return Density(PiecewiseConstant(std::move(bps), std::move(vals))).normalized();
}

TheoryFtrlParams theory_ftrl_params(const BallHistory& history, double B) {
    if (history.balls.empty()) throw std::invalid_argument("theory_ftrl_params: empty history");
    if (!(B > 0.0)) throw std::invalid_argument("theory_ftrl_params: B must be positive");
    const double T = static_cast<double>(history.balls.size());
    double g2 = 0.0;
    for (const Interval& b : history.balls) g2 += 1.0 / (b.width() * b.width());
    g2 /= T;
    const double G = std::sqrt(g2);
    TheoryFtrlParams p;
    double gamma2 = G * B / std::sqrt(T);
    p.gamma = std::sqrt(gamma2);
    if (p.gamma > 0.5) {
        p.gamma = 0.5;
        p.gamma_capped = true;
    }
    p.eta = std::sqrt(B * B * p.gamma * p.gamma / (T * g2));
    return p;
}

}  // namespace dmeta
