#include "dmeta/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "dmeta/partition.hpp"
#include "dmeta/simplex.hpp"

namespace dmeta {

double neg_log_overlap(const Density& w, const Interval& ball) {
    Interval clipped = w.pc().domain().clip(ball);
    if (!(clipped.width() > 0.0))
        throw std::invalid_argument("neg_log_overlap: ball disjoint from domain");
    if (!(w.mass() > 0.0)) throw std::invalid_argument("neg_log_overlap: zero-mass density");
    double z = w.mass_in(clipped) / w.mass();
    if (!(z > 0.0)) return std::numeric_limits<double>::infinity();
    return -std::log(z);
}

TaskSimilarity task_similarity(const std::vector<Interval>& balls, const Interval& domain) {
    if (balls.empty()) throw std::invalid_argument("task_similarity: no balls");
    CellPartition partition(domain);
    std::vector<Interval> clipped;
    clipped.reserve(balls.size());
    for (const Interval& b : balls) {
        Interval c = domain.clip(b);
        if (!(c.width() > 0.0))
            throw std::invalid_argument("task_similarity: ball with empty clipped width");
        clipped.push_back(c);
        partition = refine(partition, c);
    }
    const std::size_t T = clipped.size();
    const std::size_t n = partition.cell_count();

    // Cells with the same ball-membership pattern are interchangeable for the
    // objective; solve over pattern groups.
    std::vector<std::vector<int>> membership(T);
    for (std::size_t t = 0; t < T; ++t) membership[t] = indicator_vector(partition, clipped[t]);
    std::map<std::vector<char>, int> group_of_signature;
    std::vector<int> group_of_cell(n);
    std::vector<double> group_width;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<char> sig(T);
        for (std::size_t t = 0; t < T; ++t) sig[t] = static_cast<char>(membership[t][k]);
        auto [it, inserted] = group_of_signature.try_emplace(sig, static_cast<int>(group_width.size()));
        if (inserted) group_width.push_back(0.0);
        group_of_cell[k] = it->second;
        group_width[it->second] += partition.cell_width(k);
    }
    const std::size_t g = group_width.size();
    std::vector<std::vector<int>> groups_in_ball(T);
    for (const auto& [sig, gi] : group_of_signature)
        for (std::size_t t = 0; t < T; ++t)
            if (sig[t]) groups_in_ball[t].push_back(gi);

    auto objective = [&](const std::vector<double>& z, std::vector<double>& grad) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double value = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            double mass = 0.0;
            for (int gi : groups_in_ball[t]) mass += z[gi];
            if (!(mass > 0.0)) return 1e300;
            value += -std::log(mass) / T;
            for (int gi : groups_in_ball[t]) grad[gi] -= 1.0 / (mass * T);
        }
        return value;
    };

    std::vector<double> z0(g);
    double vol = domain.width();
    for (std::size_t gi = 0; gi < g; ++gi) z0[gi] = group_width[gi] / vol;
    SimplexResult sol = minimize_on_simplex(objective, z0);

    std::vector<double> bps = partition.breakpoints();
    std::vector<double> vals(n);
    for (std::size_t k = 0; k < n; ++k) {
        int gi = group_of_cell[k];
        vals[k] = (group_width[gi] > 0.0) ? sol.z[gi] / group_width[gi] : 0.0;
    }
    TaskSimilarity out{sol.objective, std::sqrt(std::max(sol.objective, 0.0)),
                       Density(PiecewiseConstant(std::move(bps), std::move(vals))).normalized()};
    return out;
}

DispersionReport dispersion_count(const std::vector<PiecewiseConstant>& losses, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("dispersion_count: epsilon must be positive");
    std::vector<double> points;
    for (const PiecewiseConstant& f : losses) {
        std::vector<double> d = f.discontinuities();
        points.insert(points.end(), d.begin(), d.end());
    }
    std::sort(points.begin(), points.end());
    DispersionReport report;
    report.epsilon = epsilon;
    report.total_discontinuities = static_cast<int>(points.size());
    report.windows_scanned = static_cast<int>(points.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (j < i) j = i;
        while (j + 1 < points.size() && points[j + 1] - points[i] <= epsilon) ++j;
        report.max_window_count =
            std::max(report.max_window_count, static_cast<int>(j - i + 1));
    }
    return report;
}

double task_averaged_regret(const std::vector<double>& regrets) {
    if (regrets.empty()) throw std::invalid_argument("task_averaged_regret: empty input");
    double s = 0.0;
    for (double r : regrets) s += r;
    return s / static_cast<double>(regrets.size());
}

}  // namespace dmeta
