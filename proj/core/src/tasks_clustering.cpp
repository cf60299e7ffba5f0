#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dmeta/tasks.hpp"

namespace dmeta {

namespace {

double sq_dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    double dx = a[0] - b[0], dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

// d^alpha with the d == 0 limit pinned to 0 for every alpha >= 0, so an
// already-selected point is never re-drawn.
double dist_pow(double d, double alpha) {
    return (d > 0.0) ? std::exp(alpha * std::log(d)) : 0.0;
}

// Index drawn by inverse CDF over probabilities proportional to
// dists[j]^alpha, using the shared uniform u.
int alpha_choice(const std::vector<double>& dists, double alpha, double u) {
    std::vector<double> w(dists.size());
    double total = 0.0;
    for (std::size_t j = 0; j < dists.size(); ++j) {
        w[j] = dist_pow(dists[j], alpha);
        total += w[j];
    }
    if (!(total > 0.0))
        throw std::invalid_argument("lloyd seeding: all candidate distances are zero");
    double acc = 0.0;
    for (std::size_t j = 0; j < dists.size(); ++j) {
        acc += w[j];
        if (acc / total >= u) return static_cast<int>(j);
    }
    return static_cast<int>(dists.size()) - 1;
}

std::vector<double> min_dists(const ClusterDataset& data, const std::vector<int>& centers) {
    std::vector<double> d(data.points.size());
    for (std::size_t j = 0; j < data.points.size(); ++j) {
        double best = 1e300;
        for (int c : centers)
            best = std::min(best, sq_dist(data.points[j], data.points[c]));
        d[j] = std::sqrt(best);
    }
    return d;
}

}  // namespace

ClusterDataset gaussian_mixture_gen(double d, double sigma, Rng& rng) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_mixture_gen: sigma <= 0");
    if (d < 2.0 || d > 3.0) throw std::invalid_argument("gaussian_mixture_gen: d outside [2, 3]");
    ClusterDataset out;
    out.k = 2;
    const double sx = std::sqrt(sigma);
    const double sy = std::sqrt(2.0 * sigma);
    for (int cls = 0; cls < 2; ++cls) {
        double cx = (cls == 0) ? 0.0 : d * sigma;
        for (int i = 0; i < 100; ++i) {
            out.points.push_back({cx + rng.gauss(0.0, sx), rng.gauss(0.0, sy)});
            out.truth.push_back(cls);
        }
    }
    return out;
}

double hamming_loss(const std::vector<int>& pred, const std::vector<int>& truth, int k) {
    if (k > 8) throw std::invalid_argument("hamming_loss: k > 8");
    if (pred.size() != truth.size()) throw std::invalid_argument("hamming_loss: size mismatch");
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    int best = static_cast<int>(pred.size());
    do {
        int mism = 0;
        for (std::size_t i = 0; i < pred.size(); ++i)
            if (perm[pred[i]] != truth[i]) ++mism;
        best = std::min(best, mism);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(pred.size());
}

std::vector<int> lloyd_seed_centers(const ClusterDataset& data, double alpha,
                                    const std::vector<double>& shared_u) {
    if (static_cast<int>(shared_u.size()) != data.k)
        throw std::invalid_argument("lloyd_seed_centers: need one uniform per center");
    std::vector<int> centers;
    const std::size_t n = data.points.size();
    // First center: uniform over points, alpha-independent.
    std::vector<double> ones(n, 1.0);
    centers.push_back(alpha_choice(ones, 0.0, shared_u[0]));
    for (int i = 1; i < data.k; ++i)
        centers.push_back(alpha_choice(min_dists(data, centers), alpha, shared_u[i]));
    return centers;
}

double lloyd_loss_for_centers(const ClusterDataset& data, const std::vector<int>& centers) {
    std::vector<int> assign(data.points.size());
    for (std::size_t j = 0; j < data.points.size(); ++j) {
        int best = 0;
        double bestd = sq_dist(data.points[j], data.points[centers[0]]);
        for (std::size_t c = 1; c < centers.size(); ++c) {
            double dd = sq_dist(data.points[j], data.points[centers[c]]);
            if (dd < bestd) {
                bestd = dd;
                best = static_cast<int>(c);
            }
        }
        assign[j] = best;
    }
    return hamming_loss(assign, data.truth, data.k);
}

double lloyd_direct_loss(const ClusterDataset& data, double alpha,
                         const std::vector<double>& shared_u) {
    return lloyd_loss_for_centers(data, lloyd_seed_centers(data, alpha, shared_u));
}

namespace {

constexpr int kScanGrid = 1 << 10;
constexpr double kAlphaTol = 1e-9;

struct CellSink {
    std::vector<double> bps;
    std::vector<double> vals;
    void emit(double lo, double hi, double v) {
        if (bps.empty()) bps.push_back(lo);
        bps.push_back(hi);
        vals.push_back(v);
    }
};

// Recursively splits [lo, hi] into maximal subintervals on which the whole
// seeding path is constant, then emits the assignment loss per subinterval.
void build_cells(const ClusterDataset& data, const std::vector<double>& u, double lo, double hi,
                 std::vector<int>& centers, CellSink& sink) {
    const int step = static_cast<int>(centers.size());
    if (step == data.k) {
        sink.emit(lo, hi, lloyd_loss_for_centers(data, centers));
        return;
    }
    std::vector<double> dists = min_dists(data, centers);
    auto choice = [&](double a) { return alpha_choice(dists, a, u[step]); };

    double cursor = lo;
    int cur = choice(lo);
    for (int gi = 1; gi <= kScanGrid; ++gi) {
        double a = lo + (hi - lo) * gi / kScanGrid;
        int c = choice(a);
        if (c == cur && gi < kScanGrid) continue;
        if (c != cur) {
            // Bisect the crossing between the previous grid point and a.
            double left = lo + (hi - lo) * (gi - 1) / kScanGrid;
            double right = a;
            while (right - left > kAlphaTol) {
                double mid = 0.5 * (left + right);
                if (choice(mid) == cur)
                    left = mid;
                else
                    right = mid;
            }
            if (right > cursor) {
                centers.push_back(cur);
                build_cells(data, u, cursor, right, centers, sink);
                centers.pop_back();
            }
            cursor = right;
            cur = choice(right);
        }
        if (gi == kScanGrid && hi > cursor) {
            centers.push_back(cur);
            build_cells(data, u, cursor, hi, centers, sink);
            centers.pop_back();
        }
    }
}

}  // namespace

PiecewiseConstant lloyd_seed_loss(const ClusterDataset& data, const Interval& alpha_domain,
                                  const std::vector<double>& shared_u) {
    if (alpha_domain.lo < 0.0 || alpha_domain.hi > 10.0)
        throw std::invalid_argument("lloyd_seed_loss: alpha domain outside [0, 10]");
    if (static_cast<int>(shared_u.size()) != data.k)
        throw std::invalid_argument("lloyd_seed_loss: need one uniform per center");
    CellSink sink;
    std::vector<int> centers;
    centers.push_back(lloyd_seed_centers(data, alpha_domain.lo, shared_u)[0]);
    build_cells(data, shared_u, alpha_domain.lo, alpha_domain.hi, centers, sink);
    return PiecewiseConstant(std::move(sink.bps), std::move(sink.vals)).normalized();
}

}  // namespace dmeta
