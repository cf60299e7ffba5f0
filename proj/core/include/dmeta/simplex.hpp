#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace dmeta {

// Result of an exponentiated-gradient minimization over the probability
// simplex.
struct SimplexResult {
    std::vector<double> z;
    double objective = 0.0;
    double grad_map_norm = 0.0;
    int iterations = 0;
};

// Objective callback: returns the value at z and fills grad (same length).
using SimplexObjective =
    std::function<double(const std::vector<double>& z, std::vector<double>& grad)>;

// Minimizes a convex objective over {z >= 0, sum z = 1} by exponentiated
// gradient with backtracking step-size. Stops when the unit-step gradient
// mapping has l1 norm below tol or after max_iters iterations.
SimplexResult minimize_on_simplex(const SimplexObjective& objective, std::vector<double> z0,
                                  double tol = 1e-9, int max_iters = 100000);

}  // namespace dmeta
