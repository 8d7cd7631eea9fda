#pragma once

#include <span>
#include <vector>

#include "ecca/bounds.hpp"

namespace ecca::optimizer {

// The per-column counting objective f_{t,v} on the ordered simplex
// 1 = x_1 >= x_2 >= ... >= x_{t-1} >= 0, in its two printed forms. Both use
// the conventions 0^0 = 1 and 0 * log 0 = 0 and agree on the whole simplex.
// `x` has t-1 entries with x[0] == 1 (a dummy coordinate).
double f_product_form(int t, int v, std::span<const double> x);
double f_entropy_form(int t, int v, std::span<const double> x);

// Analytic gradient d f / d x_i for the free coordinates x_2..x_{t-1}
// (size t-2, log2 scale). Requires an interior point: 1 > x_2 > ... > 0.
std::vector<double> f_gradient(int t, int v, std::span<const double> x);

struct FPoint {
    std::vector<double> x;  // x[0] = 1
    double f = 0.0;
    double gradient_norm = 0.0;
};

struct OptResult {
    FPoint best;
    int restarts = 0;
    int converged_restarts = 0;
    double spread = 0.0;  // max-min of converged restart values
    bool converged = false;
};

// Multi-start maximization of f_{t,v} over the ordered simplex, using
// projected gradient ascent on the monotone chain x_{i+1} = x_i * s_i with
// s_i in [0,1], followed by a Newton polish on the interior coordinates.
// Deterministic: scrambled quasi-random starts with fixed seeds. Reports
// non-convergence instead of silently returning a bad point.
OptResult maximize_f(int t, int v, int restarts = 64, double tolerance = 1e-10);

// d(t,v) <= (t-1) v / ((t-1) log2(v^v/(v-1)^(v-1)) - f0). A non-positive
// denominator makes the bound vacuous; the result value is +inf then.
bounds::BoundResult d_bound_from_f0(int t, int v, double f0);

}  // namespace ecca::optimizer
