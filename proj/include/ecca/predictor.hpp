#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ecca/params.hpp"

namespace ecca::predictor {

enum class Route { General, Optimized };
std::string route_name(Route r);

// Natural log of the general-route right-hand side
//   M(v,t) k^(t-1) m^((v-1)(t-1)/2) ((v^(t-1)-1)/v^(t-1))^m
// with M(v,t) = (t/(t-1))^t (t-1) v^t (prod_{i=2..v} l(i))^(1-t).
// k enters only through log2(k), so asymptotic sizes can be evaluated
// without materializing k.
double ln_rhs_general(int t, double log2_k, int v, std::int64_t m);
double rhs_general(int t, std::int64_t k, int v, std::int64_t m);

// Natural log of the optimized-route right-hand side
//   (t/(t-1))^t (t-1) m^((t-1)/2) / l(v)^(t-1) * k^(t-1)
//     * (2^f0 / (v^v/(v-1)^(v-1))^(t-1))^m.
// Throws VacuousBoundError when the m-power base is >= 1.
double ln_rhs_optimized(int t, double log2_k, int v, std::int64_t m, double f0);
double rhs_optimized(int t, std::int64_t k, int v, std::int64_t m, double f0);

struct Prediction {
    int t;
    std::int64_t k;
    int v;
    Route route;
    std::int64_t m;
    std::int64_t rows;        // N = m v
    double ln_rhs_at_m;       // < 0, certifies existence at m
    double ln_rhs_at_prev;    // >= 0 certifies minimality; NaN when m is the scan floor
    double f0;                // NaN on the general route
};

// Smallest m with rhs < 1, scanned upward from max(2, v^(t-2)) via
// exponential bracketing and binary search; the (m-1, m) certificate is what
// establishes correctness. The optimized route computes f0(t, v) itself
// unless an explicit value is supplied.
Prediction smallest_m(int t, std::int64_t k, int v, Route route);
Prediction smallest_m(int t, std::int64_t k, int v, Route route, double f0);
Prediction smallest_m_log2k(int t, double log2_k, int v, Route route, double f0);

// f0(t, v) for the optimized route: constant for t = 2, the closed-form
// maximizer for t = 3, multi-start optimization for t >= 4.
double f0_for(int t, int v);

struct CurvePoint {
    std::int64_t k;
    std::int64_t rows;
};

// (k, N) pairs with N = v * smallest_m, monotone non-decreasing in k.
// Points are independent; `threads` > 1 splits the k range, output order is
// fixed by the input order.
std::vector<CurvePoint> figure_curve(int t, int v, std::span<const std::int64_t> ks, Route route,
                                     int threads = 1);
std::string curve_csv(int t, int v, std::span<const CurvePoint> points, Route route);

// Strength-2 construction: a binary CA(N2; 2, k, 2) from the standard
// column family (first row all zero, columns are distinct ceil(N2/2)-subsets
// of the remaining rows; N2 is the smallest N with k <= C(N-1, ceil(N/2))),
// stacked once per 2-subset {a,b} of the alphabet with 0 -> a, 1 -> b.
// The result is verified before it is returned.
PartialArray juxtapose_t2(int v, int k);

// Ordinary least squares slope of N against log2 k.
double regression_slope(std::span<const CurvePoint> points);

struct SizeRecord {
    int t;
    std::int64_t k;
    int v;
    std::int64_t rows;
};

// "t,k,v,N" rows; '#' starts a comment.
std::vector<SizeRecord> parse_sizes_csv(std::string_view text);

}  // namespace ecca::predictor
