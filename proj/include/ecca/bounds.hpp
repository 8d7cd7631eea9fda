#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecca/params.hpp"

namespace ecca::bounds {

// Binary entropy -x log2 x - (1-x) log2(1-x) with the 0*log 0 = 0
// convention at the endpoints. Throws outside [0, 1].
double entropy_h(double x);

// Prefactors of the binomial estimate around C(mv, m):
//   l(v) = e^(15/16)/sqrt(2 pi) * ((v-1)/v)^(v-1)
//   u(v) = 1/sqrt(2 pi) * (v/(v-1))^(1/2)
double prefactor_l(int v);
double prefactor_u(int v);
double log_prefactor_l(int v);

// Two-sided estimate l(v) m^(-1/2) v^(vm)/(v-1)^((v-1)m) < C(mv,m) < u(v) ...
// Requires m >= 2 and v >= 2; values are kept in natural-log space since the
// power terms overflow doubles quickly.
struct BinomialEstimate {
    double log_lower;  // natural log
    double log_upper;
    double lower() const;  // may overflow to +inf for large m
    double upper() const;
};
BinomialEstimate binom_bounds(std::int64_t m, int v);

// inf over 0 < x <= 1 of (1 + c1 x^t)/x. For c1 > 1 the interior stationary
// point x* = ((t-1) c1)^(-1/t) is always <= 1 and the infimum equals
// t/(t-1) * (t-1)^(1/t) * c1^(1/t); the x = 1 boundary value 1 + c1 is kept
// as a guard.
double q_min(double c1, int t);

// True iff (t/(t-1))^t (t-1) c1 < |I|^t. Decided exactly over rationals so
// the predicate is stable at thresholds; |I| comes from
// balanced_column_count.
bool existence_predicate(const CAParams& p, double c1);

enum class BoundMethod { LllClassic, EcGeneral, EcT2, EcT3, EcOptimized };
std::string method_name(BoundMethod m);

// Certificate attached to optimizer-backed bounds.
struct OptCertificate {
    std::vector<double> x;  // maximizer, x[0] = 1
    double f0;
    double gradient_norm;
    double spread;  // max-min of converged restart values
};

struct BoundResult {
    double value;  // upper bound on d(t, v); +inf when the bound is vacuous
    BoundMethod method;
    int t;
    int v;
    std::optional<OptCertificate> certificate;
};

// (t-1) / log2(v^t / (v^t - 1))
BoundResult d_bound_lll_classic(int t, int v);

// v (t-1) / log2(v^(t-1) / (v^(t-1) - 1))
BoundResult d_bound_ec_general(int t, int v);

// Strength 2 closed form: 1 for v = 2 (exact), otherwise
// v / log2(v^v (v-2)^(v-2) / (v-1)^(2(v-1))).
BoundResult d_bound_t2(int v);

// Closed-form maximizer of the single-variable strength-3 objective:
// xi = (1 + v - sqrt(v^2 + 2v - 3)) / 2.
double xi_t3(int v);

// Strength 3 bound evaluated at xi. Uses the objective in the form whose
// bases stay nonnegative for all v >= 2; the widely circulated single-line
// closed form has a (v-2-xi) base that goes negative at v = 2.
BoundResult d_bound_t3(int v);

}  // namespace ecca::bounds
