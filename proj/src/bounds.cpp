#include "ecca/bounds.hpp"

#include <cmath>
#include <gmpxx.h>
#include <limits>
#include <stdexcept>

#include "ecca/counting.hpp"
#include "ecca/optimizer.hpp"

namespace ecca::bounds {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

double entropy_h(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("entropy_h: x outside [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -(x * std::log2(x)) - (1.0 - x) * std::log2(1.0 - x);
}

double log_prefactor_l(int v) {
    if (v < 2) throw std::invalid_argument("prefactor: v must be >= 2");
    return 15.0 / 16.0 - 0.5 * std::log(2.0 * M_PI) + (v - 1) * std::log((v - 1.0) / v);
}

double prefactor_l(int v) { return std::exp(log_prefactor_l(v)); }

double prefactor_u(int v) {
    if (v < 2) throw std::invalid_argument("prefactor: v must be >= 2");
    return std::exp(-0.5 * std::log(2.0 * M_PI) + 0.5 * std::log(v / (v - 1.0)));
}

double BinomialEstimate::lower() const { return std::exp(log_lower); }
double BinomialEstimate::upper() const { return std::exp(log_upper); }

BinomialEstimate binom_bounds(std::int64_t m, int v) {
    if (m < 2 || v < 2) throw std::invalid_argument("binom_bounds: requires m >= 2 and v >= 2");
    const double md = static_cast<double>(m);
    const double core = -0.5 * std::log(md) + v * md * std::log(v) - (v - 1) * md * std::log(v - 1.0);
    return BinomialEstimate{log_prefactor_l(v) + core,
                            -0.5 * std::log(2.0 * M_PI) + 0.5 * std::log(v / (v - 1.0)) + core};
}

double q_min(double c1, int t) {
    if (!(c1 > 1.0)) throw std::invalid_argument("q_min: requires c1 > 1");
    if (t < 2) throw std::invalid_argument("q_min: requires t >= 2");
    const double xstar = std::pow((t - 1) * c1, -1.0 / t);
    if (xstar > 1.0) return 1.0 + c1;  // unreachable for c1 > 1, kept as a guard
    return t / (t - 1.0) * std::pow(t - 1.0, 1.0 / t) * std::pow(c1, 1.0 / t);
}

bool existence_predicate(const CAParams& p, double c1) {
    if (!(c1 > 0.0) || !std::isfinite(c1))
        throw std::invalid_argument("existence_predicate: c1 must be positive and finite");
    // (t/(t-1))^t (t-1) c1 < |I|^t  <=>  t^t c1 < (t-1)^(t-1) |I|^t, exactly.
    mpz_class tt, t1;
    mpz_ui_pow_ui(tt.get_mpz_t(), static_cast<unsigned long>(p.t), static_cast<unsigned long>(p.t));
    mpz_ui_pow_ui(t1.get_mpz_t(), static_cast<unsigned long>(p.t - 1),
                  static_cast<unsigned long>(p.t - 1));
    const mpz_class size = balanced_column_count(p);
    mpz_class rhs;
    mpz_pow_ui(rhs.get_mpz_t(), size.get_mpz_t(), static_cast<unsigned long>(p.t));
    const mpq_class lhs = mpq_class(tt) * mpq_class(c1);
    return lhs < mpq_class(t1 * rhs);
}

std::string method_name(BoundMethod m) {
    switch (m) {
        case BoundMethod::LllClassic: return "lll-classic";
        case BoundMethod::EcGeneral: return "ec-general";
        case BoundMethod::EcT2: return "ec-t2";
        case BoundMethod::EcT3: return "ec-t3";
        case BoundMethod::EcOptimized: return "ec-optimized";
    }
    return "?";
}

BoundResult d_bound_lll_classic(int t, int v) {
    if (t < 2 || v < 2) throw std::invalid_argument("d_bound: requires t, v >= 2");
    // log2(v^t/(v^t-1)) = -log1p(-v^-t)/ln 2
    const double p = std::exp(-t * std::log(static_cast<double>(v)));
    const double denom = -std::log1p(-p) / kLn2;
    return BoundResult{(t - 1) / denom, BoundMethod::LllClassic, t, v, std::nullopt};
}

BoundResult d_bound_ec_general(int t, int v) {
    if (t < 2 || v < 2) throw std::invalid_argument("d_bound: requires t, v >= 2");
    const double p = std::exp(-(t - 1) * std::log(static_cast<double>(v)));
    const double denom = -std::log1p(-p) / kLn2;
    return BoundResult{v * (t - 1) / denom, BoundMethod::EcGeneral, t, v, std::nullopt};
}

BoundResult d_bound_t2(int v) {
    if (v < 2) throw std::invalid_argument("d_bound_t2: requires v >= 2");
    if (v == 2) return BoundResult{1.0, BoundMethod::EcT2, 2, 2, std::nullopt};
    const double denom =
        (v * std::log(static_cast<double>(v)) + (v - 2) * std::log(v - 2.0) -
         2.0 * (v - 1) * std::log(v - 1.0)) /
        kLn2;
    return BoundResult{v / denom, BoundMethod::EcT2, 2, v, std::nullopt};
}

double xi_t3(int v) {
    if (v < 2) throw std::invalid_argument("xi_t3: requires v >= 2");
    const double vd = v;
    return 0.5 * (1.0 + vd - std::sqrt(vd * vd + 2.0 * vd - 3.0));
}

BoundResult d_bound_t3(int v) {
    const double xi = xi_t3(v);
    const double x[2] = {1.0, xi};
    const double f0 = optimizer::f_product_form(3, v, std::span<const double>(x, 2));
    BoundResult r = optimizer::d_bound_from_f0(3, v, f0);
    r.method = BoundMethod::EcT3;
    r.certificate = OptCertificate{{1.0, xi}, f0, 0.0, 0.0};
    return r;
}

}  // namespace ecca::bounds
