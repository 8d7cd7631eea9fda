#include "ecca/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "ecca/bounds.hpp"
#include "ecca/combinatorics.hpp"
#include "ecca/counting.hpp"
#include "ecca/coverage.hpp"
#include "ecca/optimizer.hpp"

namespace ecca::predictor {
namespace {

constexpr double kLn2 = 0.6931471805599453;

void check_tv(int t, int v) {
    if (t < 2 || v < 2) throw std::invalid_argument("predictor: requires t, v >= 2");
}

double ln_head(int t) { return t * (std::log(static_cast<double>(t)) - std::log(t - 1.0)) + std::log(t - 1.0); }

std::int64_t scan_floor(int t, int v) {
    double f = std::pow(static_cast<double>(v), t - 2);
    return std::max<std::int64_t>(2, static_cast<std::int64_t>(f));
}

}  // namespace

std::string route_name(Route r) { return r == Route::General ? "general" : "optimized"; }

double ln_rhs_general(int t, double log2_k, int v, std::int64_t m) {
    check_tv(t, v);
    if (m < 2) throw std::invalid_argument("rhs_general: requires m >= 2");
    double sum_log_l = 0.0;
    for (int i = 2; i <= v; ++i) sum_log_l += bounds::log_prefactor_l(i);
    const double ln_m_coeff = (v - 1) * (t - 1) / 2.0;
    const double p = std::exp(-(t - 1) * std::log(static_cast<double>(v)));
    return ln_head(t) + t * std::log(static_cast<double>(v)) + (1 - t) * sum_log_l +
           (t - 1) * log2_k * kLn2 + ln_m_coeff * std::log(static_cast<double>(m)) +
           m * std::log1p(-p);
}

double rhs_general(int t, std::int64_t k, int v, std::int64_t m) {
    if (k < t) throw std::invalid_argument("rhs_general: requires k >= t");
    return std::exp(ln_rhs_general(t, std::log2(static_cast<double>(k)), v, m));
}

double ln_rhs_optimized(int t, double log2_k, int v, std::int64_t m, double f0) {
    check_tv(t, v);
    if (m < 2) throw std::invalid_argument("rhs_optimized: requires m >= 2");
    const double ln_base =
        f0 * kLn2 - (t - 1) * (v * std::log(static_cast<double>(v)) - (v - 1) * std::log(v - 1.0));
    if (ln_base >= 0.0)
        throw VacuousBoundError("rhs_optimized: the m-power base is >= 1; no m can certify");
    return ln_head(t) + ((t - 1) / 2.0) * std::log(static_cast<double>(m)) -
           (t - 1) * bounds::log_prefactor_l(v) + (t - 1) * log2_k * kLn2 + m * ln_base;
}

double rhs_optimized(int t, std::int64_t k, int v, std::int64_t m, double f0) {
    if (k < t) throw std::invalid_argument("rhs_optimized: requires k >= t");
    return std::exp(ln_rhs_optimized(t, std::log2(static_cast<double>(k)), v, m, f0));
}

double f0_for(int t, int v) {
    check_tv(t, v);
    if (t == 2) {
        const double x[1] = {1.0};
        return optimizer::f_product_form(2, v, std::span<const double>(x, 1));
    }
    if (t == 3) {
        const double x[2] = {1.0, bounds::xi_t3(v)};
        return optimizer::f_product_form(3, v, std::span<const double>(x, 2));
    }
    const optimizer::OptResult r = optimizer::maximize_f(t, v);
    if (!r.converged) throw std::runtime_error("f0_for: optimizer did not converge");
    return r.best.f;
}

Prediction smallest_m_log2k(int t, double log2_k, int v, Route route, double f0) {
    check_tv(t, v);
    auto ln_rhs = [&](std::int64_t m) {
        return route == Route::General ? ln_rhs_general(t, log2_k, v, m)
                                       : ln_rhs_optimized(t, log2_k, v, m, f0);
    };
    const std::int64_t floor_m = scan_floor(t, v);
    Prediction pred{t, 0, v, route, 0, 0, 0.0, std::numeric_limits<double>::quiet_NaN(),
                    route == Route::General ? std::numeric_limits<double>::quiet_NaN() : f0};
    std::int64_t m;
    if (ln_rhs(floor_m) < 0.0) {
        m = floor_m;
    } else {
        // The rhs is unimodal in m (polynomial times decaying exponential),
        // so once it is >= 1 at the floor the sub-1 region is a final
        // segment and bisection applies.
        std::int64_t lo = floor_m, hi = floor_m * 2;
        while (ln_rhs(hi) >= 0.0) {
            lo = hi;
            if (hi > (std::int64_t{1} << 60)) throw std::runtime_error("smallest_m: no finite m found");
            hi *= 2;
        }
        while (hi - lo > 1) {
            const std::int64_t mid = lo + (hi - lo) / 2;
            if (ln_rhs(mid) < 0.0)
                hi = mid;
            else
                lo = mid;
        }
        m = hi;
    }
    pred.m = m;
    pred.rows = m * v;
    pred.ln_rhs_at_m = ln_rhs(m);
    if (m > floor_m) {
        pred.ln_rhs_at_prev = ln_rhs(m - 1);
        if (pred.ln_rhs_at_prev < 0.0)
            throw std::logic_error("smallest_m: certificate violated at m-1");
    }
    if (pred.ln_rhs_at_m >= 0.0) throw std::logic_error("smallest_m: certificate violated at m");
    return pred;
}

Prediction smallest_m(int t, std::int64_t k, int v, Route route, double f0) {
    if (k < t) throw std::invalid_argument("smallest_m: requires k >= t");
    Prediction p = smallest_m_log2k(t, std::log2(static_cast<double>(k)), v, route, f0);
    p.k = k;
    return p;
}

Prediction smallest_m(int t, std::int64_t k, int v, Route route) {
    return smallest_m(t, k, v, route,
                      route == Route::General ? std::numeric_limits<double>::quiet_NaN()
                                              : f0_for(t, v));
}

std::vector<CurvePoint> figure_curve(int t, int v, std::span<const std::int64_t> ks, Route route,
                                     int threads) {
    check_tv(t, v);
    for (std::size_t i = 0; i + 1 < ks.size(); ++i)
        if (ks[i + 1] < ks[i]) throw std::invalid_argument("figure_curve: k values must ascend");
    const double f0 = route == Route::Optimized ? f0_for(t, v)
                                                : std::numeric_limits<double>::quiet_NaN();
    std::vector<CurvePoint> out(ks.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Prediction p = smallest_m(t, ks[i], v, route, f0);
            out[i] = CurvePoint{ks[i], p.rows};
        }
    };
    threads = std::max(1, std::min<int>(threads, static_cast<int>(ks.size())));
    if (threads == 1) {
        work(0, ks.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (ks.size() + threads - 1) / threads;
        for (int th = 0; th < threads; ++th) {
            const std::size_t b = th * chunk;
            if (b >= ks.size()) break;
            pool.emplace_back(work, b, std::min(ks.size(), b + chunk));
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

std::string curve_csv(int t, int v, std::span<const CurvePoint> points, Route route) {
    std::ostringstream os;
    os << "k,N,route,t,v\n";
    for (const CurvePoint& p : points)
        os << p.k << ',' << p.rows << ',' << route_name(route) << ',' << t << ',' << v << '\n';
    return os.str();
}

PartialArray juxtapose_t2(int v, int k) {
    if (v < 2 || k < 2) throw std::invalid_argument("juxtapose_t2: requires v >= 2 and k >= 2");
    // smallest N with k <= C(N-1, ceil(N/2))
    int n2 = 2;
    while (binomial_exact(static_cast<unsigned long>(n2 - 1),
                          static_cast<unsigned long>((n2 + 1) / 2)) < k)
        ++n2;
    const int ones = (n2 + 1) / 2;

    std::vector<Column> binary_cols;
    binary_cols.reserve(static_cast<std::size_t>(k));
    for_each_subset_colex(n2 - 1, ones, [&](std::span<const int> rows) -> bool {
        Column c(static_cast<std::size_t>(n2), 0);
        for (int r : rows) c[static_cast<std::size_t>(r) + 1] = 1;
        binary_cols.push_back(std::move(c));
        return static_cast<int>(binary_cols.size()) < k;
    });

    const std::int64_t copies = static_cast<std::int64_t>(v) * (v - 1) / 2;
    PartialArray out(ArrayShape{2, k, v, copies * n2});
    std::vector<Column> stacked(static_cast<std::size_t>(k),
                                Column(static_cast<std::size_t>(copies * n2), 0));
    std::int64_t offset = 0;
    for_each_subset_colex(v, 2, [&](std::span<const int> pair) {
        const Symbol relabel[2] = {static_cast<Symbol>(pair[0]), static_cast<Symbol>(pair[1])};
        for (int c = 0; c < k; ++c)
            for (int r = 0; r < n2; ++r)
                stacked[c][offset + r] = relabel[binary_cols[c][r]];
        offset += n2;
    });
    for (int c = 0; c < k; ++c) out.set_column(c, std::move(stacked[c]));

    if (!verify_ca(out).is_covering_array())
        throw std::logic_error("juxtapose_t2: constructed array failed verification");
    return out;
}

double regression_slope(std::span<const CurvePoint> points) {
    if (points.size() < 2) throw std::invalid_argument("regression_slope: need at least 2 points");
    bool distinct = false;
    for (std::size_t i = 1; i < points.size() && !distinct; ++i)
        distinct = points[i].k != points[0].k;
    if (!distinct) throw std::invalid_argument("regression_slope: need at least 2 distinct k");
    double sx = 0, sy = 0;
    for (const CurvePoint& p : points) {
        sx += std::log2(static_cast<double>(p.k));
        sy += static_cast<double>(p.rows);
    }
    const double mx = sx / points.size(), my = sy / points.size();
    double sxx = 0, sxy = 0;
    for (const CurvePoint& p : points) {
        const double dx = std::log2(static_cast<double>(p.k)) - mx;
        sxx += dx * dx;
        sxy += dx * (static_cast<double>(p.rows) - my);
    }
    return sxy / sxx;
}

std::vector<SizeRecord> parse_sizes_csv(std::string_view text) {
    std::vector<SizeRecord> out;
    std::istringstream is{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (line == "t,k,v,N") continue;  // optional header row
        SizeRecord rec{};
        char c1, c2, c3;
        std::istringstream ls(line);
        if (!(ls >> rec.t >> c1 >> rec.k >> c2 >> rec.v >> c3 >> rec.rows) || c1 != ',' ||
            c2 != ',' || c3 != ',' || (ls >> std::ws, !ls.eof()))
            throw ParseError(lineno, "expected 't,k,v,N'");
        out.push_back(rec);
    }
    return out;
}

}  // namespace ecca::predictor
