#include "ecca/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace ecca::optimizer {
namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kSimplexTol = 1e-12;
constexpr double kClamp = 1e-12;

// b * ln b with 0 * ln 0 = 0 (equivalently the 0^0 = 1 convention).
double plog(double b) {
    if (b < 0.0) {
        if (b > -1e-9) return 0.0;  // rounding dust from simplex arithmetic
        throw std::domain_error("f_{t,v}: negative base " + std::to_string(b));
    }
    if (b == 0.0) return 0.0;
    return b * std::log(b);
}

void check_point(int t, int v, std::span<const double> x) {
    if (t < 2 || v < 2) throw std::invalid_argument("f_{t,v}: requires t, v >= 2");
    if (static_cast<int>(x.size()) != t - 1)
        throw std::invalid_argument("f_{t,v}: point must have t-1 coordinates");
    if (std::abs(x[0] - 1.0) > kSimplexTol)
        throw std::invalid_argument("f_{t,v}: x_1 must equal 1");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (x[i + 1] > x[i] + kSimplexTol)
            throw std::invalid_argument("f_{t,v}: coordinates must be non-increasing");
    if (x.back() < -kSimplexTol) throw std::invalid_argument("f_{t,v}: coordinates must be >= 0");
}

}  // namespace

double f_product_form(int t, int v, std::span<const double> x) {
    check_point(t, v, x);
    const double y = x[t - 2];
    double val = plog(v - y) - plog(v - 1.0 - y) - plog(y);
    for (int i = 0; i + 1 <= t - 2; ++i) {
        const double a = x[i], b = x[i + 1];
        val += plog(v - a) - plog(v - 1.0 - a + b) - plog(std::max(a - b, 0.0)) - plog(1.0 - b);
    }
    return val / kLn2;
}

double f_entropy_form(int t, int v, std::span<const double> x) {
    check_point(t, v, x);
    double val = 0.0;
    for (int i = 2; i <= t - 1; ++i) {
        const double prev = x[i - 2], cur = x[i - 1];
        if (prev > 0.0) val += prev * bounds::entropy_h(std::clamp(cur / prev, 0.0, 1.0));
        val += (v - prev) * bounds::entropy_h(std::clamp((1.0 - cur) / (v - prev), 0.0, 1.0));
    }
    const double y = x[t - 2];
    val += (v - y) * bounds::entropy_h(1.0 / (v - y));
    return val;
}

namespace {

// Natural-log partials of the summand
//   S(a,b) = (v-a)ln(v-a) - (v-1-a+b)ln(v-1-a+b) - (a-b)ln(a-b) - (1-b)ln(1-b)
// and of the trailing term
//   T(y) = (v-y)ln(v-y) - (v-1-y)ln(v-1-y) - y ln y.
double dS_da(int v, double a, double b) {
    return -std::log(v - a) + std::log(v - 1.0 - a + b) - std::log(a - b) - 1.0;
}
double dS_db(int v, double a, double b) {
    return -std::log(v - 1.0 - a + b) + std::log(a - b) + std::log(1.0 - b) + 1.0;
}
double dT(int v, double y) {
    return -std::log(v - y) + std::log(v - 1.0 - y) - std::log(y) - 1.0;
}

std::vector<double> gradient_nat(int t, int v, std::span<const double> x) {
    std::vector<double> g(static_cast<std::size_t>(t - 2), 0.0);
    for (int j = 1; j <= t - 2; ++j) {  // free coordinate x[j] (paper's x_{j+1})
        double gj = dS_db(v, x[j - 1], x[j]);
        if (j <= t - 3)
            gj += dS_da(v, x[j], x[j + 1]);
        else
            gj += dT(v, x[j]);
        g[j - 1] = gj;
    }
    return g;
}

struct Tridiag {
    std::vector<double> diag, off;  // off[i] couples i and i+1
};

Tridiag hessian_nat(int t, int v, std::span<const double> x) {
    const int n = t - 2;
    Tridiag h{std::vector<double>(n, 0.0), std::vector<double>(n > 0 ? n - 1 : 0, 0.0)};
    auto S_aa = [v](double a, double b) {
        return 1.0 / (v - a) - 1.0 / (v - 1.0 - a + b) - 1.0 / (a - b);
    };
    auto S_ab = [v](double a, double b) { return 1.0 / (v - 1.0 - a + b) + 1.0 / (a - b); };
    auto S_bb = [v](double a, double b) {
        return -1.0 / (v - 1.0 - a + b) - 1.0 / (a - b) - 1.0 / (1.0 - b);
    };
    for (int j = 1; j <= n; ++j) {
        double d = S_bb(x[j - 1], x[j]);
        if (j <= n - 1) {
            d += S_aa(x[j], x[j + 1]);
            h.off[j - 1] = S_ab(x[j], x[j + 1]);
        } else {
            const double y = x[j];
            d += 1.0 / (v - y) - 1.0 / (v - 1.0 - y) - 1.0 / y;
        }
        h.diag[j - 1] = d;
    }
    return h;
}

// Thomas algorithm; returns false if a pivot degenerates.
bool solve_tridiag(Tridiag h, std::vector<double> rhs, std::vector<double>& out) {
    const int n = static_cast<int>(h.diag.size());
    for (int i = 1; i < n; ++i) {
        if (std::abs(h.diag[i - 1]) < 1e-300) return false;
        const double w = h.off[i - 1] / h.diag[i - 1];
        h.diag[i] -= w * h.off[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (std::abs(h.diag[n - 1]) < 1e-300) return false;
    out.assign(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = rhs[i];
        if (i + 1 < n) s -= h.off[i] * out[i + 1];
        out[i] = s / h.diag[i];
    }
    return true;
}

double halton(std::uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

bool interior(std::span<const double> x) {
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (x[i + 1] >= x[i]) return false;
    return x.back() > 0.0;
}

std::vector<double> chain_to_x(std::span<const double> s) {
    std::vector<double> x(s.size() + 1);
    x[0] = 1.0;
    for (std::size_t i = 0; i < s.size(); ++i) x[i + 1] = x[i] * s[i];
    return x;
}

double norm2(std::span<const double> g) {
    double n = 0.0;
    for (double v : g) n += v * v;
    return std::sqrt(n);
}

struct RestartOutcome {
    std::vector<double> x;
    double f = -std::numeric_limits<double>::infinity();
    double grad_norm = std::numeric_limits<double>::infinity();
    bool converged = false;
};

RestartOutcome optimize_from(int t, int v, std::vector<double> s, double tol) {
    const int n = static_cast<int>(s.size());
    auto eval = [&](std::span<const double> sv) { return f_product_form(t, v, chain_to_x(sv)); };

    double f = eval(s);
    double eta = 0.25;
    for (int iter = 0; iter < 4000; ++iter) {
        const std::vector<double> x = chain_to_x(s);
        const std::vector<double> gx = gradient_nat(t, v, x);
        std::vector<double> gs(n, 0.0);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = i + 1; j <= n; ++j) acc += gx[j - 1] * x[j];
            gs[i] = acc / s[i];
        }
        // projected gradient: drop components pushing past the box
        std::vector<double> gp = gs;
        for (int i = 0; i < n; ++i) {
            if ((s[i] <= kClamp && gp[i] < 0.0) || (s[i] >= 1.0 - kClamp && gp[i] > 0.0))
                gp[i] = 0.0;
        }
        if (norm2(gp) <= 1e-9) break;

        eta = std::min(eta * 2.0, 1.0);
        bool moved = false;
        while (eta > 1e-18) {
            std::vector<double> cand(n);
            double ascent = 0.0;
            for (int i = 0; i < n; ++i) {
                cand[i] = std::clamp(s[i] + eta * gp[i], kClamp, 1.0 - kClamp);
                ascent += gp[i] * (cand[i] - s[i]);
            }
            if (ascent <= 0.0) break;  // pinned against the box
            const double fc = eval(cand);
            if (fc >= f + 1e-4 * ascent) {
                s = std::move(cand);
                f = fc;
                moved = true;
                break;
            }
            eta *= 0.5;
        }
        if (!moved) break;
    }

    // Newton polish on the interior coordinates, damped to stay in the
    // simplex. Quadratic convergence takes over from the ascent iterate.
    std::vector<double> x = chain_to_x(s);
    RestartOutcome out;
    for (int iter = 0; iter < 50; ++iter) {
        if (!interior(x)) break;
        const std::vector<double> g = gradient_nat(t, v, x);
        if (norm2(g) / kLn2 <= tol) break;
        std::vector<double> step;
        if (!solve_tridiag(hessian_nat(t, v, x), g, step)) break;
        double damp = 1.0;
        bool applied = false;
        for (int tries = 0; tries < 60 && !applied; ++tries, damp *= 0.5) {
            std::vector<double> cand = x;
            for (int i = 1; i <= static_cast<int>(step.size()); ++i) cand[i] -= damp * step[i - 1];
            if (!interior(cand)) continue;
            x = std::move(cand);
            applied = true;
        }
        if (!applied) break;
    }

    out.x = x;
    out.f = f_product_form(t, v, x);
    out.grad_norm = interior(x) ? norm2(gradient_nat(t, v, x)) / kLn2
                                : std::numeric_limits<double>::infinity();
    out.converged = out.grad_norm <= tol;
    return out;
}

}  // namespace

std::vector<double> f_gradient(int t, int v, std::span<const double> x) {
    check_point(t, v, x);
    if (t == 2) return {};
    if (!interior(x))
        throw std::domain_error("f_gradient: requires a strictly interior point");
    std::vector<double> g = gradient_nat(t, v, x);
    for (double& gi : g) gi /= kLn2;
    return g;
}

OptResult maximize_f(int t, int v, int restarts, double tolerance) {
    if (t < 2 || v < 2) throw std::invalid_argument("maximize_f: requires t, v >= 2");
    if (restarts < 1) throw std::invalid_argument("maximize_f: requires restarts >= 1");

    OptResult result;
    result.restarts = restarts;
    if (t == 2) {
        // x_1 = 1 is the only coordinate; f is constant on the simplex.
        const double x0[1] = {1.0};
        result.best = FPoint{{1.0}, f_product_form(2, v, std::span<const double>(x0, 1)), 0.0};
        result.converged_restarts = restarts;
        result.converged = true;
        return result;
    }

    const int dims = t - 2;
    static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    if (dims > static_cast<int>(std::size(kPrimes)))
        throw std::invalid_argument("maximize_f: strength too large for the start generator");

    // Cranley-Patterson rotation of a Halton set; shift stream is fixed so
    // runs are bit-stable.
    std::mt19937_64 shift_rng(0x9e3779b97f4a7c15ULL);
    std::vector<double> shifts(dims);
    for (double& sh : shifts)
        sh = static_cast<double>(shift_rng() >> 11) * 0x1.0p-53;

    double best_f = -std::numeric_limits<double>::infinity();
    double worst_f = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> s(dims);
        for (int d = 0; d < dims; ++d) {
            double u = halton(static_cast<std::uint64_t>(r) + 1, kPrimes[d]) + shifts[d];
            u -= std::floor(u);
            s[d] = std::clamp(u, 0.02, 0.98);
        }
        RestartOutcome o = optimize_from(t, v, std::move(s), tolerance);
        if (!o.converged) continue;
        ++result.converged_restarts;
        best_f = std::max(best_f, o.f);
        worst_f = std::min(worst_f, o.f);
        const bool better =
            o.f > result.best.f || (o.f == result.best.f && o.x < result.best.x);
        if (result.converged_restarts == 1 || better)
            result.best = FPoint{std::move(o.x), o.f, o.grad_norm};
    }
    result.converged = result.converged_restarts > 0;
    result.spread = result.converged ? best_f - worst_f : 0.0;
    return result;
}

bounds::BoundResult d_bound_from_f0(int t, int v, double f0) {
    if (t < 2 || v < 2) throw std::invalid_argument("d_bound_from_f0: requires t, v >= 2");
    const double denom =
        (t - 1) * (v * std::log2(static_cast<double>(v)) - (v - 1) * std::log2(v - 1.0)) - f0;
    const double value =
        denom > 0.0 ? (t - 1) * v / denom : std::numeric_limits<double>::infinity();
    return bounds::BoundResult{value, bounds::BoundMethod::EcOptimized, t, v, std::nullopt};
}

}  // namespace ecca::optimizer
