#include "ecca/counting.hpp"

#include <algorithm>

#include "ecca/coverage.hpp"

namespace ecca {

mpz_class binomial_exact(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class balanced_column_count(const CAParams& p) {
    // (mv choose m) (m(v-1) choose m) ... (2m choose m)
    mpz_class r = 1;
    for (int i = 2; i <= p.v; ++i) {
        r *= binomial_exact(static_cast<unsigned long>(p.m) * i, static_cast<unsigned long>(p.m));
    }
    return r;
}

std::vector<Column> all_balanced_columns(const CAParams& p) {
    Column base;
    base.reserve(static_cast<std::size_t>(p.rows()));
    for (int s = 0; s < p.v; ++s)
        for (std::int64_t i = 0; i < p.m; ++i) base.push_back(static_cast<Symbol>(s));
    std::vector<Column> out;
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

mpz_class count_noncovering_arrays(const CAParams& p, std::uint64_t guard) {
    const mpz_class size = balanced_column_count(p);
    mpz_class total = 1;
    for (int i = 0; i < p.t; ++i) total *= size;
    if (total > mpz_class(static_cast<unsigned long>(guard)))
        throw EnumerationLimitError("|I|^t = " + total.get_str() +
                                    " exceeds the enumeration guard");

    const std::vector<Column> columns = all_balanced_columns(p);
    const std::size_t n = columns.size();
    std::vector<std::size_t> odometer(static_cast<std::size_t>(p.t), 0);
    std::vector<const Column*> tuple(static_cast<std::size_t>(p.t));
    std::uint64_t bad = 0;
    for (;;) {
        for (int j = 0; j < p.t; ++j) tuple[j] = &columns[odometer[j]];
        if (!is_a_covering(std::span<const Column* const>(tuple), p.v)) ++bad;
        int j = p.t - 1;
        while (j >= 0 && ++odometer[j] == n) odometer[j--] = 0;
        if (j < 0) break;
    }
    return mpz_class(static_cast<unsigned long>(bad));
}

mpz_class noncovering_upper_bound(const CAParams& p) {
    mpz_class vt, vt1;
    mpz_ui_pow_ui(vt.get_mpz_t(), static_cast<unsigned long>(p.v), static_cast<unsigned long>(p.t));
    mpz_ui_pow_ui(vt1.get_mpz_t(), static_cast<unsigned long>(p.v),
                  static_cast<unsigned long>(p.t - 1));
    mpz_class a, b;
    mpz_pow_ui(a.get_mpz_t(), mpz_class(vt1 - 1).get_mpz_t(), static_cast<unsigned long>(p.m));
    mpz_pow_ui(b.get_mpz_t(), vt1.get_mpz_t(), static_cast<unsigned long>(p.m * (p.v - 1)));
    return vt * balanced_column_count(p) * a * b;
}

}  // namespace ecca
