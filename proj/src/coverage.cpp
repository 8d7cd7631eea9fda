#include "ecca/coverage.hpp"

#include <cstdint>
#include <stdexcept>

#include "ecca/combinatorics.hpp"

namespace ecca {
namespace {

// v^t, or 0 if it exceeds `cap`. Coverage needs at least v^t rows, so any
// subarray with v^t > rows fails without allocating the occupancy set.
std::uint64_t pow_checked(int v, int t, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (int i = 0; i < t; ++i) {
        if (r > cap / static_cast<std::uint64_t>(v)) return 0;
        r *= static_cast<std::uint64_t>(v);
    }
    return r;
}

void check_columns(std::span<const Column* const> cols, int v) {
    if (cols.empty()) throw std::invalid_argument("no columns given");
    const std::size_t n = cols.front()->size();
    for (const Column* c : cols) {
        if (c->size() != n) throw std::invalid_argument("column length mismatch");
        require_symbols_in_range(*c, v);
    }
}

// Marks seen tuples; returns the number of distinct tuples among the rows.
std::uint64_t occupancy(std::span<const Column* const> cols, int v, std::uint64_t tuples,
                        std::vector<bool>& seen) {
    seen.assign(tuples, false);
    std::uint64_t distinct = 0;
    const std::size_t rows = cols.front()->size();
    for (std::size_t r = 0; r < rows; ++r) {
        std::uint64_t idx = 0;
        for (const Column* c : cols) idx = idx * v + (*c)[r];
        if (!seen[idx]) {
            seen[idx] = true;
            if (++distinct == tuples) break;
        }
    }
    return distinct;
}

}  // namespace

bool is_a_covering(std::span<const Column* const> cols, int v) {
    check_columns(cols, v);
    const std::uint64_t rows = cols.front()->size();
    const std::uint64_t tuples = pow_checked(v, static_cast<int>(cols.size()), rows);
    if (tuples == 0) return false;
    std::vector<bool> seen;
    return occupancy(cols, v, tuples, seen) == tuples;
}

bool is_a_covering(const std::vector<Column>& cols, int v) {
    std::vector<const Column*> ptrs;
    ptrs.reserve(cols.size());
    for (const Column& c : cols) ptrs.push_back(&c);
    return is_a_covering(std::span<const Column* const>(ptrs), v);
}

std::optional<std::vector<Symbol>> first_missing_tuple(std::span<const Column* const> cols, int v) {
    check_columns(cols, v);
    const int t = static_cast<int>(cols.size());
    const std::uint64_t rows = cols.front()->size();
    const std::uint64_t tuples = pow_checked(v, t, rows);
    std::vector<Symbol> out(t);
    if (tuples == 0) {
        // rows < v^t: scan tuple indices until one is absent; index `rows`
        // at most, since only `rows` tuples can be present.
        for (std::uint64_t idx = 0;; ++idx) {
            bool present = false;
            for (std::size_t r = 0; r < rows && !present; ++r) {
                std::uint64_t key = 0;
                for (const Column* c : cols) key = key * v + (*c)[r];
                present = (key == idx);
            }
            if (!present) {
                std::uint64_t rem = idx;
                for (int j = t - 1; j >= 0; --j) {
                    out[j] = static_cast<Symbol>(rem % v);
                    rem /= v;
                }
                return out;
            }
        }
    }
    std::vector<bool> seen;
    if (occupancy(cols, v, tuples, seen) == tuples) return std::nullopt;
    std::uint64_t idx = 0;
    while (seen[idx]) ++idx;
    std::uint64_t rem = idx;
    for (int j = t - 1; j >= 0; --j) {
        out[j] = static_cast<Symbol>(rem % v);
        rem /= v;
    }
    return out;
}

VerifyReport verify_ca(const PartialArray& a) {
    VerifyReport report;
    report.empty_slots = a.empty_indices();
    const ArrayShape& shape = a.shape();
    std::vector<const Column*> ptrs(static_cast<std::size_t>(shape.t));
    for_each_subset_colex(shape.k, shape.t, [&](std::span<const int> tau) {
        for (int c : tau)
            if (!a.has_column(c)) return;
        for (int j = 0; j < shape.t; ++j) ptrs[j] = &a.column(tau[j]);
        auto missing = first_missing_tuple(std::span<const Column* const>(ptrs), shape.v);
        if (missing)
            report.failures.push_back({std::vector<int>(tau.begin(), tau.end()), std::move(*missing)});
    });
    return report;
}

}  // namespace ecca
