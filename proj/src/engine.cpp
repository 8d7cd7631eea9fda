#include "ecca/engine.hpp"

#include <algorithm>
#include <cassert>

#include "ecca/combinatorics.hpp"
#include "ecca/coverage.hpp"

namespace ecca {

std::uint64_t bounded_uint64(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("bounded_uint64: n must be positive");
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

Column random_balanced_column(std::mt19937_64& rng, const CAParams& p) {
    Column c;
    c.reserve(static_cast<std::size_t>(p.rows()));
    for (int s = 0; s < p.v; ++s)
        for (std::int64_t i = 0; i < p.m; ++i) c.push_back(static_cast<Symbol>(s));
    for (std::size_t i = c.size() - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded_uint64(rng, i + 1));
        std::swap(c[i], c[j]);
    }
    return c;
}

InputStream InputStream::from_columns(std::vector<Column> cols) {
    const auto n = static_cast<std::int64_t>(cols.size());
    return from_columns(std::move(cols), n);
}

InputStream InputStream::from_columns(std::vector<Column> cols, std::int64_t budget) {
    if (budget < 0) throw std::invalid_argument("InputStream: budget must be >= 0");
    InputStream s;
    s.columns_ = std::move(cols);
    s.budget_ = budget;
    return s;
}

InputStream InputStream::seeded(std::uint64_t seed, std::int64_t budget) {
    if (budget < 0) throw std::invalid_argument("InputStream: budget must be >= 0");
    InputStream s;
    s.seed_ = seed;
    s.rng_.seed(seed);
    s.budget_ = budget;
    return s;
}

Column InputStream::next(const CAParams& p) {
    if (columns_) {
        if (cursor_ >= columns_->size())
            throw InputExhaustedError("input sequence exhausted before the iteration budget");
        Column c = (*columns_)[cursor_++];
        require_balanced(c, p);
        return c;
    }
    return random_balanced_column(rng_, p);
}

namespace {

#ifndef NDEBUG
// Loop invariant: every fully-filled t-subset is a covering.
bool covering_everywhere(const PartialArray& a) {
    bool ok = true;
    std::vector<const Column*> ptrs(static_cast<std::size_t>(a.shape().t));
    for_each_subset_colex(a.shape().k, a.shape().t, [&](std::span<const int> tau) -> bool {
        for (int c : tau)
            if (!a.has_column(c)) return true;
        for (int j = 0; j < a.shape().t; ++j) ptrs[j] = &a.column(tau[j]);
        ok = is_a_covering(std::span<const Column* const>(ptrs), a.shape().v);
        return ok;
    });
    return ok;
}
#endif

}  // namespace

RunResult run(const CAParams& p, InputStream input) {
    PartialArray array(p);
    Record record;
    std::vector<int> filled;  // ascending
    filled.reserve(static_cast<std::size_t>(p.k));

    std::vector<const Column*> subarray(static_cast<std::size_t>(p.t));
    std::vector<int> tau(static_cast<std::size_t>(p.t));

    const std::int64_t budget = input.budget();
    for (std::int64_t j = 0; j < budget; ++j) {
        const int i = phi(array);
        if (i == -1) break;
        array.set_column(i, input.next(p));

        bool good = true;
        // Candidates: the filled columns other than i; subsets visited in
        // colex order. `filled` does not yet contain i.
        for_each_subset_colex(std::span<const int>(filled), p.t - 1,
                              [&](std::span<const int> others) -> bool {
            std::copy(others.begin(), others.end(), tau.begin());
            tau[p.t - 1] = i;
            std::inplace_merge(tau.begin(), tau.end() - 1, tau.end());
            for (int q = 0; q < p.t; ++q) subarray[q] = &array.column(tau[q]);
            if (is_a_covering(std::span<const Column* const>(subarray), p.v)) return true;

            good = false;
            BacktrackEntry entry;
            entry.tau_hat.assign(others.begin(), others.end());
            entry.content.reserve(static_cast<std::size_t>(p.t));
            for (int q = 0; q < p.t; ++q) entry.content.push_back(array.column(tau[q]));
            for (int q = 0; q < p.t; ++q) {
                array.clear_column(tau[q]);
                if (tau[q] != i)
                    filled.erase(std::find(filled.begin(), filled.end(), tau[q]));
            }
            record.emplace_back(std::move(entry));
            return false;
        });
        if (good) {
            filled.insert(std::upper_bound(filled.begin(), filled.end(), i), i);
            record.emplace_back(SuccessEntry{});
        }
        assert(covering_everywhere(array));
    }

    RunResult result{std::move(array), std::move(record), 0, false, input.seed()};
    result.iterations_used = static_cast<std::int64_t>(result.record.size());
    result.success = result.array.complete();
    return result;
}

RunResult run_until_success(const CAParams& p, std::uint64_t seed, std::int64_t max_iterations) {
    // A budget below k cannot fill the array; the run simply comes back
    // unsuccessful.
    return run(p, InputStream::seeded(seed, max_iterations));
}

std::vector<TracePoint> iteration_trace(const RunResult& result) {
    std::vector<TracePoint> trace;
    trace.reserve(result.record.size());
    int empty_count = result.array.shape().k;
    for (const RecordEntry& entry : result.record) {
        const bool backtracked = std::holds_alternative<BacktrackEntry>(entry);
        trace.push_back(TracePoint{empty_count, backtracked});
        if (backtracked)
            empty_count += static_cast<int>(std::get<BacktrackEntry>(entry).tau_hat.size());
        else
            empty_count -= 1;
    }
    return trace;
}

}  // namespace ecca
