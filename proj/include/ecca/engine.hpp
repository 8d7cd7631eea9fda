#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "ecca/params.hpp"

namespace ecca {

struct SuccessEntry {
    bool operator==(const SuccessEntry&) const = default;
};

// One back-track line: the t-1 other column indices of the violated subset
// (ascending) and the contents of all t deleted columns in ascending
// full-subset order. The index of the just-filled column is deliberately not
// stored; the decoder recovers it.
struct BacktrackEntry {
    std::vector<int> tau_hat;
    std::vector<Column> content;
    bool operator==(const BacktrackEntry&) const = default;
};

using RecordEntry = std::variant<SuccessEntry, BacktrackEntry>;
using Record = std::vector<RecordEntry>;

// Draws one uniform value in [0, n) by rejection from the top 64-bit range;
// the only randomness primitive used, so records are portable across
// standard libraries.
std::uint64_t bounded_uint64(std::mt19937_64& rng, std::uint64_t n);

// Fisher-Yates shuffle of the multiset (m copies of each symbol).
Column random_balanced_column(std::mt19937_64& rng, const CAParams& p);

// Supplies columns to the constructor: either an explicit sequence or a
// seeded generator of uniform balanced columns. `budget` is the iteration
// budget of the run; columns are drawn lazily.
class InputStream {
public:
    static InputStream from_columns(std::vector<Column> cols);
    static InputStream from_columns(std::vector<Column> cols, std::int64_t budget);
    static InputStream seeded(std::uint64_t seed, std::int64_t budget);

    std::int64_t budget() const { return budget_; }
    std::optional<std::uint64_t> seed() const { return seed_; }

    // Next balanced column; validates balance, throws InputExhaustedError
    // when an explicit sequence runs out before the budget.
    Column next(const CAParams& p);

private:
    InputStream() = default;
    std::optional<std::vector<Column>> columns_;
    std::size_t cursor_ = 0;
    std::optional<std::uint64_t> seed_;
    std::mt19937_64 rng_;
    std::int64_t budget_ = 0;
};

struct RunResult {
    PartialArray array;
    Record record;
    std::int64_t iterations_used = 0;  // equals record.size()
    bool success = false;              // no empty columns remain
    std::optional<std::uint64_t> seed; // carried into the record header
};

// One run of the entropy-compression constructor: per iteration the lowest
// empty column is filled from the stream; subsets containing it are scanned
// in colexicographic order of the other t-1 indices, and the first
// non-covering subset is recorded and blanked. The array satisfies the
// covering property on all fully-filled subsets at every iteration boundary.
RunResult run(const CAParams& p, InputStream input);

// Seeded driver: run() on a fresh random stream. Deterministic in
// (params, seed, max_iterations).
RunResult run_until_success(const CAParams& p, std::uint64_t seed, std::int64_t max_iterations);

struct TracePoint {
    int empty_count;   // |E_j| at the start of the iteration
    bool backtracked;
};

std::vector<TracePoint> iteration_trace(const RunResult& result);

}  // namespace ecca
