#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ecca/params.hpp"

namespace ecca {

// True iff the rows of the t-column subarray contain all of V^t. Columns
// must all have the same length; tuples are tracked in a v^t occupancy set
// keyed by the mixed-radix index sum(a_i * v^(t-i-1)).
bool is_a_covering(std::span<const Column* const> cols, int v);
bool is_a_covering(const std::vector<Column>& cols, int v);

// First tuple of V^t (in mixed-radix order) that does not occur among the
// rows, or nullopt when the subarray is a covering.
std::optional<std::vector<Symbol>> first_missing_tuple(std::span<const Column* const> cols, int v);

struct VerifyReport {
    struct Failure {
        std::vector<int> columns;        // ascending t-subset
        std::vector<Symbol> missing;     // one witness tuple
        bool operator==(const Failure&) const = default;
    };
    std::vector<int> empty_slots;
    std::vector<Failure> failures;       // fully-filled subsets that fail, colex order

    bool is_covering_array() const { return empty_slots.empty() && failures.empty(); }
};

// Checks every C(k,t) column subset of the array, in colexicographic order.
// Partial arrays are allowed; subsets touching an empty slot are reported
// via empty_slots only.
VerifyReport verify_ca(const PartialArray& a);

}  // namespace ecca
