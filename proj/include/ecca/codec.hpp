#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ecca/engine.hpp"
#include "ecca/params.hpp"

namespace ecca {

// E_1..E_{l+1}: the empty-column index sets at each iteration boundary,
// reconstructed from the record alone. E_1 = {0..k-1}; a success removes
// min E_j, a back-track adds tau_hat back. Each set is sorted ascending.
using EmptySetTimeline = std::vector<std::vector<int>>;
EmptySetTimeline empty_sets(int k, const Record& record);

// A_1..A_{l+1} from the output pair, by reverse induction: a success line
// deletes the column it filled; a back-track line restores the recorded
// contents of the t-1 other columns (the filled column's recorded content is
// the input of that iteration, not part of the prior state). A_1 must come
// out fully empty. Throws InconsistentRecordError on any contradiction.
std::vector<PartialArray> reconstruct_states(const PartialArray& a, const Record& record);

// The unique input sequence that reproduces (a, record). Streaming backward
// pass; memory stays O(k N) regardless of record length.
std::vector<Column> recover_input(const PartialArray& a, const Record& record);

// Position of the filled column's content within a back-track line: the rank
// of `filled` in ascending sorted(tau_hat + {filled}).
int backtrack_content_index(const std::vector<int>& tau_hat, int filled);

struct RecordHeader {
    CAParams params;
    std::optional<std::uint64_t> seed;  // nullopt renders as "explicit"
};

// Record grammar (LF-terminated lines, bit-exact round-trip):
//   record <t> <k> <v> <N> <seed-or-"explicit">
//   S
//   B <i_1> ... <i_{t-1}> | <col_1> ... <col_t>
// Indices are 0-based ascending; each column is N symbols, joined without
// separators when v <= 10 and comma-separated otherwise; back-track columns
// appear in ascending full-subset order. Records are untrusted input: every
// recorded column must be balanced.
std::pair<RecordHeader, Record> parse_record(std::string_view text);
std::string emit_record(const RecordHeader& header, const Record& record);

// Array text format:
//   ca <t> <k> <v> <N>
// then N lines of k space-separated entries, "-" marking an empty column's
// cells. A column is either fully "-" or fully filled.
PartialArray parse_array(std::string_view text);
std::string emit_array(const PartialArray& a);

}  // namespace ecca
