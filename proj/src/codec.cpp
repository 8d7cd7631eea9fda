#include "ecca/codec.hpp"

#include <algorithm>
#include <set>

namespace ecca {
namespace {

// Backward pass over (a, record): undoes record lines from the last to the
// first. After the line at 0-based index j is undone, `state` is A_{j+1}
// (the array at the start of that iteration) and `on_step` receives j plus
// the input column consumed by that iteration.
template <typename Fn>
void walk_backward(PartialArray& state, const Record& record, const EmptySetTimeline& timeline,
                   Fn&& on_step) {
    for (std::int64_t j = static_cast<std::int64_t>(record.size()) - 1; j >= 0; --j) {
        const int i = timeline[j].front();  // phi(A_j)
        const RecordEntry& entry = record[j];
        Column consumed;
        if (std::holds_alternative<SuccessEntry>(entry)) {
            if (!state.has_column(i))
                throw InconsistentRecordError("success line " + std::to_string(j + 1) +
                                              ": column " + std::to_string(i) + " already empty");
            consumed = state.column(i);
            state.clear_column(i);
        } else {
            const auto& bt = std::get<BacktrackEntry>(entry);
            if (static_cast<int>(bt.tau_hat.size()) != state.shape().t - 1 ||
                bt.content.size() != bt.tau_hat.size() + 1)
                throw InconsistentRecordError("back-track line " + std::to_string(j + 1) +
                                              ": wrong index or content count");
            std::vector<int> tau(bt.tau_hat);
            tau.push_back(i);
            std::sort(tau.begin(), tau.end());
            for (int c : tau)
                if (state.has_column(c))
                    throw InconsistentRecordError("back-track line " + std::to_string(j + 1) +
                                                  ": column " + std::to_string(c) +
                                                  " not empty afterwards");
            for (std::size_t r = 0; r < tau.size(); ++r)
                if (tau[r] != i) state.set_column(tau[r], bt.content[r]);
            consumed = bt.content[backtrack_content_index(bt.tau_hat, i)];
        }
        on_step(j, consumed);
    }
    if (state.filled_count() != 0)
        throw InconsistentRecordError("initial state is not the empty array");
}

}  // namespace

int backtrack_content_index(const std::vector<int>& tau_hat, int filled) {
    int rank = 0;
    for (int c : tau_hat) {
        if (c == filled) throw std::invalid_argument("filled column listed in tau_hat");
        if (c < filled) ++rank;
    }
    return rank;
}

EmptySetTimeline empty_sets(int k, const Record& record) {
    if (k < 1) throw std::invalid_argument("empty_sets: k must be >= 1");
    std::set<int> current;
    for (int i = 0; i < k; ++i) current.insert(i);
    EmptySetTimeline timeline;
    timeline.reserve(record.size() + 1);
    timeline.emplace_back(current.begin(), current.end());
    std::int64_t line = 0;
    for (const RecordEntry& entry : record) {
        ++line;
        if (current.empty())
            throw InconsistentRecordError("line " + std::to_string(line) +
                                          ": entry after the array became complete");
        const int i = *current.begin();
        if (std::holds_alternative<SuccessEntry>(entry)) {
            current.erase(i);
        } else {
            const auto& bt = std::get<BacktrackEntry>(entry);
            for (int c : bt.tau_hat) {
                if (c < 0 || c >= k)
                    throw InconsistentRecordError("line " + std::to_string(line) +
                                                  ": column index out of range");
                if (current.count(c))
                    throw InconsistentRecordError("line " + std::to_string(line) +
                                                  ": back-track names an empty column");
            }
            for (int c : bt.tau_hat) current.insert(c);
        }
        timeline.emplace_back(current.begin(), current.end());
    }
    return timeline;
}

std::vector<PartialArray> reconstruct_states(const PartialArray& a, const Record& record) {
    const EmptySetTimeline timeline = empty_sets(a.shape().k, record);
    std::vector<PartialArray> states(record.size() + 1, PartialArray(a.shape()));
    PartialArray state = a;
    states[record.size()] = state;
    walk_backward(state, record, timeline,
                  [&](std::int64_t j, const Column&) { states[j] = state; });
    return states;
}

std::vector<Column> recover_input(const PartialArray& a, const Record& record) {
    const EmptySetTimeline timeline = empty_sets(a.shape().k, record);
    PartialArray state = a;
    std::vector<Column> input(record.size());
    walk_backward(state, record, timeline,
                  [&](std::int64_t j, const Column& c) { input[j] = c; });
    return input;
}

}  // namespace ecca
