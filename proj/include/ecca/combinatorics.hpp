#pragma once

#include <span>
#include <type_traits>
#include <utility>
#include <vector>

namespace ecca {

// Visits every r-subset of {0,..,n-1} in colexicographic order. The visitor
// receives the subset as an ascending index span and may return bool to stop
// the enumeration early (false = stop).
template <typename Fn>
void for_each_subset_colex(int n, int r, Fn&& fn) {
    if (r < 0 || r > n) return;
    std::vector<int> c(r);
    for (int i = 0; i < r; ++i) c[i] = i;
    if (r == 0) {
        fn(std::span<const int>{});
        return;
    }
    for (;;) {
        if constexpr (std::is_same_v<std::invoke_result_t<Fn&, std::span<const int>>, bool>) {
            if (!fn(std::span<const int>(c))) return;
        } else {
            fn(std::span<const int>(c));
        }
        // colex successor: bump the lowest index that has room, reset below
        int i = 0;
        while (i < r) {
            int limit = (i + 1 < r) ? c[i + 1] : n;
            if (c[i] + 1 < limit) break;
            ++i;
        }
        if (i == r) return;
        ++c[i];
        for (int j = 0; j < i; ++j) c[j] = j;
    }
}

// Same enumeration over an ascending candidate list instead of {0,..,n-1}.
template <typename Fn>
void for_each_subset_colex(std::span<const int> items, int r, Fn&& fn) {
    std::vector<int> subset(static_cast<std::size_t>(r > 0 ? r : 0));
    for_each_subset_colex(static_cast<int>(items.size()), r, [&](std::span<const int> idx) {
        for (int j = 0; j < r; ++j) subset[j] = items[idx[j]];
        if constexpr (std::is_same_v<std::invoke_result_t<Fn&, std::span<const int>>, bool>) {
            return fn(std::span<const int>(subset));
        } else {
            fn(std::span<const int>(subset));
        }
    });
}

}  // namespace ecca
