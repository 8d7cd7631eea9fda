#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <vector>

#include "ecca/params.hpp"

namespace ecca {

// Exact binomial coefficient C(n, k).
mpz_class binomial_exact(unsigned long n, unsigned long k);

// |I| = (mv)! / (m!)^v, the number of balanced columns.
mpz_class balanced_column_count(const CAParams& p);

// All balanced columns in lexicographic order. Intended for desk-scale
// oracles; size is balanced_column_count(p).
std::vector<Column> all_balanced_columns(const CAParams& p);

// Exact |A_t|: the number of ordered t-tuples of balanced columns whose
// N x t array misses at least one tuple of V^t. Enumerates all |I|^t
// tuples; throws EnumerationLimitError when |I|^t exceeds `guard`.
mpz_class count_noncovering_arrays(const CAParams& p, std::uint64_t guard = 100'000'000);

// The union-bound estimate v^t * |I| * (v^(t-1)-1)^m * (v^(t-1))^(m(v-1)),
// an upper bound on |A_t| for every m >= 1.
mpz_class noncovering_upper_bound(const CAParams& p);

}  // namespace ecca
