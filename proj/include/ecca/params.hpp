#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ecca/errors.hpp"

namespace ecca {

using Symbol = std::uint16_t;
using Column = std::vector<Symbol>;

// Dimensions of a (possibly partial) array: strength t, k columns, alphabet
// size v, `rows` rows. Indices and symbols are 0-based everywhere.
struct ArrayShape {
    int t = 2;
    int k = 2;
    int v = 2;
    std::int64_t rows = 0;

    bool operator==(const ArrayShape&) const = default;
};

// Parameters of a balanced construction: rows = m * v and every column is
// required to carry each symbol exactly m times.
struct CAParams {
    int t;
    int k;
    int v;
    std::int64_t m;

    CAParams(int t_, int k_, int v_, std::int64_t m_) : t(t_), k(k_), v(v_), m(m_) {
        if (t < 2) throw std::invalid_argument("strength t must be >= 2");
        if (v < 2) throw std::invalid_argument("alphabet size v must be >= 2");
        if (k < t) throw std::invalid_argument("column count k must be >= t");
        if (m < 1) throw std::invalid_argument("multiplicity m must be >= 1");
    }

    std::int64_t rows() const { return m * static_cast<std::int64_t>(v); }
    ArrayShape shape() const { return ArrayShape{t, k, v, rows()}; }

    bool operator==(const CAParams&) const = default;
};

inline void require_symbols_in_range(const Column& c, int v) {
    for (Symbol s : c)
        if (s >= v) throw std::invalid_argument("symbol out of range [0, v)");
}

inline bool is_balanced(const Column& c, const CAParams& p) {
    if (static_cast<std::int64_t>(c.size()) != p.rows()) return false;
    std::vector<std::int64_t> counts(p.v, 0);
    for (Symbol s : c) {
        if (s >= p.v) return false;
        ++counts[s];
    }
    for (std::int64_t n : counts)
        if (n != p.m) return false;
    return true;
}

inline void require_balanced(const Column& c, const CAParams& p) {
    if (!is_balanced(c, p))
        throw std::invalid_argument("column is not balanced for these parameters");
}

// A k-slot array whose slots are either empty or a full column. The engine
// only ever stores balanced columns; the container itself accepts any column
// over the alphabet so that verification and direct constructions can share
// it.
class PartialArray {
public:
    explicit PartialArray(ArrayShape shape)
        : shape_(shape), slots_(static_cast<std::size_t>(shape.k)) {
        if (shape.t < 2 || shape.v < 2 || shape.k < shape.t || shape.rows < 1)
            throw std::invalid_argument("invalid array shape");
    }
    explicit PartialArray(const CAParams& p) : PartialArray(p.shape()) {}

    const ArrayShape& shape() const { return shape_; }

    bool has_column(int i) const { return slots_.at(i).has_value(); }
    const Column& column(int i) const {
        const auto& slot = slots_.at(i);
        if (!slot) throw std::invalid_argument("column " + std::to_string(i) + " is empty");
        return *slot;
    }

    void set_column(int i, Column c) {
        if (static_cast<std::int64_t>(c.size()) != shape_.rows)
            throw std::invalid_argument("column length does not match row count");
        require_symbols_in_range(c, shape_.v);
        slots_.at(i) = std::move(c);
    }
    void clear_column(int i) { slots_.at(i).reset(); }

    int first_empty() const {
        for (int i = 0; i < shape_.k; ++i)
            if (!slots_[i]) return i;
        return -1;
    }
    std::vector<int> empty_indices() const {
        std::vector<int> out;
        for (int i = 0; i < shape_.k; ++i)
            if (!slots_[i]) out.push_back(i);
        return out;
    }
    int filled_count() const {
        int n = 0;
        for (const auto& s : slots_)
            if (s) ++n;
        return n;
    }
    bool complete() const { return first_empty() == -1; }

    bool operator==(const PartialArray&) const = default;

private:
    ArrayShape shape_;
    std::vector<std::optional<Column>> slots_;
};

// Priority function on the empty columns: -1 when the array is complete,
// otherwise the minimum empty index.
inline int phi(const PartialArray& a) { return a.first_empty(); }

}  // namespace ecca
