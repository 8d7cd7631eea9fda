#pragma once

#include <string>
#include <vector>

#include "ecca/predictor.hpp"

namespace ecca::tables {

struct Cell {
    enum class Kind { Value, Integer, NA, Fail };
    Kind kind = Kind::NA;
    double value = 0.0;

    static Cell of(double v) { return {Kind::Value, v}; }
    static Cell integer(double v) { return {Kind::Integer, v}; }
    static Cell na() { return {Kind::NA, 0.0}; }
    static Cell fail() { return {Kind::Fail, 0.0}; }
};

struct Table {
    int number = 0;
    std::string corner;                    // header of the label column
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<Cell>> cells;  // [row][col]

    const Cell& at(const std::string& row, const std::string& col) const;
};

// Upper bounds on d(t,v) for t = 2..6, v = 2..10: closed forms for t = 2, 3
// and the multi-start optimizer for t >= 4. Optimizer failures surface as
// FAIL cells.
Table bounds_by_strength(int restarts = 64, double tolerance = 1e-10);

// Strength-2 comparison: the three bound families, the 2-subset
// juxtaposition constant C(v,2), the regression slope of supplied
// best-known sizes (n/a without data), and the exact d(2,v) = v/2 reference.
Table strength2_comparison(const std::vector<predictor::SizeRecord>* known_sizes = nullptr);

// Strength-6 comparison of the two closed-form bounds with the optimized
// bound.
Table strength6_comparison(int restarts = 64, double tolerance = 1e-10);

// Rounded half-up to 2 decimals; integers render bare.
std::string format_cell(const Cell& c);

std::string render_text(const Table& t);
std::string render_csv(const Table& t);
std::string render_json(const Table& t);

}  // namespace ecca::tables
