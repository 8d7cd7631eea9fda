#include "ecca/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ecca/bounds.hpp"
#include "ecca/optimizer.hpp"

namespace ecca::tables {

const Cell& Table::at(const std::string& row, const std::string& col) const {
    const auto r = std::find(row_labels.begin(), row_labels.end(), row);
    const auto c = std::find(col_labels.begin(), col_labels.end(), col);
    if (r == row_labels.end() || c == col_labels.end())
        throw std::out_of_range("no table cell (" + row + ", " + col + ")");
    return cells[r - row_labels.begin()][c - col_labels.begin()];
}

Table bounds_by_strength(int restarts, double tolerance) {
    Table table;
    table.number = 1;
    table.corner = "v \\ t";
    for (int t = 2; t <= 6; ++t) table.col_labels.push_back("t=" + std::to_string(t));
    for (int v = 2; v <= 10; ++v) {
        table.row_labels.push_back("v=" + std::to_string(v));
        std::vector<Cell> row;
        for (int t = 2; t <= 6; ++t) {
            if (t == 2) {
                const auto b = bounds::d_bound_t2(v);
                row.push_back(v == 2 ? Cell::integer(b.value) : Cell::of(b.value));
            } else if (t == 3) {
                row.push_back(Cell::of(bounds::d_bound_t3(v).value));
            } else {
                const auto opt = optimizer::maximize_f(t, v, restarts, tolerance);
                if (!opt.converged) {
                    row.push_back(Cell::fail());
                } else {
                    row.push_back(Cell::of(optimizer::d_bound_from_f0(t, v, opt.best.f).value));
                }
            }
        }
        table.cells.push_back(std::move(row));
    }
    return table;
}

Table strength2_comparison(const std::vector<predictor::SizeRecord>* known_sizes) {
    Table table;
    table.number = 2;
    table.corner = "d(2,v) \\ v";
    for (int v = 2; v <= 10; ++v) table.col_labels.push_back("v=" + std::to_string(v));
    table.row_labels = {"lll-classic", "ec-general", "ec-t2",
                        "choose(v,2)", "regression-slope", "exact"};
    table.cells.assign(table.row_labels.size(), {});
    for (int v = 2; v <= 10; ++v) {
        table.cells[0].push_back(Cell::of(bounds::d_bound_lll_classic(2, v).value));
        table.cells[1].push_back(Cell::of(bounds::d_bound_ec_general(2, v).value));
        table.cells[2].push_back(v == 2 ? Cell::integer(1) : Cell::of(bounds::d_bound_t2(v).value));
        table.cells[3].push_back(Cell::integer(v * (v - 1) / 2.0));
        Cell slope = Cell::na();
        if (known_sizes) {
            std::vector<predictor::CurvePoint> pts;
            for (const auto& rec : *known_sizes)
                if (rec.t == 2 && rec.v == v) pts.push_back({rec.k, rec.rows});
            std::sort(pts.begin(), pts.end(),
                      [](const auto& a, const auto& b) { return a.k < b.k; });
            bool distinct = pts.size() >= 2 && pts.front().k != pts.back().k;
            if (distinct) slope = Cell::of(predictor::regression_slope(pts));
        }
        table.cells[4].push_back(slope);
        table.cells[5].push_back(v % 2 == 0 ? Cell::integer(v / 2.0) : Cell::of(v / 2.0));
    }
    return table;
}

Table strength6_comparison(int restarts, double tolerance) {
    Table table;
    table.number = 3;
    table.corner = "d(6,v) \\ v";
    for (int v = 2; v <= 7; ++v) table.col_labels.push_back("v=" + std::to_string(v));
    table.row_labels = {"lll-classic", "ec-general", "ec-optimized"};
    table.cells.assign(table.row_labels.size(), {});
    for (int v = 2; v <= 7; ++v) {
        table.cells[0].push_back(Cell::of(bounds::d_bound_lll_classic(6, v).value));
        table.cells[1].push_back(Cell::of(bounds::d_bound_ec_general(6, v).value));
        const auto opt = optimizer::maximize_f(6, v, restarts, tolerance);
        table.cells[2].push_back(
            opt.converged ? Cell::of(optimizer::d_bound_from_f0(6, v, opt.best.f).value)
                          : Cell::fail());
    }
    return table;
}

std::string format_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::NA: return "n/a";
        case Cell::Kind::Fail: return "FAIL";
        case Cell::Kind::Integer: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.0f", c.value);
            return buf;
        }
        case Cell::Kind::Value: {
            // round half-up at the second decimal
            const double r = std::floor(c.value * 100.0 + 0.5) / 100.0;
            char buf[48];
            std::snprintf(buf, sizeof buf, "%.2f", r);
            return buf;
        }
    }
    return "?";
}

std::string render_text(const Table& t) {
    std::vector<std::size_t> widths;
    widths.push_back(t.corner.size());
    for (const auto& label : t.row_labels) widths[0] = std::max(widths[0], label.size());
    for (std::size_t c = 0; c < t.col_labels.size(); ++c) {
        std::size_t w = t.col_labels[c].size();
        for (const auto& row : t.cells) w = std::max(w, format_cell(row[c]).size());
        widths.push_back(w);
    }
    std::ostringstream os;
    auto pad = [&](const std::string& s, std::size_t w) {
        for (std::size_t i = s.size(); i < w; ++i) os << ' ';
        os << s;
    };
    pad(t.corner, widths[0]);
    for (std::size_t c = 0; c < t.col_labels.size(); ++c) {
        os << "  ";
        pad(t.col_labels[c], widths[c + 1]);
    }
    os << '\n';
    for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
        pad(t.row_labels[r], widths[0]);
        for (std::size_t c = 0; c < t.col_labels.size(); ++c) {
            os << "  ";
            pad(format_cell(t.cells[r][c]), widths[c + 1]);
        }
        os << '\n';
    }
    return os.str();
}

std::string render_csv(const Table& t) {
    std::ostringstream os;
    os << "row";
    for (const auto& c : t.col_labels) os << ',' << c;
    os << '\n';
    for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
        os << t.row_labels[r];
        for (const auto& cell : t.cells[r]) os << ',' << format_cell(cell);
        os << '\n';
    }
    return os.str();
}

std::string render_json(const Table& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& cell : t.cells[r]) {
            nlohmann::json c;
            c["display"] = format_cell(cell);
            if (cell.kind == Cell::Kind::Value || cell.kind == Cell::Kind::Integer)
                c["value"] = cell.value;
            else
                c["value"] = nullptr;
            cells.push_back(std::move(c));
        }
        rows.push_back({{"label", t.row_labels[r]}, {"cells", std::move(cells)}});
    }
    nlohmann::json j{{"table", t.number}, {"columns", t.col_labels}, {"rows", std::move(rows)}};
    return j.dump(2) + "\n";
}

}  // namespace ecca::tables
