#include <charconv>
#include <sstream>

#include "ecca/codec.hpp"

namespace ecca {
namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream is{std::string(s)};
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::int64_t parse_int(std::string_view tok, int line, const char* what) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
    return value;
}

std::uint64_t parse_uint64(std::string_view tok, int line, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
    return value;
}

Column parse_column(std::string_view tok, const CAParams& p, int line) {
    Column c;
    c.reserve(static_cast<std::size_t>(p.rows()));
    if (p.v <= 10) {
        for (char ch : tok) {
            if (ch < '0' || ch > '9') throw ParseError(line, "bad symbol character");
            c.push_back(static_cast<Symbol>(ch - '0'));
        }
    } else {
        std::size_t pos = 0;
        while (pos <= tok.size()) {
            const std::size_t comma = std::min(tok.find(',', pos), tok.size());
            c.push_back(static_cast<Symbol>(
                parse_int(tok.substr(pos, comma - pos), line, "symbol")));
            pos = comma + 1;
            if (comma == tok.size()) break;
        }
    }
    if (static_cast<std::int64_t>(c.size()) != p.rows())
        throw ParseError(line, "column has " + std::to_string(c.size()) + " entries, expected " +
                                   std::to_string(p.rows()));
    for (Symbol s : c)
        if (s >= p.v) throw ParseError(line, "symbol out of range");
    if (!is_balanced(c, p)) throw ParseError(line, "recorded column is not balanced");
    return c;
}

void emit_column(std::ostringstream& os, const Column& c, int v) {
    if (v <= 10) {
        for (Symbol s : c) os << static_cast<char>('0' + s);
    } else {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) os << ',';
            os << c[i];
        }
    }
}

}  // namespace

std::pair<RecordHeader, Record> parse_record(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    if (!std::getline(is, line)) throw ParseError(1, "missing header");
    const auto head = split_ws(line);
    if (head.size() != 6 || head[0] != "record")
        throw ParseError(1, "expected 'record <t> <k> <v> <N> <seed>'");
    const int t = static_cast<int>(parse_int(head[1], 1, "t"));
    const int k = static_cast<int>(parse_int(head[2], 1, "k"));
    const int v = static_cast<int>(parse_int(head[3], 1, "v"));
    const std::int64_t n = parse_int(head[4], 1, "N");
    if (v < 2 || n <= 0 || n % v != 0) throw ParseError(1, "N must be a positive multiple of v");
    RecordHeader header{CAParams(t, k, v, n / v), std::nullopt};
    if (head[5] != "explicit")
        header.seed = parse_uint64(head[5], 1, "seed");

    Record record;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line == "S") {
            record.emplace_back(SuccessEntry{});
            continue;
        }
        if (line[0] != 'B') throw ParseError(lineno, "expected 'S' or 'B' entry");
        const auto bar = line.find('|');
        if (bar == std::string::npos) throw ParseError(lineno, "back-track line missing '|'");
        const auto idx_toks = split_ws(line.substr(1, bar - 1));
        const auto col_toks = split_ws(line.substr(bar + 1));
        if (static_cast<int>(idx_toks.size()) != t - 1)
            throw ParseError(lineno, "expected " + std::to_string(t - 1) + " column indices");
        if (static_cast<int>(col_toks.size()) != t)
            throw ParseError(lineno, "expected " + std::to_string(t) + " columns");
        BacktrackEntry entry;
        for (const auto& tok : idx_toks) {
            const auto idx = parse_int(tok, lineno, "column index");
            if (idx < 0 || idx >= k) throw ParseError(lineno, "column index out of range");
            if (!entry.tau_hat.empty() && entry.tau_hat.back() >= idx)
                throw ParseError(lineno, "column indices must be strictly ascending");
            entry.tau_hat.push_back(static_cast<int>(idx));
        }
        for (const auto& tok : col_toks)
            entry.content.push_back(parse_column(tok, header.params, lineno));
        record.emplace_back(std::move(entry));
    }
    return {header, std::move(record)};
}

std::string emit_record(const RecordHeader& header, const Record& record) {
    std::ostringstream os;
    const CAParams& p = header.params;
    os << "record " << p.t << ' ' << p.k << ' ' << p.v << ' ' << p.rows() << ' ';
    if (header.seed)
        os << *header.seed;
    else
        os << "explicit";
    os << '\n';
    for (const RecordEntry& entry : record) {
        if (std::holds_alternative<SuccessEntry>(entry)) {
            os << "S\n";
            continue;
        }
        const auto& bt = std::get<BacktrackEntry>(entry);
        os << 'B';
        for (int c : bt.tau_hat) os << ' ' << c;
        os << " |";
        for (const Column& col : bt.content) {
            os << ' ';
            emit_column(os, col, p.v);
        }
        os << '\n';
    }
    return os.str();
}

PartialArray parse_array(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    if (!std::getline(is, line)) throw ParseError(1, "missing header");
    const auto head = split_ws(line);
    if (head.size() != 5 || head[0] != "ca")
        throw ParseError(1, "expected 'ca <t> <k> <v> <N>'");
    const int t = static_cast<int>(parse_int(head[1], 1, "t"));
    const int k = static_cast<int>(parse_int(head[2], 1, "k"));
    const int v = static_cast<int>(parse_int(head[3], 1, "v"));
    const std::int64_t n = parse_int(head[4], 1, "N");
    PartialArray a(ArrayShape{t, k, v, n});

    std::vector<std::vector<std::string>> cells;
    cells.reserve(static_cast<std::size_t>(n));
    int lineno = 1;
    for (std::int64_t r = 0; r < n; ++r) {
        ++lineno;
        if (!std::getline(is, line)) throw ParseError(lineno, "missing row");
        auto toks = split_ws(line);
        if (static_cast<int>(toks.size()) != k)
            throw ParseError(lineno, "expected " + std::to_string(k) + " entries");
        cells.push_back(std::move(toks));
    }
    for (int c = 0; c < k; ++c) {
        const bool empty = cells[0][c] == "-";
        Column col;
        if (!empty) col.reserve(static_cast<std::size_t>(n));
        for (std::int64_t r = 0; r < n; ++r) {
            const std::string& tok = cells[r][c];
            if ((tok == "-") != empty)
                throw ParseError(static_cast<int>(r) + 2,
                                 "column " + std::to_string(c) + " mixes '-' and symbols");
            if (!empty) {
                const auto s = parse_int(tok, static_cast<int>(r) + 2, "symbol");
                if (s < 0 || s >= v)
                    throw ParseError(static_cast<int>(r) + 2, "symbol out of range");
                col.push_back(static_cast<Symbol>(s));
            }
        }
        if (!empty) a.set_column(c, std::move(col));
    }
    return a;
}

std::string emit_array(const PartialArray& a) {
    const ArrayShape& s = a.shape();
    std::ostringstream os;
    os << "ca " << s.t << ' ' << s.k << ' ' << s.v << ' ' << s.rows << '\n';
    for (std::int64_t r = 0; r < s.rows; ++r) {
        for (int c = 0; c < s.k; ++c) {
            if (c) os << ' ';
            if (a.has_column(c))
                os << a.column(c)[static_cast<std::size_t>(r)];
            else
                os << '-';
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace ecca
