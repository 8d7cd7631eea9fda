#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecca/codec.hpp"
#include "ecca/coverage.hpp"
#include "ecca/engine.hpp"
#include "ecca/predictor.hpp"
#include "ecca/tables.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitVerify = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

int default_threads() {
    if (const char* env = std::getenv("ECCA_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

// The full effective configuration goes to stderr so that machine-readable
// stdout stays clean.
void print_config(const std::string& command,
                  const std::vector<std::pair<std::string, std::string>>& kv) {
    std::cerr << "config: command=" << command;
    for (const auto& [key, value] : kv) std::cerr << ' ' << key << '=' << value;
    std::cerr << '\n';
}

std::vector<std::int64_t> parse_k_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const auto colon = std::min(spec.find(':', pos), spec.size());
        parts.push_back(spec.substr(pos, colon - pos));
        pos = colon + 1;
        if (colon == spec.size()) break;
    }
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        const std::int64_t val = std::stoll(s, &used);
        if (used != s.size()) throw CLI::ValidationError("--k", "bad integer '" + s + "'");
        return val;
    };
    if (parts.size() == 1) return {to_int(parts[0])};
    const std::int64_t start = to_int(parts[0]), stop = to_int(parts[1]);
    if (start < 2 || stop < start) throw CLI::ValidationError("--k", "need 2 <= start <= stop");
    std::vector<std::int64_t> ks;
    if (parts.size() >= 3 && parts[2] == "log") {
        const int points = parts.size() >= 4 ? static_cast<int>(to_int(parts[3])) : 25;
        if (points < 2) throw CLI::ValidationError("--k", "log spacing needs >= 2 points");
        const double la = std::log(static_cast<double>(start));
        const double lb = std::log(static_cast<double>(stop));
        std::int64_t prev = 0;
        for (int i = 0; i < points; ++i) {
            const double x = la + (lb - la) * i / (points - 1);
            const auto k = static_cast<std::int64_t>(std::llround(std::exp(x)));
            if (k > prev) ks.push_back(k);
            prev = std::max(prev, k);
        }
    } else {
        std::int64_t step = 1;
        if (parts.size() >= 3 && parts[2] != "lin")
            throw CLI::ValidationError("--k", "expected 'lin' or 'log'");
        if (parts.size() >= 4) step = to_int(parts[3]);
        if (step < 1) throw CLI::ValidationError("--k", "step must be >= 1");
        for (std::int64_t k = start; k <= stop; k += step) ks.push_back(k);
    }
    return ks;
}

json verify_report_json(const ecca::VerifyReport& report, const ecca::ArrayShape& shape) {
    json j;
    j["valid"] = report.is_covering_array();
    j["shape"] = {{"t", shape.t}, {"k", shape.k}, {"v", shape.v}, {"N", shape.rows}};
    j["empty_slots"] = report.empty_slots;
    json fails = json::array();
    for (const auto& f : report.failures)
        fails.push_back({{"columns", f.columns}, {"missing", f.missing}});
    j["failures"] = std::move(fails);
    return j;
}

void print_verify_report(const ecca::VerifyReport& report, const ecca::ArrayShape& shape,
                         const std::string& format) {
    if (format == "json") {
        std::cout << verify_report_json(report, shape).dump(2) << '\n';
        return;
    }
    if (report.is_covering_array()) {
        std::cout << "valid CA(" << shape.rows << ';' << shape.t << ',' << shape.k << ','
                  << shape.v << ")\n";
        return;
    }
    std::cout << "not a covering array\n";
    if (!report.empty_slots.empty()) {
        std::cout << "empty columns:";
        for (int c : report.empty_slots) std::cout << ' ' << c;
        std::cout << '\n';
    }
    for (const auto& f : report.failures) {
        std::cout << "uncovered subset";
        for (int c : f.columns) std::cout << ' ' << c;
        std::cout << " missing";
        for (auto s : f.missing) std::cout << ' ' << static_cast<int>(s);
        std::cout << '\n';
    }
}

int cmd_construct(int t, int k, int v, std::optional<std::int64_t> m, std::uint64_t seed,
                  std::int64_t budget, const std::string& array_out,
                  const std::string& record_out, const std::string& format) {
    using namespace ecca;
    std::int64_t multiplicity;
    if (m) {
        multiplicity = *m;
    } else {
        multiplicity = predictor::smallest_m(t, k, v, predictor::Route::Optimized).m;
    }
    const CAParams params(t, k, v, multiplicity);
    print_config("construct", {{"t", std::to_string(t)},
                               {"k", std::to_string(k)},
                               {"v", std::to_string(v)},
                               {"m", std::to_string(multiplicity) + (m ? "" : " (predicted)")},
                               {"N", std::to_string(params.rows())},
                               {"seed", std::to_string(seed)},
                               {"budget", std::to_string(budget)},
                               {"array-out", array_out},
                               {"record-out", record_out},
                               {"format", format}});

    const RunResult result = run_until_success(params, seed, budget);
    write_file(array_out, emit_array(result.array));
    write_file(record_out, emit_record(RecordHeader{params, seed}, result.record));

    std::int64_t backtracks = 0;
    for (const auto& e : result.record)
        if (std::holds_alternative<BacktrackEntry>(e)) ++backtracks;
    const bool verified = result.success && verify_ca(result.array).is_covering_array();

    if (format == "json") {
        json j{{"success", result.success},
               {"verified", verified},
               {"iterations", result.iterations_used},
               {"backtracks", backtracks},
               {"t", t},
               {"k", k},
               {"v", v},
               {"m", multiplicity},
               {"N", params.rows()},
               {"seed", seed},
               {"array", array_out},
               {"record", record_out}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << (result.success ? "constructed" : "budget exhausted") << " CA("
                  << params.rows() << ';' << t << ',' << k << ',' << v << ") in "
                  << result.iterations_used << " iterations (" << backtracks << " back-tracks)\n";
        if (result.success)
            std::cout << (verified ? "verification passed" : "verification FAILED") << '\n';
        std::cout << "array: " << array_out << "\nrecord: " << record_out << '\n';
    }
    if (!result.success) return kExitBudget;
    return verified ? kExitOk : kExitVerify;
}

int cmd_verify(const std::string& path, const std::string& format) {
    print_config("verify", {{"path", path}, {"format", format}});
    const ecca::PartialArray a = ecca::parse_array(read_file(path));
    const ecca::VerifyReport report = ecca::verify_ca(a);
    print_verify_report(report, a.shape(), format);
    return report.is_covering_array() ? kExitOk : kExitVerify;
}

int cmd_replay(const std::string& array_path, const std::string& record_path,
               const std::string& format) {
    using namespace ecca;
    print_config("replay", {{"array", array_path}, {"record", record_path}, {"format", format}});
    const PartialArray original = parse_array(read_file(array_path));
    const auto [header, record] = parse_record(read_file(record_path));
    if (original.shape() != header.params.shape()) {
        std::cerr << "error: array and record disagree on (t, k, v, N)\n";
        return kExitVerify;
    }
    const auto input = recover_input(original, record);
    const RunResult replay = run(
        header.params, InputStream::from_columns(input, static_cast<std::int64_t>(input.size())));
    const bool ok = replay.array == original && replay.record == record;
    if (format == "json") {
        json j{{"round_trip", ok}, {"iterations", static_cast<std::int64_t>(input.size())}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << (ok ? "round-trip holds" : "round-trip MISMATCH") << " (" << input.size()
                  << " iterations replayed)\n";
    }
    return ok ? kExitOk : kExitVerify;
}

int cmd_table(int which, const std::string& data_path, int restarts, double tolerance,
              const std::string& format) {
    using namespace ecca;
    print_config("table", {{"which", std::to_string(which)},
                           {"data", data_path.empty() ? "none" : data_path},
                           {"restarts", std::to_string(restarts)},
                           {"tolerance", std::to_string(tolerance)},
                           {"format", format}});
    tables::Table table;
    if (which == 1) {
        table = tables::bounds_by_strength(restarts, tolerance);
    } else if (which == 2) {
        std::optional<std::vector<predictor::SizeRecord>> sizes;
        if (!data_path.empty()) sizes = predictor::parse_sizes_csv(read_file(data_path));
        table = tables::strength2_comparison(sizes ? &*sizes : nullptr);
    } else {
        table = tables::strength6_comparison(restarts, tolerance);
    }
    if (format == "csv")
        std::cout << tables::render_csv(table);
    else if (format == "json")
        std::cout << tables::render_json(table);
    else
        std::cout << tables::render_text(table);
    return kExitOk;
}

int cmd_predict(int t, std::int64_t k, int v, const std::string& route,
                const std::string& format) {
    using namespace ecca::predictor;
    print_config("predict", {{"t", std::to_string(t)},
                             {"k", std::to_string(k)},
                             {"v", std::to_string(v)},
                             {"route", route},
                             {"format", format}});
    std::vector<Prediction> preds;
    if (route == "general" || route == "both")
        preds.push_back(smallest_m(t, k, v, Route::General));
    if (route == "optimized" || route == "both")
        preds.push_back(smallest_m(t, k, v, Route::Optimized));
    if (format == "json") {
        json out = json::array();
        for (const auto& p : preds) {
            json j{{"route", route_name(p.route)}, {"t", p.t},       {"k", p.k},
                   {"v", p.v},                     {"m", p.m},       {"N", p.rows},
                   {"ln_rhs_at_m", p.ln_rhs_at_m}};
            if (!std::isnan(p.ln_rhs_at_prev)) j["ln_rhs_at_m_minus_1"] = p.ln_rhs_at_prev;
            if (!std::isnan(p.f0)) j["f0"] = p.f0;
            out.push_back(std::move(j));
        }
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto& p : preds) {
            std::cout << route_name(p.route) << ": m=" << p.m << " N=" << p.rows
                      << " rhs(m)=" << std::exp(p.ln_rhs_at_m);
            if (!std::isnan(p.ln_rhs_at_prev))
                std::cout << " rhs(m-1)=" << std::exp(p.ln_rhs_at_prev);
            if (!std::isnan(p.f0)) std::cout << " f0=" << p.f0;
            std::cout << '\n';
        }
    }
    return kExitOk;
}

int cmd_curve(int t, int v, const std::string& k_spec, const std::string& route,
              const std::string& out_path, int threads) {
    using namespace ecca::predictor;
    print_config("curve", {{"t", std::to_string(t)},
                           {"v", std::to_string(v)},
                           {"k", k_spec},
                           {"route", route},
                           {"out", out_path.empty() ? "-" : out_path},
                           {"threads", std::to_string(threads)}});
    const auto ks = parse_k_spec(k_spec);
    const Route r = route == "general" ? Route::General : Route::Optimized;
    const auto points = figure_curve(t, v, ks, r, threads);
    const std::string csv = curve_csv(t, v, points, r);
    if (out_path.empty())
        std::cout << csv;
    else
        write_file(out_path, csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covering array construction, verification and bound calculation"};
    app.require_subcommand(1);

    std::string format = "text";

    auto* construct = app.add_subcommand("construct", "build an array with the seeded constructor");
    int c_t = 2, c_k = 2, c_v = 2;
    std::int64_t c_m = -1, c_budget = 1'000'000;
    std::uint64_t c_seed = 0;
    std::string c_array = "ca.txt", c_record = "ca.rec";
    construct->add_option("-t", c_t, "strength")->required();
    construct->add_option("-k", c_k, "columns")->required();
    construct->add_option("-v", c_v, "alphabet size")->required();
    construct->add_option("-m", c_m, "per-symbol multiplicity (default: predicted)");
    construct->add_option("--seed", c_seed, "random seed");
    construct->add_option("--budget", c_budget, "iteration budget");
    construct->add_option("--array-out", c_array, "array output path");
    construct->add_option("--record-out", c_record, "record output path");
    construct->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* verify = app.add_subcommand("verify", "check the covering property of an array file");
    std::string v_path;
    verify->add_option("path", v_path, "array file")->required();
    verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* replay =
        app.add_subcommand("replay", "recover the input from (array, record) and re-run");
    std::string r_array, r_record;
    replay->add_option("array", r_array, "array file")->required();
    replay->add_option("record", r_record, "record file")->required();
    replay->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* table = app.add_subcommand("table", "recompute a bounds table");
    int t_which = 1;
    std::string t_data;
    int t_restarts = 64;
    double t_tolerance = 1e-10;
    table->add_option("which", t_which, "table number")->required()->check(CLI::Range(1, 3));
    table->add_option("--data", t_data, "best-known sizes csv (t,k,v,N)");
    table->add_option("--restarts", t_restarts, "optimizer restarts")->check(CLI::PositiveNumber);
    table->add_option("--tolerance", t_tolerance, "optimizer gradient tolerance");
    table->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));

    auto* predict = app.add_subcommand("predict", "smallest certified size for (t, k, v)");
    int p_t = 2, p_v = 2;
    std::int64_t p_k = 2;
    std::string p_route = "both";
    predict->add_option("-t", p_t, "strength")->required();
    predict->add_option("-k", p_k, "columns")->required();
    predict->add_option("-v", p_v, "alphabet size")->required();
    predict->add_option("--route", p_route)
        ->check(CLI::IsMember({"general", "optimized", "both"}));
    predict->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* curve = app.add_subcommand("curve", "size-vs-k curve as csv");
    int cu_t = 2, cu_v = 2, cu_threads = default_threads();
    std::string cu_k, cu_route = "optimized", cu_out;
    curve->add_option("-t", cu_t, "strength")->required();
    curve->add_option("-v", cu_v, "alphabet size")->required();
    curve->add_option("--k", cu_k, "k range: start:stop[:lin[:step]|:log[:points]]")->required();
    curve->add_option("--route", cu_route)->check(CLI::IsMember({"general", "optimized"}));
    curve->add_option("-o,--out", cu_out, "output path (default stdout)");
    curve->add_option("--threads", cu_threads, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (construct->parsed())
            return cmd_construct(c_t, c_k, c_v,
                                 c_m >= 0 ? std::optional<std::int64_t>(c_m) : std::nullopt,
                                 c_seed, c_budget, c_array, c_record, format);
        if (verify->parsed()) return cmd_verify(v_path, format);
        if (replay->parsed()) return cmd_replay(r_array, r_record, format);
        if (table->parsed()) return cmd_table(t_which, t_data, t_restarts, t_tolerance, format);
        if (predict->parsed()) return cmd_predict(p_t, p_k, p_v, p_route, format);
        if (curve->parsed()) return cmd_curve(cu_t, cu_v, cu_k, cu_route, cu_out, cu_threads);
    } catch (const ecca::InconsistentRecordError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerify;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
