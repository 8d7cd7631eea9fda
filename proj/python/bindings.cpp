#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "ecca/bounds.hpp"
#include "ecca/codec.hpp"
#include "ecca/counting.hpp"
#include "ecca/coverage.hpp"
#include "ecca/engine.hpp"
#include "ecca/optimizer.hpp"
#include "ecca/predictor.hpp"
#include "ecca/tables.hpp"

namespace py = pybind11;
using namespace ecca;

namespace {

py::int_ to_py_int(const mpz_class& z) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

predictor::Route route_from(const std::string& name) {
    if (name == "general") return predictor::Route::General;
    if (name == "optimized") return predictor::Route::Optimized;
    throw std::invalid_argument("route must be 'general' or 'optimized'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "covering array construction, verification and bound calculation";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InconsistentRecordError>(m, "InconsistentRecordError",
                                                    PyExc_ValueError);
    py::register_exception<InputExhaustedError>(m, "InputExhaustedError", PyExc_RuntimeError);
    py::register_exception<EnumerationLimitError>(m, "EnumerationLimitError", PyExc_RuntimeError);
    py::register_exception<VacuousBoundError>(m, "VacuousBoundError", PyExc_ArithmeticError);

    py::class_<CAParams>(m, "CAParams")
        .def(py::init<int, int, int, std::int64_t>(), py::arg("t"), py::arg("k"), py::arg("v"),
             py::arg("m"))
        .def_readonly("t", &CAParams::t)
        .def_readonly("k", &CAParams::k)
        .def_readonly("v", &CAParams::v)
        .def_readonly("m", &CAParams::m)
        .def_property_readonly("rows", &CAParams::rows)
        .def(py::self == py::self)
        .def("__repr__", [](const CAParams& p) {
            std::ostringstream os;
            os << "CAParams(t=" << p.t << ", k=" << p.k << ", v=" << p.v << ", m=" << p.m << ")";
            return os.str();
        });

    py::class_<ArrayShape>(m, "ArrayShape")
        .def_readonly("t", &ArrayShape::t)
        .def_readonly("k", &ArrayShape::k)
        .def_readonly("v", &ArrayShape::v)
        .def_readonly("rows", &ArrayShape::rows)
        .def(py::self == py::self)
        .def("__repr__", [](const ArrayShape& s) {
            std::ostringstream os;
            os << "ArrayShape(t=" << s.t << ", k=" << s.k << ", v=" << s.v << ", rows=" << s.rows
               << ")";
            return os.str();
        });

    py::class_<PartialArray>(m, "PartialArray")
        .def(py::init<const CAParams&>())
        .def_property_readonly("shape", &PartialArray::shape)
        .def("has_column", &PartialArray::has_column)
        .def("column", &PartialArray::column)
        .def("set_column", &PartialArray::set_column)
        .def("clear_column", &PartialArray::clear_column)
        .def_property_readonly("empty_indices", &PartialArray::empty_indices)
        .def_property_readonly("complete", &PartialArray::complete)
        .def_property_readonly("columns",
                               [](const PartialArray& a) {
                                   py::list out;
                                   for (int c = 0; c < a.shape().k; ++c) {
                                       if (a.has_column(c))
                                           out.append(py::cast(a.column(c)));
                                       else
                                           out.append(py::none());
                                   }
                                   return out;
                               })
        .def(py::self == py::self);

    m.def("phi", &phi, "priority function: -1 when complete, else the minimum empty index");
    m.def(
        "is_a_covering",
        [](const std::vector<Column>& cols, int v) { return is_a_covering(cols, v); },
        py::arg("columns"), py::arg("v"));

    py::class_<VerifyReport::Failure>(m, "CoverageFailure")
        .def_readonly("columns", &VerifyReport::Failure::columns)
        .def_readonly("missing", &VerifyReport::Failure::missing);
    py::class_<VerifyReport>(m, "VerifyReport")
        .def_readonly("empty_slots", &VerifyReport::empty_slots)
        .def_readonly("failures", &VerifyReport::failures)
        .def_property_readonly("valid", &VerifyReport::is_covering_array);
    m.def("verify_ca", &verify_ca);

    py::class_<SuccessEntry>(m, "SuccessEntry")
        .def(py::init<>())
        .def("__repr__", [](const SuccessEntry&) { return "SuccessEntry()"; });
    py::class_<BacktrackEntry>(m, "BacktrackEntry")
        .def(py::init([](std::vector<int> tau_hat, std::vector<Column> content) {
                 return BacktrackEntry{std::move(tau_hat), std::move(content)};
             }),
             py::arg("tau_hat"), py::arg("content"))
        .def_readonly("tau_hat", &BacktrackEntry::tau_hat)
        .def_readonly("content", &BacktrackEntry::content);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("array", &RunResult::array)
        .def_readonly("record", &RunResult::record)
        .def_readonly("iterations", &RunResult::iterations_used)
        .def_readonly("success", &RunResult::success)
        .def_readonly("seed", &RunResult::seed);

    m.def(
        "run_columns",
        [](const CAParams& p, std::vector<Column> cols, std::optional<std::int64_t> budget) {
            auto stream = budget ? InputStream::from_columns(std::move(cols), *budget)
                                 : InputStream::from_columns(std::move(cols));
            return run(p, std::move(stream));
        },
        py::arg("params"), py::arg("columns"), py::arg("budget") = std::nullopt,
        "one run of the constructor on an explicit column sequence");
    m.def("run_until_success", &run_until_success, py::arg("params"), py::arg("seed"),
          py::arg("budget"), "seeded run; deterministic in (params, seed, budget)");
    m.def("iteration_trace", [](const RunResult& r) {
        py::list out;
        for (const auto& tp : iteration_trace(r))
            out.append(py::make_tuple(tp.empty_count, tp.backtracked));
        return out;
    });

    m.def("empty_sets", &empty_sets, py::arg("k"), py::arg("record"));
    m.def("reconstruct_states", &reconstruct_states, py::arg("array"), py::arg("record"));
    m.def("recover_input", &recover_input, py::arg("array"), py::arg("record"));

    m.def("parse_array", &parse_array);
    m.def("emit_array", &emit_array);
    m.def(
        "parse_record",
        [](const std::string& text) {
            auto [header, record] = parse_record(text);
            return py::make_tuple(header.params, header.seed, std::move(record));
        },
        "returns (params, seed or None, entries)");
    m.def(
        "emit_record",
        [](const CAParams& p, std::optional<std::uint64_t> seed, const Record& record) {
            return emit_record(RecordHeader{p, seed}, record);
        },
        py::arg("params"), py::arg("seed"), py::arg("record"));

    // exact counting
    m.def("balanced_column_count",
          [](const CAParams& p) { return to_py_int(balanced_column_count(p)); });
    m.def("all_balanced_columns", &all_balanced_columns);
    m.def(
        "count_noncovering_arrays",
        [](const CAParams& p, std::uint64_t guard) {
            return to_py_int(count_noncovering_arrays(p, guard));
        },
        py::arg("params"), py::arg("guard") = 100'000'000);
    m.def("noncovering_upper_bound",
          [](const CAParams& p) { return to_py_int(noncovering_upper_bound(p)); });

    // bounds
    m.def("entropy_h", &bounds::entropy_h);
    m.def("prefactor_l", &bounds::prefactor_l);
    m.def("prefactor_u", &bounds::prefactor_u);
    m.def(
        "binom_bounds",
        [](std::int64_t mm, int v) {
            const auto est = bounds::binom_bounds(mm, v);
            return py::make_tuple(est.log_lower, est.log_upper);
        },
        py::arg("m"), py::arg("v"), "natural logs of the two-sided estimate around C(mv, m)");
    m.def("q_min", &bounds::q_min, py::arg("c1"), py::arg("t"));
    m.def("existence_predicate", &bounds::existence_predicate, py::arg("params"), py::arg("c1"));
    m.def("d_bound_lll_classic",
          [](int t, int v) { return bounds::d_bound_lll_classic(t, v).value; });
    m.def("d_bound_ec_general",
          [](int t, int v) { return bounds::d_bound_ec_general(t, v).value; });
    m.def("d_bound_t2", [](int v) { return bounds::d_bound_t2(v).value; });
    m.def("d_bound_t3", [](int v) { return bounds::d_bound_t3(v).value; });
    m.def("xi_t3", &bounds::xi_t3);

    // optimizer
    m.def("f_product_form", [](int t, int v, const std::vector<double>& x) {
        return optimizer::f_product_form(t, v, x);
    });
    m.def("f_entropy_form", [](int t, int v, const std::vector<double>& x) {
        return optimizer::f_entropy_form(t, v, x);
    });
    m.def("f_gradient", [](int t, int v, const std::vector<double>& x) {
        return optimizer::f_gradient(t, v, x);
    });
    py::class_<optimizer::FPoint>(m, "FPoint")
        .def_readonly("x", &optimizer::FPoint::x)
        .def_readonly("f", &optimizer::FPoint::f)
        .def_readonly("gradient_norm", &optimizer::FPoint::gradient_norm);
    py::class_<optimizer::OptResult>(m, "OptResult")
        .def_readonly("best", &optimizer::OptResult::best)
        .def_readonly("restarts", &optimizer::OptResult::restarts)
        .def_readonly("converged_restarts", &optimizer::OptResult::converged_restarts)
        .def_readonly("spread", &optimizer::OptResult::spread)
        .def_readonly("converged", &optimizer::OptResult::converged);
    m.def("maximize_f", &optimizer::maximize_f, py::arg("t"), py::arg("v"),
          py::arg("restarts") = 64, py::arg("tolerance") = 1e-10);
    m.def("d_bound_from_f0",
          [](int t, int v, double f0) { return optimizer::d_bound_from_f0(t, v, f0).value; });

    // predictor
    py::class_<predictor::Prediction>(m, "Prediction")
        .def_readonly("t", &predictor::Prediction::t)
        .def_readonly("k", &predictor::Prediction::k)
        .def_readonly("v", &predictor::Prediction::v)
        .def_readonly("m", &predictor::Prediction::m)
        .def_readonly("rows", &predictor::Prediction::rows)
        .def_readonly("ln_rhs_at_m", &predictor::Prediction::ln_rhs_at_m)
        .def_readonly("ln_rhs_at_prev", &predictor::Prediction::ln_rhs_at_prev)
        .def_readonly("f0", &predictor::Prediction::f0)
        .def_property_readonly("route", [](const predictor::Prediction& p) {
            return predictor::route_name(p.route);
        });
    m.def(
        "smallest_m",
        [](int t, std::int64_t k, int v, const std::string& route, std::optional<double> f0) {
            const auto r = route_from(route);
            return f0 ? predictor::smallest_m(t, k, v, r, *f0) : predictor::smallest_m(t, k, v, r);
        },
        py::arg("t"), py::arg("k"), py::arg("v"), py::arg("route") = "optimized",
        py::arg("f0") = std::nullopt);
    m.def("f0_for", &predictor::f0_for, py::arg("t"), py::arg("v"));
    m.def(
        "figure_curve",
        [](int t, int v, const std::vector<std::int64_t>& ks, const std::string& route,
           int threads) {
            py::list out;
            for (const auto& p : predictor::figure_curve(t, v, ks, route_from(route), threads))
                out.append(py::make_tuple(p.k, p.rows));
            return out;
        },
        py::arg("t"), py::arg("v"), py::arg("ks"), py::arg("route") = "optimized",
        py::arg("threads") = 1);
    m.def("juxtapose_t2", &predictor::juxtapose_t2, py::arg("v"), py::arg("k"));
    m.def(
        "regression_slope",
        [](const std::vector<std::pair<std::int64_t, std::int64_t>>& pts) {
            std::vector<predictor::CurvePoint> cp;
            cp.reserve(pts.size());
            for (const auto& [k, n] : pts) cp.push_back({k, n});
            return predictor::regression_slope(cp);
        },
        py::arg("points"), "least-squares slope of N against log2 k over (k, N) pairs");

    // tables
    m.def(
        "table_json",
        [](int which, int restarts, double tolerance) {
            tables::Table t;
            if (which == 1)
                t = tables::bounds_by_strength(restarts, tolerance);
            else if (which == 2)
                t = tables::strength2_comparison(nullptr);
            else if (which == 3)
                t = tables::strength6_comparison(restarts, tolerance);
            else
                throw std::invalid_argument("table number must be 1, 2 or 3");
            return tables::render_json(t);
        },
        py::arg("which"), py::arg("restarts") = 64, py::arg("tolerance") = 1e-10);
}
