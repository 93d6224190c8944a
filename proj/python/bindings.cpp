#include "cli.hpp"

#include "demogdp/analysis.hpp"
#include "demogdp/calibration.hpp"
#include "demogdp/cohort.hpp"
#include "demogdp/errors.hpp"
#include "demogdp/inversion.hpp"
#include "demogdp/io.hpp"
#include "demogdp/model.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace demogdp;

namespace {

Unit unit_from(const std::string &name) {
    if (auto u = parse_unit(name)) {
        return *u;
    }
    throw DomainError("unknown unit '" + name + "'");
}

ChangeConvention convention_from(const std::string &name) {
    if (auto c = parse_convention(name)) {
        return *c;
    }
    throw DomainError("convention must be 'log' or 'relative'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Demographic model of real GDP growth";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<RangeError>(m, "RangeError", base.ptr());
    py::register_exception<AlignmentError>(m, "AlignmentError", base.ptr());
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError", base.ptr());
    py::register_exception<FormatError>(m, "FormatError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    py::class_<YearRange>(m, "YearRange")
        .def(py::init<int, int>(), py::arg("first"), py::arg("last"))
        .def_readwrite("first", &YearRange::first)
        .def_readwrite("last", &YearRange::last)
        .def("__len__", &YearRange::length)
        .def("__repr__", [](const YearRange &r) { return "YearRange(" + to_string(r) + ")"; });

    py::class_<AnnualSeries>(m, "AnnualSeries")
        .def(py::init([](int start, std::vector<double> values, const std::string &unit,
                         std::string base) {
                 return AnnualSeries{start, std::move(values), unit_from(unit), std::move(base)};
             }),
             py::arg("start_year"), py::arg("values"), py::arg("unit"),
             py::arg("dollar_base") = "")
        .def_property_readonly("start_year", &AnnualSeries::start_year)
        .def_property_readonly("end_year", &AnnualSeries::end_year)
        .def_property_readonly("unit", [](const AnnualSeries &s) { return std::string{to_string(s.unit())}; })
        .def_property_readonly("dollar_base", &AnnualSeries::dollar_base)
        .def_property_readonly("values", [](const AnnualSeries &s) {
            return std::vector<double>(s.values().begin(), s.values().end());
        })
        .def("years", [](const AnnualSeries &s) {
            std::vector<int> y;
            for (int t = s.start_year(); t <= s.end_year(); ++t) {
                y.push_back(t);
            }
            return y;
        })
        .def("at", &AnnualSeries::at, py::arg("year"))
        .def("slice", &AnnualSeries::slice, py::arg("first"), py::arg("last"))
        .def("__len__", &AnnualSeries::size)
        .def("__eq__", [](const AnnualSeries &a, const AnnualSeries &b) { return a == b; })
        .def("__repr__", [](const AnnualSeries &s) {
            return "AnnualSeries(" + to_string(s.range()) + ", " + std::string{to_string(s.unit())} + ")";
        });

    py::class_<AgePyramid>(m, "AgePyramid")
        .def(py::init<int, std::vector<double>>(), py::arg("reference_year"), py::arg("counts"))
        .def_property_readonly("reference_year", &AgePyramid::reference_year)
        .def_property_readonly("max_age", &AgePyramid::max_age)
        .def("count", &AgePyramid::count, py::arg("age"));

    m.def("relative_change", &relative_change);
    m.def("log_change", &log_change);

    m.def("trend_term", &model::trend_term, py::arg("tcr"));
    m.def("evolve_tcr",
          [](int year, double value, const AnnualSeries &gpc) {
              return model::evolve_tcr({year, value}, gpc);
          },
          py::arg("anchor_year"), py::arg("anchor_value"), py::arg("gpc"));
    m.def("predict_growth",
          [](const AnnualSeries &cohort, int anchor_year, double anchor_value,
             const AnnualSeries &gpc, const std::string &conv) {
              return model::predict_growth(
                  cohort, model::TrendSpec::reciprocal_tcr({anchor_year, anchor_value}), gpc,
                  convention_from(conv));
          },
          py::arg("cohort"), py::arg("anchor_year"), py::arg("anchor_value"), py::arg("gpc"),
          py::arg("convention") = "log");
    m.def("predict_growth_percap",
          [](const AnnualSeries &cohort, double a, const AnnualSeries &gpc,
             const std::string &conv) {
              return model::predict_growth_percap(cohort, a, gpc, convention_from(conv));
          },
          py::arg("cohort"), py::arg("increment"), py::arg("gpc"), py::arg("convention") = "log");

    m.def("recover_population",
          [](int initial_year, double initial_count, int anchor_year, double anchor_value,
             const AnnualSeries &growth, const AnnualSeries &gpc, const std::string &conv) {
              const inversion::InversionSetup setup{
                  initial_year, initial_count,
                  model::TrendSpec::reciprocal_tcr({anchor_year, anchor_value}), growth,
                  inversion::update_rule_for(convention_from(conv))};
              return inversion::recover_population(setup, gpc);
          },
          py::arg("initial_year"), py::arg("initial_count"), py::arg("anchor_year"),
          py::arg("anchor_value"), py::arg("observed_growth"), py::arg("gpc"),
          py::arg("convention") = "log");
    m.def("fit_initial_count",
          [](double lo, double hi, const AnnualSeries &target, int first, int last,
             int initial_year, int anchor_year, double anchor_value, const AnnualSeries &growth,
             const AnnualSeries &gpc) {
              const inversion::InversionSetup setup{
                  initial_year, 1.0, model::TrendSpec::reciprocal_tcr({anchor_year, anchor_value}),
                  growth};
              const auto fit =
                  inversion::fit_initial_count({lo, hi}, target, {first, last}, setup, gpc);
              return py::make_tuple(fit.initial_count, fit.rmse);
          },
          py::arg("n0_min"), py::arg("n0_max"), py::arg("target"), py::arg("window_start"),
          py::arg("window_end"), py::arg("initial_year"), py::arg("anchor_year"),
          py::arg("anchor_value"), py::arg("observed_growth"), py::arg("gpc"));

    m.def("project_cohort",
          [](const AgePyramid &p, int age) { return cohort::project_cohort(p, age).series; },
          py::arg("pyramid"), py::arg("age"));
    m.def("calibrate_defining_age",
          [](const AgePyramid &p, const AnnualSeries &growth, int anchor_year,
             double anchor_value, const AnnualSeries &gpc) {
              const auto r = calibration::calibrate_defining_age(
                  calibration::cohorts_from_pyramid(p), growth,
                  model::TrendSpec::reciprocal_tcr({anchor_year, anchor_value}), gpc);
              return py::make_tuple(r.best_age, r.per_age_scores);
          },
          py::arg("pyramid"), py::arg("observed_growth"), py::arg("anchor_year"),
          py::arg("anchor_value"), py::arg("gpc"));
    m.def("mean_increment", &calibration::mean_increment, py::arg("gpc"));
    m.def("fit_trend_preserving", &calibration::fit_trend_preserving,
          py::arg("observed_growth"), py::arg("gpc"));

    m.def("decompose",
          [](double n0, double n1, double g0, double g1, int first, int last,
             const std::string &total) {
              if (total != "ratio" && total != "net_gain") {
                  throw DomainError("total must be 'ratio' or 'net_gain'");
              }
              const auto r = analysis::decompose(
                  {n0, n1, g0, g1, {first, last},
                   total == "ratio" ? analysis::TotalGrowth::ratio
                                    : analysis::TotalGrowth::net_gain});
              py::dict d;
              d["total_factor"] = r.total_factor;
              d["population_component"] = r.population_component;
              d["trend_component"] = r.trend_component;
              d["population_share"] = r.population_share;
              d["mean_increment"] = r.mean_increment;
              d["trend_dollars"] = r.trend_dollars;
              d["population_dollars"] = r.population_dollars;
              return d;
          },
          py::arg("cohort_start"), py::arg("cohort_end"), py::arg("gpc_start"),
          py::arg("gpc_end"), py::arg("first_year"), py::arg("last_year"),
          py::arg("total") = "ratio");
    m.def("compounding_demo",
          [](double mean, double amplitude, int years) {
              const auto d = analysis::compounding_demo(mean, amplitude, years);
              return py::make_tuple(d.oscillating, d.smooth);
          },
          py::arg("mean"), py::arg("amplitude"), py::arg("years"));

    m.def("read_series", [](const std::filesystem::path &p) { return io::read_series(p); });
    m.def("read_pyramid", &io::read_pyramid);
    m.def("write_series", &io::write_series, py::arg("series"), py::arg("path"));

    m.def("run_cli",
          [](const std::vector<std::string> &args) {
              std::ostringstream out;
              std::ostringstream err;
              const int status = cli::run(args, out, err);
              return py::make_tuple(status, out.str(), err.str());
          },
          py::arg("args"), "Runs one CLI command line; returns (status, stdout, stderr).");
}
