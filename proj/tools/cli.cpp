#include "cli.hpp"

#include "demogdp/analysis.hpp"
#include "demogdp/calibration.hpp"
#include "demogdp/cohort.hpp"
#include "demogdp/errors.hpp"
#include "demogdp/inversion.hpp"
#include "demogdp/io.hpp"
#include "demogdp/model.hpp"
#include "demogdp/run.hpp"

#include <CLI11.hpp>

#include <array>
#include <charconv>
#include <cstdio>
#include <deque>
#include <functional>
#include <ostream>

namespace demogdp::cli {

namespace {

namespace fs = std::filesystem;

/// Missing or malformed command-line input; exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fixed(double v, int decimals) {
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.*f", decimals, v);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::string sig(double v) { return io::format_sig6(v); }

/// Merged configuration for one invocation plus typed accessors.
class Context {
public:
    Context(std::string subcommand, io::KeyValues values)
        : subcommand_{std::move(subcommand)}, values_{std::move(values)},
          config_{io::make_config(values_, "configuration")} {}

    [[nodiscard]] const io::CountryConfig &config() const { return config_; }
    [[nodiscard]] const std::string &subcommand() const { return subcommand_; }

    [[nodiscard]] std::optional<std::string> get(const std::string &key) const {
        const auto it = values_.find(key);
        if (it == values_.end() || it->second.empty()) {
            return std::nullopt;
        }
        return it->second;
    }

    [[nodiscard]] std::string require(const std::string &key) const {
        if (auto v = get(key)) {
            return *v;
        }
        throw UsageError("missing required input '" + key + "' (set it in the config, with --set " +
                         key + "=..., or with the matching flag)");
    }

    [[nodiscard]] std::optional<double> real(const std::string &key) const {
        const auto v = get(key);
        if (!v) {
            return std::nullopt;
        }
        double x = 0.0;
        const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
        if (ec != std::errc{} || ptr != v->data() + v->size()) {
            throw UsageError("'" + key + "' must be a number, got '" + *v + "'");
        }
        return x;
    }

    [[nodiscard]] std::optional<int> integer(const std::string &key) const {
        const auto v = get(key);
        if (!v) {
            return std::nullopt;
        }
        int x = 0;
        const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
        if (ec != std::errc{} || ptr != v->data() + v->size()) {
            throw UsageError("'" + key + "' must be an integer, got '" + *v + "'");
        }
        return x;
    }

    [[nodiscard]] double require_real(const std::string &key) const {
        (void)require(key);
        return *real(key);
    }

    [[nodiscard]] int require_int(const std::string &key) const {
        (void)require(key);
        return *integer(key);
    }

    [[nodiscard]] std::optional<YearRange> window() const {
        const auto first = integer("window_start");
        const auto last = integer("window_end");
        if (!first && !last) {
            return std::nullopt;
        }
        if (!first || !last) {
            throw UsageError("window needs both window_start and window_end");
        }
        if (*first > *last) {
            throw UsageError("window_start must not exceed window_end");
        }
        return YearRange{*first, *last};
    }

    /// Effective configuration echoed into output files.
    [[nodiscard]] std::vector<std::string> metadata() const {
        std::vector<std::string> lines{"subcommand=" + subcommand_};
        for (const auto &[k, v] : values_) {
            // The destination is left out so content does not depend on it.
            if (k != "output") {
                lines.push_back(k + "=" + v);
            }
        }
        return lines;
    }

    [[nodiscard]] fs::path file(const std::string &key) const {
        if (auto p = config_.file(key)) {
            return *p;
        }
        throw UsageError("no file bound to '" + key + "'");
    }

    [[nodiscard]] bool has_file(const std::string &key) const {
        return config_.file(key).has_value();
    }

    [[nodiscard]] std::optional<fs::path> output() const {
        if (auto o = get("output")) {
            return fs::path{*o};
        }
        return std::nullopt;
    }

private:
    std::string subcommand_;
    io::KeyValues values_;
    io::CountryConfig config_;
};

// ---------------------------------------------------------------------------
// Data loading

void check_base(const Context &ctx, const AnnualSeries &s, const fs::path &path) {
    const auto &want = ctx.config().dollar_base;
    if (!want.empty() && !s.dollar_base().empty() && s.dollar_base() != want) {
        throw FormatError(path.string(), 0,
                          "dollar base '" + s.dollar_base() + "' differs from configured '" +
                              want + "'");
    }
}

AnnualSeries load_dollars(const Context &ctx, const std::string &key) {
    const fs::path path = ctx.file(key);
    AnnualSeries s = io::read_series(path, Unit::dollars_real);
    check_base(ctx, s, path);
    return s;
}

AnnualSeries load_gdp(const Context &ctx) { return load_dollars(ctx, "gdp"); }

/// Published per-capita GDP: the bound file, or GDP divided by population.
AnnualSeries load_gpc(const Context &ctx) {
    if (ctx.has_file("gdp_percap")) {
        return load_dollars(ctx, "gdp_percap");
    }
    if (ctx.has_file("gdp") && ctx.has_file("population")) {
        return model::percap_from_totals(load_gdp(ctx),
                                         io::read_series(ctx.file("population"), Unit::persons));
    }
    throw UsageError("per-capita GDP needs 'gdp_percap' or both 'gdp' and 'population'");
}

/// Per-capita GDP for the per-capita model: scaled by total / 15+ population
/// when correction ratios are configured (percap_correction=off disables it).
AnnualSeries load_gpc_for_percap(const Context &ctx) {
    AnnualSeries gpc = load_gpc(ctx);
    const auto &ratios = ctx.config().correction_ratios;
    if (ratios.empty() || ctx.get("percap_correction") == std::optional<std::string>{"off"}) {
        return gpc;
    }
    return analysis::percap_correction(gpc, analysis::interpolate_ratios(ratios, gpc.range()));
}

AgePyramid load_pyramid(const Context &ctx) {
    const int year = ctx.require_int("pyramid_year");
    return io::read_pyramid(ctx.file("pyramid." + std::to_string(year)));
}

int target_age(const Context &ctx) {
    return ctx.integer("age").value_or(ctx.config().defining_age);
}

/// Defining-age cohort: an explicit cohort file wins over a pyramid projection.
AnnualSeries load_cohort(const Context &ctx, std::ostream &err) {
    if (ctx.has_file("cohort")) {
        return io::read_series(ctx.file("cohort"), Unit::persons);
    }
    if (!ctx.get("pyramid_year")) {
        throw UsageError("cohort input needs a 'cohort' file or 'pyramid_year'");
    }
    auto projection = cohort::project_cohort(load_pyramid(ctx), target_age(ctx));
    for (const auto &w : projection.warnings) {
        err << ctx.subcommand() << ": warning: " << w << '\n';
    }
    return std::move(projection.series);
}

/// Population estimate to compare a recovered series with (optional).
std::optional<AnnualSeries> load_target(const Context &ctx, std::ostream &err) {
    if (ctx.has_file("target")) {
        return io::read_series(ctx.file("target"), Unit::persons);
    }
    if (ctx.get("pyramid_year")) {
        return load_cohort(ctx, err);
    }
    return std::nullopt;
}

model::TrendSpec tcr_trend(const Context &ctx) {
    if (!ctx.config().tcr_anchor) {
        throw UsageError("this subcommand needs tcr_anchor_year and tcr_anchor_value");
    }
    return model::TrendSpec::reciprocal_tcr(*ctx.config().tcr_anchor);
}

ChangeConvention convention(const Context &ctx) { return ctx.config().convention; }

AnnualSeries restrict(const AnnualSeries &s, std::optional<YearRange> window) {
    if (!window) {
        return s;
    }
    const auto common = intersect(s.range(), *window);
    if (!common) {
        throw RangeError("window " + to_string(*window) + " outside " + to_string(s.range()));
    }
    return s.slice(common->first, common->last);
}

/// Constant increment A: configured, or fitted by the growth-preserving rule.
double percap_increment(const Context &ctx, const AnnualSeries &gpc, std::string &note) {
    if (ctx.config().trend_increment) {
        note = "A=" + sig(*ctx.config().trend_increment);
        return *ctx.config().trend_increment;
    }
    const double a = calibration::fit_trend_preserving(
        restrict(relative_change(gpc), ctx.window()), gpc);
    note = "A=" + sig(a) + " (fitted)";
    return a;
}

void emit(const Context &ctx, const std::string &text) {
    if (auto path = ctx.output()) {
        io::write_text(*path, text);
    }
}

void emit_run(const Context &ctx, const ModelRun &run) {
    if (auto path = ctx.output()) {
        io::write_run(run, *path, ctx.metadata());
    }
}

std::string metadata_block(const Context &ctx) {
    std::string out;
    for (const auto &line : ctx.metadata()) {
        out += "# " + line + '\n';
    }
    return out;
}

std::string describe_fit(const ModelRun &run) {
    const auto d = diagnose(run);
    return "paired=" + std::to_string(d.paired_points) + " rmse=" + sig(d.rmse);
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_predict(const Context &ctx, std::ostream &out, std::ostream &err) {
    const AnnualSeries cohort = load_cohort(ctx, err);
    const AnnualSeries gpc = load_gpc(ctx);
    const AnnualSeries predicted =
        model::predict_growth(cohort, tcr_trend(ctx), gpc, convention(ctx));
    const AnnualSeries observed = relative_change(load_gdp(ctx));
    const ModelRun run = make_run("gdp_growth", observed, restrict(predicted, ctx.window()));
    emit_run(ctx, run);
    out << "predict: " << ctx.config().country_code << " age " << target_age(ctx) << " years "
        << to_string(predicted.range()) << ' ' << describe_fit(run) << '\n';
}

void cmd_predict_percap(const Context &ctx, std::ostream &out, std::ostream &err) {
    const AnnualSeries cohort = load_cohort(ctx, err);
    const AnnualSeries gpc = load_gpc_for_percap(ctx);
    std::string note;
    const double a = percap_increment(ctx, gpc, note);
    const AnnualSeries predicted = model::predict_growth_percap(cohort, a, gpc, convention(ctx));
    const ModelRun run =
        make_run("gdp_percap_growth", relative_change(gpc), restrict(predicted, ctx.window()));
    emit_run(ctx, run);
    out << "predict-percap: " << ctx.config().country_code << " age " << target_age(ctx) << ' '
        << note << " years " << to_string(predicted.range()) << ' ' << describe_fit(run) << '\n';
}

inversion::InversionSetup make_setup(const Context &ctx, model::TrendSpec trend,
                                     AnnualSeries growth) {
    return inversion::InversionSetup{ctx.require_int("initial_year"),
                                     ctx.real("initial_count").value_or(1.0), std::move(trend),
                                     std::move(growth),
                                     inversion::update_rule_for(convention(ctx))};
}

void report_inversion(const Context &ctx, const std::string &name, const AnnualSeries &recovered,
                      const std::optional<AnnualSeries> &target, std::ostream &out) {
    const ModelRun run = make_run(name, target, recovered);
    emit_run(ctx, run);
    out << ctx.subcommand() << ": " << ctx.config().country_code << " N("
        << recovered.start_year() << ")=" << sig(recovered.front()) << " years "
        << to_string(recovered.range());
    if (target) {
        const auto band = band_coverage(recovered, *target, 0.05, ctx.window());
        out << ' ' << describe_fit(run) << " band5%=" << band.inside << '/' << band.compared;
    }
    out << '\n';
}

void cmd_invert(const Context &ctx, std::ostream &out, std::ostream &err) {
    const AnnualSeries gpc = load_gpc(ctx);
    auto setup = make_setup(ctx, tcr_trend(ctx), relative_change(load_gdp(ctx)));
    setup.initial_count = ctx.require_real("initial_count");
    const AnnualSeries recovered = inversion::recover_population(setup, gpc);
    report_inversion(ctx, "cohort", recovered, load_target(ctx, err), out);
}

void cmd_invert_percap(const Context &ctx, std::ostream &out, std::ostream &err) {
    const AnnualSeries gpc = load_gpc_for_percap(ctx);
    std::string note;
    const double a = percap_increment(ctx, gpc, note);
    auto setup = make_setup(ctx, model::TrendSpec::constant_increment(a), relative_change(gpc));
    setup.initial_count = ctx.require_real("initial_count");
    const AnnualSeries recovered = inversion::recover_population_percap(setup, gpc);
    report_inversion(ctx, "cohort", recovered, load_target(ctx, err), out);
}

void cmd_fit_n0(const Context &ctx, std::ostream &out, std::ostream &err) {
    const bool percap = ctx.get("model") == std::optional<std::string>{"percap"};
    const AnnualSeries gpc = percap ? load_gpc_for_percap(ctx) : load_gpc(ctx);
    std::string note;
    auto setup = percap ? make_setup(ctx, model::TrendSpec::constant_increment(
                                              percap_increment(ctx, gpc, note)),
                                     relative_change(gpc))
                        : make_setup(ctx, tcr_trend(ctx), relative_change(load_gdp(ctx)));
    const auto target = load_target(ctx, err);
    if (!target) {
        throw UsageError("fit-n0 needs a target: a 'target' file or 'pyramid_year'");
    }
    const auto window = ctx.window();
    if (!window) {
        throw UsageError("fit-n0 needs window_start and window_end");
    }
    const double lo = ctx.real("n0_min").value_or(1'000'000.0);
    const double hi = ctx.real("n0_max").value_or(10'000'000.0);
    const auto fit = inversion::fit_initial_count({lo, hi}, *target, *window, setup, gpc);
    setup.initial_count = fit.initial_count;
    const AnnualSeries recovered = percap ? inversion::recover_population_percap(setup, gpc)
                                          : inversion::recover_population(setup, gpc);
    emit_run(ctx, make_run("cohort", target, recovered));
    const auto band = band_coverage(recovered, *target, 0.05, window);
    out << "fit-n0: " << ctx.config().country_code << " N(" << setup.initial_year
        << ")=" << fixed(fit.initial_count, 0) << " rmse=" << sig(fit.rmse) << " window "
        << to_string(*window) << " band5%=" << band.inside << '/' << band.compared
        << (note.empty() ? "" : " " + note) << '\n';
}

void cmd_calibrate_age(const Context &ctx, std::ostream &out, std::ostream & /*err*/) {
    const int lo = ctx.integer("min_age").value_or(calibration::min_candidate_age);
    const int hi = ctx.integer("max_age").value_or(calibration::max_candidate_age);
    const auto cohorts = calibration::cohorts_from_pyramid(load_pyramid(ctx), lo, hi);
    const auto result = calibration::calibrate_defining_age(
        cohorts, relative_change(load_gdp(ctx)), tcr_trend(ctx), load_gpc(ctx), ctx.window(),
        convention(ctx));
    std::string csv = metadata_block(ctx) + "age,rmse\n";
    for (const auto &[age, score] : result.per_age_scores) {
        csv += std::to_string(age) + ',' + sig(score) + '\n';
    }
    emit(ctx, csv);
    out << "calibrate-age: " << ctx.config().country_code << " best_age=" << result.best_age
        << " rmse=" << sig(result.per_age_scores.at(result.best_age)) << " margin="
        << (result.runner_up_margin ? sig(*result.runner_up_margin) : std::string{"n/a"})
        << " candidates=" << result.per_age_scores.size() << '\n';
}

void cmd_fit_trend(const Context &ctx, std::ostream &out, std::ostream & /*err*/) {
    const AnnualSeries gpc = load_gpc_for_percap(ctx);
    const AnnualSeries growth = restrict(relative_change(gpc), ctx.window());
    const double a = calibration::fit_trend_preserving(growth, gpc);
    const double ols = calibration::fit_trend_least_squares(growth, gpc);
    const AnnualSeries trend =
        model::trend_series(model::TrendSpec::constant_increment(a), restrict(gpc, growth.range()));
    emit_run(ctx, make_run("trend_A_over_G", growth, trend));
    out << "fit-trend: " << ctx.config().country_code << " years " << to_string(growth.range())
        << " A=" << sig(a) << " least_squares_A=" << sig(ols) << '\n';
}

void cmd_mean_increment(const Context &ctx, std::ostream &out, std::ostream & /*err*/) {
    const bool corrected = ctx.get("corrected") == std::optional<std::string>{"on"};
    const AnnualSeries gpc = restrict(corrected ? load_gpc_for_percap(ctx) : load_gpc(ctx),
                                      ctx.window());
    const double a = calibration::mean_increment(gpc);
    emit(ctx, metadata_block(ctx) + "first_year,last_year,mean_increment\n" +
                  std::to_string(gpc.start_year()) + ',' + std::to_string(gpc.end_year()) + ',' +
                  sig(a) + '\n');
    out << "mean-increment: " << ctx.config().country_code << " years "
        << to_string(gpc.range()) << " A=" << sig(a) << '\n';
}

void cmd_decompose(const Context &ctx, std::ostream &out, std::ostream &err) {
    analysis::DecompositionInput in{};
    in.period = YearRange{ctx.require_int("window_start"), ctx.require_int("window_end")};
    const auto total = ctx.get("total").value_or("ratio");
    if (total != "ratio" && total != "net_gain") {
        throw UsageError("total must be 'ratio' or 'net_gain'");
    }
    in.total = total == "ratio" ? analysis::TotalGrowth::ratio : analysis::TotalGrowth::net_gain;

    const auto cohort_start = ctx.real("cohort_start");
    const auto cohort_end = ctx.real("cohort_end");
    if (cohort_start && cohort_end) {
        in.cohort_start = *cohort_start;
        in.cohort_end = *cohort_end;
    } else {
        const AnnualSeries cohort = load_cohort(ctx, err);
        const int first = ctx.integer("cohort_first_year").value_or(in.period.first);
        const int last = ctx.integer("cohort_last_year").value_or(in.period.last);
        in.cohort_start = cohort.at(first);
        in.cohort_end = cohort.at(last);
    }
    const auto gpc_start = ctx.real("gpc_start");
    const auto gpc_end = ctx.real("gpc_end");
    if (gpc_start && gpc_end) {
        in.gpc_start = *gpc_start;
        in.gpc_end = *gpc_end;
    } else {
        const AnnualSeries gpc = load_gpc(ctx);
        in.gpc_start = gpc.at(in.period.first);
        in.gpc_end = gpc.at(in.period.last);
    }

    const auto report = analysis::decompose(in);
    const bool csv = ctx.get("format") == std::optional<std::string>{"csv"};
    emit(ctx, metadata_block(ctx) + (csv ? io::format_decomposition_csv(report)
                                         : io::format_decomposition_text(report)));
    out << "decompose: total=" << fixed(report.total_factor, 3)
        << " population=" << fixed(report.population_component, 3)
        << " trend=" << fixed(report.trend_component, 3)
        << " share=" << fixed(100.0 * report.population_share, 1) << "%"
        << " mean_increment=$" << fixed(report.mean_increment, 0)
        << " trend=$" << fixed(report.trend_dollars, 0)
        << " population=$" << fixed(report.population_dollars, 0) << '\n';
}

void cmd_project_cohort(const Context &ctx, std::ostream &out, std::ostream &err) {
    std::optional<YearRange> years;
    if (ctx.get("window_start") || ctx.get("window_end")) {
        years = YearRange{ctx.require_int("window_start"), ctx.require_int("window_end")};
    }
    const AgePyramid pyramid = load_pyramid(ctx);
    const auto projection = cohort::project_cohort(pyramid, target_age(ctx), years);
    for (const auto &w : projection.warnings) {
        err << "project-cohort: warning: " << w << '\n';
    }
    std::string csv = metadata_block(ctx) + "year,count,years_from_census\n";
    for (std::size_t i = 0; i < projection.series.size(); ++i) {
        csv += std::to_string(projection.series.start_year() + static_cast<int>(i)) + ',' +
               io::format_exact(projection.series.values()[i]) + ',' +
               std::to_string(projection.years_from_census[i]) + '\n';
    }
    emit(ctx, csv);
    out << "project-cohort: age " << projection.target_age << " from "
        << projection.reference_year << " pyramid years " << to_string(projection.series.range())
        << (projection.warnings.empty() ? "" : " (clipped)") << '\n';
}

void cmd_compounding_demo(const Context &ctx, std::ostream &out, std::ostream & /*err*/) {
    const double mean = ctx.require_real("mean");
    const double amplitude = ctx.require_real("amplitude");
    const int years = ctx.require_int("years");
    const auto demo = analysis::compounding_demo(mean, amplitude, years);
    emit(ctx, metadata_block(ctx) + "oscillating=" + io::format_exact(demo.oscillating) +
                  "\nsmooth=" + io::format_exact(demo.smooth) + '\n');
    out << "compounding-demo: oscillating=" << fixed(demo.oscillating, 4)
        << " smooth=" << fixed(demo.smooth, 4) << " years=" << years << '\n';
}

void cmd_validate(const Context &ctx, std::ostream &out, std::ostream & /*err*/) {
    const auto &cfg = ctx.config();
    std::string summary = "validate: " + cfg.country_code + " defining_age=" +
                          std::to_string(cfg.defining_age);
    for (const auto &[key, path] : cfg.files) {
        if (key.starts_with("pyramid.")) {
            const AgePyramid p = io::read_pyramid(path);
            if (std::to_string(p.reference_year()) != key.substr(8)) {
                throw FormatError(path.string(), 0,
                                  "reference year " + std::to_string(p.reference_year()) +
                                      " does not match key " + key);
            }
            summary += ' ' + key + "=ages 0-" + std::to_string(p.max_age());
        } else {
            const AnnualSeries s = io::read_series(path);
            check_base(ctx, s, path);
            summary += ' ' + key + '=' + to_string(s.range());
        }
    }
    if (ctx.has_file("gdp_percap") || (ctx.has_file("gdp") && ctx.has_file("population"))) {
        const AnnualSeries gpc = load_gpc(ctx);
        if (cfg.tcr_anchor && !gpc.contains(cfg.tcr_anchor->year)) {
            throw RangeError("T_cr anchor year " + std::to_string(cfg.tcr_anchor->year) +
                             " outside per-capita GDP " + to_string(gpc.range()));
        }
    }
    if (!cfg.tcr_anchor && !cfg.trend_increment) {
        summary += " (no trend configured: set tcr_anchor_* or trend_A)";
    }
    out << summary << '\n';
}

// ---------------------------------------------------------------------------
// Command table

struct Flag {
    const char *name;
    const char *key;
    const char *help;
};

struct Subcommand {
    const char *name;
    const char *help;
    std::vector<Flag> flags;
    std::function<void(const Context &, std::ostream &, std::ostream &)> action;
};

const Flag f_pyramid{"--pyramid-year", "pyramid_year", "Census year of the pyramid to project"};
const Flag f_age{"--age", "age", "Single year of age (default: the configured defining age)"};
const Flag f_from{"--from", "window_start", "First year of the window"};
const Flag f_to{"--to", "window_end", "Last year of the window"};
const Flag f_initial_year{"--initial-year", "initial_year", "Year of the initial cohort value"};
const Flag f_initial_count{"--initial-count", "initial_count", "Cohort size in the initial year"};
const Flag f_convention{"--convention", "convention", "Change convention: log or relative"};

std::vector<Subcommand> subcommands() {
    return {
        {"predict",
         "Predict real GDP growth g = 0.5 dN/N + 1/T_cr, with T_cr = T_cr(anchor) * "
         "sqrt(G_pc/G_pc(anchor))",
         {f_pyramid, f_age, f_from, f_to, f_convention},
         cmd_predict},
        {"predict-percap",
         "Predict per-capita GDP growth g_pc = 0.5 dN/N + A/G_pc",
         {f_pyramid, f_age, f_from, f_to, f_convention,
          {"--trend-a", "trend_A", "Constant annual increment A (fitted when absent)"}},
         cmd_predict_percap},
        {"invert",
         "Recover the defining-age cohort from GDP growth: d ln N = 2 (g - 1/T_cr)",
         {f_initial_year, f_initial_count, f_pyramid, f_age, f_from, f_to, f_convention},
         cmd_invert},
        {"invert-percap",
         "Recover the defining-age cohort from per-capita growth: d ln N = 2 (g_pc - A/G_pc)",
         {f_initial_year, f_initial_count, f_pyramid, f_age, f_from, f_to, f_convention,
          {"--trend-a", "trend_A", "Constant annual increment A (fitted when absent)"}},
         cmd_invert_percap},
        {"fit-n0",
         "Fit the initial cohort value N(t0) of the inversion d ln N = 2 (g - trend) to a "
         "population estimate",
         {f_initial_year, f_pyramid, f_age, f_from, f_to, f_convention,
          {"--n0-min", "n0_min", "Smallest candidate N(t0)"},
          {"--n0-max", "n0_max", "Largest candidate N(t0)"},
          {"--model", "model", "total (1/T_cr trend) or percap (A/G_pc trend)"}},
         cmd_fit_n0},
        {"calibrate-age",
         "Find the defining age whose cohort best explains g = 0.5 dN/N + 1/T_cr",
         {f_pyramid, f_from, f_to, f_convention,
          {"--min-age", "min_age", "Youngest candidate age"},
          {"--max-age", "max_age", "Oldest candidate age"}},
         cmd_calibrate_age},
        {"fit-trend",
         "Fit A in dG/(G dt) = A/G so that the total observed growth is preserved",
         {f_from, f_to},
         cmd_fit_trend},
        {"mean-increment",
         "Mean annual per-capita GDP increment A in dG/dt = A, G = A t + B",
         {f_from, f_to, {"--corrected", "corrected", "on: apply the 15+ population correction"}},
         cmd_mean_increment},
        {"decompose",
         "Split total per-capita growth into population (0.5 dN/N) and trend components",
         {f_from, f_to, f_pyramid, f_age,
          {"--cohort-start", "cohort_start", "Defining-age cohort at the start"},
          {"--cohort-end", "cohort_end", "Defining-age cohort at the end"},
          {"--gpc-start", "gpc_start", "Per-capita GDP at the start"},
          {"--gpc-end", "gpc_end", "Per-capita GDP at the end"},
          {"--total", "total", "ratio (G_end/G_start) or net_gain (G_end/G_start - 1)"},
          {"--format", "format", "text or csv"}},
         cmd_decompose},
        {"project-cohort",
         "Project a census pyramid onto one single year of age",
         {f_pyramid, f_age, f_from, f_to},
         cmd_project_cohort},
        {"compounding-demo",
         "Compare compounding of an oscillating growth rate with its constant mean",
         {{"--mean", "mean", "Mean growth rate"},
          {"--amplitude", "amplitude", "Oscillation amplitude"},
          {"--years", "years", "Number of years (even)"}},
         cmd_compounding_demo},
        {"validate", "Read and check every file bound in the configuration", {}, cmd_validate},
    };
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Demographic model of real GDP growth"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    struct Parsed {
        CLI::App *app;
        std::string config_path;
        std::vector<std::string> overrides;
        std::string output;
        std::deque<std::pair<const Flag *, std::string>> values;
        std::vector<CLI::Option *> options;
    };
    const auto table = subcommands();
    std::deque<Parsed> parsed;
    for (const auto &sub : table) {
        auto &p = parsed.emplace_back();
        p.app = app.add_subcommand(sub.name, sub.help);
        p.app->add_option("-c,--config", p.config_path, "Country configuration file");
        p.app->add_option("--set", p.overrides, "Override a configuration key (key=value)");
        p.app->add_option("-o,--output", p.output, "Output file");
        for (const auto &flag : sub.flags) {
            auto &slot = p.values.emplace_back(&flag, std::string{});
            p.options.push_back(p.app->add_option(flag.name, slot.second, flag.help));
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        // Subcommand --help surfaces here too.
        if (e.get_exit_code() == 0) {
            for (const auto &p : parsed) {
                if (p.app->parsed()) {
                    out << p.app->help();
                }
            }
            return exit_ok;
        }
        err << "demogdp: usage error: " << e.what() << '\n';
        return exit_usage;
    }

    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto &p = parsed[i];
        if (!p.app->parsed()) {
            continue;
        }
        const std::string name = table[i].name;
        try {
            io::KeyValues values;
            if (!p.config_path.empty()) {
                values = io::read_config_values(p.config_path);
            }
            for (const auto &kv : p.overrides) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos || eq == 0) {
                    throw UsageError("--set expects key=value, got '" + kv + "'");
                }
                values[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            for (std::size_t k = 0; k < p.values.size(); ++k) {
                if (p.options[k]->count() > 0) {
                    values[p.values[k].first->key] = p.values[k].second;
                }
            }
            if (!p.output.empty()) {
                values["output"] = p.output;
            }
            const Context ctx{name, std::move(values)};
            table[i].action(ctx, out, err);
            return exit_ok;
        } catch (const UsageError &e) {
            err << "demogdp " << name << ": usage error: " << e.what() << '\n';
            return exit_usage;
        } catch (const Error &e) {
            err << "demogdp " << name << ": error: " << e.what() << '\n';
            return exit_failure;
        } catch (const std::exception &e) {
            err << "demogdp " << name << ": error: " << e.what() << '\n';
            return exit_failure;
        }
    }
    err << "demogdp: usage error: no subcommand\n";
    return exit_usage;
}

} // namespace demogdp::cli
