#pragma once

#include "demogdp/analysis.hpp"
#include "demogdp/model.hpp"
#include "demogdp/run.hpp"
#include "demogdp/series.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// File formats
// ------------
// Series:   year,value,unit=<unit>[,dollar_base=<label>][,<key>=<value>...]
//           <year>,<value>            one row per year, contiguous, ascending
// Pyramid:  age,count,reference_year=<year>
//           <age>,<count>             ages 0..max contiguous
// Config:   key=value per line; '#' starts a comment line
// Run:      [# key=value ...]         effective configuration, optional
//           year,observed,predicted,residual
//
// Series and pyramid files may also carry '#' comment lines.

namespace demogdp::io {

using KeyValues = std::map<std::string, std::string>;

/// Shortest representation that reads back to the same double.
[[nodiscard]] std::string format_exact(double value);
/// Six significant digits, as written to run and report files.
[[nodiscard]] std::string format_sig6(double value);

[[nodiscard]] AnnualSeries parse_series(std::string_view text, const std::string &source,
                                        std::optional<Unit> expected_unit = std::nullopt);
[[nodiscard]] AnnualSeries read_series(const std::filesystem::path &path,
                                       std::optional<Unit> expected_unit = std::nullopt);
[[nodiscard]] std::string format_series(const AnnualSeries &series);
void write_series(const AnnualSeries &series, const std::filesystem::path &path);

[[nodiscard]] AgePyramid parse_pyramid(std::string_view text, const std::string &source);
[[nodiscard]] AgePyramid read_pyramid(const std::filesystem::path &path);
[[nodiscard]] std::string format_pyramid(const AgePyramid &pyramid);
void write_pyramid(const AgePyramid &pyramid, const std::filesystem::path &path);

[[nodiscard]] KeyValues parse_key_values(std::string_view text, const std::string &source);

/// Reads a config file. Values of file-binding keys are resolved against
/// the config file's directory.
[[nodiscard]] KeyValues read_config_values(const std::filesystem::path &path);

/// True for keys whose value names an input file.
[[nodiscard]] bool is_file_key(std::string_view key);

/// Per-country model configuration.
struct CountryConfig {
    std::string country_code;
    int defining_age = 9;
    std::optional<model::TcrAnchor> tcr_anchor;
    std::optional<double> trend_increment;
    std::map<int, double> correction_ratios;
    std::string dollar_base;
    ChangeConvention convention = ChangeConvention::log;
    /// gdp, gdp_percap, population, cohort, target, pyramid.<year>
    std::map<std::string, std::filesystem::path> files;
    /// Everything else, kept for subcommand-specific lookups.
    KeyValues extra;

    [[nodiscard]] std::optional<std::filesystem::path> file(const std::string &key) const;
    /// Years with a bound pyramid file.
    [[nodiscard]] std::vector<int> pyramid_years() const;
};

/// Validates and converts merged key-values. Throws FormatError naming the
/// offending key.
[[nodiscard]] CountryConfig make_config(const KeyValues &values, const std::string &source);

[[nodiscard]] std::string format_run(const ModelRun &run,
                                     const std::vector<std::string> &metadata = {});
void write_run(const ModelRun &run, const std::filesystem::path &path,
               const std::vector<std::string> &metadata = {});
[[nodiscard]] ModelRun parse_run(std::string_view text, const std::string &source);

[[nodiscard]] std::string format_decomposition_text(const analysis::DecompositionReport &report);
[[nodiscard]] std::string format_decomposition_csv(const analysis::DecompositionReport &report);

[[nodiscard]] std::string read_text(const std::filesystem::path &path);
void write_text(const std::filesystem::path &path, std::string_view text);

} // namespace demogdp::io
