#include "demogdp/io.hpp"

#include "demogdp/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace demogdp::io {

namespace {

namespace fs = std::filesystem;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        cells.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return cells;
}

struct Line {
    std::size_t number;
    std::string_view text;
};

/// Non-blank, non-comment lines with their 1-based numbers.
std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto pos = text.find('\n', start);
        const auto raw = text.substr(start, pos == std::string_view::npos ? pos : pos - start);
        ++number;
        const auto t = trim(raw);
        if (!t.empty() && t.front() != '#') {
            lines.push_back({number, t});
        }
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return lines;
}

std::optional<long long> parse_integer(std::string_view s) {
    long long v = 0;
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty()) {
        return std::nullopt;
    }
    return v;
}

std::optional<double> parse_real(std::string_view s) {
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

int parse_year_cell(std::string_view cell, const std::string &source, std::size_t line,
                    const char *what) {
    const auto v = parse_integer(cell);
    if (!v || *v < -100000 || *v > 100000) {
        throw FormatError(source, line, std::string{"invalid "} + what + " '" + std::string{cell} + "'");
    }
    return static_cast<int>(*v);
}

double parse_value_cell(std::string_view cell, const std::string &source, std::size_t line) {
    const auto v = parse_real(cell);
    if (!v) {
        throw FormatError(source, line, "non-numeric value '" + std::string{cell} + "'");
    }
    return *v;
}

/// Header "<c0>,<c1>,key=value,...": checks the two column names and returns the metadata.
KeyValues parse_header(const Line &header, std::string_view col0, std::string_view col1,
                       const std::string &source) {
    const auto cells = split(header.text, ',');
    if (cells.size() < 2 || cells[0] != col0 || cells[1] != col1) {
        throw FormatError(source, header.number,
                          "header must start with '" + std::string{col0} + "," +
                              std::string{col1} + "'");
    }
    KeyValues meta;
    for (std::size_t i = 2; i < cells.size(); ++i) {
        const auto eq = cells[i].find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw FormatError(source, header.number,
                              "header metadata '" + std::string{cells[i]} + "' is not key=value");
        }
        const std::string key{trim(cells[i].substr(0, eq))};
        if (!meta.emplace(key, std::string{trim(cells[i].substr(eq + 1))}).second) {
            throw FormatError(source, header.number, "duplicate header key '" + key + "'");
        }
    }
    return meta;
}

/// Reads consecutive integer-keyed rows, enforcing a contiguous ascending index.
std::pair<int, std::vector<double>> parse_rows(const std::vector<Line> &lines,
                                               const std::string &source, const char *index_name,
                                               std::optional<int> required_first) {
    std::vector<double> values;
    int first = 0;
    int expected = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i].text, ',');
        if (cells.size() != 2) {
            throw FormatError(source, lines[i].number,
                              "expected 2 cells, found " + std::to_string(cells.size()));
        }
        const int index = parse_year_cell(cells[0], source, lines[i].number, index_name);
        const double value = parse_value_cell(cells[1], source, lines[i].number);
        if (values.empty()) {
            if (required_first && index != *required_first) {
                throw FormatError(source, lines[i].number,
                                  std::string{"missing "} + index_name + " " +
                                      std::to_string(*required_first));
            }
            first = index;
        } else if (index < expected) {
            throw FormatError(source, lines[i].number,
                              std::string{"duplicate or out-of-order "} + index_name + " " +
                                  std::to_string(index));
        } else if (index > expected) {
            throw FormatError(source, lines[i].number,
                              std::string{"gap: missing "} + index_name + " " +
                                  std::to_string(expected));
        }
        expected = index + 1;
        values.push_back(value);
    }
    if (values.empty()) {
        throw FormatError(source, 0, "no data rows");
    }
    return {first, std::move(values)};
}

template <typename Fn>
auto rethrow_as_format(const std::string &source, Fn fn) {
    try {
        return fn();
    } catch (const DomainError &e) {
        throw FormatError(source, 0, e.what());
    }
}

const std::array<std::string_view, 5> file_keys{"gdp", "gdp_percap", "population", "cohort",
                                                "target"};

std::optional<double> real_key(const KeyValues &values, const std::string &key,
                               const std::string &source) {
    const auto it = values.find(key);
    if (it == values.end()) {
        return std::nullopt;
    }
    const auto v = parse_real(it->second);
    if (!v) {
        throw FormatError(source, 0, "key '" + key + "' is not a number: '" + it->second + "'");
    }
    return v;
}

std::optional<int> int_key(const KeyValues &values, const std::string &key,
                           const std::string &source) {
    const auto it = values.find(key);
    if (it == values.end()) {
        return std::nullopt;
    }
    const auto v = parse_integer(it->second);
    if (!v || *v < -100000 || *v > 100000) {
        throw FormatError(source, 0, "key '" + key + "' is not an integer: '" + it->second + "'");
    }
    return static_cast<int>(*v);
}

std::string cell(double v) { return std::isnan(v) ? std::string{} : format_sig6(v); }

} // namespace

std::string format_exact(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string format_sig6(double value) {
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.6g", value);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::string read_text(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

AnnualSeries parse_series(std::string_view text, const std::string &source,
                          std::optional<Unit> expected_unit) {
    const auto lines = content_lines(text);
    if (lines.empty()) {
        throw FormatError(source, 0, "empty file");
    }
    const KeyValues meta = parse_header(lines.front(), "year", "value", source);
    const auto unit_it = meta.find("unit");
    if (unit_it == meta.end()) {
        throw FormatError(source, lines.front().number, "header lacks unit=<unit>");
    }
    const auto unit = parse_unit(unit_it->second);
    if (!unit) {
        throw FormatError(source, lines.front().number, "unknown unit '" + unit_it->second + "'");
    }
    if (expected_unit && *unit != *expected_unit) {
        throw FormatError(source, lines.front().number,
                          "unit " + unit_it->second + " where " +
                              std::string{to_string(*expected_unit)} + " is expected");
    }
    std::string base;
    if (const auto it = meta.find("dollar_base"); it != meta.end()) {
        if (*unit != Unit::dollars_real) {
            throw FormatError(source, lines.front().number,
                              "dollar_base given for a non-dollar series");
        }
        base = it->second;
    }
    auto [first, values] = parse_rows(lines, source, "year", std::nullopt);
    return rethrow_as_format(source, [&] {
        return AnnualSeries{first, std::move(values), *unit, std::move(base)};
    });
}

AnnualSeries read_series(const fs::path &path, std::optional<Unit> expected_unit) {
    return parse_series(read_text(path), path.string(), expected_unit);
}

std::string format_series(const AnnualSeries &series) {
    std::string out = "year,value,unit=" + std::string{to_string(series.unit())};
    if (!series.dollar_base().empty()) {
        out += ",dollar_base=" + series.dollar_base();
    }
    out += '\n';
    int year = series.start_year();
    for (const double v : series.values()) {
        out += std::to_string(year++) + ',' + format_exact(v) + '\n';
    }
    return out;
}

void write_series(const AnnualSeries &series, const fs::path &path) {
    write_text(path, format_series(series));
}

AgePyramid parse_pyramid(std::string_view text, const std::string &source) {
    const auto lines = content_lines(text);
    if (lines.empty()) {
        throw FormatError(source, 0, "empty file");
    }
    const KeyValues meta = parse_header(lines.front(), "age", "count", source);
    const auto it = meta.find("reference_year");
    if (it == meta.end()) {
        throw FormatError(source, lines.front().number, "header lacks reference_year=<year>");
    }
    const int ref = parse_year_cell(it->second, source, lines.front().number, "reference year");
    auto [first, counts] = parse_rows(lines, source, "age", 0);
    for (std::size_t age = 0; age < counts.size(); ++age) {
        if (counts[age] < 0.0) {
            // Locate the row for the message.
            throw FormatError(source, lines[age + 1].number,
                              "negative count at age " + std::to_string(age));
        }
    }
    return rethrow_as_format(source, [&] { return AgePyramid{ref, std::move(counts)}; });
}

AgePyramid read_pyramid(const fs::path &path) {
    return parse_pyramid(read_text(path), path.string());
}

std::string format_pyramid(const AgePyramid &pyramid) {
    std::string out = "age,count,reference_year=" + std::to_string(pyramid.reference_year()) + '\n';
    int age = 0;
    for (const double c : pyramid.counts()) {
        out += std::to_string(age++) + ',' + format_exact(c) + '\n';
    }
    return out;
}

void write_pyramid(const AgePyramid &pyramid, const fs::path &path) {
    write_text(path, format_pyramid(pyramid));
}

KeyValues parse_key_values(std::string_view text, const std::string &source) {
    KeyValues values;
    for (const auto &line : content_lines(text)) {
        const auto eq = line.text.find('=');
        if (eq == std::string_view::npos) {
            throw FormatError(source, line.number, "expected key=value");
        }
        const std::string key{trim(line.text.substr(0, eq))};
        if (key.empty()) {
            throw FormatError(source, line.number, "empty key");
        }
        if (!values.emplace(key, std::string{trim(line.text.substr(eq + 1))}).second) {
            throw FormatError(source, line.number, "duplicate key '" + key + "'");
        }
    }
    return values;
}

bool is_file_key(std::string_view key) {
    for (const auto k : file_keys) {
        if (key == k) {
            return true;
        }
    }
    return key.starts_with("pyramid.");
}

KeyValues read_config_values(const fs::path &path) {
    KeyValues values = parse_key_values(read_text(path), path.string());
    const fs::path dir = path.parent_path();
    for (auto &[key, value] : values) {
        if (is_file_key(key) && fs::path{value}.is_relative()) {
            value = (dir / value).lexically_normal().string();
        }
    }
    return values;
}

std::optional<fs::path> CountryConfig::file(const std::string &key) const {
    const auto it = files.find(key);
    if (it == files.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<int> CountryConfig::pyramid_years() const {
    std::vector<int> years;
    for (const auto &[key, path] : files) {
        if (key.starts_with("pyramid.")) {
            if (const auto y = parse_integer(std::string_view{key}.substr(8))) {
                years.push_back(static_cast<int>(*y));
            }
        }
    }
    return years;
}

CountryConfig make_config(const KeyValues &values, const std::string &source) {
    CountryConfig config;
    for (const auto &[key, value] : values) {
        if (is_file_key(key)) {
            if (key.starts_with("pyramid.") && !parse_integer(std::string_view{key}.substr(8))) {
                throw FormatError(source, 0, "pyramid key '" + key + "' needs a year suffix");
            }
            config.files.emplace(key, fs::path{value});
        } else if (key.starts_with("correction_ratio.")) {
            const auto year = parse_integer(std::string_view{key}.substr(17));
            const auto ratio = parse_real(value);
            if (!year || !ratio) {
                throw FormatError(source, 0, "bad correction ratio entry '" + key + "=" + value + "'");
            }
            config.correction_ratios.emplace(static_cast<int>(*year), *ratio);
        } else if (key == "country") {
            config.country_code = value;
        } else if (key == "dollar_base") {
            config.dollar_base = value;
        } else if (key == "convention") {
            const auto c = parse_convention(value);
            if (!c) {
                throw FormatError(source, 0, "convention must be 'log' or 'relative'");
            }
            config.convention = *c;
        } else if (key != "defining_age" && key != "tcr_anchor_year" &&
                   key != "tcr_anchor_value" && key != "trend_A") {
            config.extra.emplace(key, value);
        }
    }

    config.defining_age = int_key(values, "defining_age", source).value_or(9);
    if (config.defining_age < 1 || config.defining_age > 25) {
        throw FormatError(source, 0, "defining_age must lie in 1..25");
    }
    const auto anchor_year = int_key(values, "tcr_anchor_year", source);
    const auto anchor_value = real_key(values, "tcr_anchor_value", source);
    if (anchor_year.has_value() != anchor_value.has_value()) {
        throw FormatError(source, 0, "tcr_anchor_year and tcr_anchor_value go together");
    }
    if (anchor_year) {
        if (!(*anchor_value > 0.0)) {
            throw FormatError(source, 0, "tcr_anchor_value must be positive");
        }
        config.tcr_anchor = model::TcrAnchor{*anchor_year, *anchor_value};
    }
    config.trend_increment = real_key(values, "trend_A", source);
    return config;
}

std::string format_run(const ModelRun &run, const std::vector<std::string> &metadata) {
    std::string out;
    for (const auto &line : metadata) {
        out += "# " + line + '\n';
    }
    out += "year,observed,predicted,residual\n";
    for (std::size_t i = 0; i < run.size(); ++i) {
        const double obs = run.observed[i];
        const double pred = run.predicted[i];
        const double residual =
            std::isnan(obs) || std::isnan(pred) ? std::nan("") : obs - pred;
        out += std::to_string(run.start_year + static_cast<int>(i)) + ',' + cell(obs) + ',' +
               cell(pred) + ',' + cell(residual) + '\n';
    }
    return out;
}

void write_run(const ModelRun &run, const fs::path &path,
               const std::vector<std::string> &metadata) {
    write_text(path, format_run(run, metadata));
}

ModelRun parse_run(std::string_view text, const std::string &source) {
    const auto lines = content_lines(text);
    if (lines.empty() || lines.front().text != "year,observed,predicted,residual") {
        throw FormatError(source, lines.empty() ? 0 : lines.front().number,
                          "expected header 'year,observed,predicted,residual'");
    }
    ModelRun run;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i].text, ',');
        if (cells.size() != 4) {
            throw FormatError(source, lines[i].number, "expected 4 cells");
        }
        const int year = parse_year_cell(cells[0], source, lines[i].number, "year");
        if (run.empty()) {
            run.start_year = year;
        } else if (year != run.start_year + static_cast<int>(run.size())) {
            throw FormatError(source, lines[i].number, "years must be contiguous");
        }
        const auto value = [&](std::string_view c) {
            return c.empty() ? std::nan("") : parse_value_cell(c, source, lines[i].number);
        };
        run.observed.push_back(value(cells[1]));
        run.predicted.push_back(value(cells[2]));
    }
    return run;
}

std::string format_decomposition_text(const analysis::DecompositionReport &r) {
    std::string out;
    const auto put = [&](const char *key, const std::string &value) {
        out += std::string{key} + '=' + value + '\n';
    };
    put("period", to_string(r.period));
    put("total_convention", r.total_convention == analysis::TotalGrowth::ratio ? "ratio" : "net_gain");
    put("total_factor", format_sig6(r.total_factor));
    put("population_component", format_sig6(r.population_component));
    put("trend_component", format_sig6(r.trend_component));
    put("population_share", format_sig6(r.population_share));
    put("mean_increment", format_sig6(r.mean_increment));
    put("trend_dollars", format_sig6(r.trend_dollars));
    put("population_dollars", format_sig6(r.population_dollars));
    put("dollar_split", "mean_increment*component/total_factor");
    return out;
}

std::string format_decomposition_csv(const analysis::DecompositionReport &r) {
    std::string out =
        "first_year,last_year,total_convention,total_factor,population_component,"
        "trend_component,population_share,mean_increment,trend_dollars,population_dollars\n";
    out += std::to_string(r.period.first) + ',' + std::to_string(r.period.last) + ',' +
           (r.total_convention == analysis::TotalGrowth::ratio ? "ratio" : "net_gain") + ',' +
           format_sig6(r.total_factor) + ',' + format_sig6(r.population_component) + ',' +
           format_sig6(r.trend_component) + ',' + format_sig6(r.population_share) + ',' +
           format_sig6(r.mean_increment) + ',' + format_sig6(r.trend_dollars) + ',' +
           format_sig6(r.population_dollars) + '\n';
    return out;
}

} // namespace demogdp::io
