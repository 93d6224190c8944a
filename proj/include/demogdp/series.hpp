#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace demogdp {

enum class Unit {
    dollars_real,
    persons,
    rate_per_year,
    dimensionless,
    years,
};

[[nodiscard]] std::string_view to_string(Unit unit) noexcept;

/// Parses the textual unit tag used in data files. Returns nullopt for an unknown tag.
[[nodiscard]] std::optional<Unit> parse_unit(std::string_view text) noexcept;

/// How the year-over-year change of a level series is discretized.
/// relative: (x(t) - x(t-1)) / x(t-1); log: ln x(t) - ln x(t-1).
enum class ChangeConvention { relative, log };

[[nodiscard]] std::string_view to_string(ChangeConvention convention) noexcept;
[[nodiscard]] std::optional<ChangeConvention> parse_convention(std::string_view text) noexcept;

struct YearRange {
    int first;
    int last;

    [[nodiscard]] int length() const noexcept { return last - first + 1; }
    [[nodiscard]] bool contains(int year) const noexcept { return year >= first && year <= last; }
    bool operator==(const YearRange &) const = default;
};

[[nodiscard]] std::string to_string(YearRange range);

/// Contiguous year-indexed values with a unit tag. Dollar series also carry
/// the label of their price base (e.g. "2002 US dollars"); combining series
/// with different bases is rejected.
class AnnualSeries {
public:
    AnnualSeries(int start_year, std::vector<double> values, Unit unit,
                 std::string dollar_base = {});

    [[nodiscard]] int start_year() const noexcept { return start_year_; }
    [[nodiscard]] int end_year() const noexcept {
        return start_year_ + static_cast<int>(values_.size()) - 1;
    }
    [[nodiscard]] YearRange range() const noexcept { return {start_year(), end_year()}; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] Unit unit() const noexcept { return unit_; }
    [[nodiscard]] const std::string &dollar_base() const noexcept { return dollar_base_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    [[nodiscard]] bool contains(int year) const noexcept { return range().contains(year); }

    /// Value for a calendar year; throws RangeError outside the series.
    [[nodiscard]] double at(int year) const;

    [[nodiscard]] double front() const noexcept { return values_.front(); }
    [[nodiscard]] double back() const noexcept { return values_.back(); }

    /// Sub-series over [first, last]; the range must lie within the series.
    [[nodiscard]] AnnualSeries slice(int first, int last) const;

    /// Same years and unit with new values.
    [[nodiscard]] AnnualSeries with_values(std::vector<double> values) const;

    bool operator==(const AnnualSeries &) const = default;

private:
    int start_year_;
    std::vector<double> values_;
    Unit unit_;
    std::string dollar_base_;
};

/// Single-year-of-age population counts for one reference year, ages 0..max_age.
class AgePyramid {
public:
    AgePyramid(int reference_year, std::vector<double> counts);

    [[nodiscard]] int reference_year() const noexcept { return reference_year_; }
    [[nodiscard]] int max_age() const noexcept { return static_cast<int>(counts_.size()) - 1; }
    [[nodiscard]] bool has_age(int age) const noexcept { return age >= 0 && age <= max_age(); }
    [[nodiscard]] double count(int age) const;
    [[nodiscard]] std::span<const double> counts() const noexcept { return counts_; }

    bool operator==(const AgePyramid &) const = default;

private:
    int reference_year_;
    std::vector<double> counts_;
};

[[nodiscard]] AnnualSeries relative_change(const AnnualSeries &series);
[[nodiscard]] AnnualSeries log_change(const AnnualSeries &series);
[[nodiscard]] AnnualSeries change(const AnnualSeries &series, ChangeConvention convention);

/// Rebuilds a level series from its changes: the inverse of relative_change /
/// log_change. The result starts one year before `changes` with `initial`.
[[nodiscard]] AnnualSeries accumulate(const AnnualSeries &changes, double initial, Unit unit,
                                      ChangeConvention convention);

/// Product of (1 + r) over a relative-change series.
[[nodiscard]] double compound_factor(const AnnualSeries &relative_changes);

/// Restricts both series to their common years.
[[nodiscard]] std::pair<AnnualSeries, AnnualSeries> align(const AnnualSeries &a,
                                                          const AnnualSeries &b);

[[nodiscard]] std::optional<YearRange> intersect(YearRange a, YearRange b) noexcept;

// Unit-checked pointwise arithmetic over the common years.
[[nodiscard]] AnnualSeries add(const AnnualSeries &a, const AnnualSeries &b);
[[nodiscard]] AnnualSeries subtract(const AnnualSeries &a, const AnnualSeries &b);
/// `b` must be dimensionless (or `a`, in which case the result takes b's unit).
[[nodiscard]] AnnualSeries multiply(const AnnualSeries &a, const AnnualSeries &b);
/// Same units give a dimensionless ratio; dollars / persons gives per-capita
/// dollars; anything divided by a dimensionless series keeps its unit.
[[nodiscard]] AnnualSeries divide(const AnnualSeries &a, const AnnualSeries &b);
[[nodiscard]] AnnualSeries scale(const AnnualSeries &series, double factor);

} // namespace demogdp
