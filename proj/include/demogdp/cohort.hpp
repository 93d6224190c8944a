#pragma once

#include "demogdp/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace demogdp::cohort {

/// Time series of one single-year age obtained by shifting a census pyramid
/// through time: the count at age `target_age` in year ref + k is the
/// pyramid's count at age target_age - k. Mortality and migration are ignored.
struct CohortProjection {
    int target_age;
    int reference_year;
    AnnualSeries series;
    /// |year - reference_year| per point of `series`; projection error grows with it.
    std::vector<int> years_from_census;
    /// Non-empty when the requested year range had to be clipped.
    std::vector<std::string> warnings;
};

/// Every year a pyramid can serve for `target_age`.
[[nodiscard]] YearRange achievable_years(const AgePyramid &pyramid, int target_age);

/// Projects the pyramid onto `target_age`. With no `years` the maximal
/// achievable window is returned; a partially achievable request is clipped
/// with a warning; a fully unachievable one throws RangeError.
[[nodiscard]] CohortProjection project_cohort(const AgePyramid &pyramid, int target_age,
                                              std::optional<YearRange> years = std::nullopt);

/// Exact ratio of two adjacent cohorts after `years` of identical absolute
/// growth `growth_per_year`: (a_n + m p) / (a_n1 + m p).
[[nodiscard]] double adjacent_ratio_exact(double a_n, double a_n1, double growth_per_year,
                                          double years);

/// The first-order approximation 1 + r (1 - m p / a_n), evaluated
/// literally. It does not track adjacent_ratio_exact for r near 1; keep it
/// for comparison only.
[[nodiscard]] double adjacent_ratio_approx(double ratio, double a_n,
                                                 double growth_per_year, double years);

struct RatioComparison {
    double exact;
    double approximation;
    double discrepancy; // approximation - exact
};

/// Evaluates both ratio formulas on the same cohorts (r = a_n / a_n1 at m = 0
/// unless `initial_ratio` overrides it).
[[nodiscard]] RatioComparison compare_adjacent_ratio(double a_n, double a_n1,
                                                     double growth_per_year, double years,
                                                     std::optional<double> initial_ratio = {});

} // namespace demogdp::cohort
