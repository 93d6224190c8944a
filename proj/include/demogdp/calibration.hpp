#pragma once

#include "demogdp/model.hpp"
#include "demogdp/series.hpp"

#include <map>
#include <optional>

namespace demogdp::calibration {

/// Default search range for the defining age.
inline constexpr int min_candidate_age = 1;
inline constexpr int max_candidate_age = 25;

/// Candidates need at least this many scored years.
inline constexpr int min_overlap_years = 5;

struct AgeSearchResult {
    std::map<int, double> per_age_scores; // RMSE of predicted vs observed growth
    int best_age;
    /// Runner-up RMSE minus best RMSE; empty with a single scored candidate.
    std::optional<double> runner_up_margin;
};

/// Scores each candidate cohort series by the RMSE between its predicted
/// growth and `observed_growth` over `window` (default: the full overlap) and
/// returns the argmin. Ties go to the younger age. Candidates with fewer than
/// min_overlap_years scored years are skipped.
[[nodiscard]] AgeSearchResult calibrate_defining_age(
    const std::map<int, AnnualSeries> &cohorts_by_age, const AnnualSeries &observed_growth,
    const model::TrendSpec &trend, const AnnualSeries &gpc,
    std::optional<YearRange> window = std::nullopt,
    ChangeConvention convention = ChangeConvention::log);

/// Cohort series for every age in [min_age, max_age] projected from one pyramid.
[[nodiscard]] std::map<int, AnnualSeries> cohorts_from_pyramid(const AgePyramid &pyramid,
                                                               int min_age = min_candidate_age,
                                                               int max_age = max_candidate_age);

/// Mean annual increment (G(end) - G(start)) / (end - start).
[[nodiscard]] double mean_increment(const AnnualSeries &gpc);

/// The A for which sum A / G_pc(t) equals sum g(t) over the common years:
/// A = sum g / sum (1 / G_pc). Preserves the total observed growth.
[[nodiscard]] double fit_trend_preserving(const AnnualSeries &observed_growth,
                                          const AnnualSeries &gpc);

/// Ordinary least squares of g on 1 / G_pc without intercept:
/// A = sum(g / G) / sum(1 / G^2). Comparison only; it does not preserve the
/// total observed growth.
[[nodiscard]] double fit_trend_least_squares(const AnnualSeries &observed_growth,
                                             const AnnualSeries &gpc);

} // namespace demogdp::calibration
