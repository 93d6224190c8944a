#pragma once

#include "demogdp/series.hpp"

#include <map>

namespace demogdp::analysis {

/// How the total per-capita growth over a period is expressed.
/// ratio:    G_end / G_start ("grew 4.13 times")
/// net_gain: G_end / G_start - 1 ("grew by a factor of 2.16")
enum class TotalGrowth { ratio, net_gain };

struct DecompositionInput {
    double cohort_start;
    double cohort_end;
    double gpc_start;
    double gpc_end;
    /// Years spanned by the per-capita levels; the mean increment divides by
    /// last - first.
    YearRange period;
    TotalGrowth total = TotalGrowth::ratio;
};

/// Split of total growth into a population part (half the defining-age
/// cohort's relative change) and the economic trend (the rest). The dollar
/// split applies the same proportions to the mean annual increment; this
/// mixes an additive factor split with an increment, which the reference
/// dollar figures rely on.
struct DecompositionReport {
    YearRange period;
    TotalGrowth total_convention;
    double total_factor;
    double population_component;
    double trend_component;
    /// population_component / total_factor.
    double population_share;
    double mean_increment;
    double trend_dollars;
    double population_dollars;
};

[[nodiscard]] DecompositionReport decompose(const DecompositionInput &input);

/// corrected(t) = published(t) * ratio(t), ratio = total / 15+ population.
[[nodiscard]] AnnualSeries percap_correction(const AnnualSeries &gpc_published,
                                             const AnnualSeries &ratio_total_over_15plus);

/// Dimensionless ratio series over `years`, linearly interpolated between the
/// anchor years and held constant beyond the first and last anchors.
[[nodiscard]] AnnualSeries interpolate_ratios(const std::map<int, double> &anchors,
                                              YearRange years);

struct CompoundingDemo {
    double oscillating; // prod of alternating (1 + mean + amplitude)(1 + mean - amplitude)
    double smooth;      // (1 + mean)^years
};

/// Total growth of a rate oscillating +-amplitude around `mean` versus the
/// same mean held constant. `years` must be even.
[[nodiscard]] CompoundingDemo compounding_demo(double mean_rate, double amplitude, int years);

} // namespace demogdp::analysis
