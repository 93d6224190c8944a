#pragma once

#include "demogdp/model.hpp"
#include "demogdp/run.hpp"
#include "demogdp/series.hpp"

#include <utility>

namespace demogdp::inversion {

/// Update rule for N(t) from N(t-1).
/// exponential: N(t-1) * exp(2 (g - trend)), the exact inverse of the
///              log-change forward model.
/// linear:      N(t-1) * (1 + 2 (g - trend)), the exact inverse of the
///              relative-change forward model.
enum class UpdateRule { exponential, linear };

[[nodiscard]] constexpr UpdateRule update_rule_for(ChangeConvention convention) noexcept {
    return convention == ChangeConvention::log ? UpdateRule::exponential : UpdateRule::linear;
}

/// Everything needed to recover a cohort series besides per-capita GDP.
/// Growth years up to and including `initial_year` are ignored.
struct InversionSetup {
    int initial_year;
    double initial_count;
    model::TrendSpec trend;
    AnnualSeries observed_growth;
    UpdateRule rule = UpdateRule::exponential;
};

/// Recovers N(t) from observed total-GDP growth, starting at
/// N(initial_year) = initial_count and running to the end of the growth series.
[[nodiscard]] AnnualSeries recover_population(const InversionSetup &setup,
                                              const AnnualSeries &gpc);

/// Same recurrence driven by per-capita growth; the trend must be a constant
/// increment A (trend A / G_pc(t)).
[[nodiscard]] AnnualSeries recover_population_percap(const InversionSetup &setup,
                                                     const AnnualSeries &gpc);

struct InitialCountFit {
    double initial_count;
    double rmse;
    std::size_t evaluations;
};

/// Step of the candidate grid, in persons.
inline constexpr double initial_count_resolution = 1000.0;

/// Finds the N(t0) on the grid candidates.first + k * 1000 (k >= 0, within
/// the candidate range) minimizing the RMSE between the recovered series and
/// `target` over `window`. Golden-section search on ln N(t0) narrows the
/// bracket, then neighbouring grid points are compared exactly; ties go to
/// the smaller count.
[[nodiscard]] InitialCountFit fit_initial_count(std::pair<double, double> candidates,
                                                const AnnualSeries &target, YearRange window,
                                                const InversionSetup &setup,
                                                const AnnualSeries &gpc);

/// Exhaustive scan of the same grid. Slow, used to cross-check the search.
[[nodiscard]] InitialCountFit fit_initial_count_grid(std::pair<double, double> candidates,
                                                     const AnnualSeries &target,
                                                     YearRange window,
                                                     const InversionSetup &setup,
                                                     const AnnualSeries &gpc);

} // namespace demogdp::inversion
