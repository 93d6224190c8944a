#include "demogdp/calibration.hpp"

#include "demogdp/cohort.hpp"
#include "demogdp/errors.hpp"
#include "demogdp/run.hpp"

#include <cmath>
#include <limits>

namespace demogdp::calibration {

namespace {

std::pair<AnnualSeries, AnnualSeries> growth_and_levels(const AnnualSeries &observed_growth,
                                                        const AnnualSeries &gpc) {
    if (gpc.unit() != Unit::dollars_real) {
        throw DomainError("per-capita GDP must be dollars_real");
    }
    if (observed_growth.unit() != Unit::rate_per_year) {
        throw DomainError("observed growth must be rate_per_year");
    }
    auto aligned = align(observed_growth, gpc);
    for (const double g : aligned.second.values()) {
        if (!(g > 0.0)) {
            throw DomainError("per-capita GDP must be positive");
        }
    }
    return aligned;
}

} // namespace

AgeSearchResult calibrate_defining_age(const std::map<int, AnnualSeries> &cohorts_by_age,
                                       const AnnualSeries &observed_growth,
                                       const model::TrendSpec &trend, const AnnualSeries &gpc,
                                       std::optional<YearRange> window,
                                       ChangeConvention convention) {
    AgeSearchResult result{{}, 0, std::nullopt};
    for (const auto &[age, cohort] : cohorts_by_age) {
        if (cohort.size() < 2) {
            continue;
        }
        const AnnualSeries predicted = model::predict_growth(cohort, trend, gpc, convention);
        auto common = intersect(predicted.range(), observed_growth.range());
        if (common && window) {
            common = intersect(*common, *window);
        }
        if (!common || common->length() < min_overlap_years) {
            continue;
        }
        result.per_age_scores.emplace(age, rmse(predicted, observed_growth, *common));
    }
    if (result.per_age_scores.empty()) {
        throw InsufficientDataError("no candidate age has " + std::to_string(min_overlap_years) +
                                    " or more years overlapping the observed growth");
    }

    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    // Ascending age order with strict comparison keeps the younger age on ties.
    for (const auto &[age, score] : result.per_age_scores) {
        if (score < best) {
            second = best;
            best = score;
            result.best_age = age;
        } else if (score < second) {
            second = score;
        }
    }
    if (result.per_age_scores.size() > 1) {
        result.runner_up_margin = second - best;
    }
    return result;
}

std::map<int, AnnualSeries> cohorts_from_pyramid(const AgePyramid &pyramid, int min_age,
                                                 int max_age) {
    std::map<int, AnnualSeries> out;
    for (int age = min_age; age <= max_age; ++age) {
        if (pyramid.has_age(age)) {
            out.emplace(age, cohort::project_cohort(pyramid, age).series);
        }
    }
    return out;
}

double mean_increment(const AnnualSeries &gpc) {
    if (gpc.size() < 2) {
        throw DomainError("mean_increment needs at least two points");
    }
    return (gpc.back() - gpc.front()) / static_cast<double>(gpc.size() - 1);
}

double fit_trend_preserving(const AnnualSeries &observed_growth, const AnnualSeries &gpc) {
    const auto [g, levels] = growth_and_levels(observed_growth, gpc);
    double sum_growth = 0.0;
    double sum_inverse = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        sum_growth += g.values()[i];
        sum_inverse += 1.0 / levels.values()[i];
    }
    return sum_growth / sum_inverse;
}

double fit_trend_least_squares(const AnnualSeries &observed_growth, const AnnualSeries &gpc) {
    const auto [g, levels] = growth_and_levels(observed_growth, gpc);
    double cross = 0.0;
    double inverse_sq = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double inv = 1.0 / levels.values()[i];
        cross += g.values()[i] * inv;
        inverse_sq += inv * inv;
    }
    return cross / inverse_sq;
}

} // namespace demogdp::calibration
