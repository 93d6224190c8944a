#include "demogdp/analysis.hpp"

#include "demogdp/errors.hpp"

#include <cmath>
#include <iterator>

namespace demogdp::analysis {

DecompositionReport decompose(const DecompositionInput &in) {
    if (!(in.cohort_start > 0.0) || !(in.cohort_end > 0.0) || !(in.gpc_start > 0.0) ||
        !(in.gpc_end > 0.0)) {
        throw DomainError("decomposition inputs must be positive");
    }
    const int years = in.period.last - in.period.first;
    if (years < 1) {
        throw DomainError("decomposition period must span at least one year");
    }

    DecompositionReport r{};
    r.period = in.period;
    r.total_convention = in.total;
    r.population_component = 0.5 * (in.cohort_end - in.cohort_start) / in.cohort_start;
    r.total_factor = in.gpc_end / in.gpc_start - (in.total == TotalGrowth::net_gain ? 1.0 : 0.0);
    if (r.total_factor == 0.0) {
        throw DomainError("zero total growth cannot be split");
    }
    r.trend_component = r.total_factor - r.population_component;
    r.population_share = r.population_component / r.total_factor;
    r.mean_increment = (in.gpc_end - in.gpc_start) / years;
    r.trend_dollars = r.mean_increment * (r.trend_component / r.total_factor);
    r.population_dollars = r.mean_increment * (r.population_component / r.total_factor);
    return r;
}

AnnualSeries percap_correction(const AnnualSeries &gpc_published,
                               const AnnualSeries &ratio_total_over_15plus) {
    if (gpc_published.unit() != Unit::dollars_real) {
        throw DomainError("per-capita GDP must be dollars_real");
    }
    if (ratio_total_over_15plus.unit() != Unit::dimensionless) {
        throw DomainError("population ratio must be dimensionless");
    }
    const auto [gpc, ratio] = align(gpc_published, ratio_total_over_15plus);
    for (int year = ratio.start_year(); year <= ratio.end_year(); ++year) {
        if (ratio.at(year) < 1.0) {
            throw DomainError("population ratio " + std::to_string(ratio.at(year)) + " in " +
                              std::to_string(year) +
                              " is below 1: the 15+ population cannot exceed the total");
        }
    }
    return multiply(gpc, ratio);
}

AnnualSeries interpolate_ratios(const std::map<int, double> &anchors, YearRange years) {
    if (anchors.empty()) {
        throw DomainError("no correction ratio anchors");
    }
    if (years.first > years.last) {
        throw RangeError("empty year range " + to_string(years));
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(years.length()));
    for (int year = years.first; year <= years.last; ++year) {
        const auto upper = anchors.lower_bound(year);
        if (upper == anchors.end()) {
            out.push_back(anchors.rbegin()->second);
        } else if (upper->first == year || upper == anchors.begin()) {
            out.push_back(upper->second);
        } else {
            const auto lower = std::prev(upper);
            const double w = static_cast<double>(year - lower->first) /
                             static_cast<double>(upper->first - lower->first);
            out.push_back(lower->second + w * (upper->second - lower->second));
        }
    }
    return AnnualSeries{years.first, std::move(out), Unit::dimensionless};
}

CompoundingDemo compounding_demo(double mean_rate, double amplitude, int years) {
    if (years < 0 || years % 2 != 0) {
        throw DomainError("compounding demo needs an even, non-negative number of years");
    }
    const double up = 1.0 + mean_rate + amplitude;
    const double down = 1.0 + mean_rate - amplitude;
    if (!(up > 0.0) || !(down > 0.0)) {
        throw DomainError("growth factors 1 + mean +- amplitude must be positive");
    }
    double oscillating = 1.0;
    for (int y = 0; y < years; ++y) {
        oscillating *= (y % 2 == 0) ? up : down;
    }
    return {oscillating, std::pow(1.0 + mean_rate, years)};
}

} // namespace demogdp::analysis
