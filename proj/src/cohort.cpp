#include "demogdp/cohort.hpp"

#include "demogdp/errors.hpp"

#include <cstdlib>

namespace demogdp::cohort {

YearRange achievable_years(const AgePyramid &pyramid, int target_age) {
    if (!pyramid.has_age(target_age)) {
        throw DomainError("target age " + std::to_string(target_age) + " absent from the " +
                          std::to_string(pyramid.reference_year()) + " pyramid");
    }
    const int ref = pyramid.reference_year();
    return {ref - (pyramid.max_age() - target_age), ref + target_age};
}

CohortProjection project_cohort(const AgePyramid &pyramid, int target_age,
                                std::optional<YearRange> years) {
    const YearRange full = achievable_years(pyramid, target_age);
    YearRange window = full;
    std::vector<std::string> warnings;
    if (years) {
        if (years->first > years->last) {
            throw RangeError("empty year range " + to_string(*years));
        }
        const auto common = intersect(*years, full);
        if (!common) {
            throw RangeError("years " + to_string(*years) + " unreachable from the " +
                             std::to_string(pyramid.reference_year()) + " pyramid for age " +
                             std::to_string(target_age) + " (achievable " + to_string(full) +
                             ")");
        }
        if (*common != *years) {
            warnings.push_back("requested " + to_string(*years) + " clipped to " +
                               to_string(*common));
        }
        window = *common;
    }

    const int ref = pyramid.reference_year();
    std::vector<double> values;
    std::vector<int> distance;
    values.reserve(static_cast<std::size_t>(window.length()));
    distance.reserve(values.capacity());
    for (int year = window.first; year <= window.last; ++year) {
        values.push_back(pyramid.count(target_age - (year - ref)));
        distance.push_back(std::abs(year - ref));
    }
    return CohortProjection{target_age, ref,
                            AnnualSeries{window.first, std::move(values), Unit::persons},
                            std::move(distance), std::move(warnings)};
}

double adjacent_ratio_exact(double a_n, double a_n1, double growth_per_year, double years) {
    const double shift = years * growth_per_year;
    if (!(a_n > 0.0) || !(a_n1 > 0.0) || !(a_n + shift > 0.0) || !(a_n1 + shift > 0.0)) {
        throw DomainError("adjacent cohort sizes must stay positive");
    }
    return (a_n + shift) / (a_n1 + shift);
}

double adjacent_ratio_approx(double ratio, double a_n, double growth_per_year,
                                   double years) {
    if (!(a_n > 0.0)) {
        throw DomainError("cohort size a_n must be positive");
    }
    return 1.0 + ratio * (1.0 - years * growth_per_year / a_n);
}

RatioComparison compare_adjacent_ratio(double a_n, double a_n1, double growth_per_year,
                                       double years, std::optional<double> initial_ratio) {
    const double exact = adjacent_ratio_exact(a_n, a_n1, growth_per_year, years);
    const double r = initial_ratio.value_or(a_n / a_n1);
    const double approx = adjacent_ratio_approx(r, a_n, growth_per_year, years);
    return {exact, approx, approx - exact};
}

} // namespace demogdp::cohort
