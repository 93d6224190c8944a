#include "demogdp/run.hpp"

#include "demogdp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace demogdp {

namespace {

constexpr double missing = std::numeric_limits<double>::quiet_NaN();

std::optional<YearRange> overlap(const AnnualSeries &a, const AnnualSeries &b,
                                 std::optional<YearRange> window) {
    auto common = intersect(a.range(), b.range());
    if (common && window) {
        common = intersect(*common, *window);
    }
    return common;
}

} // namespace

ModelRun make_run(std::string label, const std::optional<AnnualSeries> &observed,
                  const AnnualSeries &predicted) {
    YearRange span = predicted.range();
    if (observed) {
        span.first = std::min(span.first, observed->start_year());
        span.last = std::max(span.last, observed->end_year());
    }
    ModelRun run;
    run.label = std::move(label);
    run.start_year = span.first;
    run.observed.assign(static_cast<std::size_t>(span.length()), missing);
    run.predicted.assign(run.observed.size(), missing);
    for (int year = span.first; year <= span.last; ++year) {
        const auto i = static_cast<std::size_t>(year - span.first);
        if (observed && observed->contains(year)) {
            run.observed[i] = observed->at(year);
        }
        if (predicted.contains(year)) {
            run.predicted[i] = predicted.at(year);
        }
    }
    return run;
}

FitDiagnostics diagnose(const ModelRun &run) {
    FitDiagnostics d;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < run.size(); ++i) {
        if (std::isnan(run.observed[i]) || std::isnan(run.predicted[i])) {
            continue;
        }
        const double r = run.observed[i] - run.predicted[i];
        ++d.paired_points;
        sum += r;
        sum_sq += r * r;
        d.max_abs_residual = std::max(d.max_abs_residual, std::abs(r));
    }
    if (d.paired_points > 0) {
        const auto n = static_cast<double>(d.paired_points);
        d.mean_residual = sum / n;
        d.rmse = std::sqrt(sum_sq / n);
    }
    return d;
}

double rmse(const AnnualSeries &a, const AnnualSeries &b, std::optional<YearRange> window) {
    const auto common = overlap(a, b, window);
    if (!common) {
        throw RangeError("no overlapping years to score " + to_string(a.range()) + " against " +
                         to_string(b.range()));
    }
    double sum_sq = 0.0;
    for (int year = common->first; year <= common->last; ++year) {
        const double r = a.at(year) - b.at(year);
        sum_sq += r * r;
    }
    return std::sqrt(sum_sq / common->length());
}

BandCoverage band_coverage(const AnnualSeries &value, const AnnualSeries &estimate,
                           double tolerance, std::optional<YearRange> window) {
    BandCoverage coverage;
    const auto common = overlap(value, estimate, window);
    if (!common) {
        return coverage;
    }
    for (int year = common->first; year <= common->last; ++year) {
        const double est = estimate.at(year);
        ++coverage.compared;
        if (est != 0.0 && std::abs(value.at(year) - est) / std::abs(est) <= tolerance) {
            ++coverage.inside;
        }
    }
    return coverage;
}

} // namespace demogdp
