#include "demogdp/model.hpp"

#include "demogdp/errors.hpp"

#include <cmath>

namespace demogdp::model {

namespace {

void require_unit(const AnnualSeries &series, Unit unit, const char *what) {
    if (series.unit() != unit) {
        throw DomainError(std::string{what} + " must be " + std::string{to_string(unit)} +
                          ", got " + std::string{to_string(series.unit())});
    }
}

void require_positive_levels(const AnnualSeries &gpc) {
    for (int year = gpc.start_year(); year <= gpc.end_year(); ++year) {
        if (!(gpc.at(year) > 0.0)) {
            throw DomainError("per-capita GDP must be positive, year " + std::to_string(year));
        }
    }
}

AnnualSeries half_change_plus(const AnnualSeries &cohort, const AnnualSeries &trend,
                              ChangeConvention convention) {
    require_unit(cohort, Unit::persons, "cohort series");
    const AnnualSeries delta = change(cohort, convention);
    auto [d, t] = align(delta, trend);
    std::vector<double> out(d.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = 0.5 * d.values()[i] + t.values()[i];
    }
    return AnnualSeries{d.start_year(), std::move(out), Unit::rate_per_year};
}

} // namespace

TrendSpec TrendSpec::reciprocal_tcr(TcrAnchor anchor) {
    if (!(anchor.value > 0.0) || !std::isfinite(anchor.value)) {
        throw DomainError("T_cr anchor value must be positive");
    }
    return TrendSpec{anchor};
}

TrendSpec TrendSpec::constant_increment(double increment) {
    if (!std::isfinite(increment)) {
        throw DomainError("trend increment must be finite");
    }
    return TrendSpec{increment};
}

TrendSpec::Kind TrendSpec::kind() const noexcept {
    return std::holds_alternative<TcrAnchor>(params_) ? Kind::reciprocal_tcr
                                                      : Kind::constant_increment;
}

const TcrAnchor &TrendSpec::anchor() const {
    if (const auto *a = std::get_if<TcrAnchor>(&params_)) {
        return *a;
    }
    throw DomainError("trend is a constant increment, not a T_cr anchor");
}

double TrendSpec::increment() const {
    if (const auto *a = std::get_if<double>(&params_)) {
        return *a;
    }
    throw DomainError("trend is a T_cr anchor, not a constant increment");
}

bool TrendSpec::has_nonpositive_increment() const noexcept {
    const auto *a = std::get_if<double>(&params_);
    return a != nullptr && *a <= 0.0;
}

double trend_term(double tcr) {
    if (!(tcr > 0.0)) {
        throw DomainError("T_cr must be positive, got " + std::to_string(tcr));
    }
    return 1.0 / tcr;
}

AnnualSeries evolve_tcr(const TcrAnchor &anchor, const AnnualSeries &gpc) {
    require_unit(gpc, Unit::dollars_real, "per-capita GDP");
    if (!gpc.contains(anchor.year)) {
        throw RangeError("T_cr anchor year " + std::to_string(anchor.year) +
                         " outside per-capita GDP years " + to_string(gpc.range()));
    }
    require_positive_levels(gpc);
    const double base = gpc.at(anchor.year);
    std::vector<double> out;
    out.reserve(gpc.size());
    for (const double g : gpc.values()) {
        out.push_back(anchor.value * std::sqrt(g / base));
    }
    return AnnualSeries{gpc.start_year(), std::move(out), Unit::years};
}

AnnualSeries trend_series(const TrendSpec &trend, const AnnualSeries &gpc) {
    if (trend.kind() == TrendSpec::Kind::reciprocal_tcr) {
        const AnnualSeries tcr = evolve_tcr(trend.anchor(), gpc);
        std::vector<double> out;
        out.reserve(tcr.size());
        for (const double t : tcr.values()) {
            out.push_back(trend_term(t));
        }
        return AnnualSeries{tcr.start_year(), std::move(out), Unit::rate_per_year};
    }
    require_unit(gpc, Unit::dollars_real, "per-capita GDP");
    require_positive_levels(gpc);
    const double a = trend.increment();
    std::vector<double> out;
    out.reserve(gpc.size());
    for (const double g : gpc.values()) {
        out.push_back(a / g);
    }
    return AnnualSeries{gpc.start_year(), std::move(out), Unit::rate_per_year};
}

AnnualSeries predict_growth(const AnnualSeries &cohort, const TrendSpec &trend,
                            const AnnualSeries &gpc, ChangeConvention convention) {
    return half_change_plus(cohort, trend_series(trend, gpc), convention);
}

AnnualSeries predict_growth_percap(const AnnualSeries &cohort, double increment,
                                   const AnnualSeries &gpc, ChangeConvention convention) {
    return predict_growth(cohort, TrendSpec::constant_increment(increment), gpc, convention);
}

AnnualSeries percap_from_totals(const AnnualSeries &gdp, const AnnualSeries &population) {
    require_unit(gdp, Unit::dollars_real, "GDP");
    require_unit(population, Unit::persons, "population");
    return divide(gdp, population);
}

Forecast forecast_growth(const AnnualSeries &cohort, const TcrAnchor &anchor,
                         const AnnualSeries &gpc_history, double working_age_growth,
                         ChangeConvention convention) {
    require_unit(cohort, Unit::persons, "cohort series");
    if (!(1.0 + working_age_growth > 0.0)) {
        throw DomainError("working-age growth must exceed -1");
    }
    // Validates the anchor against the history.
    (void)evolve_tcr(anchor, gpc_history);
    const AnnualSeries delta = change(cohort, convention);
    const int first = gpc_history.end_year() + 1;
    if (!delta.contains(first)) {
        throw RangeError("cohort change series " + to_string(delta.range()) +
                         " does not cover the first forecast year " + std::to_string(first));
    }
    const double base = gpc_history.at(anchor.year);
    std::vector<double> path(gpc_history.values().begin(), gpc_history.values().end());
    std::vector<double> growth;
    std::vector<double> tcr;
    for (int year = first; year <= delta.end_year(); ++year) {
        const double previous = path.back();
        const double t = anchor.value * std::sqrt(previous / base);
        const double g = 0.5 * delta.at(year) + trend_term(t);
        if (!(1.0 + g > 0.0)) {
            throw DomainError("forecast growth collapses below -100% in " + std::to_string(year));
        }
        tcr.push_back(t);
        growth.push_back(g);
        path.push_back(previous * (1.0 + g) / (1.0 + working_age_growth));
    }
    return Forecast{AnnualSeries{first, std::move(growth), Unit::rate_per_year},
                    AnnualSeries{gpc_history.start_year(), std::move(path), Unit::dollars_real,
                                 gpc_history.dollar_base()},
                    AnnualSeries{first, std::move(tcr), Unit::years}};
}

} // namespace demogdp::model
