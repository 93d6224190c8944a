#pragma once

#include "demogdp/series.hpp"

#include <variant>

namespace demogdp::model {

/// Critical work experience T_cr (years) known at one calendar year.
struct TcrAnchor {
    int year;
    double value;
};

/// The slow component of growth: either 1/T_cr(t), with T_cr evolving from
/// an anchor, or A/G_pc(t) for a constant annual per-capita increment A.
class TrendSpec {
public:
    enum class Kind { reciprocal_tcr, constant_increment };

    [[nodiscard]] static TrendSpec reciprocal_tcr(TcrAnchor anchor);
    [[nodiscard]] static TrendSpec constant_increment(double increment);

    [[nodiscard]] Kind kind() const noexcept;
    /// Throws DomainError if the spec is not reciprocal_tcr.
    [[nodiscard]] const TcrAnchor &anchor() const;
    /// Throws DomainError if the spec is not constant_increment.
    [[nodiscard]] double increment() const;

    /// A fitted increment can come out <= 0; the model still runs but callers
    /// should surface it.
    [[nodiscard]] bool has_nonpositive_increment() const noexcept;

private:
    explicit TrendSpec(std::variant<TcrAnchor, double> params) : params_{params} {}
    std::variant<TcrAnchor, double> params_;
};

/// 1 / T_cr.
[[nodiscard]] double trend_term(double tcr);

/// T_cr(t) = anchor.value * sqrt(G_pc(t) / G_pc(anchor.year)) for every year
/// of `gpc`, before and after the anchor.
[[nodiscard]] AnnualSeries evolve_tcr(const TcrAnchor &anchor, const AnnualSeries &gpc);

/// Trend rate for every year of `gpc`.
[[nodiscard]] AnnualSeries trend_series(const TrendSpec &trend, const AnnualSeries &gpc);

/// Real GDP growth g(t) = 0.5 * dN(t)/N(t) + trend(t) over the years where
/// both the cohort change and the trend exist.
[[nodiscard]] AnnualSeries predict_growth(const AnnualSeries &cohort, const TrendSpec &trend,
                                          const AnnualSeries &gpc,
                                          ChangeConvention convention);

/// Per-capita growth g_pc(t) = 0.5 * dN(t)/N(t) + A / G_pc(t).
[[nodiscard]] AnnualSeries predict_growth_percap(const AnnualSeries &cohort, double increment,
                                                 const AnnualSeries &gpc,
                                                 ChangeConvention convention);

/// Per-capita GDP from a total GDP series and the population it is shared by.
[[nodiscard]] AnnualSeries percap_from_totals(const AnnualSeries &gdp,
                                              const AnnualSeries &population);

struct Forecast {
    AnnualSeries growth;  // predicted g(t) for the forecast years
    AnnualSeries gpc;     // history extended by the predicted per-capita path
    AnnualSeries tcr;     // T_cr used for each forecast year
};

/// Forecast beyond the end of the per-capita history. Each year uses T_cr
/// evaluated on the path through t-1, then advances per-capita GDP by
/// (1 + g(t)) / (1 + n(t)) where n is the working-age population growth.
/// Runs until the cohort change series ends.
[[nodiscard]] Forecast forecast_growth(const AnnualSeries &cohort, const TcrAnchor &anchor,
                                       const AnnualSeries &gpc_history,
                                       double working_age_growth, ChangeConvention convention);

} // namespace demogdp::model
