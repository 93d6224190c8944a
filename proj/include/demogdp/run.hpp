#pragma once

#include "demogdp/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace demogdp {

/// Observed and model values on a shared year axis. Either side may be
/// missing for a year (NaN), e.g. an inversion run without an estimate to
/// compare against.
struct ModelRun {
    std::string label;
    int start_year = 0;
    std::vector<double> observed;
    std::vector<double> predicted;

    [[nodiscard]] std::size_t size() const noexcept { return predicted.size(); }
    [[nodiscard]] bool empty() const noexcept { return predicted.empty(); }
};

/// Pairs two series over the union of their years. Missing values are NaN.
[[nodiscard]] ModelRun make_run(std::string label, const std::optional<AnnualSeries> &observed,
                                const AnnualSeries &predicted);

struct FitDiagnostics {
    std::size_t paired_points = 0;
    double rmse = 0.0;
    double mean_residual = 0.0;
    double max_abs_residual = 0.0;
};

/// Residuals are observed - predicted over years where both are present.
[[nodiscard]] FitDiagnostics diagnose(const ModelRun &run);

/// Root mean square of (a - b) over the years in `window` present in both.
/// Throws RangeError when nothing overlaps.
[[nodiscard]] double rmse(const AnnualSeries &a, const AnnualSeries &b,
                          std::optional<YearRange> window = std::nullopt);

struct BandCoverage {
    std::size_t compared = 0;
    std::size_t inside = 0;
    [[nodiscard]] double fraction() const noexcept {
        return compared == 0 ? 0.0 : static_cast<double>(inside) / static_cast<double>(compared);
    }
};

/// Counts years where |value - estimate| / estimate <= tolerance. The default
/// tolerance is the 5% uncertainty adopted for population estimates.
[[nodiscard]] BandCoverage band_coverage(const AnnualSeries &value, const AnnualSeries &estimate,
                                         double tolerance = 0.05,
                                         std::optional<YearRange> window = std::nullopt);

} // namespace demogdp
