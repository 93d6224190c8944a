#include "demogdp/inversion.hpp"

#include "demogdp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace demogdp::inversion {

namespace {

AnnualSeries recover(const InversionSetup &setup, const AnnualSeries &trend) {
    if (!(setup.initial_count > 0.0) || !std::isfinite(setup.initial_count)) {
        throw DomainError("initial count must be positive");
    }
    const AnnualSeries &growth = setup.observed_growth;
    const int first = setup.initial_year + 1;
    if (!growth.contains(first)) {
        throw RangeError("observed growth " + to_string(growth.range()) +
                         " does not cover the first recovered year " + std::to_string(first));
    }
    const int last = growth.end_year();
    if (!trend.contains(first) || !trend.contains(last)) {
        throw RangeError("trend unresolvable over " + to_string(YearRange{first, last}) +
                         " (per-capita GDP covers " + to_string(trend.range()) + ")");
    }

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(last - setup.initial_year + 1));
    out.push_back(setup.initial_count);
    for (int year = first; year <= last; ++year) {
        const double excess = 2.0 * (growth.at(year) - trend.at(year));
        double next = 0.0;
        if (setup.rule == UpdateRule::exponential) {
            next = out.back() * std::exp(excess);
        } else {
            const double factor = 1.0 + excess;
            if (!(factor > 0.0)) {
                throw DomainError("linear update drives the cohort non-positive in " +
                                  std::to_string(year));
            }
            next = out.back() * factor;
        }
        if (!(next > 0.0) || !std::isfinite(next)) {
            throw DomainError("recovered cohort leaves the positive reals in " +
                              std::to_string(year));
        }
        out.push_back(next);
    }
    return AnnualSeries{setup.initial_year, std::move(out), Unit::persons};
}

struct Problem {
    std::pair<double, double> candidates;
    const AnnualSeries &target;
    YearRange window;
    const InversionSetup &setup;
    const AnnualSeries &gpc;
};

void validate(const Problem &p) {
    const auto [lo, hi] = p.candidates;
    if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
        throw DomainError("candidate range must be positive and non-empty");
    }
    if (p.window.first > p.window.last) {
        throw RangeError("empty target window " + to_string(p.window));
    }
    if (p.target.unit() != Unit::persons) {
        throw DomainError("target must be a persons series");
    }
}

// The recovered series is proportional to N(t0), so one unit-scale recovery
// suffices: RMSE(c) is computed on c * shape.
class Objective {
public:
    explicit Objective(const Problem &p) : target_{p.target} {
        InversionSetup unit = p.setup;
        unit.initial_count = 1.0;
        const AnnualSeries shape = recover(unit, trend_for(p));
        auto common = intersect(shape.range(), p.target.range());
        if (common) {
            common = intersect(*common, p.window);
        }
        if (!common) {
            throw RangeError("target " + to_string(p.target.range()) + " and recovered " +
                             to_string(shape.range()) + " do not overlap window " +
                             to_string(p.window));
        }
        shape_ = shape.slice(common->first, common->last);
        window_ = *common;
    }

    double operator()(double count) {
        ++evaluations_;
        double sum_sq = 0.0;
        for (int year = window_.first; year <= window_.last; ++year) {
            const double r = count * shape_->at(year) - target_.at(year);
            sum_sq += r * r;
        }
        return std::sqrt(sum_sq / window_.length());
    }

    [[nodiscard]] std::size_t evaluations() const noexcept { return evaluations_; }

private:
    static AnnualSeries trend_for(const Problem &p) {
        return model::trend_series(p.setup.trend, p.gpc);
    }

    const AnnualSeries &target_;
    std::optional<AnnualSeries> shape_;
    YearRange window_{0, 0};
    std::size_t evaluations_ = 0;
};

double grid_point(double lo, long long k) {
    return lo + static_cast<double>(k) * initial_count_resolution;
}

long long grid_steps(double lo, double hi) {
    return static_cast<long long>(std::floor((hi - lo) / initial_count_resolution + 1e-9));
}

} // namespace

AnnualSeries recover_population(const InversionSetup &setup, const AnnualSeries &gpc) {
    return recover(setup, model::trend_series(setup.trend, gpc));
}

AnnualSeries recover_population_percap(const InversionSetup &setup, const AnnualSeries &gpc) {
    if (setup.trend.kind() != model::TrendSpec::Kind::constant_increment) {
        throw DomainError("per-capita inversion needs a constant-increment trend");
    }
    return recover(setup, model::trend_series(setup.trend, gpc));
}

InitialCountFit fit_initial_count(std::pair<double, double> candidates, const AnnualSeries &target,
                                  YearRange window, const InversionSetup &setup,
                                  const AnnualSeries &gpc) {
    const Problem problem{candidates, target, window, setup, gpc};
    validate(problem);
    Objective objective{problem};
    const auto [lo, hi] = candidates;
    const long long steps = grid_steps(lo, hi);

    // Golden-section search on ln N over the candidate bracket.
    constexpr double inv_phi = 0.6180339887498949;
    double a = std::log(lo);
    double b = std::log(grid_point(lo, steps));
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(std::exp(c));
    double fd = objective(std::exp(d));
    while (std::exp(b) - std::exp(a) > initial_count_resolution) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(std::exp(d));
        }
    }

    // Compare the grid points around the bracket exactly.
    const auto centre = static_cast<long long>(std::llround((std::exp(0.5 * (a + b)) - lo) /
                                                           initial_count_resolution));
    InitialCountFit best{0.0, std::numeric_limits<double>::infinity(), 0};
    for (long long k = std::max(0LL, centre - 3); k <= std::min(steps, centre + 3); ++k) {
        const double count = grid_point(lo, k);
        const double score = objective(count);
        if (score < best.rmse) {
            best.initial_count = count;
            best.rmse = score;
        }
    }
    best.evaluations = objective.evaluations();
    return best;
}

InitialCountFit fit_initial_count_grid(std::pair<double, double> candidates,
                                       const AnnualSeries &target, YearRange window,
                                       const InversionSetup &setup, const AnnualSeries &gpc) {
    const Problem problem{candidates, target, window, setup, gpc};
    validate(problem);
    Objective objective{problem};
    const double lo = candidates.first;
    const long long steps = grid_steps(lo, candidates.second);
    InitialCountFit best{0.0, std::numeric_limits<double>::infinity(), 0};
    for (long long k = 0; k <= steps; ++k) {
        const double count = grid_point(lo, k);
        const double score = objective(count);
        if (score < best.rmse) {
            best.initial_count = count;
            best.rmse = score;
        }
    }
    best.evaluations = objective.evaluations();
    return best;
}

} // namespace demogdp::inversion
