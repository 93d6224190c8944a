#include "demogdp/calibration.hpp"
#include "demogdp/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace demogdp;
using namespace demogdp::calibration;

namespace {

AgePyramid random_pyramid(int year, std::mt19937_64 &rng) {
    std::normal_distribution<double> shock{0.0, 0.04};
    std::vector<double> counts{4e6};
    for (int age = 1; age <= 90; ++age) {
        counts.push_back(counts.back() * std::exp(shock(rng)));
    }
    return AgePyramid{year, counts};
}

AnnualSeries gpc_path(int first, int last) {
    std::vector<double> v;
    for (int y = first; y <= last; ++y) {
        v.push_back(12'000.0 + 450.0 * (y - first));
    }
    return AnnualSeries{first, v, Unit::dollars_real};
}

} // namespace

TEST_SUITE("calibration") {

TEST_CASE("synthetic age-9 dynamics select age 9") {
    std::mt19937_64 rng{9};
    const auto pyramid = random_pyramid(1990, rng);
    const auto cohorts = cohorts_from_pyramid(pyramid);
    CHECK(cohorts.size() == 25);
    const auto gpc = gpc_path(1950, 2004);
    const auto trend = model::TrendSpec::reciprocal_tcr({2004, 40.0});
    const auto observed =
        model::predict_growth(cohorts.at(9), trend, gpc, ChangeConvention::log);
    const auto result = calibrate_defining_age(cohorts, observed, trend, gpc);
    CHECK(result.best_age == 9);
    CHECK(result.per_age_scores.at(9) == doctest::Approx(0.0).epsilon(1e-15));
    REQUIRE(result.runner_up_margin.has_value());
    CHECK(*result.runner_up_margin > 0.0);
}

TEST_CASE("a single candidate is returned with no margin") {
    std::mt19937_64 rng{1};
    const auto cohorts = cohorts_from_pyramid(random_pyramid(1990, rng), 12, 12);
    const auto gpc = gpc_path(1950, 2004);
    const auto trend = model::TrendSpec::reciprocal_tcr({2004, 40.0});
    const auto observed = relative_change(gpc);
    const auto result = calibrate_defining_age(cohorts, observed, trend, gpc);
    CHECK(result.best_age == 12);
    CHECK_FALSE(result.runner_up_margin.has_value());
}

TEST_CASE("ties go to the younger age") {
    const AnnualSeries same{1990, {1e6, 1.1e6, 1.0e6, 1.2e6, 1.1e6, 1.0e6, 1.05e6}, Unit::persons};
    const auto gpc = gpc_path(1990, 1996);
    const auto trend = model::TrendSpec::constant_increment(400.0);
    const auto observed = relative_change(gpc);
    const auto result = calibrate_defining_age({{14, same}, {7, same}}, observed, trend, gpc);
    CHECK(result.best_age == 7);
    CHECK(*result.runner_up_margin == 0.0);
}

TEST_CASE("candidates with too little overlap are skipped") {
    const auto gpc = gpc_path(1990, 2010);
    const auto trend = model::TrendSpec::constant_increment(400.0);
    const auto observed = relative_change(gpc);
    const AnnualSeries short_cohort{2005, {1e6, 1.1e6, 1.2e6, 1.1e6, 1e6}, Unit::persons};
    CHECK_THROWS_AS(calibrate_defining_age({{9, short_cohort}}, observed, trend, gpc),
                    InsufficientDataError);
    const AnnualSeries long_cohort{1990, std::vector<double>(21, 1e6), Unit::persons};
    const auto result =
        calibrate_defining_age({{9, short_cohort}, {10, long_cohort}}, observed, trend, gpc);
    CHECK(result.per_age_scores.size() == 1);
    CHECK(result.best_age == 10);
}

TEST_CASE("mean increment") {
    std::vector<double> v;
    for (int t = 0; t < 30; ++t) {
        v.push_back(400.0 * t + 9'000.0);
    }
    CHECK(mean_increment(AnnualSeries{1970, v, Unit::dollars_real}) ==
          doctest::Approx(400.0).epsilon(1e-14));
    // Reference 1950 and 2004 levels; only the endpoints matter.
    const auto span = [](double start, double end) {
        std::vector<double> levels(55, start);
        levels.back() = end;
        return AnnualSeries{1950, levels, Unit::dollars_real};
    };
    CHECK(mean_increment(span(12'123.0, 38'345.0)) == doctest::Approx(485.59).epsilon(1e-4));
    CHECK(mean_increment(span(7'009.0, 28'956.0)) == doctest::Approx(406.43).epsilon(1e-4));
}

TEST_CASE("trend-preserving fit") {
    const auto gpc = gpc_path(1950, 2002);
    std::vector<double> g;
    for (int y = 1951; y <= 2002; ++y) {
        g.push_back(400.0 / gpc.at(y));
    }
    const AnnualSeries growth{1951, g, Unit::rate_per_year};
    CHECK(std::abs(fit_trend_preserving(growth, gpc) - 400.0) <= 1e-9);
    CHECK(std::abs(fit_trend_least_squares(growth, gpc) - 400.0) <= 1e-9);

    const AnnualSeries flat_gpc{2000, std::vector<double>(6, 25'000.0), Unit::dollars_real};
    const AnnualSeries flat_growth{2001, std::vector<double>(5, 0.02), Unit::rate_per_year};
    CHECK(fit_trend_preserving(flat_growth, flat_gpc) == doctest::Approx(500.0));
}

TEST_CASE("the fitted increment preserves total growth; least squares does not") {
    std::mt19937_64 rng{17};
    std::normal_distribution<double> noise{0.0, 0.02};
    for (int trial = 0; trial < 50; ++trial) {
        const auto gpc = gpc_path(1930, 2002);
        std::vector<double> g;
        for (int y = 1931; y <= 2002; ++y) {
            g.push_back(450.0 / gpc.at(y) + noise(rng));
        }
        const AnnualSeries growth{1931, g, Unit::rate_per_year};
        const double a = fit_trend_preserving(growth, gpc);
        double model_sum = 0.0;
        double observed_sum = 0.0;
        for (int y = 1931; y <= 2002; ++y) {
            model_sum += a / gpc.at(y);
            observed_sum += growth.at(y);
        }
        CHECK(std::abs(model_sum - observed_sum) <= 1e-12 * std::abs(observed_sum));
    }
}

TEST_CASE("fit input checks") {
    const AnnualSeries gpc{2000, {1e4, 1e4}, Unit::persons};
    const AnnualSeries g{2001, {0.1}, Unit::rate_per_year};
    CHECK_THROWS_AS(fit_trend_preserving(g, gpc), DomainError);
    CHECK_THROWS_AS(mean_increment(AnnualSeries{2000, {1.0}, Unit::dollars_real}), DomainError);
}

}
