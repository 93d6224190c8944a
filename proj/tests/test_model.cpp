#include "demogdp/errors.hpp"
#include "demogdp/model.hpp"

#include <doctest.h>

#include <cmath>

using namespace demogdp;
using namespace demogdp::model;

namespace {

AnnualSeries flat(int start, std::size_t n, double v, Unit u) {
    return AnnualSeries{start, std::vector<double>(n, v), u};
}

} // namespace

TEST_SUITE("model") {

TEST_CASE("trend term is the reciprocal of T_cr") {
    CHECK(trend_term(40.0) == 0.025);
    CHECK(trend_term(1.0) == 1.0);
    CHECK(trend_term(50.0) == 0.02);
    CHECK_THROWS_AS((void)trend_term(0.0), DomainError);
    CHECK_THROWS_AS((void)trend_term(-3.0), DomainError);
}

TEST_CASE("T_cr follows the square root of per-capita growth") {
    const AnnualSeries gpc{2002, {10'000.0, 20'000.0, 40'000.0}, Unit::dollars_real};
    const auto tcr = evolve_tcr({2003, 40.0}, gpc);
    CHECK(tcr.unit() == Unit::years);
    CHECK(tcr.at(2003) == 40.0);
    CHECK(tcr.at(2004) == doctest::Approx(40.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(tcr.at(2002) == doctest::Approx(40.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(evolve_tcr({1990, 40.0}, gpc), RangeError);
}

TEST_CASE("USA 1950 T_cr from the reference endpoints") {
    // two-point series standing in for 1950 and 2004
    const AnnualSeries g{2003, {12'123.0, 38'345.0}, Unit::dollars_real};
    const auto tcr = evolve_tcr({2004, 40.0}, g);
    CHECK(tcr.at(2003) == doctest::Approx(40.0 * std::sqrt(12'123.0 / 38'345.0)));
    CHECK(tcr.at(2003) == doctest::Approx(22.49).epsilon(1e-3));
}

TEST_CASE("constant cohort with fixed trend predicts the trend") {
    const auto cohort = flat(1990, 10, 4e6, Unit::persons);
    const auto gpc = flat(1990, 10, 30'000.0, Unit::dollars_real);
    const auto g = predict_growth(cohort, TrendSpec::reciprocal_tcr({1995, 40.0}), gpc,
                                  ChangeConvention::relative);
    CHECK(g.range() == YearRange{1991, 1999});
    for (double v : g.values()) {
        CHECK(v == doctest::Approx(0.025).epsilon(1e-15));
    }
}

TEST_CASE("a 4% cohort jump adds 0.02") {
    const AnnualSeries cohort{2000, {4e6, 4.16e6}, Unit::persons};
    const auto gpc = flat(2000, 2, 30'000.0, Unit::dollars_real);
    const auto g = predict_growth(cohort, TrendSpec::reciprocal_tcr({2000, 40.0}), gpc,
                                  ChangeConvention::relative);
    CHECK(g.at(2001) == doctest::Approx(0.045).epsilon(1e-14));
    const auto gl = predict_growth(cohort, TrendSpec::reciprocal_tcr({2000, 40.0}), gpc,
                                   ChangeConvention::log);
    CHECK(gl.at(2001) == doctest::Approx(0.5 * std::log(1.04) + 0.025).epsilon(1e-14));
}

TEST_CASE("per-capita prediction") {
    const auto cohort = flat(1990, 5, 4e6, Unit::persons);
    const auto gpc = flat(1990, 5, 40'000.0, Unit::dollars_real);
    const auto flat_growth = predict_growth_percap(cohort, 400.0, gpc, ChangeConvention::log);
    for (double v : flat_growth.values()) {
        CHECK(v == doctest::Approx(0.01).epsilon(1e-15));
    }
    const AnnualSeries moving{1990, {4e6, 4.2e6, 4.0e6}, Unit::persons};
    const auto g = predict_growth_percap(moving, 0.0, gpc, ChangeConvention::relative);
    const auto half = relative_change(moving);
    for (int y = 1991; y <= 1992; ++y) {
        CHECK(g.at(y) == doctest::Approx(0.5 * half.at(y)).epsilon(1e-15));
    }
}

TEST_CASE("trend spec accessors") {
    const auto a = TrendSpec::constant_increment(-5.0);
    CHECK(a.kind() == TrendSpec::Kind::constant_increment);
    CHECK(a.has_nonpositive_increment());
    CHECK_THROWS_AS((void)a.anchor(), DomainError);
    const auto t = TrendSpec::reciprocal_tcr({2004, 40.0});
    CHECK_THROWS_AS((void)t.increment(), DomainError);
    CHECK(t.anchor().year == 2004);
}

TEST_CASE("per capita from totals") {
    const AnnualSeries gdp{2000, {1e12, 1.1e12}, Unit::dollars_real, "2002 US dollars"};
    const AnnualSeries pop{2000, {1e8, 1e8}, Unit::persons};
    const auto gpc = percap_from_totals(gdp, pop);
    CHECK(gpc.at(2001) == doctest::Approx(11'000.0));
    CHECK_THROWS_AS(percap_from_totals(pop, gdp), DomainError);
}

TEST_CASE("forecast uses the path through the previous year") {
    const auto cohort = flat(2000, 8, 4e6, Unit::persons);
    const auto hist = flat(2000, 3, 40'000.0, Unit::dollars_real);
    const auto f = forecast_growth(cohort, {2002, 40.0}, hist, 0.0, ChangeConvention::log);
    CHECK(f.growth.range() == YearRange{2003, 2007});
    CHECK(f.growth.at(2003) == doctest::Approx(0.025));
    CHECK(f.gpc.at(2003) == doctest::Approx(40'000.0 * 1.025));
    CHECK(f.tcr.at(2004) == doctest::Approx(40.0 * std::sqrt(1.025)));
    CHECK(f.growth.at(2004) < f.growth.at(2003));
}

}
