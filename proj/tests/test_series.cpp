#include "demogdp/errors.hpp"
#include "demogdp/series.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace demogdp;

TEST_SUITE("series") {

TEST_CASE("relative change of a 2% step") {
    const AnnualSeries s{2000, {100.0, 102.0}, Unit::dollars_real};
    const auto r = relative_change(s);
    CHECK(r.start_year() == 2001);
    CHECK(r.size() == 1);
    CHECK(r.unit() == Unit::rate_per_year);
    CHECK(r.at(2001) == doctest::Approx(0.02).epsilon(1e-15));
}

TEST_CASE("constant series has zero change in both conventions") {
    const AnnualSeries s{1990, {5.0, 5.0, 5.0}, Unit::persons};
    const auto r = relative_change(s);
    for (double v : r.values()) {
        CHECK(v == 0.0);
    }
    const AnnualSeries two{1990, {5.0, 5.0}, Unit::persons};
    CHECK(log_change(two).at(1991) == 0.0);
}

TEST_CASE("log change of [1, e] is one") {
    const AnnualSeries s{2000, {1.0, std::exp(1.0)}, Unit::persons};
    CHECK(log_change(s).at(2001) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("USA per-capita endpoints compound to a net gain of 2.16") {
    // 1950 and 2004 levels with an arbitrary geometric path between them
    std::vector<double> v(55);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = 12123.0 * std::pow(38345.0 / 12123.0, static_cast<double>(i) / 54.0) *
               (1.0 + 0.01 * std::sin(static_cast<double>(i)));
    }
    v.front() = 12123.0;
    v.back() = 38345.0;
    const AnnualSeries gpc{1950, v, Unit::dollars_real};
    const double factor = compound_factor(relative_change(gpc));
    CHECK(factor == doctest::Approx(38345.0 / 12123.0).epsilon(1e-12));
    CHECK(factor - 1.0 == doctest::Approx(2.16).epsilon(0.002));
}

TEST_CASE("exp-accumulated log changes reproduce the end/start ratio") {
    std::mt19937_64 rng{7};
    std::uniform_real_distribution<double> level{1.0, 1e7};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(40);
        for (double &x : v) {
            x = level(rng);
        }
        const AnnualSeries s{1900, v, Unit::persons};
        const auto d = log_change(s);
        double sum = 0.0;
        for (double x : d.values()) {
            sum += x;
        }
        CHECK(std::exp(sum) == doctest::Approx(v.back() / v.front()).epsilon(1e-12));
        for (auto conv : {ChangeConvention::log, ChangeConvention::relative}) {
            const auto back = accumulate(change(s, conv), v.front(), Unit::persons, conv);
            REQUIRE(back.range() == s.range());
            for (std::size_t i = 0; i < v.size(); ++i) {
                CHECK(back.values()[i] == doctest::Approx(v[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("change rejects non-positive levels naming the year") {
    const AnnualSeries s{2000, {1.0, 0.0, 2.0}, Unit::dimensionless};
    CHECK_THROWS_AS(relative_change(s), DomainError);
    CHECK_THROWS_WITH_AS(log_change(s), doctest::Contains("2001"), DomainError);
}

TEST_CASE("align and intersect") {
    const AnnualSeries a{1950, std::vector<double>(51, 1.0), Unit::persons};
    const AnnualSeries b{1960, std::vector<double>(51, 2.0), Unit::persons};
    const auto [x, y] = align(a, b);
    CHECK(x.range() == YearRange{1960, 2000});
    CHECK(y.range() == YearRange{1960, 2000});

    const auto [p, q] = align(a, a);
    CHECK(p == a);
    CHECK(q == a);

    const AnnualSeries c{1950, std::vector<double>(6, 1.0), Unit::persons};
    const AnnualSeries d{1956, std::vector<double>(5, 1.0), Unit::persons};
    CHECK_THROWS_AS(align(c, d), AlignmentError);
    CHECK_FALSE(intersect(c.range(), d.range()).has_value());
}

TEST_CASE("construction invariants") {
    CHECK_THROWS_AS(AnnualSeries(2000, {}, Unit::persons), DomainError);
    CHECK_THROWS_AS(AnnualSeries(2000, {-1.0}, Unit::persons), DomainError);
    CHECK_THROWS_AS(AnnualSeries(2000, {std::nan("")}, Unit::rate_per_year), DomainError);
    CHECK_NOTHROW(AnnualSeries(2000, {-0.01}, Unit::rate_per_year));
    const AnnualSeries s{2000, {1.0, 2.0, 3.0}, Unit::persons};
    CHECK_THROWS_AS((void)s.at(1999), RangeError);
    CHECK(s.slice(2001, 2002).values()[0] == 2.0);
    CHECK_THROWS_AS(AgePyramid(2000, {}), DomainError);
    const AgePyramid p{2000, {1.0, 2.0}};
    CHECK_THROWS_AS((void)p.count(2), DomainError);
}

TEST_CASE("unit-checked arithmetic") {
    const AnnualSeries gdp{2000, {1e9, 2e9}, Unit::dollars_real, "2002 US dollars"};
    const AnnualSeries pop{2000, {1e5, 1e5}, Unit::persons};
    const auto gpc = divide(gdp, pop);
    CHECK(gpc.unit() == Unit::dollars_real);
    CHECK(gpc.dollar_base() == "2002 US dollars");
    CHECK(gpc.at(2001) == 20000.0);
    CHECK_THROWS_AS(add(gdp, pop), DomainError);
    const AnnualSeries other{2000, {1.0, 1.0}, Unit::dollars_real, "2000 US dollars"};
    CHECK_THROWS_AS(add(gdp, other), DomainError);
    CHECK(divide(pop, pop).unit() == Unit::dimensionless);
    CHECK(scale(pop, 2.0).at(2000) == 2e5);
}

TEST_CASE("unit and convention tags round-trip") {
    for (auto u : {Unit::dollars_real, Unit::persons, Unit::rate_per_year, Unit::dimensionless,
                   Unit::years}) {
        CHECK(parse_unit(to_string(u)) == u);
    }
    CHECK_FALSE(parse_unit("furlongs").has_value());
    CHECK(parse_convention("log") == ChangeConvention::log);
    CHECK(parse_convention("relative") == ChangeConvention::relative);
}

}
