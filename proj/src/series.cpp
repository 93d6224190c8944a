#include "demogdp/series.hpp"

#include "demogdp/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace demogdp {

namespace {

constexpr std::array<std::pair<Unit, std::string_view>, 5> unit_names{{
    {Unit::dollars_real, "dollars_real"},
    {Unit::persons, "persons"},
    {Unit::rate_per_year, "rate_per_year"},
    {Unit::dimensionless, "dimensionless"},
    {Unit::years, "years"},
}};

std::string describe(const AnnualSeries &s) {
    return std::string{to_string(s.unit())} + " series " + to_string(s.range());
}

void require_positive(const AnnualSeries &series, const char *operation) {
    for (int year = series.start_year(); year <= series.end_year(); ++year) {
        if (!(series.at(year) > 0.0)) {
            throw DomainError(std::string{operation} + ": non-positive value " +
                              std::to_string(series.at(year)) + " in year " +
                              std::to_string(year));
        }
    }
}

void require_same_base(const AnnualSeries &a, const AnnualSeries &b) {
    if (!a.dollar_base().empty() && !b.dollar_base().empty() &&
        a.dollar_base() != b.dollar_base()) {
        throw DomainError("cannot combine dollar series with different price bases: '" +
                          a.dollar_base() + "' and '" + b.dollar_base() + "'");
    }
}

std::string merged_base(const AnnualSeries &a, const AnnualSeries &b) {
    return a.dollar_base().empty() ? b.dollar_base() : a.dollar_base();
}

template <typename Op>
AnnualSeries combine(const AnnualSeries &a, const AnnualSeries &b, Unit unit, std::string base,
                     Op op) {
    auto [left, right] = align(a, b);
    std::vector<double> out(left.size());
    std::transform(left.values().begin(), left.values().end(), right.values().begin(),
                   out.begin(), op);
    if (unit != Unit::dollars_real) {
        base.clear();
    }
    return AnnualSeries{left.start_year(), std::move(out), unit, std::move(base)};
}

} // namespace

std::string_view to_string(Unit unit) noexcept {
    for (const auto &[u, name] : unit_names) {
        if (u == unit) {
            return name;
        }
    }
    return "unknown";
}

std::optional<Unit> parse_unit(std::string_view text) noexcept {
    for (const auto &[u, name] : unit_names) {
        if (name == text) {
            return u;
        }
    }
    return std::nullopt;
}

std::string_view to_string(ChangeConvention convention) noexcept {
    return convention == ChangeConvention::log ? "log" : "relative";
}

std::optional<ChangeConvention> parse_convention(std::string_view text) noexcept {
    if (text == "log") {
        return ChangeConvention::log;
    }
    if (text == "relative") {
        return ChangeConvention::relative;
    }
    return std::nullopt;
}

std::string to_string(YearRange range) {
    return std::to_string(range.first) + "-" + std::to_string(range.last);
}

AnnualSeries::AnnualSeries(int start_year, std::vector<double> values, Unit unit,
                           std::string dollar_base)
    : start_year_{start_year}, values_{std::move(values)}, unit_{unit},
      dollar_base_{unit == Unit::dollars_real ? std::move(dollar_base) : std::string{}} {
    if (values_.empty()) {
        throw DomainError("annual series must hold at least one value");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const int year = start_year_ + static_cast<int>(i);
        if (!std::isfinite(values_[i])) {
            throw DomainError("non-finite value in year " + std::to_string(year));
        }
        if (unit_ == Unit::persons && values_[i] < 0.0) {
            throw DomainError("negative person count in year " + std::to_string(year));
        }
    }
}

double AnnualSeries::at(int year) const {
    if (!contains(year)) {
        throw RangeError("year " + std::to_string(year) + " outside " + describe(*this));
    }
    return values_[static_cast<std::size_t>(year - start_year_)];
}

AnnualSeries AnnualSeries::slice(int first, int last) const {
    if (first > last || !contains(first) || !contains(last)) {
        throw RangeError("cannot slice " + to_string(YearRange{first, last}) + " from " +
                         describe(*this));
    }
    const auto begin = values_.begin() + (first - start_year_);
    return AnnualSeries{first, std::vector<double>(begin, begin + (last - first + 1)), unit_,
                        dollar_base_};
}

AnnualSeries AnnualSeries::with_values(std::vector<double> values) const {
    if (values.size() != values_.size()) {
        throw DomainError("replacement values must keep the series length");
    }
    return AnnualSeries{start_year_, std::move(values), unit_, dollar_base_};
}

AgePyramid::AgePyramid(int reference_year, std::vector<double> counts)
    : reference_year_{reference_year}, counts_{std::move(counts)} {
    if (counts_.empty()) {
        throw DomainError("age pyramid needs at least age 0");
    }
    for (std::size_t age = 0; age < counts_.size(); ++age) {
        if (!std::isfinite(counts_[age]) || counts_[age] < 0.0) {
            throw DomainError("invalid count at age " + std::to_string(age));
        }
    }
}

double AgePyramid::count(int age) const {
    if (!has_age(age)) {
        throw DomainError("age " + std::to_string(age) + " absent from the " +
                          std::to_string(reference_year_) + " pyramid (ages 0-" +
                          std::to_string(max_age()) + ")");
    }
    return counts_[static_cast<std::size_t>(age)];
}

AnnualSeries relative_change(const AnnualSeries &series) {
    if (series.size() < 2) {
        throw DomainError("relative_change needs at least two points");
    }
    require_positive(series, "relative_change");
    const auto v = series.values();
    std::vector<double> out(v.size() - 1);
    for (std::size_t i = 1; i < v.size(); ++i) {
        out[i - 1] = (v[i] - v[i - 1]) / v[i - 1];
    }
    return AnnualSeries{series.start_year() + 1, std::move(out), Unit::rate_per_year};
}

AnnualSeries log_change(const AnnualSeries &series) {
    if (series.size() < 2) {
        throw DomainError("log_change needs at least two points");
    }
    require_positive(series, "log_change");
    const auto v = series.values();
    std::vector<double> out(v.size() - 1);
    for (std::size_t i = 1; i < v.size(); ++i) {
        out[i - 1] = std::log(v[i]) - std::log(v[i - 1]);
    }
    return AnnualSeries{series.start_year() + 1, std::move(out), Unit::rate_per_year};
}

AnnualSeries change(const AnnualSeries &series, ChangeConvention convention) {
    return convention == ChangeConvention::log ? log_change(series) : relative_change(series);
}

AnnualSeries accumulate(const AnnualSeries &changes, double initial, Unit unit,
                        ChangeConvention convention) {
    if (!(initial > 0.0)) {
        throw DomainError("accumulate needs a positive initial level");
    }
    std::vector<double> out;
    out.reserve(changes.size() + 1);
    out.push_back(initial);
    for (const double c : changes.values()) {
        const double next =
            convention == ChangeConvention::log ? out.back() * std::exp(c) : out.back() * (1.0 + c);
        out.push_back(next);
    }
    return AnnualSeries{changes.start_year() - 1, std::move(out), unit};
}

double compound_factor(const AnnualSeries &relative_changes) {
    double factor = 1.0;
    for (const double r : relative_changes.values()) {
        factor *= 1.0 + r;
    }
    return factor;
}

std::optional<YearRange> intersect(YearRange a, YearRange b) noexcept {
    const int first = std::max(a.first, b.first);
    const int last = std::min(a.last, b.last);
    if (first > last) {
        return std::nullopt;
    }
    return YearRange{first, last};
}

std::pair<AnnualSeries, AnnualSeries> align(const AnnualSeries &a, const AnnualSeries &b) {
    const auto common = intersect(a.range(), b.range());
    if (!common) {
        throw AlignmentError("no common years between " + describe(a) + " and " + describe(b));
    }
    return {a.slice(common->first, common->last), b.slice(common->first, common->last)};
}

AnnualSeries add(const AnnualSeries &a, const AnnualSeries &b) {
    if (a.unit() != b.unit()) {
        throw DomainError("cannot add " + describe(b) + " to " + describe(a));
    }
    require_same_base(a, b);
    return combine(a, b, a.unit(), merged_base(a, b), std::plus<>{});
}

AnnualSeries subtract(const AnnualSeries &a, const AnnualSeries &b) {
    if (a.unit() != b.unit()) {
        throw DomainError("cannot subtract " + describe(b) + " from " + describe(a));
    }
    require_same_base(a, b);
    return combine(a, b, a.unit(), merged_base(a, b), std::minus<>{});
}

AnnualSeries multiply(const AnnualSeries &a, const AnnualSeries &b) {
    if (b.unit() == Unit::dimensionless) {
        return combine(a, b, a.unit(), a.dollar_base(), std::multiplies<>{});
    }
    if (a.unit() == Unit::dimensionless) {
        return combine(a, b, b.unit(), b.dollar_base(), std::multiplies<>{});
    }
    throw DomainError("cannot multiply " + describe(a) + " by " + describe(b));
}

AnnualSeries divide(const AnnualSeries &a, const AnnualSeries &b) {
    Unit unit{};
    if (a.unit() == b.unit()) {
        require_same_base(a, b);
        unit = Unit::dimensionless;
    } else if (b.unit() == Unit::dimensionless) {
        unit = a.unit();
    } else if (a.unit() == Unit::dollars_real && b.unit() == Unit::persons) {
        unit = Unit::dollars_real;
    } else {
        throw DomainError("cannot divide " + describe(a) + " by " + describe(b));
    }
    auto [left, right] = align(a, b);
    for (int year = right.start_year(); year <= right.end_year(); ++year) {
        if (right.at(year) == 0.0) {
            throw DomainError("division by zero in year " + std::to_string(year));
        }
    }
    return combine(left, right, unit, a.dollar_base(), std::divides<>{});
}

AnnualSeries scale(const AnnualSeries &series, double factor) {
    std::vector<double> out(series.values().begin(), series.values().end());
    for (double &v : out) {
        v *= factor;
    }
    return series.with_values(std::move(out));
}

} // namespace demogdp
