#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace robstat {

/// Contiguous annual series: values[i] is the observation for year
/// start_year + i.  All downstream routines assume no gaps.
struct TimeSeries {
    std::string name;
    int start_year = 0;
    std::vector<double> values;

    int size() const { return static_cast<int>(values.size()); }
    bool empty() const { return values.empty(); }
    int end_year() const { return start_year + size() - 1; }
    bool covers(int year) const { return year >= start_year && year <= end_year(); }

    double at_year(int year) const {
        if (!covers(year))
            throw std::invalid_argument("series '" + name + "' does not cover year " +
                                        std::to_string(year));
        return values[static_cast<std::size_t>(year - start_year)];
    }

    void validate() const {
        if (values.empty())
            throw std::invalid_argument("series '" + name + "' is empty");
        for (double v : values)
            if (!std::isfinite(v))
                throw std::invalid_argument("series '" + name + "' contains a non-finite value");
    }
};

/// Real price index: 100 * (nominal_t / nominal_base) / (cpi_t / cpi_base),
/// computed over the overlap of the two series.  Equals 100 at the base year.
inline TimeSeries deflate(const TimeSeries& nominal, const TimeSeries& cpi, int base_year) {
    nominal.validate();
    cpi.validate();
    const int start = std::max(nominal.start_year, cpi.start_year);
    const int end = std::min(nominal.end_year(), cpi.end_year());
    if (start > end)
        throw std::invalid_argument("deflate: series '" + nominal.name + "' and deflator do not overlap");
    if (base_year < start || base_year > end)
        throw std::invalid_argument("deflate: base year " + std::to_string(base_year) +
                                    " not covered by '" + nominal.name + "' and the deflator");

    const double nominal_base = nominal.at_year(base_year);
    const double cpi_base = cpi.at_year(base_year);
    if (nominal_base <= 0.0 || cpi_base <= 0.0)
        throw std::invalid_argument("deflate: nonpositive value at base year");

    TimeSeries out;
    out.name = nominal.name;
    out.start_year = start;
    out.values.reserve(static_cast<std::size_t>(end - start + 1));
    for (int year = start; year <= end; ++year) {
        const double p = nominal.at_year(year);
        const double c = cpi.at_year(year);
        if (p <= 0.0 || c <= 0.0)
            throw std::invalid_argument("deflate: nonpositive value in year " + std::to_string(year));
        out.values.push_back(100.0 * (p / nominal_base) / (c / cpi_base));
    }
    return out;
}

/// Elementwise natural logarithm; requires strictly positive values.
inline TimeSeries log_transform(const TimeSeries& series) {
    series.validate();
    TimeSeries out;
    out.name = series.name;
    out.start_year = series.start_year;
    out.values.reserve(series.values.size());
    for (double v : series.values) {
        if (v <= 0.0)
            throw std::invalid_argument("log_transform: nonpositive value in series '" + series.name + "'");
        out.values.push_back(std::log(v));
    }
    return out;
}

/// First differences: element i is y[i+1] - y[i]; start year advances by one.
inline TimeSeries difference(const TimeSeries& series) {
    if (series.size() < 2)
        throw std::invalid_argument("difference: need at least two observations");
    TimeSeries out;
    out.name = series.name;
    out.start_year = series.start_year + 1;
    out.values.reserve(series.values.size() - 1);
    for (std::size_t i = 1; i < series.values.size(); ++i)
        out.values.push_back(series.values[i] - series.values[i - 1]);
    return out;
}

}  // namespace robstat
