#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "robstat/time_series.hpp"

namespace robstat {

/// Column schema for CSV ingestion.  The first column must hold consecutive
/// integer years; every other column is a named series.  Empty cells mark
/// missing observations.
struct CsvLayout {
    std::string year_column = "year";
    // Optional whitelist: when non-empty, only these columns are ingested.
    std::vector<std::string> columns;
};

struct DatasetManifest {
    std::vector<TimeSeries> series;  // file order, which is also report order
    TimeSeries deflator;
    int base_year = 1900;

    const TimeSeries* find(const std::string& name) const {
        for (const auto& s : series)
            if (s.name == name) return &s;
        return nullptr;
    }

    void validate() const {
        if (deflator.empty())
            throw std::invalid_argument("manifest: missing deflator series");
        for (const auto& s : series) {
            s.validate();
            if (s.start_year < deflator.start_year || s.end_year() > deflator.end_year())
                throw std::invalid_argument("manifest: deflator does not cover series '" + s.name + "'");
            if (!s.covers(base_year))
                throw std::invalid_argument("manifest: series '" + s.name + "' does not cover base year " +
                                            std::to_string(base_year));
        }
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

// Longest contiguous run of present values; on ties the earliest run wins.
inline std::pair<int, int> longest_run(const std::vector<std::optional<double>>& col) {
    int best_start = -1, best_len = 0, cur_start = -1, cur_len = 0;
    for (int i = 0; i <= static_cast<int>(col.size()); ++i) {
        const bool present = i < static_cast<int>(col.size()) && col[static_cast<std::size_t>(i)].has_value();
        if (present) {
            if (cur_len == 0) cur_start = i;
            ++cur_len;
        } else {
            if (cur_len > best_len) {
                best_len = cur_len;
                best_start = cur_start;
            }
            cur_len = 0;
        }
    }
    return {best_start, best_len};
}

}  // namespace detail

/// Parse a CSV stream into a manifest (deflator left empty).  Years must be
/// consecutive; series are truncated to their longest contiguous non-missing
/// run rather than interpolated.
inline DatasetManifest load_csv(std::istream& in, const CsvLayout& layout = {}) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("load_csv: empty input");
    auto header = detail::split_csv_line(line);
    if (header.empty() || header.front() != layout.year_column)
        throw std::invalid_argument("load_csv: first column must be '" + layout.year_column + "'");

    const std::size_t ncols = header.size() - 1;
    std::vector<int> years;
    std::vector<std::vector<std::optional<double>>> cols(ncols);

    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw std::invalid_argument("load_csv: line " + std::to_string(lineno) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(header.size()));
        int year = 0;
        try {
            size_t pos = 0;
            year = std::stoi(cells[0], &pos);
            if (pos != cells[0].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw std::invalid_argument("load_csv: unparseable year '" + cells[0] + "' at line " +
                                        std::to_string(lineno));
        }
        if (!years.empty()) {
            if (year <= years.back())
                throw std::invalid_argument("load_csv: non-monotone years at line " + std::to_string(lineno));
            if (year != years.back() + 1)
                throw std::invalid_argument("load_csv: gap in years before " + std::to_string(year));
        }
        years.push_back(year);
        for (std::size_t c = 0; c < ncols; ++c) {
            const std::string& cell = cells[c + 1];
            if (cell.empty()) {
                cols[c].push_back(std::nullopt);
                continue;
            }
            try {
                size_t pos = 0;
                double v = std::stod(cell, &pos);
                if (pos != cell.size()) throw std::invalid_argument("trailing");
                cols[c].push_back(v);
            } catch (const std::exception&) {
                throw std::invalid_argument("load_csv: unparseable cell '" + cell + "' in column '" +
                                            header[c + 1] + "' at line " + std::to_string(lineno));
            }
        }
    }
    if (years.empty()) throw std::invalid_argument("load_csv: no data rows");

    DatasetManifest manifest;
    for (std::size_t c = 0; c < ncols; ++c) {
        const std::string& name = header[c + 1];
        if (!layout.columns.empty() &&
            std::find(layout.columns.begin(), layout.columns.end(), name) == layout.columns.end())
            continue;
        auto [start, len] = detail::longest_run(cols[c]);
        if (len == 0)
            throw std::invalid_argument("load_csv: column '" + name + "' has no data");
        TimeSeries s;
        s.name = name;
        s.start_year = years[static_cast<std::size_t>(start)];
        s.values.reserve(static_cast<std::size_t>(len));
        for (int i = start; i < start + len; ++i) s.values.push_back(*cols[c][static_cast<std::size_t>(i)]);
        manifest.series.push_back(std::move(s));
    }
    return manifest;
}

inline DatasetManifest load_csv_file(const std::string& path, const CsvLayout& layout = {}) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    try {
        return load_csv(in, layout);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

/// Load prices and deflator files and assemble the full manifest.
inline DatasetManifest load_dataset(const std::string& prices_path, const std::string& cpi_path,
                                    int base_year = 1900) {
    DatasetManifest manifest = load_csv_file(prices_path);
    DatasetManifest cpi = load_csv_file(cpi_path);
    if (cpi.series.size() != 1)
        throw std::invalid_argument("deflator file must contain exactly one series, got " +
                                    std::to_string(cpi.series.size()));
    manifest.deflator = cpi.series.front();
    manifest.base_year = base_year;
    manifest.validate();
    return manifest;
}

/// Deflated log real-price index for one series of a manifest.
inline TimeSeries log_real_index(const DatasetManifest& manifest, const TimeSeries& nominal) {
    return log_transform(deflate(nominal, manifest.deflator, manifest.base_year));
}

}  // namespace robstat
