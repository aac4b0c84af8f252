#pragma once
// Tick-data ingestion: parse LOBSTER-style message files (6 comma-separated
// columns: time in seconds after midnight with nanosecond precision, event
// type, order id, size, price in 1/10000 currency units, direction), keep the
// execution events, collapse simultaneous transactions, and summarize days.
//
// Exactness requirements drive the representations: timestamps are integer
// nanoseconds after midnight (the collapse rule groups on exact equality) and
// prices stay integer ticks end-to-end (a zero return must be an exact
// integer comparison, never a float one).

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqpred/symbolize.hpp"

namespace seqpred {

struct TickRecord {
    std::int64_t time_ns = 0;     // nanoseconds after midnight
    int event_type = 0;           // 4 = visible execution, 5 = hidden execution
    std::int64_t order_id = 0;
    std::int64_t size = 0;        // shares
    std::int64_t price_ticks = 0; // 1/10000 currency units
    int direction = 0;            // +1 / -1
};

struct TickSeries {
    std::string ticker;
    std::string date;
    std::vector<TickRecord> records;
};

struct ParseOptions {
    bool keep_visible = true;   // event type 4
    bool keep_hidden = true;    // event type 5
    // Trading window 9:30-16:00 in seconds after midnight; records outside
    // are dropped.
    double window_start_s = 34200.0;
    double window_end_s = 57600.0;
};

struct ParseStats {
    std::size_t rows_total = 0;
    std::size_t rows_kept = 0;
    std::size_t rows_dropped_type = 0;
    std::size_t rows_dropped_window = 0;
};

namespace detail {

inline std::int64_t parse_time_ns(const std::string& field, std::size_t line_no) {
    const auto dot = field.find('.');
    const std::string sec_part = dot == std::string::npos ? field : field.substr(0, dot);
    std::string frac_part = dot == std::string::npos ? "" : field.substr(dot + 1);
    if (frac_part.size() > 9) frac_part.resize(9);
    while (frac_part.size() < 9) frac_part.push_back('0');

    std::int64_t sec = 0, ns = 0;
    auto r1 = std::from_chars(sec_part.data(), sec_part.data() + sec_part.size(), sec);
    if (r1.ec != std::errc{} || r1.ptr != sec_part.data() + sec_part.size())
        throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                 ": bad time field '" + field + "'");
    if (!frac_part.empty()) {
        auto r2 = std::from_chars(frac_part.data(), frac_part.data() + frac_part.size(), ns);
        if (r2.ec != std::errc{} || r2.ptr != frac_part.data() + frac_part.size())
            throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                     ": bad time field '" + field + "'");
    }
    return sec * 1000000000LL + ns;
}

inline std::int64_t parse_int(const std::string& field, std::size_t line_no, const char* what) {
    std::int64_t v = 0;
    auto r = std::from_chars(field.data(), field.data() + field.size(), v);
    if (r.ec != std::errc{} || r.ptr != field.data() + field.size())
        throw std::runtime_error("parse error at line " + std::to_string(line_no) + ": bad " +
                                 what + " field '" + field + "'");
    return v;
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

}  // namespace detail

inline TickSeries parse_messages(std::istream& in, const ParseOptions& opts = {},
                                 ParseStats* stats = nullptr) {
    TickSeries series;
    ParseStats local;
    const std::int64_t win_lo = static_cast<std::int64_t>(opts.window_start_s * 1e9);
    const std::int64_t win_hi = static_cast<std::int64_t>(opts.window_end_s * 1e9);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++local.rows_total;
        const auto fields = detail::split_csv(line);
        if (fields.size() != 6)
            throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                     ": expected 6 columns, got " +
                                     std::to_string(fields.size()));
        TickRecord rec;
        rec.time_ns = detail::parse_time_ns(fields[0], line_no);
        rec.event_type = static_cast<int>(detail::parse_int(fields[1], line_no, "event type"));
        rec.order_id = detail::parse_int(fields[2], line_no, "order id");
        rec.size = detail::parse_int(fields[3], line_no, "size");
        rec.price_ticks = detail::parse_int(fields[4], line_no, "price");
        rec.direction = static_cast<int>(detail::parse_int(fields[5], line_no, "direction"));

        const bool is_exec = (rec.event_type == 4 && opts.keep_visible) ||
                             (rec.event_type == 5 && opts.keep_hidden);
        if (!is_exec) {
            ++local.rows_dropped_type;
            continue;
        }
        if (rec.time_ns < win_lo || rec.time_ns > win_hi) {
            ++local.rows_dropped_window;
            continue;
        }
        series.records.push_back(rec);
        ++local.rows_kept;
    }
    if (stats) *stats = local;
    return series;
}

inline TickSeries parse_messages_file(const std::string& path, const ParseOptions& opts = {},
                                      ParseStats* stats = nullptr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open message file: " + path);
    return parse_messages(in, opts, stats);
}

// Merge records sharing one nanosecond timestamp into a single trade with the
// summed volume and the last record's price; output timestamps are strictly
// increasing.
inline TickSeries collapse_simultaneous(const TickSeries& series) {
    TickSeries out;
    out.ticker = series.ticker;
    out.date = series.date;
    out.records.reserve(series.records.size());
    for (const TickRecord& rec : series.records) {
        if (!out.records.empty() && out.records.back().time_ns == rec.time_ns) {
            TickRecord& last = out.records.back();
            last.size += rec.size;
            last.price_ticks = rec.price_ticks;
            last.order_id = rec.order_id;
            last.event_type = rec.event_type;
            last.direction = rec.direction;
        } else {
            if (!out.records.empty() && rec.time_ns < out.records.back().time_ns)
                throw std::invalid_argument("collapse_simultaneous: series not sorted");
            out.records.push_back(rec);
        }
    }
    return out;
}

struct DaySummary {
    double mean_price = 0.0;       // in currency units
    double price_sd = 0.0;
    std::int64_t total_volume = 0;
    std::size_t n_transactions = 0;
    double mean_inter_time_s = 0.0;
};

inline DaySummary day_summary(const TickSeries& series) {
    if (series.records.empty()) throw std::invalid_argument("day_summary: empty series");
    DaySummary s;
    s.n_transactions = series.records.size();
    double sum = 0.0;
    for (const TickRecord& rec : series.records) {
        sum += static_cast<double>(rec.price_ticks) / 10000.0;
        s.total_volume += rec.size;
    }
    const double n = static_cast<double>(s.n_transactions);
    s.mean_price = sum / n;
    // Two-pass variance: the textbook one-pass form cancels catastrophically
    // at typical price magnitudes (sd ~ 1 on prices ~ 100).
    double ss = 0.0;
    for (const TickRecord& rec : series.records) {
        const double d = static_cast<double>(rec.price_ticks) / 10000.0 - s.mean_price;
        ss += d * d;
    }
    s.price_sd = std::sqrt(ss / n);
    if (s.n_transactions > 1) {
        const double span_ns = static_cast<double>(series.records.back().time_ns -
                                                   series.records.front().time_ns);
        s.mean_inter_time_s = span_ns / 1e9 / (n - 1.0);
    }
    return s;
}

inline std::vector<std::int64_t> tick_prices(const TickSeries& series) {
    std::vector<std::int64_t> prices;
    prices.reserve(series.records.size());
    for (const TickRecord& rec : series.records) prices.push_back(rec.price_ticks);
    return prices;
}

inline std::vector<double> prices_currency(const TickSeries& series) {
    std::vector<double> prices;
    prices.reserve(series.records.size());
    for (const TickRecord& rec : series.records)
        prices.push_back(static_cast<double>(rec.price_ticks) / 10000.0);
    return prices;
}

// Derived-series CSV: one exact integer row per trade.
inline void write_series_csv(const TickSeries& series, std::ostream& out) {
    out << "timestamp_ns,price_ticks,size\n";
    for (const TickRecord& rec : series.records)
        out << rec.time_ns << ',' << rec.price_ticks << ',' << rec.size << '\n';
}

inline void write_series_csv_file(const TickSeries& series, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write series file: " + path);
    write_series_csv(series, out);
}

// Round-trip reader for the derived-series CSV.
inline TickSeries read_series_csv(std::istream& in) {
    TickSeries series;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line_no == 1) continue;  // header
        const auto fields = detail::split_csv(line);
        if (fields.size() != 3)
            throw std::runtime_error("series parse error at line " + std::to_string(line_no));
        TickRecord rec;
        rec.time_ns = detail::parse_int(fields[0], line_no, "timestamp");
        rec.price_ticks = detail::parse_int(fields[1], line_no, "price");
        rec.size = detail::parse_int(fields[2], line_no, "size");
        rec.event_type = 4;
        series.records.push_back(rec);
    }
    return series;
}

}  // namespace seqpred
