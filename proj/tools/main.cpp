// seqpred — command-line front end for the sequence-predictability library.
//
// Subcommands:
//   test       run the entropy-bias and NP tests per day / per sequence
//   scan       fraction of predictable days per (month, aggregation level)
//   localize   Sidak-corrected partition scan per day
//   profile    per-day characteristic vector + predictable-vs-rest comparison
//   simulate   microstructure models (lambda | od | ts) -> step,sign,price
//   calibrate  Monte Carlo chi-squared calibration of B / D
//
// Inputs are LOBSTER-style message files (one file per ticker-day), a
// directory of them, a .txt file of digit strings (one symbol sequence per
// line), or "-" for digit strings on stdin.  Outputs go to stdout or, with
// --out DIR, to <DIR>/<command>.<format>.  Every command is deterministic
// given identical flags and seed.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqpred/calibrate.hpp"
#include "seqpred/day_profile.hpp"
#include "seqpred/ingest.hpp"
#include "seqpred/localize.hpp"
#include "seqpred/sim/decay.hpp"
#include "seqpred/sim/lambda_model.hpp"
#include "seqpred/sim/order_driven.hpp"
#include "seqpred/sim/trade_superposition.hpp"
#include "seqpred/stat_tests.hpp"
#include "seqpred/symbolize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string input;  // message file, directory, .txt of digits, or "-"
    std::string ticker;
    std::string from_date;
    std::string to_date;
    std::string agg = "1";  // single level, or a list/range for `scan`
    double alpha = 0.01;
    int k_override = 0;  // 0 = automatic block length
    bool collapse = false;
    std::uint64_t seed = 1;
    std::string out = "-";
    std::string format = "json";
};

void add_common_options(CLI::App* sub, CommonOpts& o, bool wants_input) {
    if (wants_input) {
        sub->add_option("-i,--input", o.input,
                        "message file, directory of message files, .txt of digit "
                        "strings, or '-' for stdin")
            ->envname("SEQPRED_DATA_DIR");
        sub->add_option("--ticker", o.ticker, "restrict to one ticker");
        sub->add_option("--from", o.from_date, "first date to include (YYYY-MM-DD)");
        sub->add_option("--to", o.to_date, "last date to include (YYYY-MM-DD)");
        sub->add_option("-a,--agg", o.agg,
                        "aggregation level in transactions (scan accepts lists: 1,5,10 "
                        "or 1-50)");
        sub->add_flag("--collapse", o.collapse,
                      "merge executions sharing one nanosecond timestamp");
    }
    sub->add_option("--alpha", o.alpha, "significance level")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12));
    sub->add_option("-k", o.k_override, "block length override (0 = automatic)")
        ->check(CLI::Range(0, 32));
    sub->add_option("--seed", o.seed, "random seed where randomness is involved");
    sub->add_option("-o,--out", o.out, "output directory ('-' = stdout)");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

// ---------------------------------------------------------------------------
// formatting / output plumbing

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string join_csv(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += fields[i];
    }
    return line;
}

// Writes one logical output ("test", "profile", "comparison", ...).  stdout
// mode prints sections in order; directory mode writes <out>/<stem>.<ext>.
void write_output(const CommonOpts& o, const std::string& stem, const std::string& ext,
                  const std::string& content) {
    if (o.out == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    fs::create_directories(o.out);
    const fs::path path = fs::path(o.out) / (stem + "." + ext);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path.string());
    f << content;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// input discovery

struct DayInput {
    std::string ticker;
    std::string date;
    std::string path;  // empty in symbol-stream mode
    seqpred::SymbolSequence symbols;  // used when path is empty
};

bool looks_like_date(const std::string& tok) {
    if (tok.size() != 10 || tok[4] != '-' || tok[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
    return true;
}

// LOBSTER message files are named TICKER_DATE_..._message_...csv; fall back
// to the --ticker flag and the bare filename when that pattern is absent.
void ticker_date_from_name(const std::string& path, const std::string& fallback_ticker,
                           std::string* ticker, std::string* date) {
    const std::string base = fs::path(path).filename().string();
    std::vector<std::string> toks;
    std::string cur;
    for (const char c : base) {
        if (c == '_') {
            toks.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    toks.push_back(cur);
    if (toks.size() >= 2 && looks_like_date(toks[1])) {
        *ticker = toks[0];
        *date = toks[1];
    } else {
        *ticker = fallback_ticker.empty() ? "unknown" : fallback_ticker;
        *date = base;
    }
}

std::vector<DayInput> symbol_lines(std::istream& in) {
    std::vector<DayInput> days;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        int max_digit = 1;
        for (const char c : line) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::runtime_error("symbol input line " + std::to_string(line_no) +
                                         ": expected digits only");
            max_digit = std::max(max_digit, c - '0');
        }
        DayInput d;
        d.ticker = "seq";
        d.date = std::to_string(line_no);
        d.symbols = seqpred::from_string(line, max_digit + 1);
        days.push_back(std::move(d));
    }
    return days;
}

std::vector<DayInput> discover_inputs(const CommonOpts& o) {
    if (o.input.empty())
        throw std::runtime_error(
            "no input: pass --input or set SEQPRED_DATA_DIR (use '-' for stdin)");
    if (o.input == "-") return symbol_lines(std::cin);

    const fs::path p(o.input);
    if (!fs::exists(p)) throw std::runtime_error("input not found: " + o.input);

    std::vector<DayInput> days;
    if (fs::is_directory(p)) {
        for (const auto& entry : fs::directory_iterator(p)) {
            if (!entry.is_regular_file()) continue;
            const std::string name = entry.path().filename().string();
            if (entry.path().extension() != ".csv") continue;
            if (name.find("message") == std::string::npos) continue;
            DayInput d;
            d.path = entry.path().string();
            ticker_date_from_name(d.path, o.ticker, &d.ticker, &d.date);
            if (!o.ticker.empty() && d.ticker != o.ticker) continue;
            if (!o.from_date.empty() && d.date < o.from_date) continue;
            if (!o.to_date.empty() && d.date > o.to_date) continue;
            days.push_back(std::move(d));
        }
        std::sort(days.begin(), days.end(), [](const DayInput& a, const DayInput& b) {
            return std::tie(a.ticker, a.date, a.path) < std::tie(b.ticker, b.date, b.path);
        });
        return days;
    }

    if (p.extension() == ".txt") {
        std::ifstream f(p);
        if (!f) throw std::runtime_error("cannot open: " + o.input);
        return symbol_lines(f);
    }

    DayInput d;
    d.path = o.input;
    ticker_date_from_name(d.path, o.ticker, &d.ticker, &d.date);
    days.push_back(std::move(d));
    return days;
}

bool symbol_mode(const std::vector<DayInput>& days) {
    return !days.empty() && days.front().path.empty();
}

// ---------------------------------------------------------------------------
// per-day pipeline: messages -> tick prices -> aggregate -> symbols

struct DaySymbols {
    seqpred::SymbolSequence seq;
    std::size_t zeros_dropped = 0;
    std::size_t transactions = 0;  // after optional collapse
};

seqpred::TickSeries load_series(const DayInput& day, const CommonOpts& o) {
    seqpred::ParseOptions popts;  // defaults keep visible + hidden executions
    seqpred::TickSeries series = seqpred::parse_messages_file(day.path, popts);
    series.ticker = day.ticker;
    series.date = day.date;
    if (o.collapse) series = seqpred::collapse_simultaneous(series);
    return series;
}

DaySymbols symbols_from_series(const seqpred::TickSeries& series, std::size_t a) {
    DaySymbols out;
    out.transactions = series.records.size();
    const std::vector<std::int64_t> ticks = seqpred::tick_prices(series);
    const std::vector<std::int64_t> agg = seqpred::aggregate_prices(ticks, a);
    const seqpred::Symbolized sym = seqpred::symbolize_prices(agg);
    out.seq = sym.seq;
    out.zeros_dropped = sym.zeros_dropped;
    return out;
}

DaySymbols day_symbols(const DayInput& day, const CommonOpts& o, std::size_t a) {
    if (day.path.empty()) {
        DaySymbols out;
        out.seq = day.symbols;
        out.transactions = day.symbols.size();
        return out;
    }
    return symbols_from_series(load_series(day, o), a);
}

int pick_k(const CommonOpts& o, std::size_t n, int s) {
    return o.k_override > 0 ? o.k_override : seqpred::block_length(n, s);
}

std::size_t single_agg(const CommonOpts& o) {
    std::size_t a = 0;
    try {
        a = static_cast<std::size_t>(std::stoull(o.agg));
    } catch (const std::exception&) {
        throw std::runtime_error("--agg must be a single positive integer here");
    }
    if (a < 1) throw std::runtime_error("--agg must be >= 1");
    return a;
}

std::vector<std::size_t> agg_list(const CommonOpts& o) {
    std::vector<std::size_t> out;
    std::stringstream ss(o.agg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const std::size_t dash = item.find('-');
        if (dash != std::string::npos && dash > 0) {
            const std::size_t lo = std::stoull(item.substr(0, dash));
            const std::size_t hi = std::stoull(item.substr(dash + 1));
            if (lo < 1 || hi < lo) throw std::runtime_error("bad --agg range: " + item);
            for (std::size_t a = lo; a <= hi; ++a) out.push_back(a);
        } else {
            const std::size_t a = std::stoull(item);
            if (a < 1) throw std::runtime_error("--agg must be >= 1");
            out.push_back(a);
        }
    }
    if (out.empty()) throw std::runtime_error("empty --agg list");
    return out;
}

const char* kind_name(seqpred::TestKind k) {
    return k == seqpred::TestKind::entropy_bias ? "entropy-bias" : "neyman-pearson";
}

// ---------------------------------------------------------------------------
// test

int cmd_test(const CommonOpts& o) {
    const std::vector<DayInput> days = discover_inputs(o);
    const std::size_t a = symbol_mode(days) ? 1 : single_agg(o);

    json records = json::array();
    std::vector<std::vector<std::string>> csv_rows;
    for (const DayInput& day : days) {
        const DaySymbols sym = day_symbols(day, o, a);
        const std::size_t n = sym.seq.size();

        const auto emit = [&](seqpred::TestKind kind, const seqpred::TestResult* r,
                              int k_used) {
            json rec = {{"ticker", day.ticker}, {"date", day.date},
                        {"a", a},               {"test", kind_name(kind)},
                        {"n", n},               {"zeros_dropped", sym.zeros_dropped},
                        {"insufficient", r == nullptr}};
            if (r != nullptr) {
                rec["k"] = r->k;
                rec["statistic"] = r->statistic;
                rec["df"] = r->df;
                rec["p_value"] = r->p_value;
                rec["predictable"] = r->predictable;
            } else {
                rec["k"] = k_used;
                rec["statistic"] = nullptr;
                rec["df"] = nullptr;
                rec["p_value"] = nullptr;
                rec["predictable"] = false;
            }
            records.push_back(rec);
            csv_rows.push_back(
                {day.ticker, day.date, std::to_string(a), kind_name(kind),
                 std::to_string(n), std::to_string(sym.zeros_dropped),
                 std::to_string(r ? r->k : k_used),
                 r ? fmt_double(r->statistic) : "", r ? std::to_string(r->df) : "",
                 r ? fmt_double(r->p_value) : "", r ? (r->predictable ? "1" : "0") : "0",
                 r ? "0" : "1"});
        };

        const int k = pick_k(o, n, sym.seq.s);
        const bool testable = n >= 4 && k >= 2 && n > static_cast<std::size_t>(k);
        if (!testable) {
            emit(seqpred::TestKind::entropy_bias, nullptr, k);
            emit(seqpred::TestKind::neyman_pearson, nullptr, k);
            continue;
        }
        const seqpred::TestResult b = seqpred::entropy_bias(sym.seq, k, o.alpha);
        const seqpred::TestResult d = seqpred::np_statistic(sym.seq, k, o.alpha);
        emit(seqpred::TestKind::entropy_bias, &b, k);
        emit(seqpred::TestKind::neyman_pearson, &d, k);
    }

    if (o.format == "json") {
        write_output(o, "test", "json",
                     dump_json({{"command", "test"}, {"alpha", o.alpha}, {"records", records}}));
    } else {
        std::string csv =
            "ticker,date,a,test,n,zeros_dropped,k,statistic,df,p_value,predictable,"
            "insufficient\n";
        for (const auto& row : csv_rows) csv += join_csv(row) + "\n";
        write_output(o, "test", "csv", csv);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// scan

int cmd_scan(const CommonOpts& o, bool use_entropy_bias) {
    const std::vector<DayInput> days = discover_inputs(o);
    const std::vector<std::size_t> levels = agg_list(o);
    const bool symbols_only = symbol_mode(days);

    // (ticker, month, a) -> {days, predictable}
    std::map<std::tuple<std::string, std::string, std::size_t>,
             std::pair<std::size_t, std::size_t>>
        cells;

    for (const DayInput& day : days) {
        seqpred::TickSeries series;
        if (!symbols_only) series = load_series(day, o);
        const std::string month = symbols_only ? "all" : day.date.substr(0, 7);
        for (const std::size_t a : levels) {
            DaySymbols sym = symbols_only ? day_symbols(day, o, 1)
                                          : symbols_from_series(series, a);
            const std::size_t n = sym.seq.size();
            const int k = pick_k(o, n, sym.seq.s);
            bool predictable = false;
            if (n >= 4 && k >= 2 && n > static_cast<std::size_t>(k)) {
                predictable = use_entropy_bias
                                  ? seqpred::entropy_bias(sym.seq, k, o.alpha).predictable
                                  : seqpred::np_statistic(sym.seq, k, o.alpha).predictable;
            }
            auto& cell = cells[{day.ticker, month, a}];
            ++cell.first;
            if (predictable) ++cell.second;
        }
    }

    json records = json::array();
    std::string csv = "ticker,month,a,days,predictable_days,fraction\n";
    for (const auto& [key, val] : cells) {
        const auto& [ticker, month, a] = key;
        const double frac =
            val.first ? static_cast<double>(val.second) / static_cast<double>(val.first) : 0.0;
        records.push_back({{"ticker", ticker},
                           {"month", month},
                           {"a", a},
                           {"days", val.first},
                           {"predictable_days", val.second},
                           {"fraction", frac}});
        csv += join_csv({ticker, month, std::to_string(a), std::to_string(val.first),
                         std::to_string(val.second), fmt_double(frac)}) +
               "\n";
    }

    if (o.format == "json") {
        write_output(o, "scan", "json",
                     dump_json({{"command", "scan"},
                                {"alpha", o.alpha},
                                {"test", use_entropy_bias ? "entropy-bias" : "neyman-pearson"},
                                {"records", records}}));
    } else {
        write_output(o, "scan", "csv", csv);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// localize

int cmd_localize(const CommonOpts& o) {
    const std::vector<DayInput> days = discover_inputs(o);
    const std::size_t a = symbol_mode(days) ? 1 : single_agg(o);

    json records = json::array();
    std::string csv = "ticker,date,a,n,S_max,best_S,day_predictable,significant,runs\n";
    for (const DayInput& day : days) {
        const DaySymbols sym = day_symbols(day, o, a);
        const seqpred::PartitionScan scan = seqpred::scan_partitions(sym.seq, o.alpha);

        json sig = json::array();
        json runs = json::array();
        std::string sig_csv, runs_csv;
        if (scan.best_S >= 1) {
            const auto& intervals = scan.per_S[static_cast<std::size_t>(scan.best_S - 1)];
            for (const auto& iv : intervals) {
                if (!iv.significant) continue;
                sig.push_back(iv.index);
                if (!sig_csv.empty()) sig_csv += ';';
                sig_csv += std::to_string(iv.index);
            }
            for (const auto& [first, last] : scan.significant_runs(scan.best_S)) {
                runs.push_back({first, last});
                if (!runs_csv.empty()) runs_csv += ';';
                runs_csv += std::to_string(first) + "-" + std::to_string(last);
            }
        }
        records.push_back({{"ticker", day.ticker},
                           {"date", day.date},
                           {"a", a},
                           {"n", scan.n},
                           {"S_max", scan.S_max},
                           {"best_S", scan.best_S},
                           {"day_predictable", scan.day_predictable},
                           {"significant", sig},
                           {"runs", runs}});
        csv += join_csv({day.ticker, day.date, std::to_string(a), std::to_string(scan.n),
                         std::to_string(scan.S_max), std::to_string(scan.best_S),
                         scan.day_predictable ? "1" : "0", sig_csv, runs_csv}) +
               "\n";
    }

    if (o.format == "json") {
        write_output(o, "localize", "json",
                     dump_json({{"command", "localize"},
                                {"alpha", o.alpha},
                                {"records", records}}));
    } else {
        write_output(o, "localize", "csv", csv);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// profile

int cmd_profile(const CommonOpts& o) {
    const std::vector<DayInput> days = discover_inputs(o);
    if (symbol_mode(days))
        throw std::runtime_error("profile needs message-file input (prices and volumes)");
    const std::size_t a = single_agg(o);

    json records = json::array();
    std::vector<std::vector<std::string>> csv_rows;
    std::vector<seqpred::DayProfile> profiles;
    for (const DayInput& day : days) {
        const seqpred::TickSeries series = load_series(day, o);
        const std::vector<std::int64_t> ticks = seqpred::tick_prices(series);
        const std::vector<std::int64_t> agg_ticks = seqpred::aggregate_prices(ticks, a);
        std::vector<double> prices(agg_ticks.size());
        for (std::size_t i = 0; i < agg_ticks.size(); ++i)
            prices[i] = static_cast<double>(agg_ticks[i]) / 10000.0;
        std::vector<double> volumes;
        volumes.reserve(series.records.size());
        for (const auto& r : series.records) volumes.push_back(static_cast<double>(r.size));

        const seqpred::DayProfile p = seqpred::profile_day(prices, volumes, o.alpha);
        profiles.push_back(p);
        records.push_back({{"ticker", day.ticker},
                           {"date", day.date},
                           {"a", a},
                           {"sufficient", p.sufficient},
                           {"n_nonzero", p.n_nonzero},
                           {"zero_fraction", p.zero_fraction},
                           {"k", p.k},
                           {"repeat_prob_scaled", p.repeat_prob_scaled},
                           {"symbol_imbalance", p.symbol_imbalance},
                           {"daily_increment_magnitude", p.daily_increment_magnitude},
                           {"mean_return", p.mean_return},
                           {"acf1_returns", p.acf1_returns},
                           {"acf1_abs", p.acf1_abs},
                           {"t_nu", p.t_nu},
                           {"t_scale", p.t_scale},
                           {"t_shift_magnitude", p.t_shift_magnitude},
                           {"t_fit_converged", p.t_fit_converged},
                           {"daily_volume", p.daily_volume},
                           {"jump_fraction", p.jump_fraction},
                           {"p_value", p.p_value},
                           {"predictable", p.predictable}});
        csv_rows.push_back({day.ticker, day.date, std::to_string(a),
                            p.sufficient ? "1" : "0", std::to_string(p.n_nonzero),
                            fmt_double(p.zero_fraction), std::to_string(p.k),
                            fmt_double(p.repeat_prob_scaled), fmt_double(p.symbol_imbalance),
                            fmt_double(p.daily_increment_magnitude), fmt_double(p.mean_return),
                            fmt_double(p.acf1_returns), fmt_double(p.acf1_abs),
                            fmt_double(p.t_nu), fmt_double(p.t_scale),
                            fmt_double(p.t_shift_magnitude), p.t_fit_converged ? "1" : "0",
                            fmt_double(p.daily_volume), fmt_double(p.jump_fraction),
                            fmt_double(p.p_value), p.predictable ? "1" : "0"});
    }

    json comparison = json::array();
    std::string comp_csv = "parameter,mean_predictable,mean_unpredictable,p_value,stars,direction\n";
    if (profiles.size() >= 2) {
        for (const auto& c : seqpred::compare_groups(profiles)) {
            comparison.push_back({{"parameter", c.name},
                                  {"mean_predictable", c.mean_predictable},
                                  {"mean_unpredictable", c.mean_unpredictable},
                                  {"p_value", c.p_value},
                                  {"stars", c.stars},
                                  {"direction", std::string(1, c.direction)},
                                  {"skipped", c.skipped}});
            comp_csv += join_csv({c.name, fmt_double(c.mean_predictable),
                                  fmt_double(c.mean_unpredictable), fmt_double(c.p_value),
                                  c.stars, std::string(1, c.direction)}) +
                        "\n";
        }
    }

    if (o.format == "json") {
        write_output(o, "profile", "json",
                     dump_json({{"command", "profile"},
                                {"alpha", o.alpha},
                                {"records", records},
                                {"comparison", comparison}}));
    } else {
        std::string csv =
            "ticker,date,a,sufficient,n_nonzero,zero_fraction,k,repeat_prob_scaled,"
            "symbol_imbalance,daily_increment_magnitude,mean_return,acf1_returns,acf1_abs,"
            "t_nu,t_scale,t_shift_magnitude,t_fit_converged,daily_volume,jump_fraction,"
            "p_value,predictable\n";
        for (const auto& row : csv_rows) csv += join_csv(row) + "\n";
        write_output(o, "profile", "csv", csv);
        write_output(o, "comparison", "csv", comp_csv);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

template <typename T>
void maybe(const json& j, const char* key, T* field) {
    if (j.contains(key)) *field = j.at(key).get<T>();
}

int cmd_simulate(const CommonOpts& o, const std::string& model, std::size_t length,
                 const std::string& config_path) {
    json cfg_json = json::object();
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw std::runtime_error("cannot open config: " + config_path);
        f >> cfg_json;
    }

    seqpred::sim::SimOutput run;
    if (model == "lambda") {
        seqpred::sim::LambdaModelConfig cfg;
        cfg.length = length;
        cfg.seed = o.seed;
        maybe(cfg_json, "slots", &cfg.slots);
        maybe(cfg_json, "alpha", &cfg.alpha);
        maybe(cfg_json, "lambda", &cfg.lambda);
        maybe(cfg_json, "max_volume", &cfg.max_volume);
        maybe(cfg_json, "immediate_refill_on_empty", &cfg.immediate_refill_on_empty);
        run = seqpred::sim::simulate_lambda(cfg);
    } else if (model == "ts") {
        seqpred::sim::TsModelConfig cfg;
        cfg.length = length;
        cfg.seed = o.seed;
        maybe(cfg_json, "c", &cfg.c);
        maybe(cfg_json, "offset", &cfg.offset);
        maybe(cfg_json, "exponent", &cfg.exponent);
        maybe(cfg_json, "log_vol_mean", &cfg.log_vol_mean);
        maybe(cfg_json, "log_vol_sd", &cfg.log_vol_sd);
        maybe(cfg_json, "noise_sd", &cfg.noise_sd);
        maybe(cfg_json, "iid_signs", &cfg.iid_signs);
        run = seqpred::sim::simulate_ts(cfg);
    } else if (model == "od") {
        seqpred::sim::OdModelConfig cfg;
        cfg.length = length;
        cfg.seed = o.seed;
        maybe(cfg_json, "fundamental_price", &cfg.fundamental_price);
        maybe(cfg_json, "initial_price", &cfg.initial_price);
        maybe(cfg_json, "tick", &cfg.tick);
        maybe(cfg_json, "sigma_fundamentalist", &cfg.sigma_fundamentalist);
        maybe(cfg_json, "sigma_chartist", &cfg.sigma_chartist);
        maybe(cfg_json, "sigma_noise_weight", &cfg.sigma_noise_weight);
        maybe(cfg_json, "sigma_eps", &cfg.sigma_eps);
        maybe(cfg_json, "horizon_tau", &cfg.horizon_tau);
        maybe(cfg_json, "max_memory", &cfg.max_memory);
        maybe(cfg_json, "order_lifetime", &cfg.order_lifetime);
        maybe(cfg_json, "forecast_clamp", &cfg.forecast_clamp);
        maybe(cfg_json, "initial_depth_levels", &cfg.initial_depth_levels);
        maybe(cfg_json, "max_steps_multiplier", &cfg.max_steps_multiplier);
        run = seqpred::sim::simulate_od(cfg);
    } else {
        throw std::runtime_error("unknown model: " + model + " (lambda | od | ts)");
    }

    if (o.format == "json") {
        json records = json::array();
        for (std::size_t i = 0; i < run.signs.size(); ++i) {
            json rec = {{"step", i}, {"sign", run.signs[i]}};
            if (i < run.prices.size()) rec["price"] = run.prices[i];
            records.push_back(rec);
        }
        write_output(o, "simulate", "json",
                     dump_json({{"command", "simulate"},
                                {"model", model},
                                {"length", length},
                                {"seed", o.seed},
                                {"records", records}}));
    } else {
        std::string csv = "step,sign,price\n";
        for (std::size_t i = 0; i < run.signs.size(); ++i) {
            csv += std::to_string(i) + "," + std::to_string(run.signs[i]) + ",";
            if (i < run.prices.size()) csv += fmt_double(run.prices[i]);
            csv += "\n";
        }
        write_output(o, "simulate", "csv", csv);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// calibrate

int cmd_calibrate(const CommonOpts& o, const std::string& kind, int s, std::size_t n,
                  const std::string& probs_arg, std::size_t reps) {
    std::vector<double> probs;
    if (!probs_arg.empty()) {
        std::stringstream ss(probs_arg);
        std::string item;
        while (std::getline(ss, item, ',')) probs.push_back(std::stod(item));
    } else {
        probs.assign(static_cast<std::size_t>(s), 1.0 / s);
    }

    const seqpred::TestKind tk = (kind == "b" || kind == "entropy-bias")
                                     ? seqpred::TestKind::entropy_bias
                                     : seqpred::TestKind::neyman_pearson;
    const seqpred::CalibrationReport rep = seqpred::calibrate(tk, s, n, probs, reps, o.seed);

    if (o.format == "json") {
        json qq = json::array();
        for (const auto& [theo, emp] : rep.qq) qq.push_back({theo, emp});
        write_output(o, "calibrate", "json",
                     dump_json({{"command", "calibrate"},
                                {"kind", kind_name(rep.kind)},
                                {"s", rep.s},
                                {"n", rep.n},
                                {"k", rep.k},
                                {"df", rep.df},
                                {"replications", rep.replications},
                                {"probs", rep.probs},
                                {"seed", rep.seed},
                                {"ks_distance", rep.ks_distance},
                                {"ks_critical", rep.ks_critical},
                                {"pass", rep.pass},
                                {"qq_slope", seqpred::qq_slope(rep)},
                                {"qq", qq}}));
    } else {
        // Q-Q pairs only, ready for an external plotter; summary on stderr.
        std::string csv = "theoretical_quantile,empirical_quantile\n";
        for (const auto& [theo, emp] : rep.qq)
            csv += fmt_double(theo) + "," + fmt_double(emp) + "\n";
        write_output(o, "calibrate", "csv", csv);
        std::cerr << "calibrate " << kind_name(rep.kind) << " s=" << rep.s << " n=" << rep.n
                  << " k=" << rep.k << " df=" << rep.df << " N=" << rep.replications
                  << " KS=" << fmt_double(rep.ks_distance)
                  << " crit=" << fmt_double(rep.ks_critical)
                  << (rep.pass ? " pass" : " FAIL") << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statistical predictability tests for symbolic price sequences"};
    app.require_subcommand(1);

    CommonOpts o;

    CLI::App* c_test = app.add_subcommand("test", "entropy-bias and NP tests per day");
    add_common_options(c_test, o, true);

    CLI::App* c_scan =
        app.add_subcommand("scan", "predictable-day fraction per month and aggregation level");
    add_common_options(c_scan, o, true);
    bool scan_use_b = false;
    c_scan->add_flag("--use-entropy-bias", scan_use_b,
                     "use the entropy-bias verdict instead of the NP test");

    CLI::App* c_localize =
        app.add_subcommand("localize", "Sidak-corrected partition scan per day");
    add_common_options(c_localize, o, true);

    CLI::App* c_profile =
        app.add_subcommand("profile", "per-day characteristics and group comparison");
    add_common_options(c_profile, o, true);

    CLI::App* c_simulate = app.add_subcommand("simulate", "microstructure models");
    add_common_options(c_simulate, o, false);
    std::string model = "lambda";
    std::size_t length = 100000;
    std::string config_path;
    c_simulate->add_option("--model", model, "lambda | od | ts")
        ->check(CLI::IsMember({"lambda", "od", "ts"}));
    c_simulate->add_option("--length", length, "number of trades to simulate")
        ->check(CLI::PositiveNumber);
    c_simulate->add_option("--config", config_path, "JSON file overriding model defaults");

    CLI::App* c_calibrate =
        app.add_subcommand("calibrate", "Monte Carlo chi-squared calibration of B / D");
    add_common_options(c_calibrate, o, false);
    std::string kind = "d";
    int cal_s = 2;
    std::size_t cal_n = 10000;
    std::string probs_arg;
    std::size_t reps = 2000;
    c_calibrate->add_option("--kind", kind, "b | d")->check(CLI::IsMember({"b", "d"}));
    c_calibrate->add_option("--s", cal_s, "alphabet size")->check(CLI::Range(2, 8));
    c_calibrate->add_option("--n", cal_n, "sequence length")->check(CLI::PositiveNumber);
    c_calibrate->add_option("--probs", probs_arg,
                            "comma-separated symbol probabilities (default uniform)");
    c_calibrate->add_option("--reps", reps, "replications")->check(CLI::Range(100, 10000000));

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_test->parsed()) return cmd_test(o);
        if (c_scan->parsed()) return cmd_scan(o, scan_use_b);
        if (c_localize->parsed()) return cmd_localize(o);
        if (c_profile->parsed()) return cmd_profile(o);
        if (c_simulate->parsed()) return cmd_simulate(o, model, length, config_path);
        if (c_calibrate->parsed()) return cmd_calibrate(o, kind, cal_s, cal_n, probs_arg, reps);
    } catch (const std::exception& e) {
        std::cerr << "seqpred: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
