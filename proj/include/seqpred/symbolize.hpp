#pragma once
// Symbol sequences over a finite alphabet {0, ..., s-1}, the symbolization of
// return/price series into binary up/down symbols, transaction-time
// aggregation, and block-frequency extraction.
//
// Conventions fixed here and relied on everywhere else:
//   - block codes are base-s positional with the earliest symbol as the most
//     significant digit, so the length-(k-1) prefix of a code c is c / s and
//     its last symbol is c % s;
//   - zero returns carry no direction and are removed (their count is
//     reported), never assigned a sign;
//   - aggregation at level a keeps prices at indices a, 2a, 3a, ... (1-based)
//     and drops an incomplete final step.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqpred {

struct SymbolSequence {
    std::vector<int> symbols;  // each in [0, s-1]
    int s = 2;                 // alphabet size >= 2

    std::size_t size() const { return symbols.size(); }
};

// Result of symbolizing a return series: the binary sequence plus the number
// of exact-zero returns that were removed.
struct Symbolized {
    SymbolSequence seq;
    std::size_t zeros_dropped = 0;
};

enum class BlockMode { non_overlapping, overlapping };

struct BlockHistogram {
    int k = 0;
    int s = 2;
    BlockMode mode = BlockMode::non_overlapping;
    std::vector<std::int64_t> counts;  // indexed by block code in [0, s^k)
    std::int64_t total = 0;            // floor(n/k) or n-k+1 depending on mode
};

// Admissible block length k = max(2, floor(0.5 * log_s(n))), computed in
// integer arithmetic as the largest k with (s^2)^k <= n so borderline powers
// (e.g. n = 4096, s = 2) are exact.
inline int block_length(std::size_t n, int s) {
    if (n < 4) throw std::invalid_argument("block_length: need n >= 4");
    if (s < 2) throw std::invalid_argument("block_length: need s >= 2");
    const std::size_t s2 = static_cast<std::size_t>(s) * static_cast<std::size_t>(s);
    std::size_t acc = 1;
    int k = 0;
    while (acc <= n / s2) {
        acc *= s2;
        ++k;
    }
    return k < 2 ? 2 : k;
}

// Binary symbolization: r < 0 -> 0, r > 0 -> 1, r == 0 removed.
inline Symbolized symbolize_binary(const std::vector<double>& returns) {
    Symbolized out;
    out.seq.s = 2;
    out.seq.symbols.reserve(returns.size());
    for (const double r : returns) {
        if (r == 0.0) {
            ++out.zeros_dropped;
        } else {
            out.seq.symbols.push_back(r > 0.0 ? 1 : 0);
        }
    }
    return out;
}

// Same rule applied directly to consecutive prices (works on integer tick
// prices, where equality — hence a zero return — is exact).
template <typename Price>
inline Symbolized symbolize_prices(const std::vector<Price>& prices) {
    Symbolized out;
    out.seq.s = 2;
    if (prices.size() < 2) return out;
    out.seq.symbols.reserve(prices.size() - 1);
    for (std::size_t t = 1; t < prices.size(); ++t) {
        if (prices[t] == prices[t - 1]) {
            ++out.zeros_dropped;
        } else {
            out.seq.symbols.push_back(prices[t] > prices[t - 1] ? 1 : 0);
        }
    }
    return out;
}

// Log-returns of consecutive prices; prices must be positive.
template <typename Price>
inline std::vector<double> log_returns(const std::vector<Price>& prices) {
    std::vector<double> r;
    if (prices.size() < 2) return r;
    r.reserve(prices.size() - 1);
    for (std::size_t t = 1; t < prices.size(); ++t) {
        if (!(prices[t] > 0) || !(prices[t - 1] > 0))
            throw std::invalid_argument("log_returns: prices must be positive");
        r.push_back(std::log(static_cast<double>(prices[t]) /
                             static_cast<double>(prices[t - 1])));
    }
    return r;
}

// Transaction-time aggregation: keep the last available price of each
// a-transaction step, i.e. elements at 1-based indices a, 2a, 3a, ...
template <typename Price>
inline std::vector<Price> aggregate_prices(const std::vector<Price>& prices, std::size_t a) {
    if (a < 1) throw std::invalid_argument("aggregate_prices: need a >= 1");
    if (a == 1) return prices;
    std::vector<Price> out;
    out.reserve(prices.size() / a);
    for (std::size_t i = a; i <= prices.size(); i += a) out.push_back(prices[i - 1]);
    return out;
}

// Number of distinct length-k blocks, s^k, with an overflow guard: histograms
// larger than this are a usage error, not a memory request.
inline std::int64_t block_space(int s, int k) {
    std::int64_t p = 1;
    for (int i = 0; i < k; ++i) {
        p *= s;
        if (p > (std::int64_t{1} << 32))
            throw std::invalid_argument("block_space: s^k too large");
    }
    return p;
}

inline std::int64_t encode_block(const std::vector<int>& symbols, int s) {
    std::int64_t code = 0;
    for (const int x : symbols) code = code * s + x;
    return code;
}

inline std::vector<int> decode_block(std::int64_t code, int s, int k) {
    std::vector<int> symbols(static_cast<std::size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
        symbols[static_cast<std::size_t>(i)] = static_cast<int>(code % s);
        code /= s;
    }
    return symbols;
}

// Empirical block frequencies of the sequence: over floor(n/k) disjoint
// blocks, or over all n-k+1 sliding windows.
inline BlockHistogram count_blocks(const SymbolSequence& seq, int k, BlockMode mode) {
    const std::size_t n = seq.size();
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw std::invalid_argument("count_blocks: need 1 <= k <= n");
    BlockHistogram h;
    h.k = k;
    h.s = seq.s;
    h.mode = mode;
    h.counts.assign(static_cast<std::size_t>(block_space(seq.s, k)), 0);

    const int s = seq.s;
    if (mode == BlockMode::non_overlapping) {
        const std::size_t nb = n / static_cast<std::size_t>(k);
        for (std::size_t b = 0; b < nb; ++b) {
            std::int64_t code = 0;
            const std::size_t base = b * static_cast<std::size_t>(k);
            for (int i = 0; i < k; ++i) code = code * s + seq.symbols[base + i];
            ++h.counts[static_cast<std::size_t>(code)];
        }
        h.total = static_cast<std::int64_t>(nb);
    } else {
        std::int64_t code = 0;
        std::int64_t prefix_space = 1;
        for (int i = 0; i < k - 1; ++i) prefix_space *= s;
        for (std::size_t t = 0; t < n; ++t) {
            code = (code % prefix_space) * s + seq.symbols[t];
            if (t + 1 >= static_cast<std::size_t>(k)) ++h.counts[static_cast<std::size_t>(code)];
        }
        h.total = static_cast<std::int64_t>(n) - k + 1;
    }
    return h;
}

// Convenience for fixtures and goldens: "0101" <-> SymbolSequence.
inline SymbolSequence from_string(const std::string& digits, int s = 2) {
    SymbolSequence seq;
    seq.s = s;
    seq.symbols.reserve(digits.size());
    for (const char c : digits) {
        const int v = c - '0';
        if (v < 0 || v >= s) throw std::invalid_argument("from_string: digit out of alphabet");
        seq.symbols.push_back(v);
    }
    return seq;
}

inline std::string to_string(const SymbolSequence& seq) {
    std::string out;
    out.reserve(seq.size());
    for (const int x : seq.symbols) out.push_back(static_cast<char>('0' + x));
    return out;
}

}  // namespace seqpred
