#pragma once
// The two predictability tests.
//
// Entropy bias B (non-overlapping blocks):
//     B = 2 * n_b * (k ln s - H),  H = -sum_j (f_j/n_b) ln(f_j/n_b),
// asymptotically chi-squared with s^k - 1 df when all s^k blocks are
// equiprobable (i.e. iid uniform symbols).
//
// Neyman-Pearson statistic D (overlapping blocks, prefix i of length k-1 and
// last symbol j):
//     D = 2 * sum_ij f_ij ln( (n-k+1) f_ij / (f_.j f_i.) ),
// asymptotically chi-squared with (s^{k-1} - 1)(s - 1) df under independence
// of the next symbol from its prefix, without assuming equal symbol
// probabilities. Zero cells contribute nothing (0 ln 0 = 0, 0 ln(0/0) = 0).
//
// D is 2(n-k+1) times the KL divergence between the empirical joint
// distribution of (prefix, next symbol) and the product of its marginals.

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "seqpred/special.hpp"
#include "seqpred/symbolize.hpp"

namespace seqpred {

enum class TestKind { entropy_bias, neyman_pearson };

struct TestResult {
    TestKind kind = TestKind::neyman_pearson;
    double statistic = 0.0;
    std::int64_t df = 1;
    double p_value = 1.0;
    double alpha = 0.01;
    bool predictable = false;  // p_value < alpha
    int k = 2;
    std::size_t n = 0;  // symbol-sequence length the test ran on
};

struct KlDivergence {
    double value = 0.0;  // nats
};

// Plug-in entropy estimate (nats) from a non-overlapping block histogram.
inline double entropy_estimate(const BlockHistogram& hist) {
    if (hist.mode != BlockMode::non_overlapping)
        throw std::invalid_argument("entropy_estimate: requires non-overlapping histogram");
    if (hist.total <= 0) throw std::invalid_argument("entropy_estimate: empty histogram");
    const double nb = static_cast<double>(hist.total);
    double h = 0.0;
    for (const std::int64_t c : hist.counts) {
        if (c > 0) {
            const double p = static_cast<double>(c) / nb;
            h -= p * std::log(p);
        }
    }
    return h;
}

inline TestResult entropy_bias(const SymbolSequence& seq, int k, double alpha = 0.01) {
    const std::size_t n = seq.size();
    if (k < 1 || n < static_cast<std::size_t>(k))
        throw std::invalid_argument("entropy_bias: need floor(n/k) >= 1");
    const BlockHistogram hist = count_blocks(seq, k, BlockMode::non_overlapping);
    const double h = entropy_estimate(hist);
    const double hmax = k * std::log(static_cast<double>(seq.s));
    TestResult r;
    r.kind = TestKind::entropy_bias;
    r.k = k;
    r.n = n;
    r.alpha = alpha;
    // Clamp tiny negative round-off when the histogram is exactly uniform.
    r.statistic = 2.0 * static_cast<double>(hist.total) * (hmax - h);
    if (r.statistic < 0.0) r.statistic = 0.0;
    r.df = block_space(seq.s, k) - 1;
    r.p_value = special::chi2_survival(r.statistic, static_cast<double>(r.df));
    r.predictable = r.p_value < alpha;
    return r;
}

inline TestResult np_statistic(const SymbolSequence& seq, int k, double alpha = 0.01) {
    const std::size_t n = seq.size();
    if (k < 2) throw std::invalid_argument("np_statistic: need k >= 2");
    if (n <= static_cast<std::size_t>(k))
        throw std::invalid_argument("np_statistic: need n > k");
    const BlockHistogram hist = count_blocks(seq, k, BlockMode::overlapping);
    const int s = seq.s;
    const std::int64_t rows = block_space(s, k - 1);  // prefixes
    const double total = static_cast<double>(hist.total);

    std::vector<std::int64_t> row_sum(static_cast<std::size_t>(rows), 0);
    std::vector<std::int64_t> col_sum(static_cast<std::size_t>(s), 0);
    for (std::int64_t i = 0; i < rows; ++i) {
        for (int j = 0; j < s; ++j) {
            const std::int64_t f = hist.counts[static_cast<std::size_t>(i * s + j)];
            row_sum[static_cast<std::size_t>(i)] += f;
            col_sum[static_cast<std::size_t>(j)] += f;
        }
    }
    double d = 0.0;
    for (std::int64_t i = 0; i < rows; ++i) {
        const std::int64_t ri = row_sum[static_cast<std::size_t>(i)];
        if (ri == 0) continue;
        for (int j = 0; j < s; ++j) {
            const std::int64_t f = hist.counts[static_cast<std::size_t>(i * s + j)];
            if (f == 0) continue;
            d += static_cast<double>(f) *
                 std::log(total * static_cast<double>(f) /
                          (static_cast<double>(ri) * static_cast<double>(col_sum[static_cast<std::size_t>(j)])));
        }
    }
    TestResult r;
    r.kind = TestKind::neyman_pearson;
    r.k = k;
    r.n = n;
    r.alpha = alpha;
    r.statistic = 2.0 * d;
    if (r.statistic < 0.0) r.statistic = 0.0;
    r.df = (rows - 1) * (s - 1);
    r.p_value = special::chi2_survival(r.statistic, static_cast<double>(r.df));
    r.predictable = r.p_value < alpha;
    return r;
}

// KL divergence recovered from the NP statistic: D / (2 (n - k + 1)).
inline KlDivergence kl_divergence(const TestResult& result) {
    if (result.kind != TestKind::neyman_pearson)
        throw std::invalid_argument("kl_divergence: requires a neyman-pearson result");
    const double windows = static_cast<double>(result.n) - result.k + 1;
    return KlDivergence{result.statistic / (2.0 * windows)};
}

// Direct evaluation of the KL double sum over empirical (prefix, next-symbol)
// frequencies; used to check the identity with kl_divergence.
inline double kl_direct(const SymbolSequence& seq, int k) {
    const BlockHistogram hist = count_blocks(seq, k, BlockMode::overlapping);
    const int s = seq.s;
    const std::int64_t rows = block_space(s, k - 1);
    const double total = static_cast<double>(hist.total);
    std::vector<std::int64_t> row_sum(static_cast<std::size_t>(rows), 0);
    std::vector<std::int64_t> col_sum(static_cast<std::size_t>(s), 0);
    for (std::int64_t i = 0; i < rows; ++i) {
        for (int j = 0; j < s; ++j) {
            const std::int64_t f = hist.counts[static_cast<std::size_t>(i * s + j)];
            row_sum[static_cast<std::size_t>(i)] += f;
            col_sum[static_cast<std::size_t>(j)] += f;
        }
    }
    double kl = 0.0;
    for (std::int64_t i = 0; i < rows; ++i) {
        if (row_sum[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < s; ++j) {
            const std::int64_t f = hist.counts[static_cast<std::size_t>(i * s + j)];
            if (f == 0) continue;
            const double a = static_cast<double>(f) / total;
            const double ai = static_cast<double>(row_sum[static_cast<std::size_t>(i)]) / total;
            const double aj = static_cast<double>(col_sum[static_cast<std::size_t>(j)]) / total;
            kl += a * std::log(a / (ai * aj));
        }
    }
    return kl;
}

}  // namespace seqpred
