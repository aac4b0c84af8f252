#pragma once
// Monte Carlo calibration of the test statistics against their asymptotic
// chi-squared laws: simulate N iid sequences, compute B or D on each, and
// compare the empirical distribution with the theoretical CDF via the
// one-sample Kolmogorov-Smirnov distance. Q-Q percentile pairs are kept for
// plotting.
//
// The pass threshold is the asymptotic 1% KS critical value 1.63/sqrt(N).

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "seqpred/random.hpp"
#include "seqpred/special.hpp"
#include "seqpred/stat_tests.hpp"
#include "seqpred/symbolize.hpp"

namespace seqpred {

struct CalibrationReport {
    TestKind kind = TestKind::neyman_pearson;
    int s = 2;
    std::size_t n = 0;
    int k = 0;
    std::int64_t df = 0;
    std::size_t replications = 0;
    std::vector<double> probs;
    std::uint64_t seed = 0;
    double ks_distance = 0.0;
    double ks_critical = 0.0;  // 1.63/sqrt(N), the 1% level
    bool pass = false;
    // Percentile pairs (theoretical chi2 quantile, empirical quantile) at
    // 1%, 2%, ..., 99%.
    std::vector<std::pair<double, double>> qq;
};

// One-sample KS distance between the sample and the chi-squared CDF.
inline double ks_distance_chi2(std::vector<double> sample, double df) {
    std::sort(sample.begin(), sample.end());
    const double N = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = special::chi2_cdf(sample[i], df);
        const double lo = f - static_cast<double>(i) / N;
        const double hi = static_cast<double>(i + 1) / N - f;
        if (lo > d) d = lo;
        if (hi > d) d = hi;
    }
    return d;
}

inline CalibrationReport calibrate(TestKind kind, int s, std::size_t n,
                                   std::vector<double> probs, std::size_t N,
                                   std::uint64_t seed) {
    if (N < 100) throw std::invalid_argument("calibrate: need N >= 100");
    CalibrationReport rep;
    rep.kind = kind;
    rep.s = s;
    rep.n = n;
    rep.k = block_length(n, s);
    rep.replications = N;
    rep.probs = probs;
    rep.seed = seed;
    rep.df = kind == TestKind::entropy_bias
                 ? block_space(s, rep.k) - 1
                 : (block_space(s, rep.k - 1) - 1) * (s - 1);

    rng::Engine g(seed);
    std::vector<double> stats;
    stats.reserve(N);
    for (std::size_t rep_i = 0; rep_i < N; ++rep_i) {
        const SymbolSequence seq = rng::iid_sequence(g, n, probs);
        const TestResult r = kind == TestKind::entropy_bias
                                 ? entropy_bias(seq, rep.k)
                                 : np_statistic(seq, rep.k);
        stats.push_back(r.statistic);
    }

    rep.ks_distance = ks_distance_chi2(stats, static_cast<double>(rep.df));
    rep.ks_critical = 1.63 / std::sqrt(static_cast<double>(N));
    rep.pass = rep.ks_distance < rep.ks_critical;

    std::sort(stats.begin(), stats.end());
    rep.qq.reserve(99);
    for (int pct = 1; pct <= 99; ++pct) {
        const double p = pct / 100.0;
        const double theo = special::chi2_quantile(p, static_cast<double>(rep.df));
        const std::size_t idx = static_cast<std::size_t>(
            std::llround(p * static_cast<double>(N - 1)));
        rep.qq.emplace_back(theo, stats[idx]);
    }
    return rep;
}

// Least-squares slope through the Q-Q pairs (no intercept of interest; a
// calibrated statistic gives slope close to 1).
inline double qq_slope(const CalibrationReport& rep) {
    double sxx = 0.0, sxy = 0.0, sx = 0.0, sy = 0.0;
    const double m = static_cast<double>(rep.qq.size());
    for (const auto& [x, y] : rep.qq) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace seqpred
