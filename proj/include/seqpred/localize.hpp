#pragma once
// Localization of predictable intervals inside one day by Sidak-corrected
// multiple testing over non-overlapping partitions of the symbol sequence.
//
// For each partition count S in [1, S_max], S_max = floor((n-k+1)/1000), the
// sequence is split into S consecutive segments (remainder symbols appended
// to the last one), the block length is recomputed per segment, and each
// segment gets an NP test at the per-test level 1-(1-alpha)^(1/S).
//
// best_S is gated on the whole-day test (the S = 1 partition): only a day
// that is itself predictable is scanned for finer structure, and best_S is
// then the largest S with at least one significant segment. The gate keeps
// the family-wise error of "best_S >= 1" at exactly alpha under the null;
// testing every S unconditionally and taking any hit would inflate it
// several-fold because the per-S families are corrected internally but not
// across S.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "seqpred/stat_tests.hpp"
#include "seqpred/symbolize.hpp"

namespace seqpred {

// Sidak per-test level 1 - (1 - alpha)^(1/S) for a family of S tests.
inline double sidak_alpha(std::int64_t S, double alpha_family) {
    if (S < 1) throw std::invalid_argument("sidak_alpha: need S >= 1");
    if (alpha_family <= 0.0 || alpha_family >= 1.0)
        throw std::invalid_argument("sidak_alpha: alpha must be in (0,1)");
    return 1.0 - std::exp(std::log1p(-alpha_family) / static_cast<double>(S));
}

struct IntervalResult {
    int index = 0;  // 1-based segment index within its partition
    std::size_t offset = 0;
    std::size_t length = 0;
    int k = 0;
    double statistic = 0.0;
    double p_value = 1.0;
    bool significant = false;
    bool tested = false;  // false if the segment was too short to test
};

struct PartitionScan {
    std::size_t n = 0;
    std::int64_t S_max = 0;
    std::int64_t best_S = 0;
    double alpha_family = 0.01;
    bool day_predictable = false;  // verdict of the S = 1 (whole-day) test
    // per_S[S-1] holds the S segment results of partition count S.
    std::vector<std::vector<IntervalResult>> per_S;

    // Consecutive significant segment indices within partition S, reported as
    // [first, last] runs.
    std::vector<std::pair<int, int>> significant_runs(std::int64_t S) const {
        std::vector<std::pair<int, int>> runs;
        if (S < 1 || S > static_cast<std::int64_t>(per_S.size())) return runs;
        const auto& intervals = per_S[static_cast<std::size_t>(S - 1)];
        int start = 0;
        int prev = -2;
        for (const auto& iv : intervals) {
            if (!iv.significant) continue;
            if (iv.index == prev + 1) {
                prev = iv.index;
            } else {
                if (start > 0) runs.emplace_back(start, prev);
                start = prev = iv.index;
            }
        }
        if (start > 0) runs.emplace_back(start, prev);
        return runs;
    }
};

inline PartitionScan scan_partitions(const SymbolSequence& seq, double alpha_family = 0.01) {
    PartitionScan scan;
    scan.n = seq.size();
    scan.alpha_family = alpha_family;
    if (scan.n < 4) return scan;  // S_max = 0: too short, empty scan

    const int k_day = block_length(scan.n, seq.s);
    const std::int64_t windows = static_cast<std::int64_t>(scan.n) - k_day + 1;
    scan.S_max = windows / 1000;
    if (scan.S_max < 1) return scan;

    for (std::int64_t S = 1; S <= scan.S_max; ++S) {
        const double level = sidak_alpha(S, alpha_family);
        const std::size_t base_len = scan.n / static_cast<std::size_t>(S);
        std::vector<IntervalResult> intervals;
        intervals.reserve(static_cast<std::size_t>(S));
        for (std::int64_t i = 0; i < S; ++i) {
            IntervalResult iv;
            iv.index = static_cast<int>(i + 1);
            iv.offset = static_cast<std::size_t>(i) * base_len;
            iv.length = (i == S - 1) ? scan.n - iv.offset : base_len;
            if (iv.length >= 4) {
                const int k = block_length(iv.length, seq.s);
                if (iv.length > static_cast<std::size_t>(k)) {
                    SymbolSequence segment;
                    segment.s = seq.s;
                    segment.symbols.assign(seq.symbols.begin() + static_cast<std::ptrdiff_t>(iv.offset),
                                           seq.symbols.begin() + static_cast<std::ptrdiff_t>(iv.offset + iv.length));
                    const TestResult r = np_statistic(segment, k, level);
                    iv.k = k;
                    iv.statistic = r.statistic;
                    iv.p_value = r.p_value;
                    iv.significant = r.predictable;
                    iv.tested = true;
                }
            }
            intervals.push_back(iv);
        }
        scan.per_S.push_back(std::move(intervals));
    }

    scan.day_predictable = scan.per_S[0][0].significant;
    if (scan.day_predictable) {
        for (std::int64_t S = 1; S <= scan.S_max; ++S) {
            for (const auto& iv : scan.per_S[static_cast<std::size_t>(S - 1)]) {
                if (iv.significant) {
                    scan.best_S = S;
                    break;
                }
            }
        }
    }
    return scan;
}

}  // namespace seqpred
