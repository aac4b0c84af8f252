#pragma once
// Predictability-decay harness: given an ensemble of simulator outputs,
// report the fraction of replications the NP test rejects at each level of
// either axis:
//   - sign lag l: subsample the trade-sign sequence at stride l and binarize
//     (-1 -> 0, +1 -> 1);
//   - price aggregation a: keep every a-th price, take log-returns, symbolize.
// The block length is recomputed from each tested subsequence's length.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "seqpred/sim/lambda_model.hpp"
#include "seqpred/stat_tests.hpp"
#include "seqpred/symbolize.hpp"

namespace seqpred::sim {

enum class DecayAxis { sign_lag, price_aggregation };

namespace detail {

inline bool np_rejects(const SymbolSequence& seq, double alpha) {
    if (seq.size() < 4) return false;
    const int k = block_length(seq.size(), seq.s);
    if (seq.size() <= static_cast<std::size_t>(k)) return false;
    return np_statistic(seq, k, alpha).predictable;
}

}  // namespace detail

// Fraction of replications rejected at each level; levels[i] is the lag or
// the aggregation step for output i.
inline std::vector<double> predictability_decay(const std::vector<SimOutput>& ensemble,
                                                DecayAxis axis,
                                                const std::vector<int>& levels,
                                                double alpha = 0.01) {
    if (ensemble.empty()) throw std::invalid_argument("predictability_decay: empty ensemble");
    std::vector<double> fractions;
    fractions.reserve(levels.size());
    for (const int level : levels) {
        if (level < 1) throw std::invalid_argument("predictability_decay: levels must be >= 1");
        std::size_t rejected = 0;
        for (const SimOutput& run : ensemble) {
            SymbolSequence seq;
            seq.s = 2;
            if (axis == DecayAxis::sign_lag) {
                seq.symbols.reserve(run.signs.size() / static_cast<std::size_t>(level) + 1);
                for (std::size_t t = 0; t < run.signs.size();
                     t += static_cast<std::size_t>(level))
                    seq.symbols.push_back(run.signs[t] > 0 ? 1 : 0);
            } else {
                const std::vector<double> agg =
                    aggregate_prices(run.prices, static_cast<std::size_t>(level));
                seq = symbolize_binary(log_returns(agg)).seq;
            }
            if (detail::np_rejects(seq, alpha)) ++rejected;
        }
        fractions.push_back(static_cast<double>(rejected) /
                            static_cast<double>(ensemble.size()));
    }
    return fractions;
}

}  // namespace seqpred::sim
