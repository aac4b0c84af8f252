#pragma once
// Random draws used by the simulators and Monte Carlo harnesses.
//
// The engine is std::mt19937_64 (bit-exact output mandated by the standard),
// but the distribution transforms are written out explicitly rather than
// taken from <random>: the standard leaves distribution algorithms
// implementation-defined, and seeded runs here are expected to be
// reproducible across compilers and platforms.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "seqpred/symbolize.hpp"

namespace seqpred::rng {

using Engine = std::mt19937_64;

// Uniform in [0, 1) with 53 bits of precision.
inline double uniform01(Engine& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n); n must be small relative to 2^64 (rejection-free
// multiply-shift is fine at the modest ranges used here).
inline std::uint64_t uniform_index(Engine& g, std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform01(g) * static_cast<double>(n));
}

inline bool bernoulli(Engine& g, double p) { return uniform01(g) < p; }

// Standard normal via Box-Muller (two uniforms per call, no cached state, so
// the draw count per event is fixed and streams stay reproducible).
inline double normal(Engine& g, double mean = 0.0, double sd = 1.0) {
    double u1 = uniform01(g);
    const double u2 = uniform01(g);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) *
                      std::cos(2.0 * std::numbers::pi * u2);
}

// Index draw from an explicit probability vector (linear scan; alphabets here
// are tiny).
inline int categorical(Engine& g, const std::vector<double>& probs) {
    const double u = uniform01(g);
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
}

// Pareto-tailed integer size >= 1: ceil of the continuous Pareto(alpha) with
// unit scale. max_size = 0 means uncapped.
inline std::int64_t pareto_size(Engine& g, double alpha, std::int64_t max_size = 0) {
    if (alpha <= 1.0) throw std::invalid_argument("pareto_size: need alpha > 1");
    double u = uniform01(g);
    if (u <= 0.0) u = 0x1.0p-53;
    const double x = std::pow(u, -1.0 / alpha);
    double v = std::ceil(x);
    if (max_size > 0 && v > static_cast<double>(max_size)) v = static_cast<double>(max_size);
    if (v < 1.0) v = 1.0;
    return static_cast<std::int64_t>(v);
}

// iid symbols with the given distribution over {0, ..., probs.size()-1}.
inline SymbolSequence iid_sequence(Engine& g, std::size_t n, const std::vector<double>& probs) {
    if (probs.size() < 2) throw std::invalid_argument("iid_sequence: need >= 2 symbols");
    double sum = 0.0;
    for (const double p : probs) {
        if (p < 0.0) throw std::invalid_argument("iid_sequence: negative probability");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("iid_sequence: probabilities must sum to 1");
    SymbolSequence seq;
    seq.s = static_cast<int>(probs.size());
    seq.symbols.resize(n);
    if (probs.size() == 2) {
        const double p0 = probs[0];
        for (std::size_t t = 0; t < n; ++t) seq.symbols[t] = uniform01(g) < p0 ? 0 : 1;
    } else {
        for (std::size_t t = 0; t < n; ++t) seq.symbols[t] = categorical(g, probs);
    }
    return seq;
}

// Binary first-order Markov chain with the given probability of repeating the
// previous symbol; the initial symbol is fair.
inline SymbolSequence markov_binary(Engine& g, std::size_t n, double repeat_prob) {
    SymbolSequence seq;
    seq.s = 2;
    seq.symbols.resize(n);
    if (n == 0) return seq;
    seq.symbols[0] = bernoulli(g, 0.5) ? 1 : 0;
    for (std::size_t t = 1; t < n; ++t) {
        const bool repeat = bernoulli(g, repeat_prob);
        seq.symbols[t] = repeat ? seq.symbols[t - 1] : 1 - seq.symbols[t - 1];
    }
    return seq;
}

}  // namespace seqpred::rng
