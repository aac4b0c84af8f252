#pragma once
// Hidden-order ("lambda") model of order-sign long memory: N slots each hold
// at most one hidden order with a fixed sign and a Pareto-tailed integer size.
// Per trade, one non-empty slot is chosen uniformly and emits one unit piece
// with the slot's sign. Empty slots refill with probability lambda per step;
// a slot that empties can additionally get an immediate refill draw.
//
// The mechanics the one-line description leaves open (refill timing, choice
// among slots) are switchable so the variants can be compared; defaults are
// the ones whose sign sequences are predictable at small lags and lose
// predictability by lag ~50.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "seqpred/random.hpp"

namespace seqpred::sim {

struct SimOutput {
    std::vector<int> signs;      // each -1 or +1
    std::vector<double> prices;  // empty if the model produces no prices
};

struct LambdaModelConfig {
    int slots = 21;          // N
    double alpha = 1.63;     // Pareto exponent of hidden-order size
    double lambda = 0.38;    // per-step refill probability of an empty slot
    std::size_t length = 0;  // number of trade signs to emit
    std::uint64_t seed = 1;
    std::int64_t max_volume = 0;  // cap on order size; 0 = uncapped
    // Mechanics switches (see header comment).
    bool immediate_refill_on_empty = true;
    // Safety valve: bound on total steps in case lambda is set so low the
    // book starves; 0 disables.
    std::size_t max_idle_steps = 1000000;
};

namespace detail {

struct Slot {
    std::int64_t remaining = 0;
    int sign = 0;
};

inline void refill(rng::Engine& g, Slot& slot, const LambdaModelConfig& cfg) {
    slot.sign = rng::bernoulli(g, 0.5) ? 1 : -1;
    slot.remaining = rng::pareto_size(g, cfg.alpha, cfg.max_volume);
}

}  // namespace detail

inline SimOutput simulate_lambda(const LambdaModelConfig& cfg) {
    if (cfg.slots < 1) throw std::invalid_argument("simulate_lambda: need >= 1 slot");
    if (cfg.lambda < 0.0 || cfg.lambda > 1.0)
        throw std::invalid_argument("simulate_lambda: lambda must be in [0,1]");
    rng::Engine g(cfg.seed);
    std::vector<detail::Slot> slots(static_cast<std::size_t>(cfg.slots));
    SimOutput out;
    out.signs.reserve(cfg.length);

    std::size_t idle = 0;
    std::vector<std::size_t> active;
    active.reserve(slots.size());
    while (out.signs.size() < cfg.length) {
        // Refill draws for currently empty slots, in slot order.
        for (auto& slot : slots) {
            if (slot.remaining == 0 && rng::bernoulli(g, cfg.lambda))
                detail::refill(g, slot, cfg);
        }
        active.clear();
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (slots[i].remaining > 0) active.push_back(i);
        if (active.empty()) {
            if (cfg.max_idle_steps > 0 && ++idle > cfg.max_idle_steps)
                throw std::runtime_error("simulate_lambda: no active hidden orders");
            continue;
        }
        idle = 0;
        detail::Slot& chosen =
            slots[active[static_cast<std::size_t>(rng::uniform_index(g, active.size()))]];
        out.signs.push_back(chosen.sign);
        if (--chosen.remaining == 0 && cfg.immediate_refill_on_empty &&
            rng::bernoulli(g, cfg.lambda)) {
            detail::refill(g, chosen, cfg);
        }
    }
    return out;
}

}  // namespace seqpred::sim
