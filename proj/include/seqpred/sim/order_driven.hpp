#pragma once
// Order-driven model: a double-auction book fed by traders who blend a
// fundamentalist view (reversion toward a fundamental price over a horizon
// tau), a chartist view (recent mean return over a random memory window), and
// noise. Each arriving trader forms a per-step expected return
//     r = (g1 * ln(pf/p)/tau + g2 * rbar + n * eps) / (g1 + |g2| + n),
// forecasts p * exp(r * tau), and submits a market order when the forecast
// crosses the opposite best quote, otherwise a limit order just inside it.
// Executed trades produce the sign and price series.
//
// The forecast is clamped and prices floored at one tick so a runaway
// chartist weight cannot push the book to a non-positive price.

#include <cmath>
#include <cstdint>
#include <deque>
#include <iterator>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "seqpred/random.hpp"
#include "seqpred/sim/lambda_model.hpp"

namespace seqpred::sim {

struct OdModelConfig {
    double fundamental_price = 100.0;
    double initial_price = 0.0;  // 0 = start at the fundamental price
    double tick = 0.01;
    double sigma_fundamentalist = 10.0;  // g1 ~ |N(0, sigma)|
    double sigma_chartist = 1.0;         // g2 ~ N(0, sigma)
    double sigma_noise_weight = 1.0;     // n ~ |N(0, sigma)|
    double sigma_eps = 2e-4;             // eps ~ N(0, sigma), per-step return units
    int horizon_tau = 50;
    int max_memory = 100;       // chartist window Li ~ Uniform{1..max_memory}
    int order_lifetime = 300;   // steps until an unfilled limit order expires
    double forecast_clamp = 2e-3;
    int initial_depth_levels = 5;
    std::size_t length = 0;     // number of executed trades to produce
    std::uint64_t seed = 1;
    std::size_t max_steps_multiplier = 50;  // hard bound: steps <= multiplier * length
};

inline SimOutput simulate_od(const OdModelConfig& cfg) {
    if (cfg.length == 0) throw std::invalid_argument("simulate_od: length must be positive");
    if (cfg.tick <= 0.0) throw std::invalid_argument("simulate_od: tick must be positive");
    rng::Engine g(cfg.seed);

    constexpr std::int64_t kPersistent = std::numeric_limits<std::int64_t>::max();
    // price tick -> expiry steps of resting orders at that level (FIFO)
    std::map<std::int64_t, std::deque<std::int64_t>> bids, asks;

    const double p0 = cfg.initial_price > 0.0 ? cfg.initial_price : cfg.fundamental_price;
    const std::int64_t p0_ticks = std::llround(p0 / cfg.tick);
    for (int d = 1; d <= cfg.initial_depth_levels; ++d) {
        if (p0_ticks - d >= 1) bids[p0_ticks - d].push_back(kPersistent);
        asks[p0_ticks + d].push_back(kPersistent);
    }

    std::int64_t last_ticks = p0_ticks;
    std::vector<double> returns;  // log-returns of executed trades
    returns.reserve(cfg.length);
    SimOutput out;
    out.signs.reserve(cfg.length);
    out.prices.reserve(cfg.length);

    const std::size_t max_steps = cfg.max_steps_multiplier * cfg.length;
    std::int64_t step = 0;
    while (out.signs.size() < cfg.length) {
        ++step;
        if (static_cast<std::size_t>(step) > max_steps)
            throw std::runtime_error("simulate_od: fill rate too low for configured length");
        if (step % 64 == 0) {
            for (auto* book : {&bids, &asks}) {
                for (auto it = book->begin(); it != book->end();) {
                    auto& q = it->second;
                    while (!q.empty() && q.front() <= step) q.pop_front();
                    it = q.empty() ? book->erase(it) : std::next(it);
                }
            }
        }

        // Fixed draw order keeps the stream reproducible.
        const double g1 = std::fabs(rng::normal(g, 0.0, cfg.sigma_fundamentalist));
        const double g2 = rng::normal(g, 0.0, cfg.sigma_chartist);
        const double nw = std::fabs(rng::normal(g, 0.0, cfg.sigma_noise_weight));
        const std::size_t li =
            1 + static_cast<std::size_t>(rng::uniform_index(g, static_cast<std::uint64_t>(cfg.max_memory)));
        const double eps = rng::normal(g, 0.0, cfg.sigma_eps);

        double rbar = 0.0;
        if (!returns.empty()) {
            const std::size_t w = returns.size() < li ? returns.size() : li;
            double s = 0.0;
            for (std::size_t i = returns.size() - w; i < returns.size(); ++i) s += returns[i];
            rbar = s / static_cast<double>(w);
        }

        const double price = static_cast<double>(last_ticks) * cfg.tick;
        const double weight = g1 + std::fabs(g2) + nw;
        double r = weight > 0.0
                       ? (g1 * std::log(cfg.fundamental_price / price) / cfg.horizon_tau +
                          g2 * rbar + nw * eps) / weight
                       : 0.0;
        if (r > cfg.forecast_clamp) r = cfg.forecast_clamp;
        if (r < -cfg.forecast_clamp) r = -cfg.forecast_clamp;
        const std::int64_t forecast_ticks =
            std::llround(price * std::exp(r * cfg.horizon_tau) / cfg.tick);

        const bool have_bid = !bids.empty();
        const bool have_ask = !asks.empty();
        const std::int64_t best_bid = have_bid ? bids.rbegin()->first : 0;
        const std::int64_t best_ask = have_ask ? asks.begin()->first : 0;

        std::int64_t traded_ticks = 0;
        int traded_sign = 0;
        if (have_ask && forecast_ticks >= best_ask) {
            traded_ticks = best_ask;
            traded_sign = 1;
            auto it = asks.begin();
            it->second.pop_front();
            if (it->second.empty()) asks.erase(it);
        } else if (have_bid && forecast_ticks <= best_bid) {
            traded_ticks = best_bid;
            traded_sign = -1;
            auto it = std::prev(bids.end());
            it->second.pop_front();
            if (it->second.empty()) bids.erase(it);
        } else {
            const double mid = (have_bid && have_ask)
                                   ? 0.5 * static_cast<double>(best_bid + best_ask)
                                   : static_cast<double>(last_ticks);
            if (static_cast<double>(forecast_ticks) > mid) {
                std::int64_t px = have_ask && forecast_ticks >= best_ask ? best_ask - 1
                                                                         : forecast_ticks;
                if (px >= 1) bids[px].push_back(step + cfg.order_lifetime);
            } else {
                std::int64_t px = have_bid && forecast_ticks <= best_bid ? best_bid + 1
                                                                         : forecast_ticks;
                if (px >= 1) asks[px].push_back(step + cfg.order_lifetime);
            }
        }

        if (traded_sign != 0) {
            if (!out.prices.empty()) {
                returns.push_back(std::log(static_cast<double>(traded_ticks) /
                                           static_cast<double>(last_ticks)));
            }
            out.signs.push_back(traded_sign);
            out.prices.push_back(static_cast<double>(traded_ticks) * cfg.tick);
            last_ticks = traded_ticks;
        }
    }
    return out;
}

}  // namespace seqpred::sim
