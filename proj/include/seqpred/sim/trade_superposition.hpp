#pragma once
// Trade-superposition (propagator) model: the log-price is the superposition
// of the lingering impacts of all past trades,
//     p_t = sum_{l>=0} G(l) * eps_{t-l} * ln(v_{t-l}) + eta_t,
// with propagator G(l) = c / (l + offset)^exponent, log-volumes
// ln v ~ Normal(log_vol_mean, log_vol_sd), and observation noise
// eta ~ Normal(0, noise_sd).
//
// The trade signs eps feeding the propagator default to the lambda-model
// generator (long-memory signs); iid signs are available as an option. The
// full-history convolution is evaluated with FFTW.

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

#include "seqpred/random.hpp"
#include "seqpred/sim/lambda_model.hpp"

namespace seqpred::sim {

struct TsModelConfig {
    double c = 2.8e-3;
    double offset = 20.0;
    double exponent = 0.42;
    double log_vol_mean = 5.5;
    double log_vol_sd = 1.8;
    double noise_sd = 0.01;
    std::size_t length = 0;
    std::uint64_t seed = 1;
    bool iid_signs = false;       // default: lambda-model sign source
    LambdaModelConfig sign_source{};  // length/seed fields are overridden
};

inline double propagator(double lag, const TsModelConfig& cfg) {
    return cfg.c / std::pow(lag + cfg.offset, cfg.exponent);
}

namespace detail {

// Linear convolution of x with kernel, truncated to x.size() outputs, via
// zero-padded FFTs.
inline std::vector<double> convolve_truncated(const std::vector<double>& x,
                                              const std::vector<double>& kernel) {
    const std::size_t n = x.size();
    std::size_t m = 1;
    while (m < 2 * n) m <<= 1;

    double* a = fftw_alloc_real(m);
    double* b = fftw_alloc_real(m);
    fftw_complex* fa = fftw_alloc_complex(m / 2 + 1);
    fftw_complex* fb = fftw_alloc_complex(m / 2 + 1);
    if (!a || !b || !fa || !fb) throw std::bad_alloc();

    std::memset(a, 0, m * sizeof(double));
    std::memset(b, 0, m * sizeof(double));
    std::memcpy(a, x.data(), n * sizeof(double));
    std::memcpy(b, kernel.data(), kernel.size() * sizeof(double));

    fftw_plan fwd_a = fftw_plan_dft_r2c_1d(static_cast<int>(m), a, fa, FFTW_ESTIMATE);
    fftw_plan fwd_b = fftw_plan_dft_r2c_1d(static_cast<int>(m), b, fb, FFTW_ESTIMATE);
    fftw_execute(fwd_a);
    fftw_execute(fwd_b);
    for (std::size_t i = 0; i < m / 2 + 1; ++i) {
        const double re = fa[i][0] * fb[i][0] - fa[i][1] * fb[i][1];
        const double im = fa[i][0] * fb[i][1] + fa[i][1] * fb[i][0];
        fa[i][0] = re;
        fa[i][1] = im;
    }
    fftw_plan inv = fftw_plan_dft_c2r_1d(static_cast<int>(m), fa, a, FFTW_ESTIMATE);
    fftw_execute(inv);

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] / static_cast<double>(m);

    fftw_destroy_plan(fwd_a);
    fftw_destroy_plan(fwd_b);
    fftw_destroy_plan(inv);
    fftw_free(a);
    fftw_free(b);
    fftw_free(fa);
    fftw_free(fb);
    return out;
}

}  // namespace detail

// Log-price path from explicit signed log-volume impacts (eps_t * ln v_t),
// before observation noise. Exposed so the propagator response to a single
// impulse can be checked exactly.
inline std::vector<double> ts_log_price_path(const std::vector<double>& signed_log_volumes,
                                             const TsModelConfig& cfg) {
    const std::size_t n = signed_log_volumes.size();
    std::vector<double> kernel(n);
    for (std::size_t l = 0; l < n; ++l) kernel[l] = propagator(static_cast<double>(l), cfg);
    return detail::convolve_truncated(signed_log_volumes, kernel);
}

inline SimOutput simulate_ts(const TsModelConfig& cfg) {
    if (cfg.length == 0) throw std::invalid_argument("simulate_ts: length must be positive");
    SimOutput out;
    rng::Engine g(cfg.seed);

    if (cfg.iid_signs) {
        out.signs.resize(cfg.length);
        for (auto& s : out.signs) s = rng::bernoulli(g, 0.5) ? 1 : -1;
    } else {
        LambdaModelConfig sign_cfg = cfg.sign_source;
        sign_cfg.length = cfg.length;
        sign_cfg.seed = cfg.seed * 0x9e3779b97f4a7c15ULL + 1;  // decorrelate streams
        out.signs = simulate_lambda(sign_cfg).signs;
    }

    std::vector<double> impacts(cfg.length);
    for (std::size_t t = 0; t < cfg.length; ++t) {
        const double log_vol = rng::normal(g, cfg.log_vol_mean, cfg.log_vol_sd);
        impacts[t] = static_cast<double>(out.signs[t]) * log_vol;
    }
    std::vector<double> log_price = ts_log_price_path(impacts, cfg);
    out.prices.resize(cfg.length);
    for (std::size_t t = 0; t < cfg.length; ++t) {
        const double noise = cfg.noise_sd > 0.0 ? rng::normal(g, 0.0, cfg.noise_sd) : 0.0;
        out.prices[t] = std::exp(log_price[t] + noise);
    }
    return out;
}

}  // namespace seqpred::sim
