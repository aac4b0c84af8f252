#pragma once
// Per-day characteristic vector, the k = 2 pair analysis, and the
// predictable-vs-unpredictable group comparison.
//
// Choices that the underlying description leaves open, fixed here:
//   - autocorrelations and the Student-t fit use the non-zero returns (the
//     zero returns are an artifact of the price grid, not of the return
//     distribution); the jump detector sees all returns because its
//     pre-averaging windows smooth over the grid;
//   - mean_return averages all returns of the aggregated series;
//   - acf uses the biased 1/n normalization;
//   - the group mean test is Welch's unequal-variance t-test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqpred/special.hpp"
#include "seqpred/stat_tests.hpp"
#include "seqpred/symbolize.hpp"

namespace seqpred {

// Lag-1 sample autocorrelation, mean-centered, biased (1/n) normalization.
// Returns NaN when the series is shorter than 3 or has zero variance.
inline double acf_lag1(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 3) return std::numeric_limits<double>::quiet_NaN();
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double var = 0.0, cov = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double c = x[t] - mean;
        var += c * c;
        if (t + 1 < n) cov += c * (x[t + 1] - mean);
    }
    if (var == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return cov / var;
}

struct StudentTFit {
    double nu = 0.0;
    double scale = 0.0;
    double shift = 0.0;
    bool converged = false;  // false means the moment-based fallback is reported
};

namespace detail {

inline double t_neg_loglik(const std::vector<double>& x, double nu, double mu, double sigma) {
    const double n = static_cast<double>(x.size());
    const double c = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                     0.5 * std::log(nu * std::numbers::pi) - std::log(sigma);
    double s = 0.0;
    for (const double xi : x) {
        const double z = (xi - mu) / sigma;
        s += std::log1p(z * z / nu);
    }
    return -(n * c - 0.5 * (nu + 1.0) * s);
}

// EM for (mu, sigma) at fixed nu: latent gamma weights w = (nu+1)/(nu+z^2).
inline void t_fit_location_scale(const std::vector<double>& x, double nu,
                                 double& mu, double& sigma, int iters = 40) {
    for (int it = 0; it < iters; ++it) {
        double sw = 0.0, swx = 0.0;
        for (const double xi : x) {
            const double z = (xi - mu) / sigma;
            const double w = (nu + 1.0) / (nu + z * z);
            sw += w;
            swx += w * xi;
        }
        const double mu_new = swx / sw;
        double s2 = 0.0;
        for (const double xi : x) {
            const double z = (xi - mu) / sigma;
            const double w = (nu + 1.0) / (nu + z * z);
            const double d = xi - mu_new;
            s2 += w * d * d;
        }
        mu = mu_new;
        sigma = std::sqrt(s2 / static_cast<double>(x.size()));
        if (sigma <= 0.0 || !std::isfinite(sigma)) {
            sigma = 1e-12;
            return;
        }
    }
}

}  // namespace detail

// Maximum-likelihood location-scale Student-t fit: golden-section search on
// ln(nu) over [ln 0.5, ln 100] with an EM inner loop for (shift, scale).
inline StudentTFit fit_student_t(const std::vector<double>& x) {
    if (x.size() < 50) throw std::invalid_argument("fit_student_t: need >= 50 observations");

    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double var = 0.0;
    for (const double xi : x) var += (xi - mean) * (xi - mean);
    var /= static_cast<double>(x.size());
    if (var <= 0.0) {
        StudentTFit f;
        f.nu = 100.0;
        f.scale = 0.0;
        f.shift = mean;
        f.converged = false;
        return f;
    }
    // Moment-based fallback: nu from excess kurtosis (nu = 4 + 6/kappa),
    // scale from the t variance relation.
    double m4 = 0.0;
    for (const double xi : x) {
        const double d = xi - mean;
        m4 += d * d * d * d;
    }
    m4 /= static_cast<double>(x.size());
    const double kurt_excess = m4 / (var * var) - 3.0;
    StudentTFit fallback;
    fallback.nu = kurt_excess > 0.0 ? std::clamp(4.0 + 6.0 / kurt_excess, 0.5, 100.0) : 100.0;
    fallback.scale = fallback.nu > 2.0 ? std::sqrt(var * (fallback.nu - 2.0) / fallback.nu)
                                       : std::sqrt(var);
    fallback.shift = mean;
    fallback.converged = false;

    const double lo = std::log(0.5), hi = std::log(100.0);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    const auto objective = [&](double ln_nu, double& mu_out, double& sig_out) {
        const double nu = std::exp(ln_nu);
        double mu = mean;
        double sigma = std::sqrt(var);
        detail::t_fit_location_scale(x, nu, mu, sigma);
        mu_out = mu;
        sig_out = sigma;
        return detail::t_neg_loglik(x, nu, mu, sigma);
    };

    double a = lo, b = hi;
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    double mu_tmp, sig_tmp;
    double f1 = objective(c1, mu_tmp, sig_tmp);
    double f2 = objective(c2, mu_tmp, sig_tmp);
    for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - gr * (b - a);
            f1 = objective(c1, mu_tmp, sig_tmp);
        } else {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + gr * (b - a);
            f2 = objective(c2, mu_tmp, sig_tmp);
        }
    }
    StudentTFit fit;
    fit.nu = std::exp(0.5 * (a + b));
    double mu = mean, sigma = std::sqrt(var);
    detail::t_fit_location_scale(x, fit.nu, mu, sigma);
    fit.shift = mu;
    fit.scale = sigma;
    fit.converged = true;

    // The optimum must not be worse than the moment start; otherwise report
    // the fallback and flag non-convergence.
    const double nll_fit = detail::t_neg_loglik(x, fit.nu, fit.shift, fit.scale);
    const double nll_fb = detail::t_neg_loglik(x, fallback.nu, fallback.shift,
                                               std::max(fallback.scale, 1e-12));
    if (!std::isfinite(nll_fit) || nll_fit > nll_fb) return fallback;
    return fit;
}

struct JumpResult {
    double fraction = 0.0;  // flagged / tested pre-averaged windows
    std::size_t tested = 0;
    std::size_t flagged = 0;
    bool sufficient = false;
};

// Jump detection on returns: pre-average over non-overlapping windows of
// W = ceil(sqrt(m)), form the jump statistic L_i = rbar_i / sigma_i with
// sigma_i^2 the trailing bipower average over up to ceil(sqrt(m))
// pre-averaged returns, and flag |L_i| beyond the Gumbel-based threshold at
// confidence q (the bipower normalization constant c = sqrt(2/pi) is folded
// into the threshold constants).
inline JumpResult detect_jumps(const std::vector<double>& returns, double q = 0.99) {
    JumpResult out;
    const std::size_t m = returns.size();
    if (m < 100) return out;
    const std::size_t W = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(m))));
    const std::size_t M = m / W;  // number of pre-averaged windows
    if (M < 5) return out;
    out.sufficient = true;

    std::vector<double> pre(M);
    for (std::size_t i = 0; i < M; ++i) {
        double s = 0.0;
        for (std::size_t j = i * W; j < (i + 1) * W; ++j) s += returns[j];
        pre[i] = s / static_cast<double>(W);
    }

    const std::size_t K = W;  // trailing window, capped at what is available
    const double c = std::sqrt(2.0 / std::numbers::pi);
    const double n_l = static_cast<double>(M >= 3 ? M - 2 : 1);
    const double ln_n = std::log(std::max(n_l, 3.0));
    const double sq = std::sqrt(2.0 * ln_n);
    const double loc = sq / c - (std::log(std::numbers::pi) + std::log(ln_n)) / (2.0 * c * sq);
    const double scale = 1.0 / (c * sq);
    const double beta_star = -std::log(-std::log(q));

    for (std::size_t i = 2; i < M; ++i) {
        const std::size_t lo = i > K ? i - K : 1;
        double bp = 0.0;
        std::size_t nb = 0;
        for (std::size_t j = lo; j < i; ++j) {
            bp += std::fabs(pre[j]) * std::fabs(pre[j - 1]);
            ++nb;
        }
        if (nb < 2) continue;
        const double sig2 = bp / static_cast<double>(nb);
        if (sig2 <= 0.0) continue;
        const double L = pre[i] / std::sqrt(sig2);
        ++out.tested;
        if ((std::fabs(L) - loc) / scale > beta_star) ++out.flagged;
    }
    if (out.tested > 0)
        out.fraction = static_cast<double>(out.flagged) / static_cast<double>(out.tested);
    return out;
}

struct DayProfile {
    bool sufficient = false;
    std::size_t n_nonzero = 0;     // non-zero returns after aggregation
    double zero_fraction = 0.0;
    int k = 0;
    double repeat_prob_scaled = 0.0;  // (p(00..0) + p(11..1)) * 2^k
    double symbol_imbalance = 0.0;    // |p(1) - p(0)|
    double daily_increment_magnitude = 0.0;  // |ln(P_last / P_first)|
    double mean_return = 0.0;
    double acf1_returns = 0.0;  // magnitude, non-zero returns
    double acf1_abs = 0.0;      // magnitude, absolute non-zero returns
    double t_nu = 0.0;
    double t_scale = 0.0;
    double t_shift_magnitude = 0.0;
    bool t_fit_converged = false;
    double daily_volume = 0.0;
    double jump_fraction = 0.0;
    double p_value = 1.0;
    bool predictable = false;
};

inline DayProfile profile_day(const std::vector<double>& prices,
                              const std::vector<double>& volumes,
                              double alpha = 0.01) {
    DayProfile prof;
    prof.daily_volume = std::accumulate(volumes.begin(), volumes.end(), 0.0);
    if (prices.size() < 2) return prof;

    const std::vector<double> returns = log_returns(prices);
    const Symbolized sym = symbolize_binary(returns);
    prof.n_nonzero = sym.seq.size();
    prof.zero_fraction = static_cast<double>(sym.zeros_dropped) /
                         static_cast<double>(returns.size());
    if (prof.n_nonzero < 4) return prof;
    prof.sufficient = true;

    prof.k = block_length(prof.n_nonzero, 2);
    const BlockHistogram hist = count_blocks(sym.seq, prof.k, BlockMode::non_overlapping);
    if (hist.total > 0) {
        const double p_zeros = static_cast<double>(hist.counts.front()) /
                               static_cast<double>(hist.total);
        const double p_ones = static_cast<double>(hist.counts.back()) /
                              static_cast<double>(hist.total);
        prof.repeat_prob_scaled =
            (p_zeros + p_ones) * static_cast<double>(std::int64_t{1} << prof.k);
    }

    std::size_t ones = 0;
    for (const int x : sym.seq.symbols) ones += static_cast<std::size_t>(x);
    const double p1 = static_cast<double>(ones) / static_cast<double>(prof.n_nonzero);
    prof.symbol_imbalance = std::fabs(p1 - (1.0 - p1));

    prof.daily_increment_magnitude = std::fabs(std::log(prices.back() / prices.front()));
    prof.mean_return = std::accumulate(returns.begin(), returns.end(), 0.0) /
                       static_cast<double>(returns.size());

    std::vector<double> nonzero;
    nonzero.reserve(prof.n_nonzero);
    for (const double r : returns)
        if (r != 0.0) nonzero.push_back(r);
    std::vector<double> abs_nonzero(nonzero.size());
    std::transform(nonzero.begin(), nonzero.end(), abs_nonzero.begin(),
                   [](double r) { return std::fabs(r); });
    const double a1 = acf_lag1(nonzero);
    const double a2 = acf_lag1(abs_nonzero);
    prof.acf1_returns = std::isnan(a1) ? 0.0 : std::fabs(a1);
    prof.acf1_abs = std::isnan(a2) ? 0.0 : std::fabs(a2);

    if (nonzero.size() >= 50) {
        const StudentTFit fit = fit_student_t(nonzero);
        prof.t_nu = fit.nu;
        prof.t_scale = fit.scale;
        prof.t_shift_magnitude = std::fabs(fit.shift);
        prof.t_fit_converged = fit.converged;
    }

    prof.jump_fraction = detect_jumps(returns).fraction;

    if (prof.n_nonzero > static_cast<std::size_t>(prof.k)) {
        const TestResult r = np_statistic(sym.seq, prof.k, alpha);
        prof.p_value = r.p_value;
        prof.predictable = r.predictable;
    }
    return prof;
}

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p_value = 1.0;
};

// Welch's two-sample unequal-variance t-test (two-sided).
inline WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("welch_t_test: need >= 2 observations per group");
    const auto moments = [](const std::vector<double>& x) {
        const double n = static_cast<double>(x.size());
        const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
        double v = 0.0;
        for (const double xi : x) v += (xi - mean) * (xi - mean);
        return std::pair<double, double>{mean, v / (n - 1.0)};
    };
    const auto [m1, v1] = moments(a);
    const auto [m2, v2] = moments(b);
    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    const double se2 = v1 / n1 + v2 / n2;
    WelchResult r;
    if (se2 <= 0.0) {
        r.t = 0.0;
        r.df = n1 + n2 - 2.0;
        r.p_value = 1.0;
        return r;
    }
    r.t = (m1 - m2) / std::sqrt(se2);
    r.df = se2 * se2 /
           ((v1 / n1) * (v1 / n1) / (n1 - 1.0) + (v2 / n2) * (v2 / n2) / (n2 - 1.0));
    r.p_value = 2.0 * (1.0 - special::student_t_cdf(std::fabs(r.t), r.df));
    return r;
}

struct CharacteristicComparison {
    std::string name;
    double mean_predictable = 0.0;
    double mean_unpredictable = 0.0;
    double p_value = 1.0;
    std::string stars;    // "**" at 0.01, "*" at 0.05, "" otherwise
    char direction = '=';  // '>' when the predictable-group mean is larger
    bool skipped = false;
    std::string skip_reason;
};

// Welch comparison of every profile characteristic between predictable and
// unpredictable days.
inline std::vector<CharacteristicComparison> compare_groups(const std::vector<DayProfile>& profiles) {
    static const std::vector<std::string> names = {
        "n_nonzero",       "zero_fraction", "k",
        "repeat_prob_scaled", "symbol_imbalance", "daily_increment_magnitude",
        "mean_return",     "acf1_returns",  "acf1_abs",
        "t_nu",            "t_scale",       "t_shift_magnitude",
        "daily_volume",    "jump_fraction"};
    const auto value_of = [](const DayProfile& p, const std::string& name) {
        if (name == "n_nonzero") return static_cast<double>(p.n_nonzero);
        if (name == "zero_fraction") return p.zero_fraction;
        if (name == "k") return static_cast<double>(p.k);
        if (name == "repeat_prob_scaled") return p.repeat_prob_scaled;
        if (name == "symbol_imbalance") return p.symbol_imbalance;
        if (name == "daily_increment_magnitude") return p.daily_increment_magnitude;
        if (name == "mean_return") return p.mean_return;
        if (name == "acf1_returns") return p.acf1_returns;
        if (name == "acf1_abs") return p.acf1_abs;
        if (name == "t_nu") return p.t_nu;
        if (name == "t_scale") return p.t_scale;
        if (name == "t_shift_magnitude") return p.t_shift_magnitude;
        if (name == "daily_volume") return p.daily_volume;
        return p.jump_fraction;
    };

    std::vector<CharacteristicComparison> table;
    table.reserve(names.size());
    for (const auto& name : names) {
        CharacteristicComparison row;
        row.name = name;
        std::vector<double> pred, unpred;
        for (const auto& p : profiles) {
            if (!p.sufficient) continue;
            (p.predictable ? pred : unpred).push_back(value_of(p, name));
        }
        if (pred.size() < 2 || unpred.size() < 2) {
            row.skipped = true;
            row.skip_reason = pred.size() < 2 ? "fewer than 2 predictable days"
                                              : "fewer than 2 unpredictable days";
            table.push_back(row);
            continue;
        }
        const double mp = std::accumulate(pred.begin(), pred.end(), 0.0) /
                          static_cast<double>(pred.size());
        const double mu = std::accumulate(unpred.begin(), unpred.end(), 0.0) /
                          static_cast<double>(unpred.size());
        row.mean_predictable = mp;
        row.mean_unpredictable = mu;
        row.p_value = welch_t_test(pred, unpred).p_value;
        row.direction = mp > mu ? '>' : (mp < mu ? '<' : '=');
        if (row.p_value < 0.01) {
            row.stars = "**";
        } else if (row.p_value < 0.05) {
            row.stars = "*";
        }
        table.push_back(row);
    }
    return table;
}

struct PairAnalysis {
    double repeat_prob = 0.0;  // p(00) + p(11) over non-overlapping pairs
    TestResult test;           // NP test at k = 2
};

// The k = 2 special case: does the next price direction depend on the
// previous one?
inline PairAnalysis pair_analysis(const SymbolSequence& seq, double alpha = 0.01) {
    if (seq.size() < 3) throw std::invalid_argument("pair_analysis: need n >= 3");
    PairAnalysis out;
    const BlockHistogram hist = count_blocks(seq, 2, BlockMode::non_overlapping);
    if (hist.total > 0) {
        std::int64_t diag = 0;
        for (int j = 0; j < seq.s; ++j)
            diag += hist.counts[static_cast<std::size_t>(j * seq.s + j)];
        out.repeat_prob = static_cast<double>(diag) / static_cast<double>(hist.total);
    }
    out.test = np_statistic(seq, 2, alpha);
    return out;
}

}  // namespace seqpred
