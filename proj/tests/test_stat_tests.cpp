#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "seqpred/random.hpp"
#include "seqpred/stat_tests.hpp"

using namespace seqpred;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Independent brute-force evaluation of D: build the (prefix, last-symbol)
// contingency table with a map keyed by the explicit symbol blocks, then
// evaluate the log-likelihood-ratio sum directly. Shares no code with
// np_statistic.
double np_statistic_bruteforce(const SymbolSequence& seq, int k) {
    std::map<std::vector<int>, std::map<int, long long>> table;
    std::map<std::vector<int>, long long> prefix_total;
    std::map<int, long long> last_total;
    const long long windows = static_cast<long long>(seq.size()) - k + 1;
    for (long long t = 0; t < windows; ++t) {
        std::vector<int> prefix(seq.symbols.begin() + t, seq.symbols.begin() + t + k - 1);
        const int last = seq.symbols[static_cast<std::size_t>(t + k - 1)];
        ++table[prefix][last];
        ++prefix_total[prefix];
        ++last_total[last];
    }
    double sum = 0.0;
    for (const auto& [prefix, row] : table) {
        for (const auto& [last, f] : row) {
            sum += static_cast<double>(f) *
                   std::log(static_cast<double>(windows) * static_cast<double>(f) /
                            (static_cast<double>(prefix_total[prefix]) *
                             static_cast<double>(last_total[last])));
        }
    }
    return 2.0 * sum;
}

}  // namespace

TEST_CASE("entropy_estimate matches the worked examples") {
    BlockHistogram h;
    h.k = 2;
    h.s = 2;
    h.mode = BlockMode::non_overlapping;

    h.counts = {4, 0, 0, 0};
    h.total = 4;
    CHECK_THAT(entropy_estimate(h), WithinAbs(0.0, 1e-15));

    h.counts = {1, 1, 1, 1};
    h.total = 4;
    CHECK_THAT(entropy_estimate(h), WithinAbs(std::log(4.0), 1e-12));

    h.counts = {2, 1, 1, 0};
    h.total = 4;
    CHECK_THAT(entropy_estimate(h), WithinAbs(1.0397207708399179, 1e-12));
}

TEST_CASE("entropy_bias on the worked examples") {
    const auto uniform = entropy_bias(from_string("00011011"), 2);
    CHECK_THAT(uniform.statistic, WithinAbs(0.0, 1e-12));
    CHECK_THAT(uniform.p_value, WithinAbs(1.0, 1e-12));
    CHECK_FALSE(uniform.predictable);

    const auto alt = entropy_bias(from_string("0101010101"), 2);
    CHECK_THAT(alt.statistic, WithinAbs(20.0 * std::log(2.0), 1e-12));
    CHECK(alt.df == 3);
    CHECK_THAT(alt.p_value, WithinAbs(3.0977719520e-3, 1e-9));
    CHECK(alt.predictable);
}

TEST_CASE("entropy_bias mean approximates its chi-squared df") {
    // Null-law sanity: E[B] ~ df = s^k - 1 = 63 for iid uniform binary,
    // n = 1e4 so k = 6.
    rng::Engine g(20240817);
    double sum = 0.0;
    const int reps = 1000;
    for (int i = 0; i < reps; ++i) {
        const auto seq = rng::iid_sequence(g, 10000, {0.5, 0.5});
        sum += entropy_bias(seq, 6).statistic;
    }
    const double mean = sum / reps;
    // sd of the mean is sqrt(2*63/1000) ~ 0.35; allow 4 sigma plus the
    // O(1/n_b) bias of the plug-in entropy.
    CHECK_THAT(mean, WithinAbs(63.0, 2.0));
}

TEST_CASE("np_statistic on the worked examples") {
    const auto flat = np_statistic(from_string("0000"), 2);
    CHECK_THAT(flat.statistic, WithinAbs(0.0, 1e-12));
    CHECK_THAT(flat.p_value, WithinAbs(1.0, 1e-12));

    const auto alt = np_statistic(from_string("0101010101"), 2);
    // f01 = 5, f10 = 4: D = 2(5 ln(45/25) + 4 ln(36/16))
    CHECK_THAT(alt.statistic, WithinAbs(12.36530837875182, 1e-10));
    CHECK(alt.df == 1);
    CHECK_THAT(alt.p_value, WithinAbs(4.3738531608e-4, 1e-10));
    CHECK(alt.predictable);

    CHECK_THROWS_AS(np_statistic(from_string("0101"), 1), std::invalid_argument);
    CHECK_THROWS_AS(np_statistic(from_string("01"), 2), std::invalid_argument);
}

TEST_CASE("np_statistic agrees with a brute-force contingency table") {
    rng::Engine g(7);
    for (int rep = 0; rep < 20; ++rep) {
        const int s = rep % 2 == 0 ? 2 : 3;
        std::vector<double> probs(static_cast<std::size_t>(s), 1.0 / s);
        const auto seq = rng::iid_sequence(g, 200 + 37 * static_cast<std::size_t>(rep), probs);
        for (int k = 2; k <= 4; ++k) {
            const double expected = np_statistic_bruteforce(seq, k);
            CHECK_THAT(np_statistic(seq, k).statistic, WithinAbs(expected, 1e-9));
        }
    }
}

TEST_CASE("kl identity: D = 2 (n-k+1) KL") {
    rng::Engine g(99);
    for (int rep = 0; rep < 100; ++rep) {
        const auto seq = rng::iid_sequence(g, 500, {0.6, 0.4});
        const int k = block_length(seq.size(), 2);
        const auto r = np_statistic(seq, k);
        const double kl = kl_divergence(r).value;
        const double direct = kl_direct(seq, k);
        const double denom = std::max(direct, 1e-15);
        CHECK(std::fabs(kl - direct) / denom < 1e-10);
    }
    // Worked example: D = 12.3653..., n = 10, k = 2.
    const auto alt = np_statistic(from_string("0101010101"), 2);
    CHECK_THAT(kl_divergence(alt).value, WithinAbs(0.6869615765973234, 1e-10));

    CHECK_THROWS_AS(kl_divergence(entropy_bias(from_string("00011011"), 2)),
                    std::invalid_argument);
}

TEST_CASE("B and D are invariant under alphabet relabeling") {
    rng::Engine g(11);
    const auto seq = rng::iid_sequence(g, 600, {0.5, 0.3, 0.2});
    // permutation (0 1 2) -> (2 0 1)
    SymbolSequence relabeled = seq;
    for (auto& x : relabeled.symbols) x = (x + 2) % 3;
    for (int k = 2; k <= 3; ++k) {
        CHECK_THAT(entropy_bias(seq, k).statistic,
                   WithinAbs(entropy_bias(relabeled, k).statistic, 1e-9));
        CHECK_THAT(np_statistic(seq, k).statistic,
                   WithinAbs(np_statistic(relabeled, k).statistic, 1e-9));
    }
}

TEST_CASE("np test has power against a sticky Markov chain") {
    rng::Engine g(123);
    int rejected = 0;
    const int reps = 50;
    for (int i = 0; i < reps; ++i) {
        const auto seq = rng::markov_binary(g, 10000, 0.6);
        const int k = block_length(seq.size(), 2);
        if (np_statistic(seq, k).predictable) ++rejected;
    }
    CHECK(rejected == reps);
}
