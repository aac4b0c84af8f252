#include <catch2/catch_amalgamated.hpp>

#include "seqpred/calibrate.hpp"

using namespace seqpred;
using Catch::Matchers::WithinAbs;

TEST_CASE("ks_distance_chi2 is small for a chi-squared sample") {
    // Build a "sample" from the exact quantiles: KS distance must be ~1/(2N).
    const double df = 5.0;
    const std::size_t N = 500;
    std::vector<double> sample;
    sample.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(N);
        sample.push_back(special::chi2_quantile(p, df));
    }
    CHECK_THAT(ks_distance_chi2(sample, df), WithinAbs(0.001, 1e-6));
}

TEST_CASE("D calibrates against chi-squared for uniform binary symbols") {
    const auto rep = calibrate(TestKind::neyman_pearson, 2, 10000, {0.5, 0.5}, 500, 1001);
    CHECK(rep.k == 6);
    CHECK(rep.df == 31);  // (2^5 - 1)(2 - 1)
    CHECK(rep.pass);
    CHECK(rep.ks_distance < rep.ks_critical);
    const double slope = qq_slope(rep);
    CHECK(slope > 0.9);
    CHECK(slope < 1.1);
}

TEST_CASE("paired contrast: skewed symbols break B but not D") {
    const auto b_uniform = calibrate(TestKind::entropy_bias, 2, 10000, {0.5, 0.5}, 500, 1002);
    CHECK(b_uniform.df == 63);  // 2^6 - 1
    CHECK(b_uniform.pass);

    const auto b_skew = calibrate(TestKind::entropy_bias, 2, 10000, {0.7, 0.3}, 500, 1003);
    CHECK_FALSE(b_skew.pass);
    CHECK(b_skew.ks_distance > 0.5);  // not marginal: the null law is simply wrong

    const auto d_skew = calibrate(TestKind::neyman_pearson, 2, 10000, {0.7, 0.3}, 500, 1004);
    CHECK(d_skew.pass);
}

TEST_CASE("calibration reports are deterministic given the seed") {
    const auto a = calibrate(TestKind::neyman_pearson, 3, 2000, {0.5, 0.25, 0.25}, 200, 77);
    const auto b = calibrate(TestKind::neyman_pearson, 3, 2000, {0.5, 0.25, 0.25}, 200, 77);
    CHECK(a.ks_distance == b.ks_distance);
    REQUIRE(a.qq.size() == b.qq.size());
    for (std::size_t i = 0; i < a.qq.size(); ++i) {
        CHECK(a.qq[i].first == b.qq[i].first);
        CHECK(a.qq[i].second == b.qq[i].second);
    }
}

TEST_CASE("calibrate validates input") {
    CHECK_THROWS_AS(calibrate(TestKind::neyman_pearson, 2, 1000, {0.5, 0.5}, 50, 1),
                    std::invalid_argument);  // N too small
    CHECK_THROWS_AS(calibrate(TestKind::neyman_pearson, 2, 1000, {0.5, 0.4}, 200, 1),
                    std::invalid_argument);  // probs don't sum to 1
}
