#include <catch2/catch_amalgamated.hpp>

#include "seqpred/symbolize.hpp"

using namespace seqpred;

TEST_CASE("block_length floors and clamps") {
    CHECK(block_length(4096, 2) == 6);  // 0.5*log2(4096) = 6 exactly
    CHECK(block_length(5225, 2) == 6);
    CHECK(block_length(100, 3) == 2);   // floor(2.095) = 2
    CHECK(block_length(10000, 2) == 6);
    CHECK(block_length(4095, 2) == 5);  // just below the power boundary
    CHECK(block_length(4, 2) == 2);     // clamped
    CHECK(block_length(100, 4) == 2);   // floor gives 1, clamp raises to 2
    CHECK_THROWS_AS(block_length(3, 2), std::invalid_argument);
}

TEST_CASE("block_length is monotone non-decreasing in n") {
    for (const int s : {2, 3, 4}) {
        int prev = 2;
        for (std::size_t n = 4; n < 70000; n += 13) {
            const int k = block_length(n, s);
            CHECK(k >= prev);
            prev = k;
        }
    }
}

TEST_CASE("symbolize_binary applies the sign rule and removes zeros") {
    const auto r = symbolize_binary({0.1, -0.2, 0.0, 0.3});
    CHECK(r.seq.symbols == std::vector<int>{1, 0, 1});
    CHECK(r.zeros_dropped == 1);

    const auto tiny = symbolize_binary({-1e-9});
    CHECK(tiny.seq.symbols == std::vector<int>{0});
    CHECK(tiny.zeros_dropped == 0);

    const auto zeros = symbolize_binary({0.0, 0.0, 0.0});
    CHECK(zeros.seq.symbols.empty());
    CHECK(zeros.zeros_dropped == 3);
}

TEST_CASE("symbolize_binary of negated returns flips every symbol") {
    const std::vector<double> returns = {0.5, -0.25, 0.0, 1.5, -0.1, 0.0, 0.7};
    std::vector<double> negated(returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) negated[i] = -returns[i];
    const auto a = symbolize_binary(returns);
    const auto b = symbolize_binary(negated);
    REQUIRE(a.seq.size() == b.seq.size());
    CHECK(a.zeros_dropped == b.zeros_dropped);
    for (std::size_t i = 0; i < a.seq.size(); ++i)
        CHECK(a.seq.symbols[i] == 1 - b.seq.symbols[i]);
}

TEST_CASE("symbolize_prices on integer ticks matches symbolized log-returns") {
    const std::vector<std::int64_t> ticks = {1000, 1001, 1001, 999, 1002, 1002};
    const auto direct = symbolize_prices(ticks);
    const auto via_returns = symbolize_binary(log_returns(ticks));
    CHECK(direct.seq.symbols == via_returns.seq.symbols);
    CHECK(direct.zeros_dropped == via_returns.zeros_dropped);
    CHECK(direct.seq.symbols == std::vector<int>{1, 0, 1});
    CHECK(direct.zeros_dropped == 2);
}

TEST_CASE("aggregate_prices keeps every a-th price") {
    const std::vector<double> p = {1, 2, 3, 4, 5, 6};
    CHECK(aggregate_prices(p, 2) == std::vector<double>{2, 4, 6});
    CHECK(aggregate_prices(p, 1) == p);
    const std::vector<double> p7 = {1, 2, 3, 4, 5, 6, 7};
    CHECK(aggregate_prices(p7, 3) == std::vector<double>{3, 6});
    CHECK_THROWS_AS(aggregate_prices(p, 0), std::invalid_argument);
}

TEST_CASE("count_blocks matches the worked examples") {
    const auto h1 = count_blocks(from_string("00011011"), 2, BlockMode::non_overlapping);
    CHECK(h1.total == 4);
    CHECK(h1.counts == std::vector<std::int64_t>{1, 1, 1, 1});

    const auto h2 = count_blocks(from_string("0101"), 2, BlockMode::overlapping);
    CHECK(h2.total == 3);
    // codes: 01 -> 1, 10 -> 2
    CHECK(h2.counts == std::vector<std::int64_t>{0, 2, 1, 0});

    const auto h3 = count_blocks(from_string("0000"), 3, BlockMode::non_overlapping);
    CHECK(h3.total == 1);
    CHECK(h3.counts[0] == 1);

    CHECK_THROWS_AS(count_blocks(from_string("01"), 3, BlockMode::overlapping),
                    std::invalid_argument);
}

TEST_CASE("count totals satisfy the partition identities") {
    const auto seq = from_string("0110100110010110100101100110");
    for (int k = 1; k <= 5; ++k) {
        const auto non = count_blocks(seq, k, BlockMode::non_overlapping);
        const auto ovl = count_blocks(seq, k, BlockMode::overlapping);
        std::int64_t sum_non = 0, sum_ovl = 0;
        for (const auto c : non.counts) sum_non += c;
        for (const auto c : ovl.counts) sum_ovl += c;
        CHECK(sum_non == static_cast<std::int64_t>(seq.size()) / k);
        CHECK(sum_non == non.total);
        CHECK(sum_ovl == static_cast<std::int64_t>(seq.size()) - k + 1);
        CHECK(sum_ovl == ovl.total);
    }
}

TEST_CASE("block encode/decode is a bijection") {
    for (const int s : {2, 3, 4}) {
        const int k = 3;
        for (std::int64_t code = 0; code < block_space(s, k); ++code) {
            const auto symbols = decode_block(code, s, k);
            CHECK(encode_block(symbols, s) == code);
        }
    }
}

TEST_CASE("aggregation at level 1 then symbolization equals direct symbolization") {
    const std::vector<double> prices = {100, 101, 101, 99, 102, 102, 103};
    const auto direct = symbolize_binary(log_returns(prices));
    const auto via_agg = symbolize_binary(log_returns(aggregate_prices(prices, 1)));
    CHECK(direct.seq.symbols == via_agg.seq.symbols);
    CHECK(direct.zeros_dropped == via_agg.zeros_dropped);
}
