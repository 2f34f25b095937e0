#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "helpers.hpp"
#include "rlidx/oracle.hpp"
#include "rlidx/sais.hpp"

using namespace rlidx;
namespace orc = rlidx::oracle;
namespace th = testing_helpers;

TEST_CASE("induced suffix sort on banana") {
    std::vector<u64> codes{2, 1, 3, 1, 3, 1, 0};
    REQUIRE(suffix_sort(codes) == std::vector<u64>{7, 6, 4, 2, 1, 5, 3});
}

TEST_CASE("induced suffix sort with prefix ties breaks shorter-first") {
    std::vector<u64> codes{2, 1, 3, 1, 3, 1};  // banana, no sentinel
    REQUIRE(suffix_sort(codes) == std::vector<u64>{6, 4, 2, 1, 5, 3});
    std::vector<u64> aa(5, 1);
    REQUIRE(suffix_sort(aa) == std::vector<u64>{5, 4, 3, 2, 1});
}

TEST_CASE("induced suffix sort edge sizes") {
    std::vector<u64> one{42};
    REQUIRE(suffix_sort(one) == std::vector<u64>{1});
    std::vector<u64> none;
    REQUIRE(suffix_sort(none).empty());
    std::vector<u64> two{9, 3};
    REQUIRE(suffix_sort(two) == std::vector<u64>{2, 1});
}

TEST_CASE("induced suffix sort matches the naive sort on random texts") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 120; ++iter) {
        u64 sigma = std::vector<u64>{1, 2, 4, 26, 255}[iter % 5];
        u64 n = 1 + rng() % 300;
        auto codes = th::random_text(rng, n, sigma);
        auto t = orc::tables::build(codes);
        auto sa = suffix_sort(codes);
        REQUIRE(std::vector<u64>(t.sa.begin() + 1, t.sa.end()) == sa);
    }
}

TEST_CASE("induced suffix sort on a fibonacci word") {
    auto codes = th::byte_codes(th::fib_word(15), true);
    auto t = orc::tables::build(codes);
    REQUIRE(std::vector<u64>(t.sa.begin() + 1, t.sa.end()) == suffix_sort(codes));
}

TEST_CASE("induced suffix sort on sparse huge symbols") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 20; ++iter) {
        u64 n = 1 + rng() % 100;
        std::vector<u64> codes(n);
        for (auto& c : codes) c = (rng() % 5) << 40 | (rng() % 3);
        codes.push_back(0);
        auto t = orc::tables::build(codes);
        REQUIRE(std::vector<u64>(t.sa.begin() + 1, t.sa.end()) == suffix_sort(codes));
    }
}
