#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <span>

#include "helpers.hpp"
#include "rlidx/oracle.hpp"
#include "rlidx/plcp.hpp"
#include "rlidx/rlbwt.hpp"
#include "rlidx/sa_isa.hpp"

using namespace rlidx;
namespace orc = rlidx::oracle;
namespace th = testing_helpers;

namespace {

struct fixture {
    orc::tables t;
    rlbwt b;
    rank_select_support rs;
    sa_isa_support sa;

    explicit fixture(const std::vector<u64>& codes, u64 sigma, u64 tau1 = 3)
        : t(orc::tables::build(codes)),
          b(rlbwt::from_bwt(std::span<const u64>(t.bwt).subspan(1), sigma)),
          rs(b),
          sa(sa_isa_support::build(b, rs, tau1)) {}
};

}  // namespace

TEST_CASE("lce queries on banana") {
    fixture f(std::vector<u64>{2, 1, 3, 1, 3, 1, 0}, 4);
    for (u64 tau : {1, 2, 3, 7, 9}) {
        auto l = lce_support::build(f.b, f.rs, f.sa, tau);
        REQUIRE(l.lce(2, 4) == 3);
        REQUIRE(l.lce(4, 2) == 3);
        REQUIRE(l.lce(1, 7) == 0);
        REQUIRE(l.lce(3, 3) == 5);
        for (u64 j1 = 1; j1 <= 7; ++j1)
            for (u64 j2 = 1; j2 <= 7; ++j2) REQUIRE(l.lce(j1, j2) == f.t.lce(j1, j2));
    }
}

TEST_CASE("lce matches the oracle on random texts") {
    std::mt19937_64 rng(88211);
    for (int iter = 0; iter < 40; ++iter) {
        u64 sigma = std::vector<u64>{1, 2, 4, 26}[iter % 4];
        u64 n = 1 + rng() % 160;
        auto codes = th::random_text(rng, n, sigma);
        fixture f(codes, sigma + 1, 1 + rng() % 8);
        for (u64 tau : std::vector<u64>{1, 2, 5, 16, f.t.n}) {
            auto l = lce_support::build(f.b, f.rs, f.sa, tau);
            for (u64 j1 = 1; j1 <= f.t.n; ++j1)
                for (u64 j2 = j1; j2 <= f.t.n; ++j2) REQUIRE(l.lce(j1, j2) == f.t.lce(j1, j2));
        }
    }
}

TEST_CASE("lce on a fibonacci word has long extensions") {
    fixture f(th::byte_codes(th::fib_word(12), true), 257);
    auto l = lce_support::build(f.b, f.rs, f.sa, 4);
    for (u64 j1 = 1; j1 <= f.t.n; j1 += 3)
        for (u64 j2 = 1; j2 <= f.t.n; j2 += 5) REQUIRE(l.lce(j1, j2) == f.t.lce(j1, j2));
}

TEST_CASE("irreducible lcp entries of banana") {
    fixture f(std::vector<u64>{2, 1, 3, 1, 3, 1, 0}, 4);
    auto l = lce_support::build(f.b, f.rs, f.sa, 2);
    auto irr = irreducible_lcp(f.b, f.sa, l);
    std::vector<std::pair<u64, u64>> want{{1, 0}, {2, 3}, {5, 0}, {6, 0}, {7, 0}};
    REQUIRE(irr == want);
}

TEST_CASE("irreducible entries are the positions where plcp does not drop by one") {
    std::mt19937_64 rng(4242);
    for (int iter = 0; iter < 30; ++iter) {
        u64 sigma = std::vector<u64>{2, 4, 26}[iter % 3];
        u64 n = 2 + rng() % 200;
        auto codes = th::random_text(rng, n, sigma);
        fixture f(codes, sigma + 1, 1 + rng() % 6);
        auto l = lce_support::build(f.b, f.rs, f.sa, 1 + rng() % 6);
        auto irr = irreducible_lcp(f.b, f.sa, l);
        REQUIRE(irr.size() == f.b.runs());
        REQUIRE(std::is_sorted(irr.begin(), irr.end()));
        std::size_t at = 0;
        for (u64 j = 1; j <= f.t.n; ++j) {
            bool listed = at < irr.size() && irr[at].first == j;
            if (j == 1 || f.t.plcp[j] + 1 != f.t.plcp[j - 1]) {
                REQUIRE(listed);
                REQUIRE(irr[at].second == f.t.plcp[j]);
            }
            if (listed) {
                REQUIRE(irr[at].second == f.t.plcp[j]);
                ++at;
            }
        }
        REQUIRE(at == irr.size());
    }
}

TEST_CASE("plcp bitvector for banana") {
    fixture f(std::vector<u64>{2, 1, 3, 1, 3, 1, 0}, 4);
    auto l = lce_support::build(f.b, f.rs, f.sa, 2);
    auto res = build_plcp(f.b, f.sa, l);
    // one bit per position j at offset 2j + plcp[j]
    std::vector<u64> bits;
    for (u64 j = 1; j <= 7; ++j) bits.push_back(res.succ.select1(j));
    REQUIRE(bits == std::vector<u64>{2, 7, 8, 9, 10, 12, 14});
    std::vector<u64> plcp;
    for (u64 j = 1; j <= 7; ++j) plcp.push_back(res.succ.decode(j));
    REQUIRE(plcp == std::vector<u64>{0, 3, 2, 1, 0, 0, 0});
}

TEST_CASE("plcp bitvector for a run of equal symbols") {
    fixture f(std::vector<u64>{1, 1, 1, 0}, 2, 2);
    auto l = lce_support::build(f.b, f.rs, f.sa, 2);
    auto res = build_plcp(f.b, f.sa, l);
    std::vector<u64> plcp;
    for (u64 j = 1; j <= 4; ++j) plcp.push_back(res.succ.decode(j));
    REQUIRE(plcp == std::vector<u64>{2, 1, 0, 0});
}

TEST_CASE("plcp decode matches the oracle on random texts") {
    std::mt19937_64 rng(90125);
    for (int iter = 0; iter < 40; ++iter) {
        u64 sigma = std::vector<u64>{1, 2, 4, 26}[iter % 4];
        u64 n = 1 + rng() % 220;
        auto codes = th::random_text(rng, n, sigma);
        fixture f(codes, sigma + 1, 1 + rng() % 8);
        auto l = lce_support::build(f.b, f.rs, f.sa, 1 + rng() % 8);
        auto res = build_plcp(f.b, f.sa, l);
        for (u64 j = 1; j <= f.t.n; ++j) REQUIRE(res.succ.decode(j) == f.t.plcp[j]);
    }
}

TEST_CASE("plcp serialization round trip") {
    fixture f(std::vector<u64>{2, 1, 3, 1, 3, 1, 0}, 4);
    auto l = lce_support::build(f.b, f.rs, f.sa, 2);
    auto res = build_plcp(f.b, f.sa, l);
    std::string blob = res.succ.serialize();
    REQUIRE(blob.size() == 5 + 8 + 2);  // magic + n + ceil(14/8) payload bytes
    REQUIRE(u8(blob[13]) == 0xc2);
    REQUIRE(u8(blob[14]) == 0x2b);
    auto back = plcp_succ::deserialize(blob);
    REQUIRE(back.m_n == 7);
    for (u64 j = 1; j <= 7; ++j) REQUIRE(back.decode(j) == res.succ.decode(j));

    REQUIRE_THROWS_AS(plcp_succ::deserialize(blob.substr(0, 10)), std::runtime_error);
    REQUIRE_THROWS_AS(plcp_succ::deserialize(blob + "x"), std::runtime_error);
    std::string bad = blob;
    bad[0] = 'Q';
    REQUIRE_THROWS_AS(plcp_succ::deserialize(bad), std::runtime_error);
    std::string zeroed = blob;
    zeroed[13] = 0;  // drops bits: popcount check must fire
    REQUIRE_THROWS_AS(plcp_succ::deserialize(zeroed), std::invalid_argument);
}

TEST_CASE("plcp build rejects an incomplete irreducible list") {
    REQUIRE_THROWS_AS(plcp_succ::build(3, {{1, 0}, {2, 2}}), std::logic_error);
    // missing the entry for position 1
    REQUIRE_THROWS_AS(plcp_succ::build(2, {{2, 0}}), std::logic_error);
}
