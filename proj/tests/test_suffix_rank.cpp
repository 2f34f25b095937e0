#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "helpers.hpp"
#include "rlidx/oracle.hpp"
#include "rlidx/suffix_rank.hpp"

using namespace rlidx;
namespace orc = rlidx::oracle;
namespace th = testing_helpers;

// rank of every suffix of `s` among the suffixes of `t`, computed by direct
// comparison, indexed by row of s's order.
static std::vector<u64> direct_ranks(const orc::tables& ts, const orc::tables& tt) {
    std::vector<u64> out(ts.n + 1, 0);
    for (u64 i = 1; i <= ts.n; ++i) {
        u64 cnt = 0;
        for (u64 q = 1; q <= tt.n; ++q) {
            u64 a = ts.sa[i], b = tt.sa[q], l = 0;
            while (a + l <= ts.n && b + l <= tt.n && ts.text[a + l] == tt.text[b + l]) ++l;
            bool smaller;
            if (b + l > tt.n)
                smaller = true;  // t's suffix ran out first: strictly smaller, never equal
            else if (a + l > ts.n)
                smaller = false;
            else
                smaller = tt.text[b + l] < ts.text[a + l];
            cnt += smaller;
        }
        out[i] = cnt;
    }
    return out;
}

TEST_CASE("suffix rank on a three-symbol toy pair") {
    std::vector<u64> s{3, 2, 0}, t{2, 3, 1};
    auto ts = orc::tables::build(s), tt = orc::tables::build(t);
    rlbwt bs = rlbwt::from_bwt(std::span<const u64>(ts.bwt).subspan(1), 4);
    rlbwt bt = rlbwt::from_bwt(std::span<const u64>(tt.bwt).subspan(1), 4);
    rank_select_support rs(bs), rt(bt);

    for (u64 tau : {1ull, 2ull, 3ull, 5ull}) {
        auto pair = suffix_rank_pair::build(bs, rs, bt, rt, tau, 0, 1);
        REQUIRE(pair.m_fwd.query(1) == 0);  // the terminator suffix of s
        REQUIRE(pair.m_fwd.query(2) == 1);
        REQUIRE(pair.m_fwd.query(3) == 3);  // the whole of s outranks all of t
        REQUIRE(pair.m_rev.query(1) == 1);
        REQUIRE(pair.m_rev.query(2) == 2);
        REQUIRE(pair.m_rev.query(3) == 2);
    }
}

TEST_CASE("suffix rank defaults pick the sentinel anchors") {
    std::vector<u64> s{3, 2, 0}, t{2, 3, 1};
    auto ts = orc::tables::build(s), tt = orc::tables::build(t);
    rlbwt bs = rlbwt::from_bwt(std::span<const u64>(ts.bwt).subspan(1), 4);
    rlbwt bt = rlbwt::from_bwt(std::span<const u64>(tt.bwt).subspan(1), 4);
    rank_select_support rs(bs), rt(bt);
    auto sup = suffix_rank_support::build(bs, rs, bt, rt);
    REQUIRE(sup.query(2) == 1);
}

TEST_CASE("suffix rank matches direct comparison on random pairs") {
    std::mt19937_64 rng(555);
    for (int iter = 0; iter < 25; ++iter) {
        u64 sigma = std::vector<u64>{2, 3, 12}[iter % 3];
        u64 ns = 1 + rng() % 120, nt = 1 + rng() % 120;
        // payload codes start at 2 so the terminators 0 and 1 stay mutually unique
        std::vector<u64> s, t;
        for (u64 i = 0; i < ns; ++i) s.push_back(2 + rng() % sigma);
        s.push_back(0);
        for (u64 i = 0; i < nt; ++i) t.push_back(2 + rng() % sigma);
        t.push_back(1);

        auto ts = orc::tables::build(s), tt = orc::tables::build(t);
        rlbwt bs = rlbwt::from_bwt(std::span<const u64>(ts.bwt).subspan(1), sigma + 2);
        rlbwt bt = rlbwt::from_bwt(std::span<const u64>(tt.bwt).subspan(1), sigma + 2);
        rank_select_support rs(bs), rt(bt);
        auto fwd = direct_ranks(ts, tt), rev = direct_ranks(tt, ts);

        for (u64 tau : {1ull, 2ull, 3ull, 7ull}) {
            auto pair = suffix_rank_pair::build(bs, rs, bt, rt, tau, 0, 1);
            for (u64 i = 1; i <= ts.n; ++i) REQUIRE(pair.m_fwd.query(i) == fwd[i]);
            for (u64 i = 1; i <= tt.n; ++i) REQUIRE(pair.m_rev.query(i) == rev[i]);
        }
    }
}

TEST_CASE("suffix rank rejects bad arguments") {
    std::vector<u64> s{3, 2, 0}, t{2, 3, 1};
    auto ts = orc::tables::build(s), tt = orc::tables::build(t);
    rlbwt bs = rlbwt::from_bwt(std::span<const u64>(ts.bwt).subspan(1), 4);
    rlbwt bt = rlbwt::from_bwt(std::span<const u64>(tt.bwt).subspan(1), 4);
    rank_select_support rs(bs), rt(bt);
    REQUIRE_THROWS_AS(suffix_rank_pair::build(bs, rs, bt, rt, 0, 0, 1), std::invalid_argument);
    auto pair = suffix_rank_pair::build(bs, rs, bt, rt, 2, 0, 1);
    REQUIRE_THROWS_AS(pair.m_fwd.query(0), std::out_of_range);
    REQUIRE_THROWS_AS(pair.m_fwd.query(4), std::out_of_range);
}
