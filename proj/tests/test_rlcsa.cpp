#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>
#include <span>

#include "helpers.hpp"
#include "rlidx/oracle.hpp"
#include "rlidx/rlbwt.hpp"
#include "rlidx/rlcsa.hpp"
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

    explicit fixture(const std::vector<u64>& codes, u64 sigma, u64 tau1 = 4)
        : t(orc::tables::build(codes)),
          b(rlbwt::from_bwt(std::span<const u64>(t.bwt).subspan(1), sigma)),
          rs(b),
          sa(sa_isa_support::build(b, rs, tau1)) {}

    // least d with LF^d(i) a run start, by walking the oracle LF.
    u64 dist_to_boundary(u64 i) const {
        std::set<u64> starts(b.m_starts.begin(), b.m_starts.end());
        u64 d = 0;
        while (!starts.count(i)) {
            i = t.lf[i];
            ++d;
        }
        return d;
    }

    u64 block_distance(u64 s, u64 e) const {
        u64 best = ~u64(0);
        for (u64 i = s; i <= e; ++i) best = std::min(best, dist_to_boundary(i));
        return best;
    }

    u64 lf_pow(u64 i, u64 d) const {
        while (d--) i = t.lf[i];
        return i;
    }
};

}  // namespace

TEST_CASE("shortcut engine distances match brute force") {
    std::mt19937_64 rng(7711);
    for (int iter = 0; iter < 25; ++iter) {
        u64 sigma = std::vector<u64>{1, 2, 4, 26}[iter % 4];
        u64 n = 1 + rng() % 120;
        auto codes = th::random_text(rng, n, sigma);
        fixture f(codes, sigma + 1, 1 + rng() % 6);
        for (u64 tau : std::vector<u64>{1, 2, 3, 8, f.t.n}) {
            auto eng = lf_shortcut_engine::build(f.b, f.rs, f.sa, tau);
            for (u64 s = 1; s <= f.t.n; ++s)
                for (u64 e = s; e <= std::min(f.t.n, s + 6); ++e) {
                    auto sc = eng.compute(s, e);
                    REQUIRE(sc.d == f.block_distance(s, e));
                    REQUIRE(sc.x == f.lf_pow(s, sc.d));
                    u64 lam = f.b.run_start(sc.ptr);
                    REQUIRE(lam >= sc.x);
                    REQUIRE(lam <= sc.x + (e - s));
                }
        }
    }
}

TEST_CASE("rlcsa stored records on banana are exact") {
    fixture f(std::vector<u64>{2, 1, 3, 1, 3, 1, 0}, 4, 2);
    auto c = rlcsa_index::build(f.b, f.rs, f.sa, 2);
    for (u64 j = 0; j < c.m_lt.size(); ++j) {
        u64 s = j * c.m_b0 + 1, e = std::min(f.t.n, s + c.m_b0 - 1);
        REQUIRE(c.m_lt[j].valid());
        REQUIRE(c.m_lt[j].d == f.block_distance(s, e));
        REQUIRE(c.m_lt[j].x == f.lf_pow(s, c.m_lt[j].d));
    }
    for (std::size_t k = 0; k < c.m_h.size(); ++k) {
        for (u64 run = 0; run < c.runs(); ++run) {
            i64 lambda = i64(c.m_run_starts[run]);
            for (i64 i = -4; i <= 2; ++i) {
                i64 s = std::max<i64>(lambda + i * i64(c.m_h[k]), 1);
                i64 e = std::min<i64>(lambda + (i + 2) * i64(c.m_h[k]) - 1, i64(f.t.n));
                const auto& rec = c.m_levels[k][run * c.blocks_per_run() + u64(i + 4)];
                if (s > e) {
                    REQUIRE_FALSE(rec.valid());
                    continue;
                }
                REQUIRE(rec.valid());
                REQUIRE(rec.d == f.block_distance(u64(s), u64(e)));
                REQUIRE(rec.x == f.lf_pow(u64(s), rec.d));
            }
        }
    }
    for (u64 p = 1; p <= 7; ++p) REQUIRE(c.sa_at(p) == f.t.sa[p]);
    REQUIRE(c.sa_at(4) == 2);
    REQUIRE(c.sa_segment(3, 3) == std::vector<u64>{4, 2, 1});
}

TEST_CASE("rlcsa run starts answer with zero descents") {
    fixture f(std::vector<u64>{2, 1, 3, 1, 3, 1, 0}, 4, 2);
    auto c = rlcsa_index::build(f.b, f.rs, f.sa, 2);
    for (u64 k = 0; k < f.b.runs(); ++k) {
        auto [v, depth] = c.sa_at_ex(f.b.run_start(k));
        REQUIRE(v == f.t.sa[f.b.run_start(k)]);
        REQUIRE(depth == 0);
    }
}

TEST_CASE("rlcsa rejects bad arguments") {
    fixture f(std::vector<u64>{2, 1, 3, 1, 3, 1, 0}, 4, 2);
    REQUIRE_THROWS_AS(rlcsa_index::build(f.b, f.rs, f.sa, 1), std::invalid_argument);
    auto c = rlcsa_index::build(f.b, f.rs, f.sa, 2);
    REQUIRE_THROWS_AS(c.sa_at(0), std::out_of_range);
    REQUIRE_THROWS_AS(c.sa_at(8), std::out_of_range);
    REQUIRE_THROWS_AS(c.sa_segment(5, 4), std::out_of_range);
    REQUIRE_THROWS_AS(c.sa_segment(0, 1), std::out_of_range);
}

TEST_CASE("rlcsa matches the oracle on random texts") {
    std::mt19937_64 rng(112233);
    for (int iter = 0; iter < 25; ++iter) {
        u64 sigma = std::vector<u64>{1, 2, 4, 26}[iter % 4];
        u64 n = 1 + rng() % 400;
        auto codes = th::random_text(rng, n, sigma);
        fixture f(codes, sigma + 1, 1 + rng() % 8);
        for (u64 tau : {2, 4, 16}) {
            auto c = rlcsa_index::build(f.b, f.rs, f.sa, tau, 1 + rng() % 9);
            u64 alpha_bound = 1;
            for (u64 p = 1; p < (f.t.n + f.b.runs() - 1) / f.b.runs(); p *= tau) ++alpha_bound;
            for (u64 p = 1; p <= f.t.n; ++p) {
                auto [v, depth] = c.sa_at_ex(p);
                REQUIRE(v == f.t.sa[p]);
                REQUIRE(depth <= alpha_bound + 1);
            }
            for (int q = 0; q < 30; ++q) {
                u64 p = 1 + rng() % f.t.n;
                u64 len = rng() % (f.t.n - p + 2);
                auto seg = c.sa_segment(p, len);
                REQUIRE(seg.size() == len);
                for (u64 o = 0; o < len; ++o) REQUIRE(seg[o] == f.t.sa[p + o]);
            }
            auto full = c.sa_segment(1, f.t.n);
            REQUIRE(full == std::vector<u64>(f.t.sa.begin() + 1, f.t.sa.end()));
        }
    }
}

TEST_CASE("rlcsa on repetitive corpora") {
    std::mt19937_64 rng(31);
    auto fib = th::byte_codes(th::fib_word(16), true);
    auto rep = th::mutated_repeat(rng, 64, 24, 4, 0.01);
    for (const auto& codes : {fib, rep}) {
        u64 sigma = 1 + *std::max_element(codes.begin(), codes.end());
        fixture f(codes, sigma, 6);
        for (u64 tau : {2, 4}) {
            auto c = rlcsa_index::build(f.b, f.rs, f.sa, tau);
            for (u64 p = 1; p <= f.t.n; ++p) REQUIRE(c.sa_at(p) == f.t.sa[p]);
            auto seg = c.sa_segment(1, f.t.n);
            REQUIRE(seg == std::vector<u64>(f.t.sa.begin() + 1, f.t.sa.end()));
        }
    }
}

TEST_CASE("rlcsa with all runs singleton leaves no levels") {
    // strictly increasing codes: every bwt run has length 1, so n/r = 1.
    std::vector<u64> codes{1, 2, 3, 4, 5, 6, 0};
    fixture f(codes, 7, 3);
    REQUIRE(f.b.runs() == f.t.n);
    auto c = rlcsa_index::build(f.b, f.rs, f.sa, 2);
    REQUIRE(c.m_h.empty());
    for (u64 p = 1; p <= f.t.n; ++p) REQUIRE(c.sa_at(p) == f.t.sa[p]);
}

TEST_CASE("rlcsa serialization round trips") {
    std::mt19937_64 rng(9182);
    auto codes = th::mutated_repeat(rng, 32, 12, 3, 0.03);
    fixture f(codes, 4, 5);
    auto c = rlcsa_index::build(f.b, f.rs, f.sa, 4);
    std::string blob = c.serialize();
    auto back = rlcsa_index::deserialize(blob);
    REQUIRE(back.m_n == c.m_n);
    REQUIRE(back.m_h == c.m_h);
    REQUIRE(back.m_run_sa == c.m_run_sa);
    for (u64 p = 1; p <= c.m_n; ++p) REQUIRE(back.sa_at(p) == f.t.sa[p]);
    REQUIRE(back.sa_segment(1, back.m_n) == c.sa_segment(1, c.m_n));

    REQUIRE_THROWS_AS(rlcsa_index::deserialize(blob.substr(0, blob.size() / 2)),
                      std::runtime_error);
    REQUIRE_THROWS_AS(rlcsa_index::deserialize(blob + "pad"), std::runtime_error);
    std::string bad = blob;
    bad[2] = 'X';
    REQUIRE_THROWS_AS(rlcsa_index::deserialize(bad), std::runtime_error);
}

TEST_CASE("rlcsa size grows and depth shrinks with tau") {
    std::mt19937_64 rng(5150);
    auto codes = th::mutated_repeat(rng, 128, 32, 4, 0.005);
    fixture f(codes, 5, 6);
    std::vector<u64> sizes;
    std::vector<u64> depths;
    for (u64 tau : {2, 4, 16}) {
        auto c = rlcsa_index::build(f.b, f.rs, f.sa, tau);
        sizes.push_back(c.serialize().size());
        u64 worst = 0;
        for (u64 p = 1; p <= c.m_n; ++p) worst = std::max(worst, c.sa_at_ex(p).depth);
        depths.push_back(worst);
    }
    REQUIRE(sizes[0] <= sizes[1]);
    REQUIRE(sizes[1] <= sizes[2]);
    REQUIRE(depths[2] <= depths[0]);
}
