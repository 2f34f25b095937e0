#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "plcp.hpp"
#include "rlbwt.hpp"
#include "rlcsa.hpp"
#include "sa_isa.hpp"

namespace rlidx {

// number of distinct payload substrings, from the irreducible PLCP entries of
// the sentineled text. between consecutive irreducible positions PLCP drops
// by one per step, so each (value, gap to next position) pair contributes a
// closed-form sum of PLCP values; distinct count = total substring count of
// the sentineled text minus that sum minus the n sentinel-touching ones.
inline u64 distinct_substrings(const std::vector<std::pair<u64, u64>>& irreducible, u64 n) {
    if (n == 0) throw std::invalid_argument("distinct: empty text");
    if (irreducible.empty() || irreducible.front().first != 1)
        throw std::invalid_argument("distinct: list must start at position 1");
    u64 sum = 0;
    for (std::size_t k = 0; k < irreducible.size(); ++k) {
        u64 pos = irreducible[k].first, v = irreducible[k].second;
        u64 next = k + 1 < irreducible.size() ? irreducible[k + 1].first : n + 1;
        if (next <= pos || pos > n) throw std::invalid_argument("distinct: positions not increasing");
        u64 d = next - pos;
        sum += v < d ? v * (v + 1) / 2 : d * (v - d) + d * (d + 1) / 2;
    }
    return n * (n + 1) / 2 - sum - n;
}

// longest substring occurring at least k times: the max over lex rows of the
// min LCP value in each length-(k-1) window. LCP values come in overlapping
// blocks; a block whose rows (plus the row just before) avoid run boundaries
// equals a slice of the LCP window around one run start, shifted down by the
// block's LF-distance, so dense per-row decoding is only a fallback.
struct longest_k_options {
    u64 block = 0;  // 0: (ceil(log2 n))^2, clamped to [k + 1, n]
    bool dense = false;
};

inline u64 longest_k_occurring(const rlbwt& b, const rank_select_support& rs,
                               const sa_isa_support& sa, const plcp_succ& plcp,
                               const lf_shortcut_engine* eng, u64 k,
                               longest_k_options opt = {}) {
    (void)rs;
    const u64 n = b.size();
    if (k < 2) throw std::invalid_argument("longest-k: k must be at least 2");
    if (k > n) throw std::invalid_argument("longest-k: k exceeds the text length");
    u64 lg = n <= 2 ? 1 : u64(std::bit_width(n - 1));
    u64 blk = opt.block ? opt.block : lg * lg;
    blk = std::min(n, std::max(blk, k + 1));

    auto lcp_direct = [&](u64 i) { return i < 2 ? u64(0) : plcp.decode(sa.sa(i)); };

    std::vector<std::vector<u64>> win(b.runs());
    auto window = [&](u64 run) -> const std::vector<u64>& {
        auto& w = win[run];
        if (w.empty()) {
            u64 lam = b.run_start(run);
            u64 base = lam > blk + 1 ? lam - (blk + 1) : 1;
            u64 end = std::min(n, lam + blk + 1);
            w.reserve(end - base + 1);
            for (u64 row = base; row <= end; ++row) w.push_back(lcp_direct(row));
        }
        return w;
    };

    const auto& starts = b.m_starts;
    u64 best = 0;
    std::vector<u64> vals;
    u64 s = 2;
    while (true) {
        u64 e = std::min(n, s + blk - 1);
        vals.clear();
        auto it = std::lower_bound(starts.begin(), starts.end(), s - 1);
        bool boundary = it != starts.end() && *it <= e;
        if (opt.dense || !eng || boundary) {
            for (u64 i = s; i <= e; ++i) vals.push_back(lcp_direct(i));
        } else {
            auto sc = eng->compute(s - 1, e);
            u64 lam = b.run_start(sc.ptr);
            u64 base = lam > blk + 1 ? lam - (blk + 1) : 1;
            const auto& w = window(sc.ptr);
            for (u64 i = s; i <= e; ++i) {
                u64 img = sc.x + (i - (s - 1));
                if (img < base || img - base >= w.size())
                    throw std::logic_error("longest-k: image outside the shared window");
                u64 v = w[img - base];
                if (v < sc.d) throw std::logic_error("longest-k: negative LCP after shift");
                vals.push_back(v - sc.d);
            }
        }

        // sliding min over windows of k-1 values inside this block
        std::deque<u64> dq;  // indices into vals, values increasing
        for (u64 t = 0; t < vals.size(); ++t) {
            while (!dq.empty() && vals[dq.back()] >= vals[t]) dq.pop_back();
            dq.push_back(t);
            if (t + 1 >= k - 1) {
                if (dq.front() + k - 1 <= t) dq.pop_front();
                best = std::max(best, vals[dq.front()]);
            }
        }

        if (e == n) break;
        s = e - k + 1;  // overlap k rows so every window lands inside a block
    }
    return best;
}

}  // namespace rlidx
