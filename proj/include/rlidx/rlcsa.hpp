#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "io_util.hpp"
#include "rlbwt.hpp"
#include "sa_isa.hpp"
#include "tau_index.hpp"

namespace rlidx {

namespace csa_detail {

inline i64 floor_div(i64 a, i64 b) {
    i64 q = a / b, r = a % b;
    return q - ((r != 0 && (r < 0) != (b < 0)) ? 1 : 0);
}

}  // namespace csa_detail

// answer for a block of rows [s..t]: the least d such that LF^d lands some row
// of the block on a run start, the image start x = LF^d(s), and the index of a
// run whose start lies inside the image [x..x+(t-s)].
struct lf_shortcut {
    u64 d;
    u64 x;
    u64 ptr;
};

// computes LF-distances without walking them out. every row's distance to the
// nearest run start equals its suffix position minus the nearest irreducible
// position at or below it, so sampling rows at stride tau after each
// irreducible position (with the stride count as label) turns the minimum
// distance over a block into: walk the block at most tau LF steps; if the
// image hits a run start at step D the answer is D; otherwise the minimum of
// label+step over sampled rows seen inside the image.
struct lf_shortcut_engine {
    const rlbwt* m_bwt = nullptr;
    const rank_select_support* m_rs = nullptr;
    u64 m_tau = 0;
    std::vector<u64> m_keys;     // sampled rows, ascending
    std::vector<u64> m_labels;   // LF-distance at each sampled row
    std::vector<u64> m_targets;  // run-start row the sampled row walks onto
    std::vector<std::pair<u64, u64>> m_tree;  // min-label segment tree, (label, pair index)
    u64 m_leaves = 0;

    static lf_shortcut_engine build(const rlbwt& b, const rank_select_support& rs,
                                    const sa_isa_support& sa, u64 tau) {
        if (tau == 0) throw std::invalid_argument("shortcut engine: tau must be positive");
        lf_shortcut_engine e;
        e.m_bwt = &b;
        e.m_rs = &rs;
        e.m_tau = tau;
        const u64 n = b.size();

        std::vector<std::pair<u64, u64>> irr;  // (suffix position, run-start row)
        irr.reserve(b.runs());
        for (u64 k = 0; k < b.runs(); ++k) {
            u64 row = b.run_start(k);
            irr.emplace_back(sa.sa(row), row);
        }
        std::sort(irr.begin(), irr.end());
        if (irr.front().first != 1)
            throw std::logic_error("shortcut engine: position 1 must be irreducible");

        std::vector<std::array<u64, 3>> pairs;  // (key row, label, target row)
        for (std::size_t j = 0; j < irr.size(); ++j) {
            u64 q = irr[j].first;
            u64 gap = (j + 1 < irr.size() ? irr[j + 1].first : irr.front().first + n) - q;
            for (u64 lab = tau; lab < gap; lab += tau)
                pairs.push_back({sa.isa(q + lab), lab, irr[j].second});
        }
        std::sort(pairs.begin(), pairs.end());
        e.m_keys.reserve(pairs.size());
        e.m_labels.reserve(pairs.size());
        e.m_targets.reserve(pairs.size());
        for (const auto& p : pairs) {
            e.m_keys.push_back(p[0]);
            e.m_labels.push_back(p[1]);
            e.m_targets.push_back(p[2]);
        }

        e.m_leaves = 1;
        while (e.m_leaves < std::max<u64>(1, pairs.size())) e.m_leaves *= 2;
        e.m_tree.assign(2 * e.m_leaves, {~u64(0), ~u64(0)});
        for (std::size_t i = 0; i < pairs.size(); ++i)
            e.m_tree[e.m_leaves + i] = {e.m_labels[i], i};
        for (u64 v = e.m_leaves - 1; v >= 1; --v)
            e.m_tree[v] = std::min(e.m_tree[2 * v], e.m_tree[2 * v + 1]);
        return e;
    }

    // minimum (label, index) among pairs with index in [lo, hi).
    std::pair<u64, u64> tree_min(u64 lo, u64 hi) const {
        std::pair<u64, u64> best{~u64(0), ~u64(0)};
        for (lo += m_leaves, hi += m_leaves; lo < hi; lo /= 2, hi /= 2) {
            if (lo & 1) best = std::min(best, m_tree[lo++]);
            if (hi & 1) best = std::min(best, m_tree[--hi]);
        }
        return best;
    }

    lf_shortcut compute(u64 s, u64 t) const {
        const u64 n = m_bwt->size();
        if (s < 1 || t < s || t > n) throw std::out_of_range("shortcut engine: bad row range");
        const u64 len = t - s + 1;
        const auto& starts = m_bwt->m_starts;
        u64 best = ~u64(0), best_x = 0;
        u64 cur = s;
        for (u64 step = 0; step < m_tau; ++step) {
            auto it = std::lower_bound(starts.begin(), starts.end(), cur);
            if (it != starts.end() && *it <= cur + len - 1)
                return {step, cur, u64(it - starts.begin())};
            u64 lo = std::lower_bound(m_keys.begin(), m_keys.end(), cur) - m_keys.begin();
            u64 hi = std::upper_bound(m_keys.begin(), m_keys.end(), cur + len - 1) - m_keys.begin();
            if (lo < hi) {
                auto [lab, idx] = tree_min(lo, hi);
                if (lab + step < best) {
                    best = lab + step;
                    best_x = m_targets[idx] - (m_keys[idx] - cur);
                }
            }
            cur = m_rs->lf(cur);
        }
        if (best == ~u64(0)) throw std::logic_error("shortcut engine: no candidate found");
        auto it = std::lower_bound(starts.begin(), starts.end(), best_x);
        if (it == starts.end() || *it > best_x + len - 1)
            throw std::logic_error("shortcut engine: image misses a run start");
        return {best, best_x, u64(it - starts.begin())};
    }
};

// one stored shortcut block; d == ~0 marks a block that is empty after
// clipping to [1..n].
struct rlcsa_record {
    u64 d = ~u64(0);
    u64 x = 0;
    u64 ptr = 0;

    bool valid() const { return d != ~u64(0); }
};

// run-length compressed suffix array. SA access descends a hierarchy of
// shrinking shortcut blocks anchored at run starts: a lookup table over
// top-level blocks, then per run-start 4*tau-1 half-overlapping blocks per
// level, then explicit SA values around each run start. each shortcut adds its
// LF-distance to the answer while the row moves closer to some run start.
struct rlcsa_index {
    u64 m_n = 0;
    u64 m_sigma = 0;
    u64 m_tau = 0;
    u64 m_b0 = 0;      // top block size, ceil(n/r)
    u64 m_alpha = 0;   // level cutoff: levels kept while block size >= alpha
    u64 m_chunk = 0;   // segment-extraction stride
    u64 m_radius = 0;  // explicit-value radius around each run start
    std::vector<u64> m_h;  // half-block size per level
    std::vector<u64> m_run_starts;
    std::vector<u64> m_run_sa;
    std::vector<rlcsa_record> m_lt;
    std::vector<std::vector<rlcsa_record>> m_levels;  // per level: runs x (4*tau-1)
    std::vector<std::vector<u64>> m_segments;         // per run: rows [max(1,s-R)..min(n,s+R)]

    u64 runs() const { return m_run_starts.size(); }
    u64 blocks_per_run() const { return 4 * m_tau - 1; }

    static rlcsa_index build(const rlbwt& b, const rank_select_support& rs,
                             const sa_isa_support& sa, u64 tau, u64 tau2 = 0) {
        if (tau < 2) throw std::invalid_argument("rlcsa: tau must be at least 2");
        rlcsa_index c;
        c.m_n = b.size();
        c.m_sigma = b.sigma();
        c.m_tau = tau;
        const u64 n = c.m_n, r = b.runs();
        c.m_b0 = (n + r - 1) / r;

        c.m_alpha = 1;
        for (u64 p = tau; p < c.m_b0; p *= tau) {
            ++c.m_alpha;
            if (p > n) break;
        }

        u64 prev = c.m_b0;
        u64 h = std::max<u64>(1, (c.m_b0 + tau - 1) / tau);
        while (2 * h >= c.m_alpha && h < prev) {
            c.m_h.push_back(h);
            prev = h;
            h = std::max<u64>(1, (h + tau - 1) / tau);
        }
        c.m_chunk = c.m_h.empty() ? c.m_b0 : c.m_h.back();
        c.m_radius = c.m_h.empty() ? c.m_b0 : 2 * c.m_h.back();

        c.m_run_starts = b.m_starts;
        c.m_run_sa.resize(r);
        for (u64 k = 0; k < r; ++k) c.m_run_sa[k] = sa.sa(b.run_start(k));

        u64 t2 = tau2 ? tau2 : default_tau(n, r);
        lf_shortcut_engine eng = lf_shortcut_engine::build(b, rs, sa, t2);

        u64 top = (n + c.m_b0 - 1) / c.m_b0;
        c.m_lt.resize(top);
        for (u64 j = 0; j < top; ++j) {
            u64 s = j * c.m_b0 + 1;
            u64 t = std::min(n, s + c.m_b0 - 1);
            auto sc = eng.compute(s, t);
            c.m_lt[j] = {sc.d, sc.x, sc.ptr};
        }

        c.m_levels.resize(c.m_h.size());
        for (std::size_t k = 0; k < c.m_h.size(); ++k) {
            auto& lvl = c.m_levels[k];
            lvl.resize(r * c.blocks_per_run());
            for (u64 run = 0; run < r; ++run) {
                i64 lambda = i64(c.m_run_starts[run]);
                for (i64 i = -i64(2 * tau); i <= i64(2 * tau) - 2; ++i) {
                    i64 s = lambda + i * i64(c.m_h[k]);
                    i64 t = s + 2 * i64(c.m_h[k]) - 1;
                    s = std::max<i64>(s, 1);
                    t = std::min<i64>(t, i64(n));
                    auto& rec = lvl[run * c.blocks_per_run() + u64(i + i64(2 * tau))];
                    if (s > t) continue;  // stays invalid
                    auto sc = eng.compute(u64(s), u64(t));
                    rec = {sc.d, sc.x, sc.ptr};
                }
            }
        }

        c.m_segments.resize(r);
        for (u64 run = 0; run < r; ++run) {
            u64 lambda = c.m_run_starts[run];
            u64 base = lambda > c.m_radius ? lambda - c.m_radius : 1;
            u64 end = std::min(n, lambda + c.m_radius);
            auto& seg = c.m_segments[run];
            seg.reserve(end - base + 1);
            for (u64 row = base; row <= end; ++row) seg.push_back(sa.sa(row));
        }
        return c;
    }

    struct access_result {
        u64 value;
        u64 depth;  // shortcuts followed
    };

    access_result sa_at_ex(u64 p) const {
        if (p < 1 || p > m_n) throw std::out_of_range("rlcsa: position out of range");
        u64 d_sum = 0, depth = 0, pos = p, ptr = 0;
        {
            auto hit = run_start_value(pos);
            if (hit.first) return {hit.second, 0};
            u64 j = (pos - 1) / m_b0;
            const auto& rec = m_lt[j];
            if (!rec.valid()) throw std::logic_error("rlcsa: missing top block");
            d_sum += rec.d;
            pos = rec.x + (pos - (j * m_b0 + 1));
            ptr = rec.ptr;
            ++depth;
        }
        for (std::size_t k = 0; k < m_h.size(); ++k) {
            auto hit = run_start_value(pos);
            if (hit.first) return {hit.second + d_sum, depth};
            u64 s_row;
            const rlcsa_record& rec = pick_block(k, ptr, pos, s_row);
            d_sum += rec.d;
            pos = rec.x + (pos - s_row);
            ptr = rec.ptr;
            ++depth;
        }
        auto hit = run_start_value(pos);
        if (hit.first) return {hit.second + d_sum, depth};
        return {segment_value(ptr, pos) + d_sum, depth};
    }

    u64 sa_at(u64 p) const { return sa_at_ex(p).value; }

    std::vector<u64> sa_segment(u64 p, u64 len) const {
        if (p < 1 || p > m_n || len > m_n - p + 1)
            throw std::out_of_range("rlcsa: segment out of range");
        std::vector<u64> out;
        out.reserve(len);
        u64 cur = p;
        const u64 last = p + len - 1;
        while (len > 0 && cur <= last) {
            u64 lt_end = ((cur - 1) / m_b0) * m_b0 + m_b0;
            u64 chunk_end = std::min({last, std::min(lt_end, m_n), cur + m_chunk - 1});
            extract_chunk(cur, chunk_end, out);
            cur = chunk_end + 1;
        }
        return out;
    }

    std::string serialize() const {
        std::string out = "RCSA1";
        put_u64(out, m_n);
        put_u64(out, m_sigma);
        put_u64(out, runs());
        put_u64(out, m_tau);
        put_u64(out, m_h.size());
        put_u64(out, m_b0);
        put_u64(out, m_alpha);
        put_u64(out, m_chunk);
        put_u64(out, m_radius);
        for (u64 h : m_h) put_u64(out, h);
        for (u64 v : m_run_starts) put_u64(out, v);
        for (u64 v : m_run_sa) put_u64(out, v);
        put_u64(out, m_lt.size());
        auto put_rec = [&out](const rlcsa_record& rec) {
            put_u64(out, rec.d);
            put_u64(out, rec.valid() ? rec.x : ~u64(0));
        };
        for (const auto& rec : m_lt) put_rec(rec);
        for (const auto& lvl : m_levels)
            for (const auto& rec : lvl) put_rec(rec);
        for (const auto& seg : m_segments)
            for (u64 v : seg) put_u64(out, v);
        return out;
    }

    static rlcsa_index deserialize(const std::string& data) {
        byte_reader rd(data);
        rd.get_magic("RCSA1");
        rlcsa_index c;
        c.m_n = rd.get_u64();
        c.m_sigma = rd.get_u64();
        u64 r = rd.get_u64();
        c.m_tau = rd.get_u64();
        u64 lev = rd.get_u64();
        c.m_b0 = rd.get_u64();
        c.m_alpha = rd.get_u64();
        c.m_chunk = rd.get_u64();
        c.m_radius = rd.get_u64();
        if (c.m_n == 0 || r == 0 || r > c.m_n || c.m_tau < 2)
            throw std::runtime_error("rlcsa: corrupt header");
        if (c.m_b0 != (c.m_n + r - 1) / r) throw std::runtime_error("rlcsa: inconsistent block size");
        c.m_h.resize(lev);
        for (auto& h : c.m_h) {
            h = rd.get_u64();
            if (h == 0 || h > c.m_n) throw std::runtime_error("rlcsa: corrupt level size");
        }
        c.m_run_starts.resize(r);
        for (auto& v : c.m_run_starts) v = rd.get_u64();
        for (u64 k = 0; k < r; ++k)
            if (c.m_run_starts[k] < 1 || c.m_run_starts[k] > c.m_n ||
                (k > 0 && c.m_run_starts[k] <= c.m_run_starts[k - 1]))
                throw std::runtime_error("rlcsa: corrupt run starts");
        c.m_run_sa.resize(r);
        for (auto& v : c.m_run_sa) {
            v = rd.get_u64();
            if (v < 1 || v > c.m_n) throw std::runtime_error("rlcsa: corrupt run value");
        }
        u64 top = rd.get_u64();
        if (top != (c.m_n + c.m_b0 - 1) / c.m_b0) throw std::runtime_error("rlcsa: corrupt table size");
        auto get_rec = [&](u64 s, u64 t) {
            rlcsa_record rec;
            rec.d = rd.get_u64();
            rec.x = rd.get_u64();
            if (rec.d == ~u64(0)) {
                if (s <= t) throw std::runtime_error("rlcsa: missing block record");
                return rlcsa_record{};
            }
            if (s > t || rec.x < 1 || rec.x > c.m_n || rec.d > c.m_n)
                throw std::runtime_error("rlcsa: corrupt block record");
            auto it = std::lower_bound(c.m_run_starts.begin(), c.m_run_starts.end(), rec.x);
            if (it == c.m_run_starts.end() || *it > rec.x + (t - s))
                throw std::runtime_error("rlcsa: shortcut image misses a run start");
            rec.ptr = u64(it - c.m_run_starts.begin());
            return rec;
        };
        c.m_lt.resize(top);
        for (u64 j = 0; j < top; ++j)
            c.m_lt[j] = get_rec(j * c.m_b0 + 1, std::min(c.m_n, (j + 1) * c.m_b0));
        c.m_levels.resize(lev);
        for (u64 k = 0; k < lev; ++k) {
            auto& l = c.m_levels[k];
            l.resize(r * c.blocks_per_run());
            for (u64 run = 0; run < r; ++run) {
                i64 lambda = i64(c.m_run_starts[run]);
                for (i64 i = -i64(2 * c.m_tau); i <= i64(2 * c.m_tau) - 2; ++i) {
                    i64 s = std::max<i64>(lambda + i * i64(c.m_h[k]), 1);
                    i64 t = std::min<i64>(lambda + i * i64(c.m_h[k]) + 2 * i64(c.m_h[k]) - 1, i64(c.m_n));
                    l[run * c.blocks_per_run() + u64(i + i64(2 * c.m_tau))] =
                        get_rec(u64(std::max<i64>(s, 1)), u64(std::max<i64>(t, 0)));
                }
            }
        }
        c.m_segments.resize(r);
        for (u64 run = 0; run < r; ++run) {
            u64 lambda = c.m_run_starts[run];
            u64 base = lambda > c.m_radius ? lambda - c.m_radius : 1;
            u64 end = std::min(c.m_n, lambda + c.m_radius);
            auto& seg = c.m_segments[run];
            seg.resize(end - base + 1);
            for (auto& v : seg) {
                v = rd.get_u64();
                if (v < 1 || v > c.m_n) throw std::runtime_error("rlcsa: corrupt segment value");
            }
        }
        if (!rd.done()) throw std::runtime_error("rlcsa: trailing bytes");
        return c;
    }

   private:
    std::pair<bool, u64> run_start_value(u64 pos) const {
        auto it = std::lower_bound(m_run_starts.begin(), m_run_starts.end(), pos);
        if (it != m_run_starts.end() && *it == pos)
            return {true, m_run_sa[it - m_run_starts.begin()]};
        return {false, 0};
    }

    const rlcsa_record& pick_block(std::size_t level, u64 ptr, u64 pos, u64& s_row) const {
        i64 lambda = i64(m_run_starts[ptr]);
        i64 h = i64(m_h[level]);
        i64 i = std::clamp<i64>(csa_detail::floor_div(i64(pos) - lambda, h), -i64(2 * m_tau),
                                i64(2 * m_tau) - 2);
        const rlcsa_record& rec =
            m_levels[level][ptr * blocks_per_run() + u64(i + i64(2 * m_tau))];
        if (!rec.valid()) throw std::logic_error("rlcsa: descent hit an empty block");
        s_row = u64(std::max<i64>(lambda + i * h, 1));
        return rec;
    }

    u64 segment_value(u64 ptr, u64 pos) const {
        u64 lambda = m_run_starts[ptr];
        u64 base = lambda > m_radius ? lambda - m_radius : 1;
        const auto& seg = m_segments[ptr];
        if (pos < base || pos - base >= seg.size())
            throw std::logic_error("rlcsa: row outside its explicit segment");
        return seg[pos - base];
    }

    // one descent for rows [s..t]; t-s+1 <= m_chunk and the range does not
    // cross a top-block boundary.
    void extract_chunk(u64 s, u64 t, std::vector<u64>& out) const {
        u64 d_sum = 0;
        u64 j = (s - 1) / m_b0;
        const auto& top = m_lt[j];
        if (!top.valid()) throw std::logic_error("rlcsa: missing top block");
        d_sum += top.d;
        u64 pos = top.x + (s - (j * m_b0 + 1));
        u64 ptr = top.ptr;
        const u64 len = t - s + 1;
        for (std::size_t k = 0; k < m_h.size(); ++k) {
            u64 s_row;
            const rlcsa_record& rec = pick_block(k, ptr, pos, s_row);
            d_sum += rec.d;
            pos = rec.x + (pos - s_row);
            ptr = rec.ptr;
        }
        u64 lambda = m_run_starts[ptr];
        u64 base = lambda > m_radius ? lambda - m_radius : 1;
        const auto& seg = m_segments[ptr];
        if (pos < base || pos - base + len > seg.size())
            throw std::logic_error("rlcsa: chunk outside its explicit segment");
        for (u64 q = 0; q < len; ++q) out.push_back(seg[pos - base + q] + d_sum);
    }
};

}  // namespace rlidx
