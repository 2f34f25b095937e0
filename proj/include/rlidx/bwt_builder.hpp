#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "packed_text.hpp"
#include "rlbwt.hpp"
#include "sais.hpp"
#include "suffix_rank.hpp"
#include "tau_index.hpp"

// bwt construction whose cost tracks the run count: sort a strided supersymbol
// text once, then repeatedly halve the stride, each round deriving the
// even-shifted bwt from the odd one and merging the two, all in run-length
// form. the text is padded with unique sentinels so every intermediate string
// ends in a symbol of its own, which keeps suffix order equal to rotation
// order throughout.
namespace rlidx {

namespace builder_detail {

// run list builder that merges adjacent equal symbols.
struct rle_builder {
    std::vector<u64> starts, syms;
    u64 next_row = 1;
    void append(u64 sym, u64 len) {
        if (len == 0) return;
        if (syms.empty() || syms.back() != sym) {
            starts.push_back(next_row);
            syms.push_back(sym);
        }
        next_row += len;
    }
};

// plain run list over rows 1..n (same layout as rlbwt, fewer invariants).
struct run_list {
    u64 n = 0;
    std::vector<u64> starts, syms;

    u64 runs() const { return starts.size(); }
    u64 run_end(u64 k) const { return k + 1 < starts.size() ? starts[k + 1] - 1 : n; }
    u64 run_of(u64 i) const {
        return u64(std::upper_bound(starts.begin(), starts.end(), i) - starts.begin()) - 1;
    }
};

// project each bwt symbol to its low half; adjacent runs may coalesce.
inline run_list minor_projection(const rlbwt& b, u64 dom) {
    run_list out;
    out.n = b.size();
    for (u64 k = 0; k < b.runs(); ++k) {
        u64 m = b.run_sym(k) % dom;
        if (out.syms.empty() || out.syms.back() != m) {
            out.starts.push_back(b.run_start(k));
            out.syms.push_back(m);
        }
    }
    return out;
}

}  // namespace builder_detail

// bwt of the even-shifted pair string, derived from the odd one. rows of the
// even string are the odd rows stably re-sorted by the low half of their bwt
// symbol; the new bwt symbols read off the LF images of the old runs.
inline rlbwt induce_even(const rlbwt& odd, const rank_select_support& rs, u64 dom) {
    using namespace builder_detail;
    const u64 n = odd.size();
    run_list minor = minor_projection(odd, dom);

    std::vector<u64> order(odd.runs());
    for (u64 k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](u64 a, u64 b) {
        u64 ma = odd.run_sym(a) % dom, mb = odd.run_sym(b) % dom;
        if (ma != mb) return ma < mb;
        return odd.run_start(a) < odd.run_start(b);
    });

    rle_builder out;
    for (u64 k : order) {
        u64 lo = rs.lf(odd.run_start(k));
        u64 hi = lo + (odd.run_len(k) - 1);
        u64 major_here = odd.run_sym(k) / dom;
        u64 j = minor.run_of(lo);
        for (u64 pos = lo; pos <= hi;) {
            u64 chunk_end = std::min(hi, minor.run_end(j));
            out.append(minor.syms[j] * dom + major_here, chunk_end - pos + 1);
            pos = chunk_end + 1;
            ++j;
        }
    }
    return rlbwt(n, odd.sigma(), std::move(out.starts), std::move(out.syms));
}

// interleave the odd and even row sets into the bwt of the half-stride text.
// each step either consumes a whole run on one side or closes an output run,
// with at most two cross-rank queries, so the work is proportional to the run
// counts rather than the text length.
inline rlbwt merge_odd_even(const builder_detail::run_list& mo, const builder_detail::run_list& me,
                            const suffix_rank_pair& sr, u64 dom) {
    using namespace builder_detail;
    const u64 n = mo.n;
    auto ro = [&](u64 x) { return sr.m_fwd.query(x); };  // even suffixes below odd row x
    auto re = [&](u64 y) { return sr.m_rev.query(y); };  // odd suffixes below even row y

    rle_builder out;
    u64 ao = 1, ae = 1, io = 0, ie = 0;
    auto copy_side = [&](const run_list& m, u64& a, u64& i, u64 upto) {
        while (a <= upto) {
            u64 end = std::min(upto, m.run_end(i));
            out.append(m.syms[i], end - a + 1);
            if (end == m.run_end(i)) ++i;
            a = end + 1;
        }
    };

    while (ao <= n && ae <= n) {
        u64 co = mo.syms[io], eo = mo.run_end(io);
        u64 ce = me.syms[ie], ee = me.run_end(ie);
        if (co == ce) {
            u64 x = ro(eo);
            if (x >= ee) {
                u64 y = re(ee);
                out.append(co, (ee - ae + 1) + (y - ao + 1));
                ae = ee + 1, ++ie;
                ao = y + 1;
            } else {
                out.append(co, (eo - ao + 1) + (x - ae + 1));
                ao = eo + 1, ++io;
                ae = x + 1;
            }
        } else {
            u64 boundary = ro(ao);
            if (boundary >= ae)
                copy_side(me, ae, ie, boundary);
            else
                copy_side(mo, ao, io, re(ae));
        }
    }
    if (ao <= n) copy_side(mo, ao, io, n);
    if (ae <= n) copy_side(me, ae, ie, n);
    return rlbwt(2 * n, dom, std::move(out.starts), std::move(out.syms));
}

struct build_stats {
    u64 pad = 0;
    u64 levels = 0;                       // number of halving rounds
    std::vector<u64> round_n, round_r;    // per stage, coarsest first
    std::vector<u64> round_tau;           // per merge round
};

struct builder_options {
    std::optional<u64> tau;       // merge context depth override
    bool validate_rounds = false;  // cross-check each stage against the naive tables (small texts)
};

struct build_result {
    packed_text text;   // single-sentinel code space: 0 terminator, 1.. payload ranks
    rlbwt bwt;          // bwt over that code space
    build_stats stats;
};

namespace builder_detail {

inline u64 fold(const packed_text& t, u64 from, u64 width) {
    u64 v = 0;
    for (u64 j = 0; j < width; ++j) v = v * t.sigma() + t.code(from + j);
    return v;
}

inline bool pow_at_most(u64 base, u64 exp, u64 limit) {
    u64 v = 1;
    for (u64 i = 0; i < exp; ++i) {
        if (v > limit / base) return false;
        v *= base;
    }
    return v <= limit;
}

}  // namespace builder_detail

inline build_result build_bwt(std::span<const u64> payload, builder_options opt = {}) {
    using namespace builder_detail;
    if (payload.empty()) throw std::invalid_argument("empty text");
    const u64 m = payload.size();

    std::vector<u64> alpha(payload.begin(), payload.end());
    std::sort(alpha.begin(), alpha.end());
    alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
    const u64 a = alpha.size();

    // deepest stride 2^k such that the supersymbols both fit a word and stay
    // within the text length (so the base sort's alphabet is no larger than n).
    u64 k = 0;
    for (u64 try_k = 1; try_k < 16; ++try_k) {
        u64 w = u64(1) << try_k;
        u64 pad = w + ((w - m % w) % w);
        u64 sigma = a + pad, n = m + pad;
        if (u64(std::bit_width(sigma - 1)) * w > 63) break;
        if (!pow_at_most(sigma, w, n)) break;
        k = try_k;
    }
    const u64 width = u64(1) << k;
    const u64 pad = width + ((width - m % width) % width);

    build_result res{packed_text::from_symbols(payload, 1), rlbwt(), {}};
    res.stats.pad = pad;
    res.stats.levels = k;

    packed_text padded = packed_text::from_symbols(payload, pad);
    const u64 n = padded.size();
    const u64 sigma = padded.sigma();

    auto validate_stage = [&](const rlbwt& b, u64 stride) {
        if (!opt.validate_rounds) return;
        super_text st = super_text::regroup(padded, stride);
        auto codes = st.codes();
        auto sa = suffix_sort(codes);
        std::vector<u64> bwt(sa.size());
        for (u64 i = 0; i < sa.size(); ++i)
            bwt[i] = codes[(sa[i] + codes.size() - 2) % codes.size()];
        if (b.expand() != bwt) throw std::logic_error("stage bwt mismatch");
    };

    // base: sort the coarsest supersymbol text directly.
    rlbwt cur;
    {
        super_text st = super_text::regroup(padded, width);
        auto codes = st.codes();
        auto sa = suffix_sort(codes);
        std::vector<u64> bwt(sa.size());
        for (u64 i = 0; i < sa.size(); ++i)
            bwt[i] = codes[(sa[i] + codes.size() - 2) % codes.size()];
        cur = rlbwt::from_bwt(bwt, st.domain());
        res.stats.round_n.push_back(st.size());
        res.stats.round_r.push_back(cur.runs());
    }

    // halving rounds: stride 2^(i+1) -> 2^i.
    for (u64 i = k; i-- > 0;) {
        const u64 half = u64(1) << i;
        u64 dom = 1;
        for (u64 j = 0; j < half; ++j) dom *= sigma;
        const u64 len = cur.size();

        rank_select_support rs_odd(cur);
        rlbwt even = induce_even(cur, rs_odd, dom);
        rank_select_support rs_even(even);

        u64 tau = opt.tau ? *opt.tau : default_tau(len, cur.runs() + even.runs());
        u64 last_odd = fold(padded, n - 2 * half + 1, 2 * half);
        u64 last_even = fold(padded, n - half + 1, half) * dom + fold(padded, 1, half);
        suffix_rank_pair sr =
            suffix_rank_pair::build(cur, rs_odd, even, rs_even, tau, last_odd, last_even);

        run_list mo = minor_projection(cur, dom);
        run_list me = minor_projection(even, dom);
        cur = merge_odd_even(mo, me, sr, dom);

        res.stats.round_n.push_back(cur.size());
        res.stats.round_r.push_back(cur.runs());
        res.stats.round_tau.push_back(tau);
        validate_stage(cur, half);
    }

    // strip the extra sentinels: their suffixes occupy rows 1..pad, and rows
    // 2..pad carry the bwt occurrences of all sentinels except the largest,
    // which becomes the single terminator.
    {
        rle_builder out;
        auto remap = [&](u64 c) {
            if (c == pad - 1) return u64(0);
            if (c < pad - 1) throw std::logic_error("unexpected sentinel in stripped bwt");
            return c - (pad - 1);
        };
        out.append(remap(cur.bwt_at(1)), 1);
        for (u64 kk = 0; kk < cur.runs(); ++kk) {
            u64 b = std::max(cur.run_start(kk), pad + 1), e = cur.run_end(kk);
            if (b > e) continue;
            out.append(remap(cur.run_sym(kk)), e - b + 1);
        }
        res.bwt = rlbwt(n - pad + 1, a + 1, std::move(out.starts), std::move(out.syms));
    }
    return res;
}

inline build_result build_bwt_bytes(std::string_view payload, builder_options opt = {}) {
    std::vector<u64> symbols(payload.size());
    for (std::size_t i = 0; i < payload.size(); ++i) symbols[i] = u8(payload[i]);
    return build_bwt(symbols, opt);
}

}  // namespace rlidx
