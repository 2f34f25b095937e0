#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "io_util.hpp"
#include "rlbwt.hpp"
#include "sa_isa.hpp"
#include "tau_index.hpp"

namespace rlidx {

// longest-common-extension queries between two suffixes. blocks of tau
// consecutive bwt rows sharing a tau-symbol left context get equality
// names; an lce query first extends in tau-symbol chunks by comparing the
// names of the blocks holding the rows just past the matched prefix, then
// resolves the final chunk symbol by symbol with psi steps.
struct lce_support {
    const rlbwt* m_bwt = nullptr;
    const rank_select_support* m_rs = nullptr;
    const sa_isa_support* m_sa = nullptr;
    u64 m_tau = 0;
    std::vector<u64> m_block_rows;
    std::vector<u64> m_names;

    static lce_support build(const rlbwt& b, const rank_select_support& rs,
                             const sa_isa_support& sa, u64 tau) {
        if (tau == 0) throw std::invalid_argument("tau must be positive");
        lce_support s;
        s.m_bwt = &b;
        s.m_rs = &rs;
        s.m_sa = &sa;
        s.m_tau = tau;
        tau_runs blocks = tau_runs::build(b, rs, tau, true);
        const u64 cnt = blocks.count();
        std::vector<u64> order(cnt);
        for (u64 k = 0; k < cnt; ++k) order[k] = k;
        std::sort(order.begin(), order.end(), [&](u64 a, u64 c) {
            auto wa = blocks.window(a), wc = blocks.window(c);
            return std::lexicographical_compare(wa.begin(), wa.end(), wc.begin(), wc.end());
        });
        s.m_names.assign(cnt, 0);
        u64 name = 0;
        for (u64 k = 0; k < cnt; ++k) {
            if (k > 0) {
                auto prev = blocks.window(order[k - 1]), cur = blocks.window(order[k]);
                if (!std::equal(prev.begin(), prev.end(), cur.begin(), cur.end())) ++name;
            }
            s.m_names[order[k]] = name;
        }
        s.m_block_rows = std::move(blocks.m_rows);
        return s;
    }

    u64 name_of(u64 row) const {
        u64 k = std::upper_bound(m_block_rows.begin(), m_block_rows.end(), row) -
                m_block_rows.begin();
        return m_names[k - 1];
    }

    // length of the longest common prefix of the suffixes starting at j1 and j2.
    u64 lce(u64 j1, u64 j2) const {
        const u64 n = m_bwt->size();
        if (j1 < 1 || j1 > n || j2 < 1 || j2 > n) throw std::out_of_range("lce: position out of range");
        if (j1 == j2) return n - j1 + 1;
        const u64 cap = n - std::max(j1, j2) + 1;  // true lce is below cap
        u64 l = 0;
        while (l + m_tau + 1 <= cap) {
            u64 r1 = m_sa->isa(j1 + l + m_tau);
            u64 r2 = m_sa->isa(j2 + l + m_tau);
            if (name_of(r1) != name_of(r2)) break;
            l += m_tau;
        }
        u64 x1 = m_sa->isa(j1 + l);
        u64 x2 = m_sa->isa(j2 + l);
        for (u64 guard = 0; guard <= m_tau; ++guard) {
            u64 p1 = m_rs->psi(x1);
            u64 p2 = m_rs->psi(x2);
            if (m_bwt->bwt_at(p1) != m_bwt->bwt_at(p2)) return l;
            ++l;
            x1 = p1;
            x2 = p2;
        }
        throw std::logic_error("lce: symbol phase exceeded tau steps");
    }
};

// permuted lcp array in 2n bits: bit 2j + plcp[j] is set for every text
// position j (1-based bits). values decode as select1(j) - 2j; between two
// irreducible positions plcp drops by exactly one per step, which is what
// makes the bit positions strictly increasing.
struct plcp_succ {
    u64 m_n = 0;
    std::vector<u64> m_words;
    std::vector<u64> m_cum;  // ones strictly before each word

    // irreducible: (text position, plcp value) sorted by position; must
    // include position 1 and every position where the value does not
    // continue the previous value minus one.
    static plcp_succ build(u64 n, const std::vector<std::pair<u64, u64>>& irreducible) {
        plcp_succ p;
        p.m_n = n;
        p.m_words.assign((2 * n + 63) / 64, 0);
        std::size_t at = 0;
        u64 val = 0;
        for (u64 j = 1; j <= n; ++j) {
            if (at < irreducible.size() && irreducible[at].first == j) {
                val = irreducible[at].second;
                ++at;
            } else {
                if (j == 1 || val == 0) throw std::logic_error("plcp: missing irreducible value");
                --val;
            }
            u64 bit = 2 * j + val;
            if (bit > 2 * n) throw std::logic_error("plcp: bit position out of range");
            p.m_words[(bit - 1) / 64] |= u64(1) << ((bit - 1) % 64);
        }
        if (at != irreducible.size()) throw std::logic_error("plcp: unused irreducible entry");
        p.finish();
        return p;
    }

    void finish() {
        m_cum.assign(m_words.size() + 1, 0);
        for (std::size_t w = 0; w < m_words.size(); ++w)
            m_cum[w + 1] = m_cum[w] + std::popcount(m_words[w]);
        if (m_cum.back() != m_n) throw std::invalid_argument("plcp: expected one bit per position");
    }

    // position of the k-th set bit, 1-based on both sides.
    u64 select1(u64 k) const {
        if (k < 1 || k > m_n) throw std::out_of_range("plcp: select out of range");
        u64 lo = 0, hi = m_words.size();  // last word with cum < k
        while (lo + 1 < hi) {
            u64 mid = (lo + hi) / 2;
            if (m_cum[mid] < k) lo = mid; else hi = mid;
        }
        u64 rest = k - m_cum[lo];
        u64 w = m_words[lo];
        for (u64 b = 0;; ++b) {
            if (w & (u64(1) << b)) {
                if (--rest == 0) return lo * 64 + b + 1;
            }
        }
    }

    u64 decode(u64 j) const { return select1(j) - 2 * j; }

    std::string serialize() const {
        std::string out = "PLCP1";
        put_u64(out, m_n);
        u64 bytes = (2 * m_n + 7) / 8;
        for (u64 i = 0; i < bytes; ++i)
            out.push_back(char((m_words[i / 8] >> (8 * (i % 8))) & 0xff));
        return out;
    }

    static plcp_succ deserialize(const std::string& data) {
        byte_reader rd(data);
        rd.get_magic("PLCP1");
        plcp_succ p;
        p.m_n = rd.get_u64();
        u64 bytes = (2 * p.m_n + 7) / 8;
        p.m_words.assign((2 * p.m_n + 63) / 64, 0);
        for (u64 i = 0; i < bytes; ++i)
            p.m_words[i / 8] |= u64(rd.get_u8()) << (8 * (i % 8));
        if (!rd.done()) throw std::runtime_error("trailing bytes after plcp payload");
        p.finish();
        return p;
    }
};

// plcp values at run starts of the bwt do not continue the previous text
// position's value, so they are exactly the entries plcp_succ::build needs.
inline std::vector<std::pair<u64, u64>> irreducible_lcp(const rlbwt& b, const sa_isa_support& sa,
                                                        const lce_support& lce) {
    std::vector<std::pair<u64, u64>> out;
    out.reserve(b.runs());
    for (u64 k = 0; k < b.runs(); ++k) {
        u64 row = b.run_start(k);
        u64 pos = sa.sa(row);
        u64 val = row == 1 ? 0 : lce.lce(sa.sa(row - 1), pos);
        out.emplace_back(pos, val);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct plcp_result {
    std::vector<std::pair<u64, u64>> irreducible;
    plcp_succ succ;
};

inline plcp_result build_plcp(const rlbwt& b, const sa_isa_support& sa, const lce_support& lce) {
    plcp_result res;
    res.irreducible = irreducible_lcp(b, sa, lce);
    res.succ = plcp_succ::build(b.size(), res.irreducible);
    return res;
}

}  // namespace rlidx
