#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "io_util.hpp"
#include "plcp.hpp"
#include "rlbwt.hpp"
#include "rlcsa.hpp"
#include "sa_isa.hpp"

namespace rlidx {

// next/previous smaller SA value per lex row. the SA grid is cut into
// fixed-size blocks; a block not touching a run boundary equals (shifted by
// its LF-distance) a slice of the SA window around the run start its image
// hits, so explicit values are only kept for the r windows. a min segment
// tree over block minima steers directional queries.
struct nsv_psv_support {
    const rlbwt* m_bwt = nullptr;
    const sa_isa_support* m_sa = nullptr;
    u64 m_tau = 0;
    std::vector<u64> m_min_val;  // per block: minimum SA value
    std::vector<u64> m_min_row;  // per block: row holding it
    std::vector<u64> m_tree;
    u64 m_leaves = 0;

    static nsv_psv_support build(const rlbwt& b, const rank_select_support& rs,
                                 const sa_isa_support& sa, const lf_shortcut_engine* eng,
                                 u64 tau, bool dense = false) {
        if (tau == 0) throw std::invalid_argument("nsv/psv: tau must be positive");
        (void)rs;
        nsv_psv_support s;
        s.m_bwt = &b;
        s.m_sa = &sa;
        s.m_tau = tau;
        const u64 n = b.size();
        const u64 blocks = (n + tau - 1) / tau;
        s.m_min_val.assign(blocks, ~u64(0));
        s.m_min_row.assign(blocks, 0);

        std::vector<std::vector<u64>> win(b.runs());
        auto window = [&](u64 run) -> const std::vector<u64>& {
            auto& w = win[run];
            if (w.empty()) {
                u64 lam = b.run_start(run);
                u64 base = lam > tau - 1 ? lam - (tau - 1) : 1;
                u64 end = std::min(n, lam + tau - 1);
                w.reserve(end - base + 1);
                for (u64 row = base; row <= end; ++row) w.push_back(sa.sa(row));
            }
            return w;
        };

        const auto& starts = b.m_starts;
        for (u64 j = 0; j < blocks; ++j) {
            u64 lo = j * tau + 1, hi = std::min(n, lo + tau - 1);
            auto it = std::lower_bound(starts.begin(), starts.end(), lo);
            bool boundary = it != starts.end() && *it <= hi;
            u64 best = ~u64(0), best_row = 0;
            if (dense || !eng || boundary) {
                for (u64 row = lo; row <= hi; ++row) {
                    u64 v = sa.sa(row);
                    if (v < best) best = v, best_row = row;
                }
            } else {
                auto sc = eng->compute(lo, hi);
                u64 lam = b.run_start(sc.ptr);
                u64 base = lam > tau - 1 ? lam - (tau - 1) : 1;
                const auto& w = window(sc.ptr);
                for (u64 o = 0; o <= hi - lo; ++o) {
                    u64 img = sc.x + o;
                    if (img < base || img - base >= w.size())
                        throw std::logic_error("nsv/psv: image outside the shared window");
                    u64 v = w[img - base] + sc.d;
                    if (v < best) best = v, best_row = lo + o;
                }
            }
            s.m_min_val[j] = best;
            s.m_min_row[j] = best_row;
        }

        s.m_leaves = 1;
        while (s.m_leaves < blocks) s.m_leaves *= 2;
        s.m_tree.assign(2 * s.m_leaves, ~u64(0));
        for (u64 j = 0; j < blocks; ++j) s.m_tree[s.m_leaves + j] = s.m_min_val[j];
        for (u64 v = s.m_leaves - 1; v >= 1; --v)
            s.m_tree[v] = std::min(s.m_tree[2 * v], s.m_tree[2 * v + 1]);
        return s;
    }

    // nearest row after i with a smaller SA value, 0 when none.
    u64 nsv(u64 i) const {
        const u64 n = m_bwt->size();
        if (i < 1 || i > n) throw std::out_of_range("nsv: row out of range");
        u64 v = m_sa->sa(i);
        u64 jb = (i - 1) / m_tau;
        u64 hi = std::min(n, (jb + 1) * m_tau);
        for (u64 row = i + 1; row <= hi; ++row)
            if (m_sa->sa(row) < v) return row;
        u64 j = first_below(1, 0, m_leaves, jb + 1, v);
        if (j == ~u64(0)) return 0;
        for (u64 row = j * m_tau + 1; row <= std::min(n, (j + 1) * m_tau); ++row)
            if (m_sa->sa(row) < v) return row;
        throw std::logic_error("nsv: block minimum lied");
    }

    // nearest row before i with a smaller SA value, 0 when none.
    u64 psv(u64 i) const {
        const u64 n = m_bwt->size();
        if (i < 1 || i > n) throw std::out_of_range("psv: row out of range");
        u64 v = m_sa->sa(i);
        u64 jb = (i - 1) / m_tau;
        for (u64 row = i - 1; row >= jb * m_tau + 1; --row)
            if (m_sa->sa(row) < v) return row;
        if (jb == 0) return 0;
        u64 j = last_below(1, 0, m_leaves, jb, v);
        if (j == ~u64(0)) return 0;
        for (u64 row = std::min(n, (j + 1) * m_tau); row >= j * m_tau + 1; --row)
            if (m_sa->sa(row) < v) return row;
        throw std::logic_error("psv: block minimum lied");
    }

   private:
    // leftmost block index >= lo with min < v.
    u64 first_below(u64 node, u64 nlo, u64 nhi, u64 lo, u64 v) const {
        if (nhi <= lo || m_tree[node] >= v) return ~u64(0);
        if (node >= m_leaves) return node - m_leaves;
        u64 mid = (nlo + nhi) / 2;
        u64 left = first_below(2 * node, nlo, mid, lo, v);
        if (left != ~u64(0)) return left;
        return first_below(2 * node + 1, mid, nhi, lo, v);
    }

    // rightmost block index < hi with min < v.
    u64 last_below(u64 node, u64 nlo, u64 nhi, u64 hi, u64 v) const {
        if (nlo >= hi || m_tree[node] >= v) return ~u64(0);
        if (node >= m_leaves) return node - m_leaves;
        u64 mid = (nlo + nhi) / 2;
        u64 right = last_below(2 * node + 1, mid, nhi, hi, v);
        if (right != ~u64(0)) return right;
        return last_below(2 * node, nlo, mid, hi, v);
    }
};

struct lz_phrase {
    bool literal;
    u64 a;  // literal: symbol code. copy: source position (1-based)
    u64 b;  // literal: 0. copy: length
    bool operator==(const lz_phrase&) const = default;
};

struct lz_parsing {
    std::vector<lz_phrase> phrases;
    u64 n = 0;  // decoded length

    std::vector<u64> decode() const {
        std::vector<u64> out;
        out.reserve(n);
        for (const auto& p : phrases) {
            if (p.literal) {
                out.push_back(p.a);
            } else {
                if (p.a == 0 || p.a > out.size()) throw std::invalid_argument("lz: bad source");
                for (u64 t = 0; t < p.b; ++t) out.push_back(out[p.a - 1 + t]);
            }
        }
        if (out.size() != n) throw std::invalid_argument("lz: length mismatch");
        return out;
    }

    std::string serialize() const {
        std::string out = "LZ77";
        put_u64(out, phrases.size());
        for (const auto& p : phrases) {
            out.push_back(p.literal ? 'L' : 'C');
            put_u64(out, p.a);
            put_u64(out, p.b);
        }
        return out;
    }

    static lz_parsing deserialize(const std::string& data) {
        byte_reader rd(data);
        rd.get_magic("LZ77");
        lz_parsing out;
        u64 z = rd.get_u64();
        out.phrases.reserve(z);
        for (u64 k = 0; k < z; ++k) {
            u8 tag = rd.get_u8();
            if (tag != 'L' && tag != 'C') throw std::runtime_error("lz: bad phrase tag");
            u64 a = rd.get_u64(), b = rd.get_u64();
            out.phrases.push_back({tag == 'L', a, b});
            out.n += tag == 'L' ? 1 : b;
        }
        if (!rd.done()) throw std::runtime_error("lz: trailing bytes");
        return out;
    }
};

// greedy left-to-right parse of the payload (the text minus its sentinel).
// at each phrase start, the nearest smaller SA values on both sides of the
// suffix's row give the candidate previous occurrences; the longer extension
// wins, previous-side on ties, literal when both are empty.
inline lz_parsing lz77_parse(const rlbwt& b, const rank_select_support& rs,
                             const sa_isa_support& sa, const lce_support& lce,
                             const nsv_psv_support& np) {
    const u64 n = b.size();
    lz_parsing out;
    out.n = n - 1;
    u64 j = 1;
    while (j + 1 <= n) {
        u64 i = sa.isa(j);
        u64 rn = np.nsv(i), rp = np.psv(i);
        u64 ln = 0, pn = 0, lp = 0, pp = 0;
        if (rn) {
            pn = sa.sa(rn);
            ln = lce.lce(pn, j);
        }
        if (rp) {
            pp = sa.sa(rp);
            lp = lce.lce(pp, j);
        }
        if (ln > lp) {
            out.phrases.push_back({false, pn, ln});
            j += ln;
        } else if (lp > 0) {
            out.phrases.push_back({false, pp, lp});
            j += lp;
        } else {
            out.phrases.push_back({true, b.bwt_at(rs.psi(i)), 0});
            j += 1;
        }
    }
    return out;
}

}  // namespace rlidx
