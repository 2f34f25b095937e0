#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rlbwt.hpp"
#include "tau_index.hpp"

namespace rlidx {

namespace sr_detail {

// rows of one string grouped by the name of their tau-symbol left context.
// answers: how many rows carry a smaller name; how many rows <= i carry name w.
struct name_table {
    std::vector<u64> m_cum;  // per name: rows with strictly smaller name (size names+1)
    std::vector<std::vector<std::array<u64, 3>>> m_runs;  // per name: (start, len, before)

    name_table(u64 names, const tau_runs& tr, const std::vector<u64>& name_of, u64 n) {
        m_runs.resize(names);
        std::vector<u64> total(names, 0);
        for (u64 k = 0; k < tr.count(); ++k) {
            u64 len = (k + 1 < tr.count() ? tr.m_rows[k + 1] : n + 1) - tr.m_rows[k];
            u64 w = name_of[k];
            m_runs[w].push_back({tr.m_rows[k], len, total[w]});
            total[w] += len;
        }
        m_cum.assign(names + 1, 0);
        for (u64 w = 0; w < names; ++w) m_cum[w + 1] = m_cum[w] + total[w];
    }

    u64 smaller(u64 name) const { return m_cum[name]; }

    u64 count_upto(u64 name, u64 i) const {  // rows q <= i with this name
        const auto& rs = m_runs[name];
        auto it = std::upper_bound(rs.begin(), rs.end(), i,
                                   [](u64 v, const std::array<u64, 3>& r) { return v < r[0]; });
        if (it == rs.begin()) return 0;
        --it;
        return (*it)[2] + std::min((*it)[1], i - (*it)[0] + 1);
    }
};

}  // namespace sr_detail

// one direction of the cross-string suffix ranking: for a row of S's bwt,
// count the suffixes of the other string T that sort strictly below it.
// preconditions: both strings end with a symbol unique within themselves and
// absent from the other string (so cross comparisons never tie).
struct suffix_rank_dir {
    const rlbwt* m_bwt_s = nullptr;
    const rank_select_support* m_rs_s = nullptr;
    const rank_select_support* m_rs_t = nullptr;
    u64 m_tau = 0;
    std::vector<std::pair<u64, u64>> m_pairs;  // (S row, rank among T suffixes), sorted by row

    // rank of the suffix at row `i` of S among the suffixes of T, in [0, |T|].
    u64 query(u64 i) const {
        if (i < 1 || i > m_bwt_s->size()) throw std::out_of_range("suffix rank: row out of range");
        std::vector<u64> visited{i};
        u64 cur = i;
        for (u64 step = 0;; ++step) {
            auto it = std::lower_bound(m_pairs.begin(), m_pairs.end(),
                                       std::make_pair(cur, u64(0)));
            if (it != m_pairs.end() && it->first == cur) {
                u64 rank = it->second;
                for (u64 t = step; t >= 1; --t) {
                    u64 c = m_bwt_s->bwt_at(visited[t]);
                    rank = m_rs_t->count_smaller(c) + m_rs_t->rank(c, rank);
                }
                return rank;
            }
            if (step >= m_tau) throw std::logic_error("suffix rank: walk found no sampled row");
            cur = m_rs_s->psi(cur);
            visited.push_back(cur);
        }
    }
};

// both directions at once; the tau-block naming is shared. tau trades
// construction cost (pairs every tau positions, contexts of length tau)
// against query cost (up to tau-1 steps each way).
struct suffix_rank_pair {
    u64 m_tau = 0;
    suffix_rank_dir m_fwd;  // S suffixes ranked among T
    suffix_rank_dir m_rev;  // T suffixes ranked among S

    // last_s / last_t: the final symbols of the two strings (an rlbwt does not
    // reveal which symbol ends the string, and the anchor pair needs it).
    static suffix_rank_pair build(const rlbwt& s, const rank_select_support& rs_s, const rlbwt& t,
                                  const rank_select_support& rs_t, u64 tau, u64 last_s,
                                  u64 last_t) {
        if (tau == 0) throw std::invalid_argument("tau must be positive");
        suffix_rank_pair out;
        out.m_tau = tau;

        tau_runs tr_s = tau_runs::build(s, rs_s, tau, true);
        tau_runs tr_t = tau_runs::build(t, rs_t, tau, true);

        // joint order-preserving names for the left contexts of both strings.
        const u64 ns = tr_s.count(), nt = tr_t.count();
        std::vector<u64> idx(ns + nt);
        for (u64 i = 0; i < idx.size(); ++i) idx[i] = i;
        auto win = [&](u64 i) { return i < ns ? tr_s.window(i) : tr_t.window(i - ns); };
        std::sort(idx.begin(), idx.end(), [&](u64 a, u64 b) {
            auto wa = win(a), wb = win(b);
            return std::lexicographical_compare(wa.begin(), wa.end(), wb.begin(), wb.end());
        });
        std::vector<u64> name_s(ns), name_t(nt);
        u64 names = 0;
        for (u64 i = 0; i < idx.size(); ++i) {
            if (i > 0) {
                auto wp = win(idx[i - 1]), wc = win(idx[i]);
                if (!std::equal(wp.begin(), wp.end(), wc.begin())) ++names;
            }
            (idx[i] < ns ? name_s[idx[i]] : name_t[idx[i] - ns]) = names;
        }
        ++names;

        sr_detail::name_table table_s(names, tr_s, name_s, s.size());
        sr_detail::name_table table_t(names, tr_t, name_t, t.size());

        // sampled pairs every tau text positions, walked from the shortest
        // suffix: one tau-context extension per step, mirrored on the other
        // string through the shared names.
        auto walk = [&](const rlbwt& self, const rank_select_support& rs_self,
                        const rank_select_support& rs_other, const tau_runs& tr_self,
                        const std::vector<u64>& names_self, const sr_detail::name_table& tab_other,
                        u64 last_self) {
            std::vector<std::pair<u64, u64>> pairs;
            u64 row = rs_self.count_smaller(last_self) + 1;
            u64 rank = rs_other.count_smaller(last_self);
            pairs.emplace_back(row, rank);
            for (u64 j = self.size(); j > tau; j -= tau) {
                u64 w = names_self[tr_self.block_of(row)];
                rank = tab_other.smaller(w) + tab_other.count_upto(w, rank);
                row = tr_self.lf_tau(row);
                pairs.emplace_back(row, rank);
            }
            std::sort(pairs.begin(), pairs.end());
            return pairs;
        };

        out.m_fwd = {&s, &rs_s, &rs_t, tau, walk(s, rs_s, rs_t, tr_s, name_s, table_t, last_s)};
        out.m_rev = {&t, &rs_t, &rs_s, tau, walk(t, rs_t, rs_s, tr_t, name_t, table_s, last_t)};
        return out;
    }
};

// single-direction convenience wrapper. when last symbols are not supplied,
// the smallest symbol present in each string is assumed to be its unique
// terminator (the usual sentinel convention).
struct suffix_rank_support {
    suffix_rank_pair m_pair;

    static suffix_rank_support build(const rlbwt& s, const rank_select_support& rs_s,
                                     const rlbwt& t, const rank_select_support& rs_t, u64 tau = 0,
                                     u64 last_s = ~u64(0), u64 last_t = ~u64(0)) {
        if (tau == 0) tau = default_tau(s.size(), s.runs() + t.runs());
        if (last_s == ~u64(0)) last_s = rs_s.m_distinct.front();
        if (last_t == ~u64(0)) last_t = rs_t.m_distinct.front();
        return {suffix_rank_pair::build(s, rs_s, t, rs_t, tau, last_s, last_t)};
    }

    u64 query(u64 row) const { return m_pair.m_fwd.query(row); }
};

}  // namespace rlidx
