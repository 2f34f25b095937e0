#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rlbwt.hpp"
#include "tau_index.hpp"

namespace rlidx {

// SA/ISA access over an rlbwt of a text ending in a unique smallest symbol.
// text positions n, n-tau, n-2tau, ... carry sampled (row, position) pairs,
// laid down with tau-fold LF jumps; queries walk at most tau-1 single LF
// steps. the row holding the terminator's bwt occurrence doubles as an
// implicit sample for position 1, which catches walks that would otherwise
// run past the front of the text.
struct sa_isa_support {
    const rlbwt* m_bwt = nullptr;
    const rank_select_support* m_rs = nullptr;
    u64 m_tau = 0;
    std::vector<std::pair<u64, u64>> m_pairs_by_row;  // (row, text position)
    std::vector<u64> m_pos_rows;                      // row of position n - k*tau, by k
    u64 m_terminator_row = 0;                         // row of the suffix at position 1

    static sa_isa_support build(const rlbwt& b, const rank_select_support& rs, u64 tau) {
        if (tau == 0) throw std::invalid_argument("tau must be positive");
        if (rs.m_total.front() != 1)
            throw std::invalid_argument("text must end with a unique smallest symbol");
        sa_isa_support s;
        s.m_bwt = &b;
        s.m_rs = &rs;
        s.m_tau = tau;
        s.m_terminator_row = rs.select(rs.m_distinct.front(), 1);

        tau_runs blocks = tau_runs::build(b, rs, tau, false);
        u64 row = 1;  // the terminator suffix sorts first, so row 1 holds position n
        u64 pos = b.size();
        s.m_pairs_by_row.emplace_back(row, pos);
        s.m_pos_rows.push_back(row);
        while (pos > tau) {
            row = blocks.lf_tau(row);
            pos -= tau;
            s.m_pairs_by_row.emplace_back(row, pos);
            s.m_pos_rows.push_back(row);
        }
        std::sort(s.m_pairs_by_row.begin(), s.m_pairs_by_row.end());
        return s;
    }

    u64 size() const { return m_bwt->size(); }

    struct walk_result {
        u64 value;
        u64 steps;
    };

    walk_result sa_ex(u64 i) const {
        if (i < 1 || i > size()) throw std::out_of_range("sa: row out of range");
        u64 cur = i;
        for (u64 step = 0; step < m_tau; ++step) {
            if (cur == m_terminator_row) return {1 + step, step};
            auto it = std::lower_bound(m_pairs_by_row.begin(), m_pairs_by_row.end(),
                                       std::make_pair(cur, u64(0)));
            if (it != m_pairs_by_row.end() && it->first == cur) return {it->second + step, step};
            cur = m_rs->lf(cur);
        }
        throw std::logic_error("sa: walk exceeded tau steps");
    }

    walk_result isa_ex(u64 j) const {
        const u64 n = size();
        if (j < 1 || j > n) throw std::out_of_range("isa: position out of range");
        u64 k = (n - j) / m_tau;               // nearest sampled position at or above j
        u64 sampled_pos = n - k * m_tau;
        u64 cur = m_pos_rows[k];
        for (u64 s = 0; s < sampled_pos - j; ++s) cur = m_rs->lf(cur);
        return {cur, sampled_pos - j};
    }

    u64 sa(u64 i) const { return sa_ex(i).value; }
    u64 isa(u64 j) const { return isa_ex(j).value; }
};

}  // namespace rlidx
