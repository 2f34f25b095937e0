#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rlbwt.hpp"

namespace rlidx {

// default context depth: log^2 n capped so that depth^2 * runs stays near
// linear in n. any value >= 1 is correct; this only tunes time/space.
inline u64 default_tau(u64 n, u64 r) {
    if (n <= 2) return 1;
    u64 lg = std::bit_width(n - 1);
    u64 by_log = lg * lg;
    u64 by_runs = std::max<u64>(1, u64(std::sqrt(double(n) / double(std::max<u64>(r, 1)))));
    return std::clamp<u64>(std::min(by_log, by_runs), 1, n);
}

// partition of bwt rows into maximal blocks whose left context agrees on at
// least tau symbols. block starts are exactly the rows whose context differs
// from the row above within tau symbols; there are at most r*tau of them.
// each start carries the tau-fold LF image, giving LF^tau for every row by
// offset. optionally materializes the tau-symbol left context (window) of
// every block, rightmost symbol last.
struct tau_runs {
    u64 m_tau = 0;
    std::vector<u64> m_rows;     // sorted block starts, m_rows[0] == 1
    std::vector<u64> m_samples;  // LF^tau of each start
    std::vector<u64> m_windows;  // optional, count() x m_tau row-major

    static tau_runs build(const rlbwt& b, const rank_select_support& rs, u64 tau,
                          bool want_windows) {
        if (tau == 0) throw std::invalid_argument("tau must be positive");
        tau_runs tr;
        tr.m_tau = tau;
        const u64 n = b.size();

        std::vector<u64> rows, samples, windows;
        std::vector<u64> frontier_rows, frontier_samples, frontier_wins;

        // depth-0 blocks start at bwt run boundaries; walk tau LF steps for the
        // sample, reading the context along the way.
        for (u64 k = 0; k < b.runs(); ++k) {
            u64 q = b.run_start(k), cur = q;
            std::vector<u64> w(want_windows ? tau : 0);
            for (u64 t = 0; t < tau; ++t) {
                if (want_windows) w[tau - 1 - t] = b.bwt_at(cur);
                cur = rs.lf(cur);
            }
            frontier_rows.push_back(q);
            frontier_samples.push_back(cur);
            frontier_wins.insert(frontier_wins.end(), w.begin(), w.end());
        }

        auto is_run_start = [&](u64 i) {
            return std::binary_search(b.m_starts.begin(), b.m_starts.end(), i);
        };

        // deeper starts: the Psi image of a depth-j start is a depth-(j+1)
        // start unless it is already a run boundary. sample and window follow
        // for free (powers of LF commute, context shifts by one symbol).
        for (u64 depth = 0; depth < tau; ++depth) {
            rows.insert(rows.end(), frontier_rows.begin(), frontier_rows.end());
            samples.insert(samples.end(), frontier_samples.begin(), frontier_samples.end());
            windows.insert(windows.end(), frontier_wins.begin(), frontier_wins.end());
            if (depth + 1 == tau || frontier_rows.empty()) break;
            std::vector<u64> nr, ns, nw;
            for (std::size_t t = 0; t < frontier_rows.size(); ++t) {
                u64 child = rs.psi(frontier_rows[t]);
                if (is_run_start(child)) continue;
                nr.push_back(child);
                ns.push_back(rs.psi(frontier_samples[t]));
                if (want_windows) {
                    for (u64 p = 1; p < tau; ++p) nw.push_back(frontier_wins[t * tau + p]);
                    nw.push_back(b.bwt_at(child));
                }
            }
            frontier_rows = std::move(nr);
            frontier_samples = std::move(ns);
            frontier_wins = std::move(nw);
        }

        std::vector<u64> perm(rows.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::sort(perm.begin(), perm.end(), [&](u64 a, u64 c) { return rows[a] < rows[c]; });
        tr.m_rows.reserve(rows.size());
        tr.m_samples.reserve(rows.size());
        if (want_windows) tr.m_windows.reserve(windows.size());
        for (u64 p : perm) {
            tr.m_rows.push_back(rows[p]);
            tr.m_samples.push_back(samples[p]);
            if (want_windows)
                tr.m_windows.insert(tr.m_windows.end(), windows.begin() + p * tau,
                                    windows.begin() + (p + 1) * tau);
        }
        if (tr.m_rows.empty() || tr.m_rows[0] != 1)
            throw std::logic_error("tau blocks must start at row 1");
        for (std::size_t i = 1; i < tr.m_rows.size(); ++i)
            if (tr.m_rows[i] == tr.m_rows[i - 1])
                throw std::logic_error("duplicate tau block start");
        (void)n;
        return tr;
    }

    u64 count() const { return m_rows.size(); }

    u64 block_of(u64 i) const {
        return u64(std::upper_bound(m_rows.begin(), m_rows.end(), i) - m_rows.begin()) - 1;
    }

    // LF^tau by offset from the containing block start.
    u64 lf_tau(u64 i) const {
        u64 k = block_of(i);
        return m_samples[k] + (i - m_rows[k]);
    }

    std::span<const u64> window(u64 k) const {
        return std::span<const u64>(m_windows).subspan(k * m_tau, m_tau);
    }
};

}  // namespace rlidx
