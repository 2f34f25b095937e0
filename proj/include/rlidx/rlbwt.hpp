#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "io_util.hpp"

namespace rlidx {

// run-length encoded BWT: maximal runs as (start row, symbol). rows 1-based.
struct rlbwt {
    u64 m_n = 0;
    u64 m_sigma = 0;
    std::vector<u64> m_starts;
    std::vector<u64> m_syms;

    rlbwt() = default;

    rlbwt(u64 n, u64 sigma, std::vector<u64> starts, std::vector<u64> syms)
        : m_n(n), m_sigma(sigma), m_starts(std::move(starts)), m_syms(std::move(syms)) {
        validate();
    }

    static rlbwt from_bwt(std::span<const u64> bwt, u64 sigma) {
        rlbwt b;
        b.m_n = bwt.size();
        b.m_sigma = sigma;
        for (u64 i = 0; i < bwt.size(); ++i) {
            if (bwt[i] >= sigma) throw std::invalid_argument("bwt symbol out of range");
            if (i == 0 || bwt[i] != bwt[i - 1]) {
                b.m_starts.push_back(i + 1);
                b.m_syms.push_back(bwt[i]);
            }
        }
        b.validate();
        return b;
    }

    void validate() const {
        if (m_n == 0) throw std::invalid_argument("rlbwt: empty");
        if (m_starts.empty() || m_starts[0] != 1) throw std::invalid_argument("rlbwt: first run must start at row 1");
        if (m_starts.size() != m_syms.size()) throw std::invalid_argument("rlbwt: starts/symbols length mismatch");
        for (std::size_t k = 1; k < m_starts.size(); ++k) {
            if (m_starts[k] <= m_starts[k - 1]) throw std::invalid_argument("rlbwt: run starts not increasing");
            if (m_syms[k] == m_syms[k - 1]) throw std::invalid_argument("rlbwt: adjacent runs share a symbol");
        }
        if (m_starts.back() > m_n) throw std::invalid_argument("rlbwt: run start beyond text end");
        for (u64 s : m_syms)
            if (s >= m_sigma) throw std::invalid_argument("rlbwt: symbol out of range");
    }

    u64 size() const { return m_n; }
    u64 sigma() const { return m_sigma; }
    u64 runs() const { return m_starts.size(); }
    u64 run_start(u64 k) const { return m_starts[k]; }
    u64 run_sym(u64 k) const { return m_syms[k]; }
    u64 run_end(u64 k) const { return k + 1 < m_starts.size() ? m_starts[k + 1] - 1 : m_n; }
    u64 run_len(u64 k) const { return run_end(k) - m_starts[k] + 1; }

    // index of the run containing row i.
    u64 run_of(u64 i) const {
        if (i < 1 || i > m_n) throw std::out_of_range("rlbwt: row out of range");
        return u64(std::upper_bound(m_starts.begin(), m_starts.end(), i) - m_starts.begin()) - 1;
    }

    u64 bwt_at(u64 i) const { return m_syms[run_of(i)]; }

    std::vector<u64> expand() const {
        std::vector<u64> out(m_n);
        for (u64 k = 0; k < runs(); ++k)
            for (u64 i = m_starts[k]; i <= run_end(k); ++i) out[i - 1] = m_syms[k];
        return out;
    }

    // format: "RLBW1" magic, u64 n, u32 sigma, u64 run count, then per run
    // u64 start + u32 symbol. little-endian.
    std::string serialize() const {
        if (m_sigma > 0xffffffffull) throw std::runtime_error("rlbwt: alphabet too large to serialize");
        std::string out = "RLBW1";
        put_u64(out, m_n);
        put_u32(out, u32(m_sigma));
        put_u64(out, runs());
        for (u64 k = 0; k < runs(); ++k) {
            put_u64(out, m_starts[k]);
            put_u32(out, u32(m_syms[k]));
        }
        return out;
    }

    static rlbwt deserialize(const std::string& data) {
        byte_reader rd(data);
        rd.get_magic("RLBW1");
        rlbwt b;
        b.m_n = rd.get_u64();
        b.m_sigma = rd.get_u32();
        u64 r = rd.get_u64();
        b.m_starts.resize(r);
        b.m_syms.resize(r);
        for (u64 k = 0; k < r; ++k) {
            b.m_starts[k] = rd.get_u64();
            b.m_syms[k] = rd.get_u32();
        }
        if (!rd.done()) throw std::runtime_error("rlbwt: trailing bytes");
        b.validate();
        return b;
    }
};

// rank/select/LF/Psi over an rlbwt, O(log r) per query. holds a reference.
struct rank_select_support {
    const rlbwt& m_bwt;
    std::vector<u64> m_distinct;      // present symbols, ascending
    std::vector<u64> m_c;             // m_c[k] = count of bwt entries with symbol < m_distinct[k]
    std::vector<u64> m_total;         // total occurrences per distinct symbol
    std::vector<std::vector<u64>> m_run_starts;  // per distinct symbol: starts of its runs
    std::vector<std::vector<u64>> m_run_prefix;  // per distinct symbol: occurrences before each run

    explicit rank_select_support(const rlbwt& b) : m_bwt(b) {
        std::vector<u64> syms(b.m_syms);
        std::sort(syms.begin(), syms.end());
        syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
        m_distinct = std::move(syms);
        m_run_starts.resize(m_distinct.size());
        m_run_prefix.resize(m_distinct.size());
        m_total.assign(m_distinct.size(), 0);
        for (u64 k = 0; k < b.runs(); ++k) {
            u64 s = sym_slot(b.run_sym(k));
            m_run_starts[s].push_back(b.run_start(k));
            m_run_prefix[s].push_back(m_total[s]);
            m_total[s] += b.run_len(k);
        }
        m_c.assign(m_distinct.size() + 1, 0);
        for (std::size_t k = 0; k < m_distinct.size(); ++k) m_c[k + 1] = m_c[k] + m_total[k];
    }

    u64 size() const { return m_bwt.size(); }

    // slot of symbol c among present symbols, or npos.
    u64 sym_slot(u64 c) const {
        auto it = std::lower_bound(m_distinct.begin(), m_distinct.end(), c);
        if (it == m_distinct.end() || *it != c) return ~u64(0);
        return u64(it - m_distinct.begin());
    }

    // count of bwt entries with symbol strictly smaller than c (c need not occur).
    u64 count_smaller(u64 c) const {
        auto it = std::lower_bound(m_distinct.begin(), m_distinct.end(), c);
        return m_c[it - m_distinct.begin()];
    }

    // occurrences of c in rows 1..i. i may be 0..n.
    u64 rank(u64 c, u64 i) const {
        if (i > m_bwt.size()) throw std::out_of_range("rank: row out of range");
        u64 s = sym_slot(c);
        if (s == ~u64(0) || i == 0) return 0;
        const auto& st = m_run_starts[s];
        u64 k = u64(std::upper_bound(st.begin(), st.end(), i) - st.begin());
        if (k == 0) return 0;
        --k;
        u64 run_idx_start = st[k];
        u64 len_here = std::min(i - run_idx_start + 1, run_len_of(s, k));
        return m_run_prefix[s][k] + len_here;
    }

    // row of the k-th occurrence of c (1-based k).
    u64 select(u64 c, u64 k) const {
        u64 s = sym_slot(c);
        if (s == ~u64(0) || k == 0 || k > m_total[s]) throw std::out_of_range("select: occurrence out of range");
        const auto& pf = m_run_prefix[s];
        u64 run = u64(std::upper_bound(pf.begin(), pf.end(), k - 1) - pf.begin()) - 1;
        return m_run_starts[s][run] + (k - pf[run] - 1);
    }

    u64 lf(u64 i) const {
        u64 c = m_bwt.bwt_at(i);
        return count_smaller(c) + rank(c, i);
    }

    u64 psi(u64 i) const {
        if (i < 1 || i > m_bwt.size()) throw std::out_of_range("psi: row out of range");
        // find the symbol block containing rank i, then select within it.
        u64 lo = 0, hi = m_distinct.size();  // last k with m_c[k] < i
        while (lo + 1 < hi) {
            u64 mid = (lo + hi) / 2;
            (m_c[mid] < i ? lo : hi) = mid;
        }
        return select(m_distinct[lo], i - m_c[lo]);
    }

    // one step of backward search: new strict-rank boundary after prepending c.
    // feeding a pattern right to left from 0 yields the count of strictly
    // smaller suffixes; from n, the upper occurrence boundary.
    u64 backward_search_step(u64 i, u64 c) const { return count_smaller(c) + rank(c, i); }

   private:
    u64 run_len_of(u64 slot, u64 k) const {
        u64 start = m_run_starts[slot][k];
        u64 run = m_bwt.run_of(start);
        return m_bwt.run_len(run);
    }
};

}  // namespace rlidx
