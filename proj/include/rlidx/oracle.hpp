#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "io_util.hpp"

// deliberately naive reference implementations. everything here is quadratic-ish
// and array-based; the point is to be obviously correct, not fast. the real
// structures are validated against these on small inputs, so nothing in this
// header may depend on the rest of the library.
namespace rlidx::oracle {

inline constexpr u64 table_ceiling = 20000;  // keeps the naive sort affordable

// all arrays 1-based (slot 0 unused). text is expected to end with a symbol
// that occurs nowhere else; comparisons then never run off the end and suffix
// order equals rotation order. (plain prefix ties resolve shorter-first, which
// is the same thing when the last symbol is unique.)
struct tables {
    u64 n = 0;
    std::vector<u64> text;  // 1-based copy
    std::vector<u64> sa, isa, bwt, lf, psi, phi, lcp, plcp;

    static tables build(std::span<const u64> codes) {
        if (codes.empty()) throw std::invalid_argument("oracle: empty text");
        if (codes.size() > table_ceiling) throw std::invalid_argument("oracle: text too large");
        tables t;
        t.n = codes.size();
        t.text.assign(t.n + 1, 0);
        for (u64 j = 1; j <= t.n; ++j) t.text[j] = codes[j - 1];

        t.sa.resize(t.n + 1);
        for (u64 j = 1; j <= t.n; ++j) t.sa[j] = j;
        std::sort(t.sa.begin() + 1, t.sa.end(), [&](u64 a, u64 b) {
            while (a <= t.n && b <= t.n) {
                if (t.text[a] != t.text[b]) return t.text[a] < t.text[b];
                ++a, ++b;
            }
            return a > t.n && b <= t.n;  // shorter suffix first on prefix tie
        });

        t.isa.assign(t.n + 1, 0);
        for (u64 i = 1; i <= t.n; ++i) t.isa[t.sa[i]] = i;

        t.bwt.assign(t.n + 1, 0);
        for (u64 i = 1; i <= t.n; ++i) t.bwt[i] = t.sa[i] == 1 ? t.text[t.n] : t.text[t.sa[i] - 1];

        // lf via the counting formula; with a unique last symbol this lands on
        // isa[n] for the row of suffix 1, i.e. the map is fully cyclic.
        t.lf.assign(t.n + 1, 0);
        t.psi.assign(t.n + 1, 0);
        for (u64 i = 1; i <= t.n; ++i) {
            u64 smaller = 0, upto = 0;
            for (u64 k = 1; k <= t.n; ++k) smaller += t.bwt[k] < t.bwt[i];
            for (u64 k = 1; k <= i; ++k) upto += t.bwt[k] == t.bwt[i];
            t.lf[i] = smaller + upto;
        }
        for (u64 i = 1; i <= t.n; ++i) t.psi[t.lf[i]] = i;

        // phi over text positions: predecessor of SA[i] is SA[i-1], wrapping at
        // the top row.
        t.phi.assign(t.n + 1, 0);
        for (u64 i = 1; i <= t.n; ++i) t.phi[t.sa[i]] = i == 1 ? t.sa[t.n] : t.sa[i - 1];

        t.lcp.assign(t.n + 1, 0);
        for (u64 i = 2; i <= t.n; ++i) {
            u64 a = t.sa[i - 1], b = t.sa[i], l = 0;
            while (a + l <= t.n && b + l <= t.n && t.text[a + l] == t.text[b + l]) ++l;
            t.lcp[i] = l;
        }
        t.plcp.assign(t.n + 1, 0);
        for (u64 j = 1; j <= t.n; ++j) t.plcp[j] = t.lcp[t.isa[j]];
        return t;
    }

    // number of text symbols strictly smaller than c.
    u64 count_smaller(u64 c) const {
        u64 k = 0;
        for (u64 j = 1; j <= n; ++j) k += text[j] < c;
        return k;
    }

    // occurrences of c in bwt[1..i].
    u64 bwt_rank(u64 c, u64 i) const {
        u64 k = 0;
        for (u64 j = 1; j <= i; ++j) k += bwt[j] == c;
        return k;
    }

    // longest common extension of the suffixes at text positions j1, j2.
    u64 lce(u64 j1, u64 j2) const {
        u64 l = 0;
        while (j1 + l <= n && j2 + l <= n && text[j1 + l] == text[j2 + l]) ++l;
        return l;
    }
};

// per-row longest common suffix of the cyclic left contexts of rows i-1 and i
// (row 1 gets 0). the runs machinery partitions rows by this value, so it gets
// its own, smaller ceiling: the scan is quadratic in the worst case.
inline std::vector<u64> rotation_lcs(const tables& t) {
    if (t.n > 2000) throw std::invalid_argument("oracle: rotation_lcs text too large");
    std::vector<u64> lcs(t.n + 1, 0);
    auto cyc = [&](u64 j, u64 back) {  // symbol `back` places before position j, cyclically
        u64 p = ((j - 1 + t.n - (back % t.n)) % t.n) + 1;
        return t.text[p];
    };
    for (u64 i = 2; i <= t.n; ++i) {
        u64 a = t.sa[i - 1], b = t.sa[i], l = 0;
        while (l < t.n - 1 && cyc(a, l + 1) == cyc(b, l + 1)) ++l;
        lcs[i] = l;
    }
    return lcs;
}

struct lz_factor {
    bool literal;
    u64 a;  // literal: the symbol. copy: source position (1-based)
    u64 b;  // literal: 0. copy: length
    bool operator==(const lz_factor&) const = default;
};

// greedy longest-previous-factor parse. ties on length break to the smallest
// source position. callers pass the payload only (no trailing sentinel).
inline std::vector<lz_factor> lz77_reference(std::span<const u64> s) {
    const u64 n = s.size();
    std::vector<lz_factor> out;
    u64 j = 0;  // 0-based here, emitted positions 1-based
    while (j < n) {
        u64 best_len = 0, best_pos = 0;
        for (u64 p = 0; p < j; ++p) {
            u64 l = 0;
            while (j + l < n && s[p + l] == s[j + l]) ++l;
            if (l > best_len) best_len = l, best_pos = p;
        }
        if (best_len == 0)
            out.push_back({true, s[j], 0}), ++j;
        else
            out.push_back({false, best_pos + 1, best_len}), j += best_len;
    }
    return out;
}

struct lyndon_run {
    u64 start;  // 1-based
    u64 len;    // length of the repeated word
    u64 exp;    // how many adjacent copies
    bool operator==(const lyndon_run&) const = default;
};

// duval's algorithm, with equal adjacent factors merged into (start, len, exp).
inline std::vector<lyndon_run> lyndon_duval(std::span<const u64> s) {
    const u64 n = s.size();
    std::vector<lyndon_run> out;
    u64 i = 0;
    while (i < n) {
        u64 j = i + 1, k = i;
        while (j < n && s[k] <= s[j]) {
            if (s[k] < s[j])
                k = i;
            else
                ++k;
            ++j;
        }
        u64 w = j - k;           // factor length
        u64 e = (j - i) / w;      // full copies found by this round
        out.push_back({i + 1, w, e});
        i += e * w;
    }
    return out;
}

// distinct substring count via hashing every substring. cubic; keep n small.
inline u64 distinct_reference(std::span<const u64> s) {
    const u64 n = s.size();
    u64 maxc = 0;
    for (u64 v : s) maxc = std::max(maxc, v);
    std::unordered_set<std::string> seen;
    for (u64 i = 0; i < n; ++i) {
        std::string key;
        for (u64 j = i; j < n; ++j) {
            if (maxc < 256)
                key.push_back(char(u8(s[j])));
            else
                for (int b = 0; b < 8; ++b) key.push_back(char((s[j] >> (8 * b)) & 0xff));
            seen.insert(key);
        }
    }
    return seen.size();
}

}  // namespace rlidx::oracle
