#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "io_util.hpp"

// linear-time suffix sorting by induced copying. used only for the small base
// case of the doubling construction; everything large goes through run-length
// machinery instead.
namespace rlidx {

namespace sais_detail {

inline constexpr u64 NIL = ~u64(0);

// s must end with a unique smallest symbol 0; values in [0, K). 0-based SA out.
inline std::vector<u64> sa_is(const std::vector<u64>& s, u64 K) {
    const u64 n = s.size();
    std::vector<u64> sa(n, NIL);
    if (n == 1) {
        sa[0] = 0;
        return sa;
    }

    std::vector<bool> stype(n, false);
    stype[n - 1] = true;
    for (u64 i = n - 1; i-- > 0;)
        stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    auto is_lms = [&](u64 i) { return i > 0 && stype[i] && !stype[i - 1]; };

    std::vector<u64> cnt(K, 0);
    for (u64 c : s) ++cnt[c];
    auto heads = [&] {
        std::vector<u64> h(K, 0);
        u64 acc = 0;
        for (u64 c = 0; c < K; ++c) h[c] = acc, acc += cnt[c];
        return h;
    };
    auto tails = [&] {  // exclusive ends
        std::vector<u64> t(K, 0);
        u64 acc = 0;
        for (u64 c = 0; c < K; ++c) acc += cnt[c], t[c] = acc;
        return t;
    };

    auto induce = [&](const std::vector<u64>& lms_sorted) {
        std::fill(sa.begin(), sa.end(), NIL);
        {
            auto tl = tails();
            for (u64 k = lms_sorted.size(); k-- > 0;) sa[--tl[s[lms_sorted[k]]]] = lms_sorted[k];
        }
        {
            auto hd = heads();
            for (u64 i = 0; i < n; ++i)
                if (sa[i] != NIL && sa[i] > 0 && !stype[sa[i] - 1]) sa[hd[s[sa[i] - 1]]++] = sa[i] - 1;
        }
        {
            auto tl = tails();
            for (u64 i = n; i-- > 0;)
                if (sa[i] != NIL && sa[i] > 0 && stype[sa[i] - 1]) sa[--tl[s[sa[i] - 1]]] = sa[i] - 1;
        }
    };

    std::vector<u64> lms;  // in text order
    for (u64 i = 1; i < n; ++i)
        if (is_lms(i)) lms.push_back(i);

    induce(lms);  // any seeding order sorts the lms substrings

    std::vector<u64> lms_sorted;
    lms_sorted.reserve(lms.size());
    for (u64 i = 0; i < n; ++i)
        if (sa[i] != NIL && is_lms(sa[i])) lms_sorted.push_back(sa[i]);

    // name lms substrings; adjacent entries compare symbol-wise up to and
    // including the next lms position.
    std::vector<u64> name_of(n, NIL);
    u64 names = 0;
    for (std::size_t k = 0; k < lms_sorted.size(); ++k) {
        if (k > 0) {
            u64 a = lms_sorted[k - 1], b = lms_sorted[k];
            bool equal = a != n - 1 && b != n - 1;
            for (u64 d = 0; equal; ++d) {
                if (s[a + d] != s[b + d]) {
                    equal = false;
                    break;
                }
                if (d > 0 && (is_lms(a + d) || is_lms(b + d))) {
                    equal = is_lms(a + d) && is_lms(b + d);
                    break;
                }
            }
            if (!equal) ++names;
        }
        name_of[lms_sorted[k]] = names;
    }
    ++names;

    if (names < lms.size()) {
        std::vector<u64> reduced(lms.size());
        for (std::size_t k = 0; k < lms.size(); ++k) reduced[k] = name_of[lms[k]];
        std::vector<u64> rsa = sa_is(reduced, names);
        for (std::size_t k = 0; k < lms.size(); ++k) lms_sorted[k] = lms[rsa[k]];
    }
    // else: lms_sorted is already the true order

    induce(lms_sorted);
    return sa;
}

}  // namespace sais_detail

// 1-based suffix array of arbitrary u64 codes. a fresh smallest sentinel is
// appended internally, so prefix ties resolve shorter-first; for texts whose
// last symbol occurs nowhere else that is exact suffix (= rotation) order.
inline std::vector<u64> suffix_sort(std::span<const u64> codes) {
    const u64 n = codes.size();
    if (n == 0) return {};
    std::vector<u64> alpha(codes.begin(), codes.end());
    std::sort(alpha.begin(), alpha.end());
    alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
    std::vector<u64> s(n + 1);
    for (u64 i = 0; i < n; ++i)
        s[i] = 1 + u64(std::lower_bound(alpha.begin(), alpha.end(), codes[i]) - alpha.begin());
    s[n] = 0;
    std::vector<u64> sa0 = sais_detail::sa_is(s, alpha.size() + 1);
    std::vector<u64> out(n);
    for (u64 i = 1; i <= n; ++i) out[i - 1] = sa0[i] + 1;
    return out;
}

}  // namespace rlidx
