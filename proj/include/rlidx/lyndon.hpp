#pragma once

#include <cstdint>
#include <vector>

#include "plcp.hpp"
#include "rlbwt.hpp"
#include "sa_isa.hpp"

namespace rlidx {

struct lyndon_run {
    u64 start;  // 1-based payload position
    u64 len;    // factor length
    u64 exp;    // consecutive repeats of the factor
    bool operator==(const lyndon_run&) const = default;
};

// lyndon factorization of the payload, equal adjacent factors merged into
// runs. position j starts a new factor iff the suffix at j is smaller than
// the suffix at the current factor start, which one lce call plus one symbol
// probe decides; appending the sentinel (smallest symbol) never flips that
// comparison for payload positions, so the sentineled index answers verbatim.
inline std::vector<lyndon_run> lyndon_factorize(const rlbwt& b, const rank_select_support& rs,
                                                const sa_isa_support& sa, const lce_support& lce) {
    const u64 n = b.size();
    std::vector<lyndon_run> out;
    if (n < 2) return out;
    auto sym_at = [&](u64 j) { return b.bwt_at(rs.psi(sa.isa(j))); };

    std::vector<u64> bounds{1};
    for (u64 j = 2; j + 1 <= n; ++j) {
        u64 cur = bounds.back();
        u64 l = lce.lce(cur, j);
        if (sym_at(j + l) < sym_at(cur + l)) bounds.push_back(j);
    }
    bounds.push_back(n);  // one past the payload: factor k spans [bounds[k], bounds[k+1])

    for (std::size_t k = 0; k + 1 < bounds.size();) {
        u64 start = bounds[k], len = bounds[k + 1] - start;
        u64 exp = 1;
        std::size_t m = k + 1;
        while (m + 1 < bounds.size() && bounds[m + 1] - bounds[m] == len &&
               lce.lce(start, bounds[m]) >= len) {
            ++exp;
            ++m;
        }
        out.push_back({start, len, exp});
        k = m;
    }
    return out;
}

}  // namespace rlidx
