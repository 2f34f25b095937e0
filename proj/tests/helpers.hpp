#pragma once

#include <random>
#include <string>
#include <vector>

#include "rlidx/io_util.hpp"

// shared corpus builders for the test suite.
namespace testing_helpers {

using rlidx::u64;

// random payload over codes 1..sigma with a trailing 0 sentinel.
inline std::vector<u64> random_text(std::mt19937_64& rng, u64 n, u64 sigma) {
    std::vector<u64> t(n + 1);
    for (u64 i = 0; i < n; ++i) t[i] = 1 + rng() % sigma;
    t[n] = 0;
    return t;
}

// fibonacci word over bytes 'a','b' (order 1 = "b", order 2 = "a").
inline std::string fib_word(unsigned order) {
    std::string prev = "b", cur = "a";
    if (order == 1) return prev;
    for (unsigned k = 3; k <= order; ++k) {
        std::string next = cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// mutated periodic text: `copies` copies of a random block, each symbol
// flipped to a random other symbol with probability rate. codes 1..sigma,
// trailing 0 sentinel.
inline std::vector<u64> mutated_repeat(std::mt19937_64& rng, u64 block, u64 copies, u64 sigma,
                                       double rate) {
    std::vector<u64> base(block);
    for (auto& c : base) c = 1 + rng() % sigma;
    std::vector<u64> t;
    t.reserve(block * copies + 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (u64 r = 0; r < copies; ++r)
        for (u64 i = 0; i < block; ++i) {
            u64 c = base[i];
            if (coin(rng) < rate) c = 1 + rng() % sigma;
            t.push_back(c);
        }
    t.push_back(0);
    return t;
}

inline std::vector<u64> byte_codes(const std::string& s, bool sentinel) {
    std::vector<u64> t;
    t.reserve(s.size() + 1);
    for (char c : s) t.push_back(rlidx::u8(c) + 1);
    if (sentinel) t.push_back(0);
    return t;
}

}  // namespace testing_helpers
