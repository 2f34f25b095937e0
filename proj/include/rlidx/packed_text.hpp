#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "io_util.hpp"

namespace rlidx {

// text over codes 0..sigma-1, bit-packed to ceil(log2 sigma) bits per symbol.
// positions are 1-based throughout (matching the index structures built on top).
//
// the canonical way to make one is from_symbols / from_bytes: the payload
// alphabet is remapped to p..p+|A|-1 (rank order) and p sentinel codes 0..p-1
// are appended so the total length is divisible by 2^ceil-levels the doubling
// construction wants. each sentinel occurs exactly once and all are smaller
// than every payload code, so suffix order on the padded text restricted to
// payload positions equals payload suffix order.
struct packed_text {
    u64 m_n = 0;          // total length including appended sentinels
    u64 m_sigma = 0;      // code domain size (max code + 1)
    u64 m_pad = 0;        // number of trailing sentinel codes (codes 0..m_pad-1)
    u32 m_bits = 1;       // bits per packed code
    std::vector<u64> m_words;
    std::vector<u64> m_alphabet;  // sorted distinct original symbols; code p+i <-> m_alphabet[i]

    packed_text() = default;

    // raw constructor: codes are stored as-is, no sentinel bookkeeping.
    static packed_text from_codes(std::span<const u64> codes, u64 sigma, u64 pad = 0) {
        if (sigma == 0) throw std::invalid_argument("sigma must be positive");
        if (sigma > (u64(1) << 32)) throw std::invalid_argument("alphabet too large");
        packed_text t;
        t.m_n = codes.size();
        t.m_sigma = sigma;
        t.m_pad = pad;
        t.m_bits = sigma <= 1 ? 1 : u32(std::bit_width(sigma - 1));
        t.m_words.assign((t.m_n * t.m_bits + 63) / 64 + 1, 0);
        for (u64 j = 0; j < t.m_n; ++j) {
            if (codes[j] >= sigma) throw std::invalid_argument("code out of range");
            t.store(j, codes[j]);
        }
        return t;
    }

    // remap arbitrary symbols to a compact code space and append `pad` sentinels
    // (codes 0..pad-1, one each, ascending so the final symbol is unique-minimal
    // only among sentinels; what matters is each is globally unique).
    static packed_text from_symbols(std::span<const u64> symbols, u64 pad) {
        std::vector<u64> alpha(symbols.begin(), symbols.end());
        std::sort(alpha.begin(), alpha.end());
        alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
        u64 sigma = pad + alpha.size();
        if (sigma == 0) throw std::invalid_argument("empty text with no padding");
        std::vector<u64> codes;
        codes.reserve(symbols.size() + pad);
        for (u64 s : symbols) {
            u64 r = u64(std::lower_bound(alpha.begin(), alpha.end(), s) - alpha.begin());
            codes.push_back(pad + r);
        }
        for (u64 i = 0; i < pad; ++i) codes.push_back(i);
        packed_text t = from_codes(codes, sigma, pad);
        t.m_alphabet = std::move(alpha);
        return t;
    }

    static packed_text from_bytes(std::string_view bytes, u64 pad) {
        std::vector<u64> symbols(bytes.size());
        for (std::size_t i = 0; i < bytes.size(); ++i) symbols[i] = u8(bytes[i]);
        return from_symbols(symbols, pad);
    }

    u64 size() const { return m_n; }
    u64 sigma() const { return m_sigma; }
    u64 pad() const { return m_pad; }
    u64 payload_length() const { return m_n - m_pad; }

    // 1-based access.
    u64 code(u64 j) const {
        if (j < 1 || j > m_n) throw std::out_of_range("text position out of range");
        return load(j - 1);
    }

    // original symbol for a payload code.
    u64 original(u64 c) const {
        if (c < m_pad || c - m_pad >= m_alphabet.size())
            throw std::out_of_range("not a payload code");
        return m_alphabet[c - m_pad];
    }

    std::vector<u64> codes() const {
        std::vector<u64> out(m_n);
        for (u64 j = 0; j < m_n; ++j) out[j] = load(j);
        return out;
    }

   private:
    void store(u64 j, u64 v) {
        u64 off = j * m_bits, w = off >> 6, b = off & 63;
        m_words[w] |= v << b;
        if (b + m_bits > 64) m_words[w + 1] |= v >> (64 - b);
    }
    u64 load(u64 j) const {
        u64 off = j * m_bits, w = off >> 6, b = off & 63;
        u64 v = m_words[w] >> b;
        if (b + m_bits > 64) v |= m_words[w + 1] << (64 - b);
        u64 mask = m_bits == 64 ? ~u64(0) : (u64(1) << m_bits) - 1;
        return v & mask;
    }
};

// view of a text regrouped into blocks of d consecutive codes, each block read
// as one supersymbol (MSB-first fold, so numeric order == block lexicographic
// order). requires d | n and the supersymbol to fit in 63 bits.
struct super_text {
    u64 m_n = 0;      // number of supersymbols
    u64 m_d = 0;      // block width in base codes
    u64 m_sigma = 0;  // base sigma; supersymbol domain is sigma^d
    std::vector<u64> m_super;

    static super_text regroup(const packed_text& base, u64 d) {
        if (d == 0) throw std::invalid_argument("block width must be positive");
        if (base.size() % d != 0) throw std::invalid_argument("block width must divide text length");
        u64 sigma = base.sigma();
        u64 dom = 1;
        for (u64 i = 0; i < d; ++i) {
            if (dom > (u64(1) << 63) / std::max<u64>(sigma, 1))
                throw std::invalid_argument("supersymbol domain exceeds 63 bits");
            dom *= sigma;
        }
        super_text s;
        s.m_n = base.size() / d;
        s.m_d = d;
        s.m_sigma = sigma;
        s.m_super.resize(s.m_n);
        for (u64 b = 0; b < s.m_n; ++b) {
            u64 v = 0;
            for (u64 i = 0; i < d; ++i) v = v * sigma + base.code(b * d + i + 1);
            s.m_super[b] = v;
        }
        return s;
    }

    u64 size() const { return m_n; }
    u64 domain() const {
        u64 dom = 1;
        for (u64 i = 0; i < m_d; ++i) dom *= m_sigma;
        return dom;
    }
    u64 code(u64 j) const {
        if (j < 1 || j > m_n) throw std::out_of_range("supersymbol position out of range");
        return m_super[j - 1];
    }
    std::span<const u64> codes() const { return m_super; }
};

}  // namespace rlidx
