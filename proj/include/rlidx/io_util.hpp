#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

// little-endian serialization helpers + whole-file reads.
namespace rlidx {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline void put_u64(std::string& out, u64 v) {
    for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

inline void put_u32(std::string& out, u32 v) {
    for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

struct byte_reader {
    const u8* p;
    const u8* end;

    explicit byte_reader(const std::string& s)
        : p(reinterpret_cast<const u8*>(s.data())),
          end(reinterpret_cast<const u8*>(s.data()) + s.size()) {}

    void need(std::size_t k) const {
        if (std::size_t(end - p) < k) throw std::runtime_error("truncated input");
    }
    u64 get_u64() {
        need(8);
        u64 v = 0;
        for (int i = 0; i < 8; ++i) v |= u64(p[i]) << (8 * i);
        p += 8;
        return v;
    }
    u32 get_u32() {
        need(4);
        u32 v = 0;
        for (int i = 0; i < 4; ++i) v |= u32(p[i]) << (8 * i);
        p += 4;
        return v;
    }
    u8 get_u8() {
        need(1);
        return *p++;
    }
    void get_magic(const char* m) {
        std::size_t k = std::strlen(m);
        need(k);
        if (std::memcmp(p, m, k) != 0) throw std::runtime_error("bad magic, expected " + std::string(m));
        p += k;
    }
    bool done() const { return p == end; }
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(data.data(), std::streamsize(data.size()));
    if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace rlidx
