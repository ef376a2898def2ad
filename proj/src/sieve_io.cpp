#include "rlab/sieve_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

namespace rlab {

namespace {

constexpr char kMagic[5] = {'R', 'L', 'A', 'B', '1'};

void put_u64_le(std::ostream& os, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64_le(std::istream& is) {
    unsigned char buf[8];
    is.read(reinterpret_cast<char*>(buf), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

void put_u32_array_le(std::ostream& os, const std::vector<std::int32_t>& a) {
    std::vector<unsigned char> buf(a.size() * 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto v = static_cast<std::uint32_t>(a[i]);
        buf[4 * i] = static_cast<unsigned char>(v & 0xff);
        buf[4 * i + 1] = static_cast<unsigned char>((v >> 8) & 0xff);
        buf[4 * i + 2] = static_cast<unsigned char>((v >> 16) & 0xff);
        buf[4 * i + 3] = static_cast<unsigned char>((v >> 24) & 0xff);
    }
    os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

bool get_u32_array_le(std::istream& is, std::vector<std::int32_t>& a, std::size_t n) {
    std::vector<unsigned char> buf(n * 4);
    is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!is) return false;
    a.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t v = static_cast<std::uint32_t>(buf[4 * i]) |
                                (static_cast<std::uint32_t>(buf[4 * i + 1]) << 8) |
                                (static_cast<std::uint32_t>(buf[4 * i + 2]) << 16) |
                                (static_cast<std::uint32_t>(buf[4 * i + 3]) << 24);
        a[i] = static_cast<std::int32_t>(v);
    }
    return true;
}

}  // namespace

std::string sieve_cache_filename(std::int64_t limit) {
    return "sieve-" + std::to_string(limit) + ".rlab1";
}

void save_tables(const ArithTables& tables, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ResourceError("save_tables: cannot open " + path);
    os.write(kMagic, sizeof(kMagic));
    put_u64_le(os, static_cast<std::uint64_t>(tables.limit));
    os.write(reinterpret_cast<const char*>(tables.mu.data()),
             static_cast<std::streamsize>(tables.mu.size()));
    put_u32_array_le(os, tables.r3);
    put_u32_array_le(os, tables.spf);
    if (!os) throw ResourceError("save_tables: short write to " + path);
}

std::optional<ArithTables> load_tables(const std::string& path, std::int64_t expected_limit) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    char magic[5];
    is.read(magic, 5);
    if (!is || std::memcmp(magic, kMagic, 5) != 0) return std::nullopt;
    const auto limit = static_cast<std::int64_t>(get_u64_le(is));
    if (!is || limit != expected_limit) return std::nullopt;
    const auto n = static_cast<std::size_t>(limit) + 1;
    ArithTables t;
    t.limit = limit;
    t.mu.resize(n);
    is.read(reinterpret_cast<char*>(t.mu.data()), static_cast<std::streamsize>(n));
    if (!is) return std::nullopt;
    if (!get_u32_array_le(is, t.r3, n)) return std::nullopt;
    if (!get_u32_array_le(is, t.spf, n)) return std::nullopt;
    return t;
}

ArithTables tables_with_cache(std::int64_t limit, unsigned threads, const std::string& dir) {
    if (!dir.empty()) {
        const auto path = (std::filesystem::path(dir) / sieve_cache_filename(limit)).string();
        if (auto cached = load_tables(path, limit)) return std::move(*cached);
        auto built = build_tables(limit, threads);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (!ec) save_tables(built, path);
        return built;
    }
    return build_tables(limit, threads);
}

}  // namespace rlab
