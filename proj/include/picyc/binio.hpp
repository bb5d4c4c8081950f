#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "picyc/errors.hpp"
#include "picyc/kmer.hpp"

namespace picyc {

// 64-bit FNV-1a over a byte stream.
class Fnv64 {
public:
    void update(std::span<const std::uint8_t> bytes) {
        for (auto b : bytes) {
            state_ ^= b;
            state_ *= 0x100000001b3ULL;
        }
    }
    std::uint64_t digest() const { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

// Little-endian writer into an in-memory buffer.
class ByteWriter {
public:
    void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
    void raw(std::string_view s) {
        bytes({reinterpret_cast<const std::uint8_t *>(s.data()), s.size()});
    }
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void str(std::string_view s) {
        u32(static_cast<std::uint32_t>(s.size()));
        raw(s);
    }
    void kmer(const Kmer &km) {
        std::uint8_t tmp[16];
        km.pack(tmp);
        bytes({tmp, Kmer::packed_size(km.k())});
    }

    std::vector<std::uint8_t> &buffer() { return buf_; }
    const std::vector<std::uint8_t> &buffer() const { return buf_; }
    std::size_t size() const { return buf_.size(); }

private:
    std::vector<std::uint8_t> buf_;
};

// Little-endian reader; running off the end raises TruncatedFileError.
class ByteReader {
public:
    ByteReader(std::span<const std::uint8_t> data, std::string what)
        : data_(data), what_(std::move(what)) {}

    std::span<const std::uint8_t> bytes(std::size_t n) {
        need(n);
        auto out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }
    std::uint8_t u8() { return bytes(1)[0]; }
    std::uint32_t u32() {
        auto b = bytes(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
    std::uint64_t u64() {
        auto b = bytes(8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
    std::string str() {
        auto n = u32();
        auto b = bytes(n);
        return std::string(b.begin(), b.end());
    }
    Kmer kmer(int k) { return Kmer::unpack(bytes(Kmer::packed_size(k)).data(), k); }

    // Throws BadMagicError unless the next bytes equal `magic`.
    void expect_magic(std::string_view magic) {
        if (data_.size() - pos_ < magic.size() ||
            std::memcmp(data_.data() + pos_, magic.data(), magic.size()) != 0)
            throw BadMagicError(what_ + ": bad magic (expected " + std::string(magic) + ")");
        pos_ += magic.size();
    }

    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }
    bool at_end() const { return pos_ == data_.size(); }
    const std::string &what() const { return what_; }

private:
    void need(std::size_t n) const {
        if (data_.size() - pos_ < n) throw TruncatedFileError(what_ + ": truncated file");
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
    std::string what_;
};

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path &path);
void write_file_bytes(const std::filesystem::path &path, std::span<const std::uint8_t> bytes);

} // namespace picyc
