#include "picyc/kmer.hpp"

#include <algorithm>

#include "picyc/errors.hpp"

namespace picyc {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

} // namespace

std::string reverse_complement(std::string_view seq) {
    std::string out(seq.size(), 'N');
    std::transform(seq.rbegin(), seq.rend(), out.begin(), complement_base);
    return out;
}

bool valid_k(int k) { return k >= kMinK && k <= kMaxK && (k % 2) == 1; }

void require_valid_k(int k) {
    if (!valid_k(k))
        throw InputError("k must be odd and in [" + std::to_string(kMinK) + ", " +
                         std::to_string(kMaxK) + "], got " + std::to_string(k));
}

std::optional<Kmer> Kmer::from_string(std::string_view s) {
    const int k = static_cast<int>(s.size());
    if (k < 1 || k > kMaxK) return std::nullopt;
    u128 bits = 0;
    for (char c : s) {
        int code = base_code(c);
        if (code < 0) return std::nullopt;
        bits = (bits << 2) | static_cast<u128>(code);
    }
    return Kmer(bits, k);
}

Kmer Kmer::parse(std::string_view s) {
    auto km = from_string(s);
    if (!km) throw InputError("not a k-mer: '" + std::string(s) + "'");
    return *km;
}

Kmer Kmer::reverse_complement() const {
    u128 in = bits_;
    u128 out = 0;
    for (int i = 0; i < k_; ++i) {
        out = (out << 2) | (3 - static_cast<unsigned>(in & 3));
        in >>= 2;
    }
    return Kmer(out, k_);
}

std::string Kmer::to_string() const {
    std::string s(k_, 'A');
    for (int i = 0; i < k_; ++i) s[i] = code_base(base(i));
    return s;
}

void Kmer::pack(std::uint8_t *out) const {
    const std::size_t n = packed_size(k_);
    std::fill(out, out + n, 0);
    for (int i = 0; i < k_; ++i)
        out[i / 4] |= static_cast<std::uint8_t>(base(i) << (6 - 2 * (i % 4)));
}

Kmer Kmer::unpack(const std::uint8_t *in, int k) {
    u128 bits = 0;
    for (int i = 0; i < k; ++i)
        bits = (bits << 2) | static_cast<u128>((in[i / 4] >> (6 - 2 * (i % 4))) & 3);
    return Kmer(bits, k);
}

std::uint64_t Kmer::hash() const {
    auto lo = static_cast<std::uint64_t>(bits_);
    auto hi = static_cast<std::uint64_t>(bits_ >> 64);
    return mix64(lo ^ mix64(hi + k_));
}

std::vector<Kmer> kmerize(std::string_view read, int k) {
    std::vector<Kmer> out;
    if (read.size() >= static_cast<std::size_t>(k)) out.reserve(read.size() - k + 1);
    for_each_window(read, k, [&](const Kmer &km, bool) { out.push_back(km); });
    return out;
}

} // namespace picyc
