#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace picyc {

using u128 = unsigned __int128;

inline constexpr int kMinK = 3;
inline constexpr int kMaxK = 63;

// 2-bit nucleotide codes, A=0 C=1 G=2 T=3. Returns -1 for anything else.
inline int base_code(char c) {
    switch (c) {
    case 'A': case 'a': return 0;
    case 'C': case 'c': return 1;
    case 'G': case 'g': return 2;
    case 'T': case 't': return 3;
    default: return -1;
    }
}

inline char code_base(int code) { return "ACGT"[code & 3]; }

inline char complement_base(char c) {
    switch (c) {
    case 'A': return 'T';
    case 'C': return 'G';
    case 'G': return 'C';
    case 'T': return 'A';
    default: return 'N';
    }
}

std::string reverse_complement(std::string_view seq);

bool valid_k(int k);
// Throws InputError unless k is odd and within [kMinK, kMaxK].
void require_valid_k(int k);

// A k-mer packed two bits per base, most significant base first, so that
// numeric order over equal-length k-mers is lexicographic order over A<C<G<T.
class Kmer {
public:
    Kmer() = default;
    Kmer(u128 bits, int k) : bits_(bits), k_(static_cast<std::uint8_t>(k)) {}

    // Returns nullopt when the string has the wrong length or a non-ACGT symbol.
    static std::optional<Kmer> from_string(std::string_view s);
    // Throwing variant for tests and literals.
    static Kmer parse(std::string_view s);

    int k() const { return k_; }
    u128 bits() const { return bits_; }

    int base(int i) const { return static_cast<int>((bits_ >> (2 * (k_ - 1 - i))) & 3); }
    int first_base() const { return base(0); }
    int last_base() const { return static_cast<int>(bits_ & 3); }

    // Drops the first base and appends `code`.
    Kmer successor(int code) const {
        return Kmer(((bits_ << 2) | static_cast<u128>(code)) & mask(), k_);
    }
    // Drops the last base and prepends `code`.
    Kmer predecessor(int code) const {
        return Kmer((bits_ >> 2) | (static_cast<u128>(code) << (2 * (k_ - 1))), k_);
    }

    Kmer reverse_complement() const;
    Kmer canonical() const {
        Kmer rc = reverse_complement();
        return rc.bits_ < bits_ ? rc : *this;
    }
    bool is_canonical() const { return bits_ <= reverse_complement().bits_; }

    std::string to_string() const;

    // Packed form used by every on-disk format: ceil(k/4) bytes, 2-bit
    // codes most-significant-first, final byte zero-padded on the right.
    void pack(std::uint8_t *out) const;
    static Kmer unpack(const std::uint8_t *in, int k);
    static std::size_t packed_size(int k) { return static_cast<std::size_t>((k + 3) / 4); }

    std::uint64_t hash() const;

    friend bool operator==(const Kmer &a, const Kmer &b) = default;
    friend std::strong_ordering operator<=>(const Kmer &a, const Kmer &b) {
        if (a.k_ != b.k_) return a.k_ <=> b.k_;
        if (a.bits_ < b.bits_) return std::strong_ordering::less;
        if (a.bits_ > b.bits_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    u128 mask() const { return (static_cast<u128>(1) << (2 * k_)) - 1; }

    u128 bits_ = 0;
    std::uint8_t k_ = 0;
};

struct KmerHash {
    std::size_t operator()(const Kmer &k) const { return static_cast<std::size_t>(k.hash()); }
};

// Splits `read` at every non-ACGT symbol and emits all k-length windows of
// every clean segment, in read order.
std::vector<Kmer> kmerize(std::string_view read, int k);

// Calls fn(kmer) for each window; same semantics as kmerize without
// materializing the list. `fn` also receives whether the window is the
// first of its clean segment.
template <typename Fn>
void for_each_window(std::string_view read, int k, Fn &&fn) {
    const u128 mask = (static_cast<u128>(1) << (2 * k)) - 1;
    u128 bits = 0;
    int filled = 0;
    for (char c : read) {
        int code = base_code(c);
        if (code < 0) {
            filled = 0;
            bits = 0;
            continue;
        }
        bits = ((bits << 2) | static_cast<u128>(code)) & mask;
        if (++filled >= k) fn(Kmer(bits, k), filled == k);
    }
}

} // namespace picyc

template <>
struct std::hash<picyc::Kmer> {
    std::size_t operator()(const picyc::Kmer &k) const noexcept { return static_cast<std::size_t>(k.hash()); }
};
