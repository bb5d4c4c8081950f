#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <utility>
#include <vector>

#include "picyc/graph.hpp"
#include "picyc/kmer.hpp"
#include "picyc/search.hpp"
#include "picyc/testkit.hpp"

namespace picyc::test {

// Scratch directory removed on scope exit.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("picyc-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir &) = delete;
    TempDir &operator=(const TempDir &) = delete;
    const std::filesystem::path &path() const { return path_; }
    std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path &p, const std::string &text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

inline std::string read_text(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// String-level oracles, deliberately independent of the bit-packed Kmer.
inline std::string revcomp_oracle(const std::string &s) {
    std::string r(s.rbegin(), s.rend());
    for (char &c : r) {
        c = c == 'A' ? 'T' : c == 'C' ? 'G' : c == 'G' ? 'C' : 'A';
    }
    return r;
}

inline std::string canon_oracle(const std::string &s) { return std::min(s, revcomp_oracle(s)); }

// Sequence whose canonical k-mers are all distinct.
inline std::string unique_sequence(std::mt19937_64 &rng, std::size_t n, int k) {
    for (;;) {
        std::string s = testkit::random_sequence(rng, n);
        std::set<std::string> seen;
        bool ok = true;
        for (std::size_t i = 0; i + k <= s.size() && ok; ++i) ok = seen.insert(canon_oracle(s.substr(i, k))).second;
        if (ok) return s;
    }
}

// Copy of a unique-k-mer sequence with substitutions at `positions`; every
// k-mer not covering a substitution stays shared and every covering one is
// novel, so the pair forms one clean bubble per variant cluster.
inline std::pair<std::string, std::string> variant_pair(std::mt19937_64 &rng, std::size_t n, int k,
                                                        const std::vector<std::size_t> &positions) {
    std::size_t covering = 0;
    for (std::size_t i = 0; i + k <= n; ++i) {
        bool hit = false;
        for (auto p : positions) hit |= p >= i && p < i + k;
        covering += hit;
    }
    for (;;) {
        std::string a = unique_sequence(rng, n, k);
        std::string b = a;
        for (auto p : positions) b[p] = "ACGT"[(base_code(a[p]) + 1 + testkit::draw(rng, 3)) % 4];
        std::set<std::string> seen, seen_b;
        for (std::size_t i = 0; i + k <= n; ++i) {
            seen.insert(canon_oracle(a.substr(i, k)));
            seen_b.insert(canon_oracle(b.substr(i, k)));
        }
        const std::size_t windows = n - k + 1;
        if (seen_b.size() != windows) continue;
        seen.insert(seen_b.begin(), seen_b.end());
        if (seen.size() == windows + covering) return {a, b};
    }
}

inline std::pair<std::string, std::string> snp_pair(std::mt19937_64 &rng, std::size_t n, int k,
                                                    std::size_t pos) {
    return variant_pair(rng, n, k, {pos});
}

inline ColoredGraph graph_of(const std::vector<std::string> &per_color, int k) {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> reads;
    for (std::size_t c = 0; c < per_color.size(); ++c) {
        names.push_back("c" + std::to_string(c));
        reads.push_back({per_color[c]});
    }
    return build_graph_from_reads(names, reads, k);
}

// Distinct placeholder k-mers for abstract subgraphs.
inline Kmer label_kmer(std::uint32_t i, int k = 5) { return Kmer(static_cast<u128>(i) * 7 + 3, k); }

// Random connected undirected graph: a base even cycle plus "ears" (paths
// between existing vertices) and a few chords, at most max_vertices.
inline Subgraph random_ear_graph(std::mt19937_64 &rng, std::size_t max_vertices) {
    std::uniform_int_distribution<int> base_len(12, 18);
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
    auto add = [&](std::uint32_t a, std::uint32_t b) {
        if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
    };
    std::uint32_t n = static_cast<std::uint32_t>(base_len(rng));
    for (std::uint32_t i = 0; i < n; ++i) add(i, (i + 1) % n);
    std::uniform_int_distribution<int> ears(2, 6);
    const int ear_count = ears(rng);
    for (int e = 0; e < ear_count; ++e) {
        std::uint32_t a = static_cast<std::uint32_t>(testkit::draw(rng, n));
        std::uint32_t b = static_cast<std::uint32_t>(testkit::draw(rng, n));
        std::size_t len = 1 + testkit::draw(rng, 12);
        if (n + len - 1 > max_vertices) break;
        std::uint32_t prev = a;
        for (std::size_t s = 0; s + 1 < len; ++s) {
            add(prev, n);
            prev = n++;
        }
        add(prev, b);
    }
    const std::size_t chords = testkit::draw(rng, 3);
    for (std::size_t c = 0; c < chords; ++c)
        add(static_cast<std::uint32_t>(testkit::draw(rng, n)), static_cast<std::uint32_t>(testkit::draw(rng, n)));
    std::vector<Kmer> vertices;
    for (std::uint32_t i = 0; i < n; ++i) vertices.push_back(label_kmer(i));
    return Subgraph::from_edges(std::move(vertices), {edges.begin(), edges.end()});
}

inline std::vector<int> allowed_lengths(int k, int n_min, int n_max) {
    std::vector<int> out;
    for (int n = n_min; n <= n_max; ++n) out.push_back(2 * (k + n) + 2);
    return out;
}

} // namespace picyc::test
