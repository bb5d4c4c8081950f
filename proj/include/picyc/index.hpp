#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "picyc/graph.hpp"
#include "picyc/kmer.hpp"

namespace picyc {

// Branching vertices (undirected degree >= 3) of a graph, sorted.
struct BranchingIndex {
    int k = 0;
    std::uint64_t fingerprint = 0;
    std::vector<Kmer> entries;

    friend bool operator==(const BranchingIndex &, const BranchingIndex &) = default;
};

// One process's slice of the index. `entries` is a contiguous range of the
// parent unless a fraction selection has thinned it.
struct IndexShard {
    int shard_id = 0;
    int shard_count = 1;
    std::uint64_t fingerprint = 0;
    std::size_t parent_size = 0;
    std::vector<Kmer> entries;

    friend bool operator==(const IndexShard &, const IndexShard &) = default;
};

BranchingIndex build_index(const ColoredGraph &graph, int threads = 1);

// Contiguous slice; the first (|I| mod N) shards take one extra entry.
IndexShard shard_index(const BranchingIndex &index, int shard_id, int shard_count);
IndexShard whole_index(const BranchingIndex &index);

struct Fraction {
    std::int64_t num = 1;
    std::int64_t den = 1;

    // Accepts "p/q" or a decimal such as "0.5".
    static Fraction parse(const std::string &text);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

enum class FractionMode { Prefix, Strided };

// prefix keeps the first ceil(fraction*n) entries; strided keeps every
// floor(1/fraction)-th entry starting at 0.
IndexShard select_fraction(const IndexShard &shard, Fraction fraction,
                           FractionMode mode = FractionMode::Strided);

struct WorkRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    friend bool operator==(const WorkRange &, const WorkRange &) = default;
};

inline constexpr std::size_t kDefaultChunk = 64;

// Fixed-size chunks over [0, n). Workers pull chunks from a shared queue,
// so the chunk set does not depend on the worker count.
std::vector<WorkRange> partition_for_workers(std::size_t n, int workers,
                                             std::size_t chunk = kDefaultChunk);

// Index file: "PICYCIDX", version, fingerprint, count, packed k-mers. The
// k-mer width comes from the graph the index is loaded against.
inline constexpr char kIndexMagic[] = "PICYCIDX";
inline constexpr std::uint32_t kIndexVersion = 1;

std::vector<std::uint8_t> serialize_index(const BranchingIndex &index);
BranchingIndex load_index_bytes(std::span<const std::uint8_t> bytes, const ColoredGraph &graph,
                                const std::string &what = "index");
void save_index(const BranchingIndex &index, const std::filesystem::path &path);
BranchingIndex load_index(const std::filesystem::path &path, const ColoredGraph &graph);

} // namespace picyc
