#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "picyc/kmer.hpp"
#include "picyc/seqio.hpp"

namespace picyc {

using NodeId = std::uint32_t;
using ColorId = std::uint32_t;

inline constexpr std::uint8_t kForwardEdgeMask = 0x0f;
inline constexpr std::uint8_t kReverseEdgeMask = 0xf0;

inline constexpr std::uint8_t forward_edge_bit(int base) { return static_cast<std::uint8_t>(1u << base); }
inline constexpr std::uint8_t reverse_edge_bit(int base) { return static_cast<std::uint8_t>(1u << (4 + base)); }

// How a neighbor hangs off a canonical node: on the forward side the
// neighbor is `node.successor(base)`, on the reverse side it is
// `node.predecessor(base)`, both before canonicalization.
struct EdgeTag {
    bool forward = true;
    std::uint8_t base = 0;

    friend bool operator==(const EdgeTag &, const EdgeTag &) = default;
};

struct Neighbor {
    Kmer kmer;  // canonical
    EdgeTag tag;

    friend bool operator==(const Neighbor &, const Neighbor &) = default;
};

// Colored de Bruijn graph over canonical k-mers. Nodes are stored sorted by
// k-mer and looked up through a hash table. Instances are immutable once
// built or loaded.
class ColoredGraph {
public:
    ColoredGraph() = default;

    int k() const { return k_; }
    std::size_t color_count() const { return names_.size(); }
    const std::vector<std::string> &color_names() const { return names_; }
    std::size_t node_count() const { return kmers_.size(); }
    std::uint64_t fingerprint() const { return fingerprint_; }

    std::span<const Kmer> kmers() const { return kmers_; }
    const Kmer &kmer(NodeId id) const { return kmers_[id]; }
    std::span<const std::uint32_t> coverage(NodeId id) const {
        return {coverage_.data() + static_cast<std::size_t>(id) * names_.size(), names_.size()};
    }
    std::uint8_t edges(NodeId id) const { return edges_[id]; }

    std::optional<NodeId> find(const Kmer &canonical) const;
    bool contains(const Kmer &canonical) const { return find(canonical).has_value(); }
    // Throws LookupError for unknown k-mers.
    NodeId at(const Kmer &canonical) const;

    // Distinct adjacent canonical k-mers (self loops excluded), sorted by k-mer.
    std::vector<Neighbor> neighbors(NodeId id) const;
    std::vector<Neighbor> neighbors(const Kmer &canonical) const { return neighbors(at(canonical)); }
    int degree(NodeId id) const { return static_cast<int>(neighbors(id).size()); }

    // True when the graph records the edge oriented -> oriented.successor(base),
    // where `oriented` is a node k-mer in either strand.
    bool has_successor(const Kmer &oriented, int base) const;

    // Sum of color c's coverage over all nodes.
    std::uint64_t color_mass(ColorId c) const;

    friend bool operator==(const ColoredGraph &, const ColoredGraph &);

    // Assembles a graph from sorted, deduplicated parts and computes the
    // fingerprint. Used by the builder, the loader and tests.
    static ColoredGraph from_parts(int k, std::vector<std::string> names, std::vector<Kmer> kmers,
                                   std::vector<std::uint32_t> coverage,
                                   std::vector<std::uint8_t> edges);

private:
    void index_nodes();

    int k_ = 0;
    std::vector<std::string> names_;
    std::vector<Kmer> kmers_;
    std::vector<std::uint32_t> coverage_;
    std::vector<std::uint8_t> edges_;
    std::unordered_map<Kmer, NodeId, KmerHash> lookup_;
    std::uint64_t fingerprint_ = 0;
};

// Reads every color's files and builds the graph. `threads` bounds the
// number of colors ingested concurrently; the result does not depend on it.
ColoredGraph build_graph(const std::vector<ColorSample> &manifest, int k, int threads = 1);

// In-memory variant: reads[c] holds the sequences of color c.
ColoredGraph build_graph_from_reads(const std::vector<std::string> &names,
                                    const std::vector<std::vector<std::string>> &reads, int k,
                                    int threads = 1);

// Graph file: "PICYCGPH", version 1, little-endian, nodes sorted.
inline constexpr char kGraphMagic[] = "PICYCGPH";
inline constexpr std::uint32_t kGraphVersion = 1;

std::vector<std::uint8_t> serialize_graph(const ColoredGraph &g);
ColoredGraph load_graph_bytes(std::span<const std::uint8_t> bytes, const std::string &what = "graph");
void save_graph(const ColoredGraph &g, const std::filesystem::path &path);
ColoredGraph load_graph(const std::filesystem::path &path);

} // namespace picyc
