#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "picyc/graph.hpp"
#include "picyc/index.hpp"
#include "picyc/kmer.hpp"

namespace picyc {

struct SearchParams {
    int k = 0;
    int n_min = 0;
    int n_max = -1;  // -1 means k
    std::size_t v_max = 5000;
    int workers = 1;
    std::optional<double> budget_seconds;
    std::size_t chunk = kDefaultChunk;

    int effective_n_max() const { return n_max < 0 ? k : n_max; }
    // 2(k+n)+2 at the ends of the n range.
    int min_cycle_length() const { return 2 * (k + n_min) + 2; }
    int max_cycle_length() const { return 2 * (k + effective_n_max()) + 2; }
    // Smallest subgraph that may hold a qualifying cycle.
    std::size_t min_subgraph() const { return static_cast<std::size_t>(2 * k + 2); }
    bool allows_length(int len) const {
        return len % 2 == 0 && len >= min_cycle_length() && len <= max_cycle_length();
    }

    // Throws InputError unless 0 <= n_min <= n_max <= k, v_max >= 2k+2, workers >= 1.
    void validate() const;
};

struct SubgraphEdge {
    std::uint32_t to = 0;
    EdgeTag tag;
};

// Bounded undirected neighborhood around a seed. Vertex 0 is the seed and
// vertices keep their insertion order.
class Subgraph {
public:
    Subgraph() = default;

    // For tests and oracles: arbitrary undirected edge list over local ids.
    static Subgraph from_edges(std::vector<Kmer> vertices,
                               const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges);

    const Kmer &seed() const { return vertices_.front(); }
    std::size_t size() const { return vertices_.size(); }
    std::size_t edge_count() const;
    std::span<const Kmer> vertices() const { return vertices_; }
    const Kmer &vertex(std::uint32_t i) const { return vertices_[i]; }
    const std::vector<SubgraphEdge> &adjacent(std::uint32_t i) const { return adjacency_[i]; }
    std::size_t degree(std::uint32_t i) const { return adjacency_[i].size(); }
    std::optional<std::uint32_t> index_of(const Kmer &km) const;

private:
    friend Subgraph graph_neighborhood(const ColoredGraph &, const Kmer &, std::size_t);

    std::vector<Kmer> vertices_;
    std::vector<std::vector<SubgraphEdge>> adjacency_;
    std::unordered_map<Kmer, std::uint32_t, KmerHash> positions_;
};

// Breadth-first ball around `seed` holding at most v_max vertices, with every
// graph edge among the included vertices.
Subgraph graph_neighborhood(const ColoredGraph &graph, const Kmer &seed, std::size_t v_max);

// Vertices with degree >= 3 inside the subgraph, sorted.
std::vector<Kmer> branching_vertices(const Subgraph &sub);

// Undirected edges per vertex.
double complexity(const Subgraph &sub);

// A simple cycle. `branch_positions` lists, in increasing order, the
// positions whose vertex was branching in the subgraph it was found in.
struct Cycle {
    std::vector<Kmer> vertices;
    std::vector<std::uint32_t> branch_positions;

    int length() const { return static_cast<int>(vertices.size()); }
    friend bool operator==(const Cycle &, const Cycle &) = default;
};

// Rotation/reflection with the lexicographically smallest vertex sequence;
// branch positions are remapped to match.
Cycle canonicalize_cycle(const Cycle &cycle);

// True when some pair of recorded branch positions sits exactly L/2 apart.
bool has_antipodal_branch_pair(const Cycle &cycle);
std::vector<std::pair<std::uint32_t, std::uint32_t>> antipodal_branch_pairs(const Cycle &cycle);

// Stable 64-bit id of a canonical cycle (depends on the vertex sequence only).
std::uint64_t cycle_id(const Cycle &canonical);
std::string cycle_id_hex(std::uint64_t id);

// All simple cycles through `start` with length 2(k+n)+2, n in
// [n_min, n_max], that carry two subgraph-branching vertices L/2 apart.
// Results are canonical and sorted. Calls that violate the entry guard
// (start not branching, |V| <= 2k+2, or fewer than two branching vertices)
// return nothing and bump guard_violations().
std::vector<Cycle> search_cycles(const Subgraph &sub, const Kmer &start, const SearchParams &params);

// Process-wide count of search_cycles calls that failed the entry guard.
std::uint64_t guard_violations();

// Union of two cycle sets keyed by canonical vertex sequence; branch
// positions of duplicates are unioned. Output sorted by vertex sequence.
std::vector<Cycle> merge_cycles(std::vector<Cycle> a, std::vector<Cycle> b);

struct EntryStat {
    std::size_t position = 0;
    std::size_t new_cycles = 0;
    std::size_t cumulative_cycles = 0;
    std::size_t subgraph_vertices = 0;
    std::size_t subgraph_edges = 0;
    double complexity = 0.0;
};

struct SearchStats {
    std::size_t entries_total = 0;
    std::size_t entries_consumed = 0;
    std::size_t subgraphs_built = 0;
    std::size_t subgraphs_searched = 0;
    std::size_t cycles_found = 0;
    std::uint64_t guard_violations = 0;
    bool budget_exhausted = false;
    double elapsed_seconds = 0.0;
    double mean_complexity = 0.0;
    // Ordered by shard position; only consumed entries appear.
    std::vector<EntryStat> entries;
};

struct SearchResult {
    std::vector<Cycle> cycles;  // canonical, sorted
    SearchStats stats;
};

// Builds a neighborhood per shard entry and searches it from every
// subgraph-branching vertex, using params.workers threads pulling chunks
// from a shared queue. The cycle set is independent of the worker count;
// with a budget, no new entry starts after the deadline.
SearchResult parallel_search(const ColoredGraph &graph, const IndexShard &shard,
                             const SearchParams &params);

void write_stats_csv(std::ostream &out, const SearchStats &stats);
void write_stats_report(std::ostream &out, const SearchStats &stats);

} // namespace picyc
