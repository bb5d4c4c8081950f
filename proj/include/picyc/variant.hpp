#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "picyc/graph.hpp"
#include "picyc/search.hpp"

namespace picyc {

// A qualifying cycle split at its antipodal branch vertices s and t into two
// equal-length paths, each spelled out as a nucleotide label.
struct Bubble {
    std::uint64_t id = 0;
    int k = 0;
    int n = 0;
    std::vector<Kmer> path_a;  // canonical k-mers, s first, t last
    std::vector<Kmer> path_b;
    std::string label_a;       // length 2k + n + 1
    std::string label_b;

    std::string id_hex() const { return cycle_id_hex(id); }
};

// Spells a path of canonical k-mers starting from `oriented_start` (which
// must canonicalize to path[0]). Returns an empty string when some step has
// no matching edge in the graph.
std::string spell_path(const ColoredGraph &graph, const Kmer &oriented_start,
                       std::span<const Kmer> path);

// Tries both strands of path[0]; throws OrientationError if neither spells.
std::string reconstruct_label(const ColoredGraph &graph, std::span<const Kmer> path);

// Splits at the first antipodal branch pair whose two halves spell from the
// same strand of s and meet on the same strand of t. Throws OrientationError
// when no pair does.
Bubble decompose(const Cycle &cycle, const ColoredGraph &graph);

std::vector<std::size_t> mismatch_offsets(const Bubble &bubble);
int mismatches(const Bubble &bubble);

// Keeps bubbles with 1 <= mismatches <= f.
std::vector<Bubble> filter_bubbles(std::vector<Bubble> bubbles, int f);

// Per-color coverage along both paths, colors as rows.
struct PathCoverage {
    std::size_t colors = 0;
    std::size_t path_length = 0;
    std::vector<std::uint32_t> a;  // a[c * path_length + i]
    std::vector<std::uint32_t> b;
    // Over interior vertices (endpoints s and t excluded); median is the lower median.
    std::vector<std::uint32_t> min_a, min_b, median_a, median_b;

    std::uint32_t at_a(std::size_t c, std::size_t i) const { return a[c * path_length + i]; }
    std::uint32_t at_b(std::size_t c, std::size_t i) const { return b[c * path_length + i]; }
};

PathCoverage extract_coverage(const Bubble &bubble, const ColoredGraph &graph);
// Builds the summaries from filled `a`/`b` matrices.
void summarize(PathCoverage &coverage);

enum class Support { A, B, Both, Absent };
std::string_view to_string(Support s);

struct SnpCall {
    std::uint64_t bubble_id = 0;
    std::size_t offset = 0;
    char allele_a = 'N';
    char allele_b = 'N';
    std::vector<Support> colors;
    bool predicted = false;
};

// A color supports a path when its interior minimum coverage is >= c_min.
// An offset is a predicted SNP when both paths have support and the two
// supporting color sets differ. One call per mismatch offset.
std::vector<SnpCall> predict_snps(const Bubble &bubble, const PathCoverage &coverage, int c_min = 1);

// Two records per bubble (<id>_A, <id>_B), sorted by id, 60-column lines.
void write_fasta(std::vector<Bubble> bubbles, const std::filesystem::path &path);

// TSV sorted by (bubble_id, offset), one classification column per color.
void write_variants(std::vector<SnpCall> calls, const std::vector<std::string> &colors,
                    const std::filesystem::path &path);

} // namespace picyc
