#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "picyc/search.hpp"
#include "picyc/variant.hpp"

namespace picyc::testkit {

enum class SynthMode { Isolated, Clustered };

struct SynthConfig {
    std::uint64_t seed = 1;
    std::size_t genome_length = 10000;
    int colors = 2;
    std::size_t n_snps = 0;
    SynthMode mode = SynthMode::Isolated;
    int k = 21;
    std::size_t read_length = 100;
    int depth = 30;
    double error_rate = 0.0;
    // Distance between the two SNPs of a clustered pair (must be < k).
    std::size_t cluster_gap = 2;
};

struct PlantedVariant {
    std::size_t position = 0;
    char ref = 'N';
    char alt = 'N';
    std::vector<int> colors;  // colors carrying the alt allele
};

struct PlantedTruth {
    std::string genome;
    std::vector<PlantedVariant> variants;  // sorted by position
};

struct SynthDataset {
    SynthConfig config;
    PlantedTruth truth;
    std::vector<std::string> color_names;
    std::vector<std::string> haplotypes;
    std::vector<std::vector<std::string>> reads;  // per color
};

// Random base genome plus per-color SNPs, tiled into error-free (by default)
// reads on alternating strands. Color 0 always carries the base genome.
// Isolated mode keeps >= 2k bases between variants; clustered mode plants
// pairs cluster_gap bases apart, both in the same color. When the k-mer
// space allows it, every k-mer of every haplotype occurs at one genome
// position only. Throws InputError when the requested density is infeasible.
SynthDataset synth_genomes(const SynthConfig &config);

// Writes color<i>.fa, genome.fa, truth.tsv and manifest.tsv into `dir`;
// returns the manifest path.
std::filesystem::path write_dataset(const SynthDataset &data, const std::filesystem::path &dir);

void write_truth(const PlantedTruth &truth, const std::filesystem::path &path);

inline constexpr std::size_t kBruteForceMaxVertices = 60;

// Exhaustive enumeration of simple cycles through `start` by unbounded
// backtracking, kept when their length is in `allowed_lengths` and, if
// `require_antipodal`, two subgraph-branching vertices sit L/2 apart.
// Output is canonical (smallest of all 2L traversals) and sorted.
std::vector<Cycle> brute_force_cycles(const Subgraph &sub, const Kmer &start,
                                      const std::vector<int> &allowed_lengths,
                                      bool require_antipodal = true);

struct Score {
    double recall = 0.0;
    double precision = 0.0;
    std::size_t planted = 0;
    std::size_t predicted = 0;
    std::size_t matched_truth = 0;
    std::size_t matched_calls = 0;
    bool precision_undefined = false;  // no predicted calls; precision reported as 1.0
};

// A predicted call matches a planted variant when its genome position
// (located through the bubble's left flank) and allele pair agree.
Score score_calls(const std::vector<SnpCall> &calls, const std::vector<Bubble> &bubbles,
                  const PlantedTruth &truth);

// Deterministic helpers shared by tests.
std::string random_sequence(std::mt19937_64 &rng, std::size_t length);
std::size_t draw(std::mt19937_64 &rng, std::size_t bound);

} // namespace picyc::testkit
