#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "picyc/index.hpp"
#include "picyc/search.hpp"
#include "picyc/testkit.hpp"

namespace picyc {

// Everything a CLI invocation can set. Defaults follow the reference setup:
// k=63, 5000-vertex subgraphs, f=15, whole index.
struct RunConfig {
    int k = 63;
    std::filesystem::path manifest;
    std::filesystem::path graph;
    std::filesystem::path index;
    std::filesystem::path cycles;
    std::filesystem::path out;
    std::filesystem::path stats;  // search stats CSV; default <out>.stats.csv
    std::size_t v_max = 5000;
    int n_min = 0;
    int n_max = -1;
    std::string fraction = "1";
    FractionMode fraction_mode = FractionMode::Strided;
    int f = 15;
    int c_min = 1;
    int threads = 1;
    int shard_id = 0;
    int shard_count = 1;
    std::optional<double> budget_seconds;
    std::size_t chunk = kDefaultChunk;
    std::vector<int> bench_workers{1, 2, 4, 8};
    std::vector<std::filesystem::path> inputs;  // merge-cycles
    testkit::SynthConfig synth;
};

struct BuildSummary {
    std::size_t nodes = 0;
    std::vector<std::string> colors;
    std::vector<std::uint64_t> color_mass;
};

struct CallSummary {
    std::size_t cycles = 0;        // Cyc
    std::size_t filtered = 0;      // Fil
    std::size_t predicted = 0;     // Pred, per SNP position
    std::size_t predicted_bubbles = 0;
    std::size_t subgraphs = 0;     // SubG
    std::size_t index = 0;         // Index
    std::size_t unwalkable = 0;    // cycles that do not split into strand-consistent paths
};

// Splits "I/N" into shard id and count.
std::pair<int, int> parse_shard(const std::string &text);

BuildSummary cmd_build(const RunConfig &cfg, std::ostream &log);
std::size_t cmd_index(const RunConfig &cfg, std::ostream &log);
SearchStats cmd_search(const RunConfig &cfg, std::ostream &log);
CallSummary cmd_call(const RunConfig &cfg, std::ostream &log);

struct BenchRow {
    int workers = 0;
    std::size_t cycles = 0;
    std::size_t entries_consumed = 0;
    double elapsed_seconds = 0.0;
};
std::vector<BenchRow> cmd_bench(const RunConfig &cfg, std::ostream &log);
inline constexpr char kBenchHeader[] = "workers,cycles,entries_consumed,elapsed_seconds";

std::filesystem::path cmd_synth(const RunConfig &cfg, std::ostream &log);
std::size_t cmd_merge_cycles(const RunConfig &cfg, std::ostream &log);

void write_call_summary(std::ostream &out, const CallSummary &s);

} // namespace picyc
