#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "picyc/search.hpp"

namespace picyc {

// Output of one search run, ready for bubble calling. Merging the files of
// several shards unions their cycle sets.
struct CyclesFile {
    int k = 0;
    std::uint64_t fingerprint = 0;
    std::uint64_t index_size = 0;       // size of the full branching index
    std::uint64_t entries_consumed = 0;
    std::uint64_t subgraphs = 0;
    std::vector<Cycle> cycles;          // canonical, sorted

    friend bool operator==(const CyclesFile &, const CyclesFile &) = default;
};

// "PICYCCYC", version, k, fingerprint, index size, consumed entries,
// subgraph count, cycle count; then per cycle: length, branch position
// count, branch positions, packed vertices.
inline constexpr char kCyclesMagic[] = "PICYCCYC";
inline constexpr std::uint32_t kCyclesVersion = 1;

std::vector<std::uint8_t> serialize_cycles(const CyclesFile &file);
CyclesFile load_cycles_bytes(std::span<const std::uint8_t> bytes, const std::string &what = "cycles");
void save_cycles(const CyclesFile &file, const std::filesystem::path &path);
CyclesFile load_cycles(const std::filesystem::path &path);

// Throws ArtifactMismatchError when inputs disagree on k, graph or index.
CyclesFile merge_cycle_files(const std::vector<CyclesFile> &files);

} // namespace picyc
