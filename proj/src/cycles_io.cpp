#include "picyc/cycles_io.hpp"

#include "picyc/binio.hpp"
#include "picyc/errors.hpp"

namespace picyc {

std::vector<std::uint8_t> serialize_cycles(const CyclesFile &file) {
    ByteWriter out;
    out.raw(std::string_view(kCyclesMagic, 8));
    out.u32(kCyclesVersion);
    out.u32(static_cast<std::uint32_t>(file.k));
    out.u64(file.fingerprint);
    out.u64(file.index_size);
    out.u64(file.entries_consumed);
    out.u64(file.subgraphs);
    out.u64(file.cycles.size());
    for (const auto &c : file.cycles) {
        out.u32(static_cast<std::uint32_t>(c.vertices.size()));
        out.u32(static_cast<std::uint32_t>(c.branch_positions.size()));
        for (auto p : c.branch_positions) out.u32(p);
        for (const auto &v : c.vertices) out.kmer(v);
    }
    return std::move(out.buffer());
}

CyclesFile load_cycles_bytes(std::span<const std::uint8_t> bytes, const std::string &what) {
    ByteReader in(bytes, what);
    in.expect_magic(std::string_view(kCyclesMagic, 8));
    const auto version = in.u32();
    if (version != kCyclesVersion)
        throw VersionMismatchError(what + ": unsupported cycles version " + std::to_string(version));
    CyclesFile f;
    f.k = static_cast<int>(in.u32());
    if (!valid_k(f.k)) throw InputError(what + ": invalid k " + std::to_string(f.k));
    f.fingerprint = in.u64();
    f.index_size = in.u64();
    f.entries_consumed = in.u64();
    f.subgraphs = in.u64();
    const auto count = in.u64();
    if (count > in.remaining() / 8) throw TruncatedFileError(what + ": truncated file");
    f.cycles.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        Cycle c;
        const auto len = in.u32();
        const auto nb = in.u32();
        if (nb > len) throw InputError(what + ": corrupt cycle record");
        c.branch_positions.resize(nb);
        for (auto &p : c.branch_positions) {
            p = in.u32();
            if (p >= len) throw InputError(what + ": branch position out of range");
        }
        c.vertices.reserve(len);
        for (std::uint32_t j = 0; j < len; ++j) c.vertices.push_back(in.kmer(f.k));
        f.cycles.push_back(std::move(c));
    }
    if (!in.at_end()) throw InputError(what + ": trailing bytes after cycles");
    return f;
}

void save_cycles(const CyclesFile &file, const std::filesystem::path &path) {
    write_file_bytes(path, serialize_cycles(file));
}

CyclesFile load_cycles(const std::filesystem::path &path) {
    auto bytes = read_file_bytes(path);
    return load_cycles_bytes(bytes, path.string());
}

CyclesFile merge_cycle_files(const std::vector<CyclesFile> &files) {
    if (files.empty()) throw InputError("nothing to merge");
    CyclesFile out;
    out.k = files.front().k;
    out.fingerprint = files.front().fingerprint;
    out.index_size = files.front().index_size;
    for (const auto &f : files) {
        if (f.k != out.k || f.fingerprint != out.fingerprint || f.index_size != out.index_size)
            throw ArtifactMismatchError("cycles files come from different graphs or indexes");
        out.entries_consumed += f.entries_consumed;
        out.subgraphs += f.subgraphs;
        out.cycles = merge_cycles(std::move(out.cycles), f.cycles);
    }
    return out;
}

} // namespace picyc
