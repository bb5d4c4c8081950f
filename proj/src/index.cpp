#include "picyc/index.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <thread>

#include "picyc/binio.hpp"
#include "picyc/errors.hpp"

namespace picyc {

BranchingIndex build_index(const ColoredGraph &graph, int threads) {
    const std::size_t n = graph.node_count();
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n / 4096 + 1)));
    // Node ranges are processed independently and concatenated in range order,
    // which keeps the output sorted for any worker count.
    std::vector<std::vector<Kmer>> parts(workers);
    auto scan = [&](int w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        for (std::size_t i = begin; i < end; ++i)
            if (graph.degree(static_cast<NodeId>(i)) >= 3) parts[w].push_back(graph.kmer(static_cast<NodeId>(i)));
    };
    if (workers == 1) {
        scan(0);
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    }
    BranchingIndex index;
    index.k = graph.k();
    index.fingerprint = graph.fingerprint();
    for (auto &p : parts) index.entries.insert(index.entries.end(), p.begin(), p.end());
    return index;
}

IndexShard shard_index(const BranchingIndex &index, int shard_id, int shard_count) {
    if (shard_count < 1) throw InputError("shard count must be >= 1");
    if (shard_id < 0 || shard_id >= shard_count)
        throw InputError("shard id " + std::to_string(shard_id) + " out of range for " +
                         std::to_string(shard_count) + " shards");
    const std::size_t n = index.entries.size();
    const std::size_t base = n / shard_count;
    const std::size_t extra = n % shard_count;
    const auto id = static_cast<std::size_t>(shard_id);
    const std::size_t begin = id * base + std::min(id, extra);
    const std::size_t size = base + (id < extra ? 1 : 0);

    IndexShard shard;
    shard.shard_id = shard_id;
    shard.shard_count = shard_count;
    shard.fingerprint = index.fingerprint;
    shard.parent_size = n;
    shard.entries.assign(index.entries.begin() + static_cast<std::ptrdiff_t>(begin),
                         index.entries.begin() + static_cast<std::ptrdiff_t>(begin + size));
    return shard;
}

IndexShard whole_index(const BranchingIndex &index) { return shard_index(index, 0, 1); }

Fraction Fraction::parse(const std::string &text) {
    auto fail = [&] { return InputError("invalid fraction '" + text + "'"); };
    Fraction f;
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        const char *b = text.data();
        auto r1 = std::from_chars(b, b + slash, f.num);
        auto r2 = std::from_chars(b + slash + 1, b + text.size(), f.den);
        if (r1.ec != std::errc() || r1.ptr != b + slash || r2.ec != std::errc() ||
            r2.ptr != b + text.size())
            throw fail();
    } else {
        // Decimal: scale to an exact rational over a power of ten.
        auto dot = text.find('.');
        std::string digits = text;
        std::int64_t den = 1;
        if (dot != std::string::npos) {
            const std::size_t decimals = text.size() - dot - 1;
            if (decimals > 12) throw fail();
            digits.erase(dot, 1);
            for (std::size_t i = 0; i < decimals; ++i) den *= 10;
        }
        auto r = std::from_chars(digits.data(), digits.data() + digits.size(), f.num);
        if (digits.empty() || r.ec != std::errc() || r.ptr != digits.data() + digits.size()) throw fail();
        f.den = den;
    }
    if (f.den <= 0 || f.num <= 0 || f.num > f.den)
        throw InputError("fraction must be in (0, 1], got '" + text + "'");
    const auto g = std::gcd(f.num, f.den);
    f.num /= g;
    f.den /= g;
    return f;
}

IndexShard select_fraction(const IndexShard &shard, Fraction fraction, FractionMode mode) {
    if (fraction.den <= 0 || fraction.num <= 0 || fraction.num > fraction.den)
        throw InputError("fraction must be in (0, 1]");
    IndexShard out = shard;
    const std::size_t n = shard.entries.size();
    const auto num = static_cast<std::size_t>(fraction.num);
    const auto den = static_cast<std::size_t>(fraction.den);
    if (mode == FractionMode::Prefix) {
        const std::size_t keep = (n * num + den - 1) / den;
        out.entries.resize(keep);
    } else {
        const std::size_t step = den / num;
        out.entries.clear();
        for (std::size_t i = 0; i < n; i += step) out.entries.push_back(shard.entries[i]);
    }
    return out;
}

std::vector<WorkRange> partition_for_workers(std::size_t n, int workers, std::size_t chunk) {
    if (workers < 1) throw InputError("worker count must be >= 1");
    if (chunk == 0) throw InputError("chunk size must be >= 1");
    std::vector<WorkRange> ranges;
    for (std::size_t b = 0; b < n; b += chunk) ranges.push_back({b, std::min(n, b + chunk)});
    return ranges;
}

std::vector<std::uint8_t> serialize_index(const BranchingIndex &index) {
    ByteWriter out;
    out.raw(std::string_view(kIndexMagic, 8));
    out.u32(kIndexVersion);
    out.u64(index.fingerprint);
    out.u64(index.entries.size());
    for (const auto &km : index.entries) out.kmer(km);
    return std::move(out.buffer());
}

BranchingIndex load_index_bytes(std::span<const std::uint8_t> bytes, const ColoredGraph &graph,
                                const std::string &what) {
    ByteReader in(bytes, what);
    in.expect_magic(std::string_view(kIndexMagic, 8));
    const auto version = in.u32();
    if (version != kIndexVersion)
        throw VersionMismatchError(what + ": unsupported index version " + std::to_string(version));
    BranchingIndex index;
    index.fingerprint = in.u64();
    if (index.fingerprint != graph.fingerprint())
        throw ArtifactMismatchError("index/graph pair mismatch: " + what +
                                    " was not built from this graph");
    index.k = graph.k();
    const auto count = in.u64();
    if (count > in.remaining() / Kmer::packed_size(index.k))
        throw TruncatedFileError(what + ": truncated file");
    index.entries.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) index.entries.push_back(in.kmer(index.k));
    if (!in.at_end()) throw InputError(what + ": trailing bytes after index entries");
    return index;
}

void save_index(const BranchingIndex &index, const std::filesystem::path &path) {
    write_file_bytes(path, serialize_index(index));
}

BranchingIndex load_index(const std::filesystem::path &path, const ColoredGraph &graph) {
    auto bytes = read_file_bytes(path);
    return load_index_bytes(bytes, graph, path.string());
}

} // namespace picyc
