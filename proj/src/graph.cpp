#include "picyc/graph.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iterator>
#include <limits>
#include <mutex>
#include <thread>

#include "picyc/binio.hpp"
#include "picyc/errors.hpp"

namespace picyc {

namespace fs = std::filesystem;

namespace {

void saturating_add(std::uint32_t &c, std::uint32_t v = 1) {
    const auto max = std::numeric_limits<std::uint32_t>::max();
    c = (c > max - v) ? max : c + v;
}

// Runs fn(c) for every color on up to `threads` threads; the first error
// (in color order) is rethrown.
template <typename Fn>
void for_colors(std::size_t colors, int threads, Fn &&fn) {
    std::vector<std::exception_ptr> errors(colors);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c; (c = next.fetch_add(1)) < colors;) {
            try {
                fn(c);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(threads, static_cast<int>(colors)));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    }
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);
}

void sort_unique(std::vector<u128> &v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Two passes over the reads keep memory proportional to the distinct k-mers
// rather than colors x k-mers: first the sorted union of canonical k-mers,
// then coverage and edge bits written straight into the node arrays.
// `reads(c, sink)` feeds every read of color c to sink(string_view).
template <typename Reads>
ColoredGraph build_two_pass(int k, std::vector<std::string> names, int threads, Reads &&reads) {
    const std::size_t colors = names.size();

    std::vector<u128> all;
    std::mutex all_mutex;
    for_colors(colors, threads, [&](std::size_t c) {
        std::vector<u128> seen;
        std::size_t compact_at = std::size_t{1} << 22;
        reads(c, [&](std::string_view read) {
            for_each_window(read, k, [&](const Kmer &w, bool) {
                seen.push_back(w.canonical().bits());
                if (seen.size() >= compact_at) {
                    sort_unique(seen);
                    compact_at = std::max(compact_at, 2 * seen.size());
                }
            });
        });
        sort_unique(seen);
        std::lock_guard lock(all_mutex);
        std::vector<u128> merged;
        merged.reserve(all.size() + seen.size());
        std::set_union(all.begin(), all.end(), seen.begin(), seen.end(), std::back_inserter(merged));
        all.swap(merged);
    });

    std::vector<Kmer> kmers;
    kmers.reserve(all.size());
    for (const u128 b : all) kmers.emplace_back(b, k);
    std::vector<u128>().swap(all);

    std::unordered_map<Kmer, NodeId, KmerHash> ids;
    ids.reserve(kmers.size());
    for (NodeId i = 0; i < kmers.size(); ++i) ids.emplace(kmers[i], i);

    std::vector<std::uint32_t> coverage(kmers.size() * colors, 0);
    std::vector<std::uint8_t> edges(kmers.size(), 0);
    auto set_edge = [&](NodeId id, std::uint8_t bit) {
        std::atomic_ref<std::uint8_t>(edges[id]).fetch_or(bit, std::memory_order_relaxed);
    };
    for_colors(colors, threads, [&](std::size_t c) {
        reads(c, [&](std::string_view read) {
            bool have_prev = false;
            Kmer prev;
            NodeId prev_id = 0;
            for_each_window(read, k, [&](const Kmer &w, bool segment_start) {
                const Kmer canon = w.canonical();
                const NodeId id = ids.at(canon);
                saturating_add(coverage[static_cast<std::size_t>(id) * colors + c]);
                if (segment_start) have_prev = false;
                if (have_prev) {
                    const int b = w.last_base();
                    const int a = prev.first_base();
                    set_edge(prev_id, prev == kmers[prev_id] ? forward_edge_bit(b) : reverse_edge_bit(3 - b));
                    set_edge(id, w == canon ? reverse_edge_bit(a) : forward_edge_bit(3 - a));
                }
                prev = w;
                prev_id = id;
                have_prev = true;
            });
        });
    });
    ids = {};
    return ColoredGraph::from_parts(k, std::move(names), std::move(kmers), std::move(coverage),
                                    std::move(edges));
}

void write_meta(ByteWriter &w, const ColoredGraph &g) {
    w.u32(static_cast<std::uint32_t>(g.k()));
    w.u32(static_cast<std::uint32_t>(g.color_count()));
    for (const auto &n : g.color_names()) w.str(n);
    w.u64(g.node_count());
}

void write_nodes(ByteWriter &w, const ColoredGraph &g) {
    for (NodeId i = 0; i < g.node_count(); ++i) {
        w.kmer(g.kmer(i));
        for (auto c : g.coverage(i)) w.u32(c);
        w.u8(g.edges(i));
    }
}

std::uint64_t digest_of(std::span<const std::uint8_t> meta, std::span<const std::uint8_t> nodes) {
    Fnv64 h;
    h.update(meta);
    h.update(nodes);
    return h.digest();
}

} // namespace

std::optional<NodeId> ColoredGraph::find(const Kmer &canonical) const {
    auto it = lookup_.find(canonical);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

NodeId ColoredGraph::at(const Kmer &canonical) const {
    auto id = find(canonical);
    if (!id) throw LookupError("k-mer not in graph: " + canonical.to_string());
    return *id;
}

std::vector<Neighbor> ColoredGraph::neighbors(NodeId id) const {
    const Kmer &self = kmers_[id];
    const std::uint8_t e = edges_[id];
    std::vector<Neighbor> out;
    for (int b = 0; b < 4; ++b) {
        if (e & forward_edge_bit(b)) out.push_back({self.successor(b).canonical(), {true, static_cast<std::uint8_t>(b)}});
        if (e & reverse_edge_bit(b)) out.push_back({self.predecessor(b).canonical(), {false, static_cast<std::uint8_t>(b)}});
    }
    // Keep one tag per distinct neighbor: forward side first, then lowest base.
    std::sort(out.begin(), out.end(), [](const Neighbor &a, const Neighbor &b) {
        if (a.kmer != b.kmer) return a.kmer < b.kmer;
        if (a.tag.forward != b.tag.forward) return a.tag.forward;
        return a.tag.base < b.tag.base;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Neighbor &a, const Neighbor &b) { return a.kmer == b.kmer; }),
              out.end());
    std::erase_if(out, [&](const Neighbor &n) { return n.kmer == self; });
    return out;
}

bool ColoredGraph::has_successor(const Kmer &oriented, int base) const {
    const Kmer canon = oriented.canonical();
    auto id = find(canon);
    if (!id) return false;
    const std::uint8_t bit = (oriented == canon) ? forward_edge_bit(base) : reverse_edge_bit(3 - base);
    return (edges_[*id] & bit) != 0;
}

std::uint64_t ColoredGraph::color_mass(ColorId c) const {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < kmers_.size(); ++i) total += coverage_[i * names_.size() + c];
    return total;
}

bool operator==(const ColoredGraph &a, const ColoredGraph &b) {
    return a.k_ == b.k_ && a.names_ == b.names_ && a.kmers_ == b.kmers_ &&
           a.coverage_ == b.coverage_ && a.edges_ == b.edges_ && a.fingerprint_ == b.fingerprint_;
}

void ColoredGraph::index_nodes() {
    lookup_.clear();
    lookup_.reserve(kmers_.size());
    for (NodeId i = 0; i < kmers_.size(); ++i) lookup_.emplace(kmers_[i], i);
}

ColoredGraph ColoredGraph::from_parts(int k, std::vector<std::string> names, std::vector<Kmer> kmers,
                                      std::vector<std::uint32_t> coverage,
                                      std::vector<std::uint8_t> edges) {
    if (names.empty()) throw InputError("graph needs at least one color");
    if (coverage.size() != kmers.size() * names.size() || edges.size() != kmers.size())
        throw InvariantError("graph parts have inconsistent sizes");
    ColoredGraph g;
    g.k_ = k;
    g.names_ = std::move(names);
    g.kmers_ = std::move(kmers);
    g.coverage_ = std::move(coverage);
    g.edges_ = std::move(edges);
    g.index_nodes();
    ByteWriter meta, nodes;
    write_meta(meta, g);
    write_nodes(nodes, g);
    g.fingerprint_ = digest_of(meta.buffer(), nodes.buffer());
    return g;
}

ColoredGraph build_graph(const std::vector<ColorSample> &manifest, int k, int threads) {
    require_valid_k(k);
    if (manifest.empty()) throw InputError("manifest lists no colors");
    std::vector<std::string> names;
    for (const auto &s : manifest) names.push_back(s.name);
    auto reads = [&](std::size_t c, auto &&sink) {
        for (const auto &file : manifest[c].files) {
            try {
                ReadStream stream(file);
                Read r;
                while (stream.next(r)) sink(r.bases);
            } catch (const ParseError &e) {
                throw ParseError("color '" + manifest[c].name + "': " + e.what(), e.line());
            } catch (const InputError &e) {
                throw IoError("color '" + manifest[c].name + "': " + e.what());
            }
        }
    };
    return build_two_pass(k, std::move(names), threads, reads);
}

ColoredGraph build_graph_from_reads(const std::vector<std::string> &names,
                                    const std::vector<std::vector<std::string>> &reads, int k,
                                    int threads) {
    require_valid_k(k);
    if (names.size() != reads.size()) throw InputError("one read set per color required");
    return build_two_pass(k, names, threads, [&](std::size_t c, auto &&sink) {
        for (const auto &r : reads[c]) sink(r);
    });
}

std::vector<std::uint8_t> serialize_graph(const ColoredGraph &g) {
    ByteWriter out;
    out.raw(std::string_view(kGraphMagic, 8));
    out.u32(kGraphVersion);
    write_meta(out, g);
    out.u64(g.fingerprint());
    write_nodes(out, g);
    return std::move(out.buffer());
}

ColoredGraph load_graph_bytes(std::span<const std::uint8_t> bytes, const std::string &what) {
    ByteReader in(bytes, what);
    in.expect_magic(std::string_view(kGraphMagic, 8));
    const auto version = in.u32();
    if (version != kGraphVersion)
        throw VersionMismatchError(what + ": unsupported graph version " + std::to_string(version));
    const std::size_t meta_begin = in.position();
    const int k = static_cast<int>(in.u32());
    if (!valid_k(k)) throw InputError(what + ": invalid k " + std::to_string(k));
    const auto colors = in.u32();
    if (colors == 0) throw InputError(what + ": graph has no colors");
    std::vector<std::string> names(colors);
    for (auto &n : names) n = in.str();
    const auto count = in.u64();
    const std::size_t meta_end = in.position();
    const auto stored = in.u64();

    const std::size_t record = Kmer::packed_size(k) + 4ull * colors + 1;
    if (count > in.remaining() / record) throw TruncatedFileError(what + ": truncated file");
    const std::size_t nodes_begin = in.position();
    std::vector<Kmer> kmers(count);
    std::vector<std::uint32_t> coverage(count * colors);
    std::vector<std::uint8_t> edges(count);
    for (std::size_t i = 0; i < count; ++i) {
        kmers[i] = in.kmer(k);
        for (std::size_t c = 0; c < colors; ++c) coverage[i * colors + c] = in.u32();
        edges[i] = in.u8();
    }
    if (!in.at_end()) throw InputError(what + ": trailing bytes after node table");
    const auto actual = digest_of(bytes.subspan(meta_begin, meta_end - meta_begin),
                                  bytes.subspan(nodes_begin));
    if (actual != stored) throw DigestMismatchError(what + ": content digest mismatch");
    for (std::size_t i = 1; i < kmers.size(); ++i)
        if (!(kmers[i - 1] < kmers[i])) throw InputError(what + ": nodes not sorted");

    return ColoredGraph::from_parts(k, std::move(names), std::move(kmers), std::move(coverage),
                                    std::move(edges));
}

void save_graph(const ColoredGraph &g, const fs::path &path) {
    write_file_bytes(path, serialize_graph(g));
}

ColoredGraph load_graph(const fs::path &path) {
    auto bytes = read_file_bytes(path);
    return load_graph_bytes(bytes, path.string());
}

std::vector<std::uint8_t> read_file_bytes(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

void write_file_bytes(const fs::path &path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace picyc
