#include "picyc/variant.hpp"

#include <algorithm>
#include <fstream>

#include "picyc/errors.hpp"
#include "picyc/seqio.hpp"

namespace picyc {

std::string spell_path(const ColoredGraph &graph, const Kmer &oriented_start, std::span<const Kmer> path) {
    if (path.empty() || oriented_start.canonical() != path[0]) return {};
    std::string label = oriented_start.to_string();
    Kmer cur = oriented_start;
    for (std::size_t i = 1; i < path.size(); ++i) {
        int step = -1;
        for (int b = 0; b < 4 && step < 0; ++b)
            if (cur.successor(b).canonical() == path[i] && graph.has_successor(cur, b)) step = b;
        if (step < 0) return {};
        label.push_back(code_base(step));
        cur = cur.successor(step);
    }
    return label;
}

std::string reconstruct_label(const ColoredGraph &graph, std::span<const Kmer> path) {
    if (path.empty()) throw InputError("empty path");
    for (const Kmer &start : {path[0], path[0].reverse_complement()}) {
        auto label = spell_path(graph, start, path);
        if (!label.empty()) return label;
    }
    throw OrientationError("path starting at " + path[0].to_string() + " is not a strand-consistent walk");
}

Bubble decompose(const Cycle &cycle, const ColoredGraph &graph) {
    const int k = graph.k();
    const int len = cycle.length();
    if (len < 2 * k + 2 || (len - 2) % 2 != 0)
        throw InputError("cycle length " + std::to_string(len) + " is not 2(k+n)+2");
    const int n = (len - 2) / 2 - k;
    const auto pairs = antipodal_branch_pairs(cycle);
    if (pairs.empty()) throw InputError("cycle has no antipodal branch pair");

    const auto half = static_cast<std::size_t>(len / 2);
    const auto L = static_cast<std::size_t>(len);
    for (const auto &pair : pairs) {
        const std::size_t p = pair.first;
        std::vector<Kmer> path_a, path_b;
        for (std::size_t i = 0; i <= half; ++i) {
            path_a.push_back(cycle.vertices[(p + i) % L]);
            path_b.push_back(cycle.vertices[(p + L - i) % L]);
        }
        for (const Kmer &s : {path_a[0], path_a[0].reverse_complement()}) {
            auto la = spell_path(graph, s, path_a);
            if (la.empty()) continue;
            auto lb = spell_path(graph, s, path_b);
            if (lb.empty()) continue;
            if (la.compare(la.size() - k, k, lb, lb.size() - k, k) != 0) continue;
            Bubble b;
            b.id = cycle_id(cycle);
            b.k = k;
            b.n = n;
            b.path_a = std::move(path_a);
            b.path_b = std::move(path_b);
            b.label_a = std::move(la);
            b.label_b = std::move(lb);
            return b;
        }
    }
    throw OrientationError("cycle " + cycle_id_hex(cycle_id(cycle)) +
                           " does not split into two strand-consistent paths");
}

std::vector<std::size_t> mismatch_offsets(const Bubble &bubble) {
    std::vector<std::size_t> out;
    const auto n = std::min(bubble.label_a.size(), bubble.label_b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (bubble.label_a[i] != bubble.label_b[i]) out.push_back(i);
    return out;
}

int mismatches(const Bubble &bubble) {
    if (bubble.label_a.size() != bubble.label_b.size())
        throw InvariantError("bubble labels differ in length");
    return static_cast<int>(mismatch_offsets(bubble).size());
}

std::vector<Bubble> filter_bubbles(std::vector<Bubble> bubbles, int f) {
    if (f < 0) throw InputError("mismatch limit f must be >= 0");
    std::erase_if(bubbles, [f](const Bubble &b) {
        const int m = mismatches(b);
        return m < 1 || m > f;
    });
    return bubbles;
}

void summarize(PathCoverage &cov) {
    const std::size_t len = cov.path_length;
    cov.min_a.assign(cov.colors, 0);
    cov.min_b.assign(cov.colors, 0);
    cov.median_a.assign(cov.colors, 0);
    cov.median_b.assign(cov.colors, 0);
    if (len < 3) return;
    auto stats = [&](const std::vector<std::uint32_t> &m, std::size_t c, std::uint32_t &mn, std::uint32_t &med) {
        std::vector<std::uint32_t> interior(m.begin() + static_cast<std::ptrdiff_t>(c * len + 1),
                                            m.begin() + static_cast<std::ptrdiff_t>(c * len + len - 1));
        mn = *std::min_element(interior.begin(), interior.end());
        auto mid = interior.begin() + static_cast<std::ptrdiff_t>((interior.size() - 1) / 2);
        std::nth_element(interior.begin(), mid, interior.end());
        med = *mid;
    };
    for (std::size_t c = 0; c < cov.colors; ++c) {
        stats(cov.a, c, cov.min_a[c], cov.median_a[c]);
        stats(cov.b, c, cov.min_b[c], cov.median_b[c]);
    }
}

PathCoverage extract_coverage(const Bubble &bubble, const ColoredGraph &graph) {
    if (bubble.path_a.size() != bubble.path_b.size()) throw InvariantError("bubble paths differ in length");
    PathCoverage cov;
    cov.colors = graph.color_count();
    cov.path_length = bubble.path_a.size();
    cov.a.assign(cov.colors * cov.path_length, 0);
    cov.b.assign(cov.colors * cov.path_length, 0);
    auto fill = [&](const std::vector<Kmer> &path, std::vector<std::uint32_t> &m) {
        for (std::size_t i = 0; i < path.size(); ++i) {
            auto id = graph.find(path[i]);
            if (!id) throw LookupError("bubble vertex missing from graph: " + path[i].to_string());
            auto c = graph.coverage(*id);
            for (std::size_t col = 0; col < cov.colors; ++col) m[col * cov.path_length + i] = c[col];
        }
    };
    fill(bubble.path_a, cov.a);
    fill(bubble.path_b, cov.b);
    summarize(cov);
    return cov;
}

std::string_view to_string(Support s) {
    switch (s) {
    case Support::A: return "A";
    case Support::B: return "B";
    case Support::Both: return "both";
    case Support::Absent: return "absent";
    }
    return "absent";
}

std::vector<SnpCall> predict_snps(const Bubble &bubble, const PathCoverage &coverage, int c_min) {
    if (c_min < 1) throw InputError("c_min must be >= 1");
    const auto threshold = static_cast<std::uint32_t>(c_min);
    std::vector<Support> colors(coverage.colors);
    bool any_a = false, any_b = false, same = true;
    for (std::size_t c = 0; c < coverage.colors; ++c) {
        const bool sa = coverage.min_a[c] >= threshold;
        const bool sb = coverage.min_b[c] >= threshold;
        any_a |= sa;
        any_b |= sb;
        same &= (sa == sb);
        colors[c] = sa && sb ? Support::Both : sa ? Support::A : sb ? Support::B : Support::Absent;
    }
    const bool predicted = any_a && any_b && !same;
    std::vector<SnpCall> calls;
    for (auto off : mismatch_offsets(bubble)) {
        SnpCall call;
        call.bubble_id = bubble.id;
        call.offset = off;
        call.allele_a = bubble.label_a[off];
        call.allele_b = bubble.label_b[off];
        call.colors = colors;
        call.predicted = predicted;
        calls.push_back(std::move(call));
    }
    return calls;
}

void write_fasta(std::vector<Bubble> bubbles, const std::filesystem::path &path) {
    std::sort(bubbles.begin(), bubbles.end(), [](const Bubble &a, const Bubble &b) { return a.id < b.id; });
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    for (const auto &b : bubbles) {
        write_fasta_record(out, b.id_hex() + "_A", b.label_a);
        write_fasta_record(out, b.id_hex() + "_B", b.label_b);
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_variants(std::vector<SnpCall> calls, const std::vector<std::string> &colors,
                    const std::filesystem::path &path) {
    std::sort(calls.begin(), calls.end(), [](const SnpCall &a, const SnpCall &b) {
        return a.bubble_id != b.bubble_id ? a.bubble_id < b.bubble_id : a.offset < b.offset;
    });
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << "bubble_id\toffset\tallele_a\tallele_b\tpredicted";
    for (const auto &c : colors) out << '\t' << c;
    out << '\n';
    for (const auto &call : calls) {
        if (call.colors.size() != colors.size())
            throw InvariantError("call has " + std::to_string(call.colors.size()) +
                                 " color columns, expected " + std::to_string(colors.size()));
        out << cycle_id_hex(call.bubble_id) << '\t' << call.offset << '\t' << call.allele_a << '\t'
            << call.allele_b << '\t' << (call.predicted ? 1 : 0);
        for (auto s : call.colors) out << '\t' << to_string(s);
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace picyc
