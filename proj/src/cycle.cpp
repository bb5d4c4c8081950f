#include <algorithm>
#include <cstdio>
#include <map>

#include "picyc/errors.hpp"
#include "picyc/search.hpp"

namespace picyc {

Cycle canonicalize_cycle(const Cycle &cycle) {
    const auto len = cycle.vertices.size();
    if (len < 3) return cycle;
    // Vertices are distinct, so the minimal representation starts at the
    // smallest vertex and heads towards its smaller neighbor.
    const std::size_t start = static_cast<std::size_t>(
        std::min_element(cycle.vertices.begin(), cycle.vertices.end()) - cycle.vertices.begin());
    const auto &next = cycle.vertices[(start + 1) % len];
    const auto &prev = cycle.vertices[(start + len - 1) % len];
    const bool forward = next < prev;

    Cycle out;
    out.vertices.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        const std::size_t src = forward ? (start + i) % len : (start + len - i) % len;
        out.vertices[i] = cycle.vertices[src];
    }
    out.branch_positions.reserve(cycle.branch_positions.size());
    for (auto p : cycle.branch_positions) {
        const std::size_t mapped = forward ? (p + len - start) % len : (start + len - p) % len;
        out.branch_positions.push_back(static_cast<std::uint32_t>(mapped));
    }
    std::sort(out.branch_positions.begin(), out.branch_positions.end());
    return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> antipodal_branch_pairs(const Cycle &cycle) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    const auto len = static_cast<std::uint32_t>(cycle.vertices.size());
    if (len % 2 != 0) return out;
    const std::uint32_t half = len / 2;
    const auto &bp = cycle.branch_positions;
    for (auto p : bp) {
        if (p >= half) break;
        if (std::binary_search(bp.begin(), bp.end(), p + half)) out.emplace_back(p, p + half);
    }
    return out;
}

bool has_antipodal_branch_pair(const Cycle &cycle) { return !antipodal_branch_pairs(cycle).empty(); }

std::uint64_t cycle_id(const Cycle &canonical) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ canonical.vertices.size();
    for (const auto &v : canonical.vertices) {
        h ^= v.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    // final avalanche
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return h;
}

std::string cycle_id_hex(std::uint64_t id) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id));
    return buf;
}

std::vector<Cycle> merge_cycles(std::vector<Cycle> a, std::vector<Cycle> b) {
    std::map<std::vector<Kmer>, std::vector<std::uint32_t>> merged;
    auto add = [&](std::vector<Cycle> &src) {
        for (auto &c : src) {
            auto [it, inserted] = merged.try_emplace(std::move(c.vertices), std::move(c.branch_positions));
            if (!inserted) {
                std::vector<std::uint32_t> u;
                std::set_union(it->second.begin(), it->second.end(), c.branch_positions.begin(),
                               c.branch_positions.end(), std::back_inserter(u));
                it->second = std::move(u);
            }
        }
    };
    add(a);
    add(b);
    std::vector<Cycle> out;
    out.reserve(merged.size());
    for (auto &[v, bp] : merged) out.push_back({v, bp});
    return out;
}

} // namespace picyc
