#include <algorithm>

#include "picyc/errors.hpp"
#include "picyc/search.hpp"

namespace picyc {

Subgraph Subgraph::from_edges(std::vector<Kmer> vertices,
                              const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges) {
    if (vertices.empty()) throw InputError("subgraph needs at least one vertex");
    Subgraph g;
    g.vertices_ = std::move(vertices);
    g.adjacency_.resize(g.vertices_.size());
    for (std::uint32_t i = 0; i < g.vertices_.size(); ++i)
        if (!g.positions_.emplace(g.vertices_[i], i).second)
            throw InputError("duplicate subgraph vertex " + g.vertices_[i].to_string());
    for (auto [a, b] : edges) {
        if (a >= g.size() || b >= g.size() || a == b) throw InputError("bad subgraph edge");
        auto &la = g.adjacency_[a];
        if (std::any_of(la.begin(), la.end(), [&](const SubgraphEdge &e) { return e.to == b; })) continue;
        la.push_back({b, {}});
        g.adjacency_[b].push_back({a, {}});
    }
    for (auto &adj : g.adjacency_)
        std::sort(adj.begin(), adj.end(), [&](const SubgraphEdge &x, const SubgraphEdge &y) {
            return g.vertices_[x.to] < g.vertices_[y.to];
        });
    return g;
}

std::size_t Subgraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto &adj : adjacency_) twice += adj.size();
    return twice / 2;
}

std::optional<std::uint32_t> Subgraph::index_of(const Kmer &km) const {
    auto it = positions_.find(km);
    if (it == positions_.end()) return std::nullopt;
    return it->second;
}

Subgraph graph_neighborhood(const ColoredGraph &graph, const Kmer &seed, std::size_t v_max) {
    if (v_max < 1) throw InputError("v_max must be >= 1");
    Subgraph g;
    std::vector<std::vector<Neighbor>> nbrs;
    g.vertices_.push_back(seed);
    g.positions_.emplace(seed, 0);
    nbrs.push_back(graph.neighbors(seed));

    bool full = g.size() >= v_max;
    for (std::size_t head = 0; head < g.vertices_.size() && !full; ++head) {
        // Copy: nbrs grows while we iterate.
        const std::vector<Neighbor> around = nbrs[head];
        for (const auto &n : around) {
            if (g.positions_.contains(n.kmer)) continue;
            if (g.size() >= v_max) {
                full = true;
                break;
            }
            g.positions_.emplace(n.kmer, static_cast<std::uint32_t>(g.vertices_.size()));
            g.vertices_.push_back(n.kmer);
            nbrs.push_back(graph.neighbors(n.kmer));
        }
    }

    g.adjacency_.resize(g.vertices_.size());
    for (std::uint32_t i = 0; i < g.vertices_.size(); ++i)
        for (const auto &n : nbrs[i])
            if (auto j = g.index_of(n.kmer)) g.adjacency_[i].push_back({*j, n.tag});
    return g;
}

std::vector<Kmer> branching_vertices(const Subgraph &sub) {
    std::vector<Kmer> out;
    for (std::uint32_t i = 0; i < sub.size(); ++i)
        if (sub.degree(i) >= 3) out.push_back(sub.vertex(i));
    std::sort(out.begin(), out.end());
    return out;
}

double complexity(const Subgraph &sub) {
    if (sub.size() == 0) throw InputError("complexity of an empty subgraph");
    return static_cast<double>(sub.edge_count()) / static_cast<double>(sub.size());
}

} // namespace picyc
