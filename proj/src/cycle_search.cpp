#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>

#include "picyc/errors.hpp"
#include "picyc/search.hpp"

namespace picyc {

namespace {

std::atomic<std::uint64_t> g_guard_violations{0};

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

std::vector<std::uint32_t> bfs_distances(const Subgraph &sub, std::uint32_t from) {
    std::vector<std::uint32_t> dist(sub.size(), kUnreached);
    std::deque<std::uint32_t> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (const auto &e : sub.adjacent(v)) {
            if (dist[e.to] != kUnreached) continue;
            dist[e.to] = dist[v] + 1;
            queue.push_back(e.to);
        }
    }
    return dist;
}

// Depth-bounded backtracking from `start`. A path p0..p(m-1) closes into a
// cycle of length m; extending to w can only close at length >= m + dist(w),
// which bounds the walk by the longest allowed cycle.
class CycleWalker {
public:
    CycleWalker(const Subgraph &sub, std::uint32_t start, const std::vector<char> &branching,
                const SearchParams &params)
        : sub_(sub), start_(start), branching_(branching), params_(params),
          max_len_(static_cast<std::uint32_t>(params.max_cycle_length())),
          dist_(bfs_distances(sub, start)), on_path_(sub.size(), 0) {}

    std::vector<Cycle> run() {
        path_.push_back(start_);
        on_path_[start_] = 1;
        extend(start_);
        std::sort(found_.begin(), found_.end(),
                  [](const Cycle &a, const Cycle &b) { return a.vertices < b.vertices; });
        return std::move(found_);
    }

private:
    void extend(std::uint32_t v) {
        const auto m = static_cast<std::uint32_t>(path_.size());
        for (const auto &e : sub_.adjacent(v)) {
            const auto w = e.to;
            if (w == start_) {
                // Each cycle is seen in both directions; keep one.
                if (m >= 3 && params_.allows_length(static_cast<int>(m)) && path_[1] < path_[m - 1])
                    emit();
                continue;
            }
            if (on_path_[w] || dist_[w] == kUnreached || m + dist_[w] > max_len_) continue;
            on_path_[w] = 1;
            path_.push_back(w);
            extend(w);
            path_.pop_back();
            on_path_[w] = 0;
        }
    }

    void emit() {
        const auto len = path_.size();
        const auto half = len / 2;
        bool antipodal = false;
        for (std::size_t i = 0; i < half && !antipodal; ++i)
            antipodal = branching_[path_[i]] && branching_[path_[i + half]];
        if (!antipodal) return;
        Cycle c;
        c.vertices.reserve(len);
        for (std::size_t i = 0; i < len; ++i) {
            c.vertices.push_back(sub_.vertex(path_[i]));
            if (branching_[path_[i]]) c.branch_positions.push_back(static_cast<std::uint32_t>(i));
        }
        found_.push_back(canonicalize_cycle(c));
    }

    const Subgraph &sub_;
    std::uint32_t start_;
    const std::vector<char> &branching_;
    const SearchParams &params_;
    std::uint32_t max_len_;
    std::vector<std::uint32_t> dist_;
    std::vector<char> on_path_;
    std::vector<std::uint32_t> path_;
    std::vector<Cycle> found_;
};

} // namespace

void SearchParams::validate() const {
    require_valid_k(k);
    const int nmax = effective_n_max();
    if (n_min < 0 || n_min > nmax || nmax > k)
        throw InputError("need 0 <= nmin <= nmax <= k (got nmin=" + std::to_string(n_min) +
                         ", nmax=" + std::to_string(nmax) + ", k=" + std::to_string(k) + ")");
    if (v_max < min_subgraph())
        throw InputError("vmax must be >= 2k+2 = " + std::to_string(min_subgraph()));
    if (workers < 1) throw InputError("worker count must be >= 1");
    if (chunk < 1) throw InputError("chunk size must be >= 1");
    if (budget_seconds && *budget_seconds < 0) throw InputError("budget must be >= 0 seconds");
}

std::uint64_t guard_violations() { return g_guard_violations.load(); }

std::vector<Cycle> search_cycles(const Subgraph &sub, const Kmer &start, const SearchParams &params) {
    std::vector<char> branching(sub.size(), 0);
    std::size_t branch_count = 0;
    for (std::uint32_t i = 0; i < sub.size(); ++i)
        if (sub.degree(i) >= 3) {
            branching[i] = 1;
            ++branch_count;
        }
    const auto s = sub.index_of(start);
    if (!s || !branching[*s] || branch_count <= 1 || sub.size() <= params.min_subgraph()) {
        g_guard_violations.fetch_add(1);
        return {};
    }
    return CycleWalker(sub, *s, branching, params).run();
}

} // namespace picyc
