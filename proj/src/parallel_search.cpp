#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <ostream>
#include <thread>
#include <unordered_set>

#include "picyc/errors.hpp"
#include "picyc/search.hpp"

namespace picyc {

namespace {

using Clock = std::chrono::steady_clock;

struct EntrySlot {
    bool consumed = false;
    bool searched = false;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    double complexity = 0.0;
    std::vector<std::uint64_t> cycle_ids;
};

using CycleMap = std::map<std::vector<Kmer>, std::vector<std::uint32_t>>;

void absorb(CycleMap &into, Cycle &&c) {
    auto [it, inserted] = into.try_emplace(std::move(c.vertices), std::move(c.branch_positions));
    if (!inserted) {
        std::vector<std::uint32_t> u;
        std::set_union(it->second.begin(), it->second.end(), c.branch_positions.begin(),
                       c.branch_positions.end(), std::back_inserter(u));
        it->second = std::move(u);
    }
}

// One index entry: neighborhood, guard, and a search from every
// subgraph-branching vertex.
void process_entry(const ColoredGraph &graph, const Kmer &seed, const SearchParams &params,
                   EntrySlot &slot, CycleMap &local) {
    Subgraph sub = graph_neighborhood(graph, seed, params.v_max);
    slot.consumed = true;
    slot.vertices = sub.size();
    slot.edges = sub.edge_count();
    slot.complexity = complexity(sub);
    const auto branches = branching_vertices(sub);
    if (branches.size() <= 1 || sub.size() <= params.min_subgraph()) return;
    slot.searched = true;
    std::unordered_set<std::uint64_t> seen;
    for (const auto &b : branches) {
        for (auto &c : search_cycles(sub, b, params)) {
            const auto id = cycle_id(c);
            if (seen.insert(id).second) slot.cycle_ids.push_back(id);
            absorb(local, std::move(c));
        }
    }
    std::sort(slot.cycle_ids.begin(), slot.cycle_ids.end());
}

} // namespace

SearchResult parallel_search(const ColoredGraph &graph, const IndexShard &shard,
                             const SearchParams &params) {
    params.validate();
    if (params.k != graph.k())
        throw InputError("search k=" + std::to_string(params.k) + " does not match graph k=" +
                         std::to_string(graph.k()));
    if (shard.fingerprint != graph.fingerprint())
        throw ArtifactMismatchError("index/graph pair mismatch: shard fingerprint differs from graph");

    const auto t0 = Clock::now();
    const auto violations_before = guard_violations();
    const std::size_t n = shard.entries.size();
    const auto ranges = partition_for_workers(n, params.workers, params.chunk);
    std::optional<Clock::time_point> deadline;
    if (params.budget_seconds)
        deadline = t0 + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(*params.budget_seconds));

    std::vector<EntrySlot> slots(n);
    const int workers = std::max(1, std::min<int>(params.workers, static_cast<int>(ranges.size())));
    std::vector<CycleMap> locals(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::atomic<std::size_t> next_range{0};
    std::atomic<bool> stop{false};

    auto worker = [&](int w) {
        try {
            for (std::size_t r; !stop.load(std::memory_order_relaxed) &&
                                (r = next_range.fetch_add(1)) < ranges.size();) {
                for (std::size_t i = ranges[r].begin; i < ranges[r].end; ++i) {
                    if (deadline && Clock::now() >= *deadline) {
                        stop = true;
                        break;
                    }
                    process_entry(graph, shard.entries[i], params, slots[i], locals[w]);
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
            stop = true;
        }
    };
    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker, w);
    }
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);

    CycleMap merged;
    for (auto &local : locals) {
        for (auto &node : local) {
            Cycle c{node.first, std::move(node.second)};
            absorb(merged, std::move(c));
        }
        local.clear();
    }

    SearchResult result;
    result.cycles.reserve(merged.size());
    for (auto &[v, bp] : merged) result.cycles.push_back({v, bp});

    SearchStats &st = result.stats;
    st.entries_total = n;
    st.budget_exhausted = stop.load() && deadline.has_value();
    std::unordered_set<std::uint64_t> cumulative;
    double complexity_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto &slot = slots[i];
        if (!slot.consumed) continue;
        ++st.entries_consumed;
        ++st.subgraphs_built;
        if (slot.searched) ++st.subgraphs_searched;
        EntryStat e;
        e.position = i;
        for (auto id : slot.cycle_ids) e.new_cycles += cumulative.insert(id).second ? 1 : 0;
        e.cumulative_cycles = cumulative.size();
        e.subgraph_vertices = slot.vertices;
        e.subgraph_edges = slot.edges;
        e.complexity = slot.complexity;
        complexity_sum += slot.complexity;
        st.entries.push_back(e);
    }
    st.cycles_found = result.cycles.size();
    st.mean_complexity = st.subgraphs_built ? complexity_sum / static_cast<double>(st.subgraphs_built) : 0.0;
    st.guard_violations = guard_violations() - violations_before;
    st.elapsed_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return result;
}

void write_stats_csv(std::ostream &out, const SearchStats &stats) {
    out << "entry_position,new_cycles,cumulative_cycles,subgraph_vertices,subgraph_edges,complexity\n";
    for (const auto &e : stats.entries) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", e.complexity);
        out << e.position << ',' << e.new_cycles << ',' << e.cumulative_cycles << ','
            << e.subgraph_vertices << ',' << e.subgraph_edges << ',' << buf << '\n';
    }
}

void write_stats_report(std::ostream &out, const SearchStats &stats) {
    char mean[32], elapsed[32];
    std::snprintf(mean, sizeof mean, "%.6f", stats.mean_complexity);
    std::snprintf(elapsed, sizeof elapsed, "%.3f", stats.elapsed_seconds);
    out << "entries_total=" << stats.entries_total << " entries_consumed=" << stats.entries_consumed
        << " subgraphs_built=" << stats.subgraphs_built
        << " subgraphs_searched=" << stats.subgraphs_searched << " cycles=" << stats.cycles_found
        << " mean_complexity=" << mean << " guard_violations=" << stats.guard_violations
        << " budget_exhausted=" << (stats.budget_exhausted ? 1 : 0) << " elapsed_s=" << elapsed
        << '\n';
}

} // namespace picyc
