#include "picyc/pipeline.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include "picyc/cycles_io.hpp"
#include "picyc/errors.hpp"
#include "picyc/graph.hpp"
#include "picyc/seqio.hpp"
#include "picyc/variant.hpp"

namespace picyc {

namespace fs = std::filesystem;

namespace {

void require_path(const fs::path &p, const char *flag) {
    if (p.empty()) throw InputError(std::string("missing required option ") + flag);
}

void require_file(const fs::path &p, const char *flag) {
    require_path(p, flag);
    if (!fs::is_regular_file(p)) throw IoError(std::string(flag) + ": no such file " + p.string());
}

SearchParams search_params(const RunConfig &cfg, int k, int workers) {
    SearchParams p;
    p.k = k;
    p.n_min = cfg.n_min;
    p.n_max = cfg.n_max;
    p.v_max = cfg.v_max;
    p.workers = workers;
    p.budget_seconds = cfg.budget_seconds;
    p.chunk = cfg.chunk;
    p.validate();
    return p;
}

IndexShard selected_shard(const RunConfig &cfg, const BranchingIndex &index) {
    IndexShard shard = shard_index(index, cfg.shard_id, cfg.shard_count);
    return select_fraction(shard, Fraction::parse(cfg.fraction), cfg.fraction_mode);
}

} // namespace

std::pair<int, int> parse_shard(const std::string &text) {
    auto slash = text.find('/');
    int id = -1, count = -1;
    const char *b = text.data();
    const char *e = b + text.size();
    if (slash == std::string::npos || std::from_chars(b, b + slash, id).ptr != b + slash ||
        std::from_chars(b + slash + 1, e, count).ptr != e)
        throw InputError("--shard expects I/N, got '" + text + "'");
    if (count < 1 || id < 0 || id >= count) throw InputError("--shard " + text + " out of range");
    return {id, count};
}

BuildSummary cmd_build(const RunConfig &cfg, std::ostream &log) {
    require_file(cfg.manifest, "--manifest");
    require_path(cfg.out, "--out");
    require_valid_k(cfg.k);
    const auto manifest = read_manifest(cfg.manifest);
    const ColoredGraph g = build_graph(manifest, cfg.k, cfg.threads);
    save_graph(g, cfg.out);

    BuildSummary s;
    s.nodes = g.node_count();
    s.colors = g.color_names();
    log << "graph: k=" << g.k() << " C=" << g.color_count() << " nodes=" << g.node_count() << '\n';
    for (ColorId c = 0; c < g.color_count(); ++c) {
        s.color_mass.push_back(g.color_mass(c));
        log << "  color " << c << " (" << g.color_names()[c] << "): kmer_mass=" << s.color_mass.back() << '\n';
    }
    return s;
}

std::size_t cmd_index(const RunConfig &cfg, std::ostream &log) {
    require_file(cfg.graph, "--graph");
    require_path(cfg.out, "--out");
    const ColoredGraph g = load_graph(cfg.graph);
    const BranchingIndex index = build_index(g, cfg.threads);
    save_index(index, cfg.out);
    log << "index: branching_vertices=" << index.entries.size() << '\n';
    return index.entries.size();
}

SearchStats cmd_search(const RunConfig &cfg, std::ostream &log) {
    require_file(cfg.graph, "--graph");
    require_file(cfg.index, "--index");
    require_path(cfg.out, "--out");
    const ColoredGraph g = load_graph(cfg.graph);
    const BranchingIndex index = load_index(cfg.index, g);
    const IndexShard shard = selected_shard(cfg, index);
    const SearchParams params = search_params(cfg, g.k(), cfg.threads);
    SearchResult result = parallel_search(g, shard, params);

    CyclesFile file;
    file.k = g.k();
    file.fingerprint = g.fingerprint();
    file.index_size = index.entries.size();
    file.entries_consumed = result.stats.entries_consumed;
    file.subgraphs = result.stats.subgraphs_built;
    file.cycles = std::move(result.cycles);
    save_cycles(file, cfg.out);

    const fs::path stats_path = cfg.stats.empty() ? fs::path(cfg.out.string() + ".stats.csv") : cfg.stats;
    std::ofstream csv(stats_path);
    if (!csv) throw IoError("cannot write " + stats_path.string());
    write_stats_csv(csv, result.stats);
    log << "search: shard=" << cfg.shard_id << '/' << cfg.shard_count << " entries=" << shard.entries.size()
        << " threads=" << params.workers << '\n';
    write_stats_report(log, result.stats);
    return result.stats;
}

CallSummary cmd_call(const RunConfig &cfg, std::ostream &log) {
    require_file(cfg.graph, "--graph");
    require_file(cfg.cycles, "--cycles");
    require_path(cfg.out, "--out");
    if (cfg.f < 0) throw InputError("-f must be >= 0");
    if (cfg.c_min < 1) throw InputError("--cmin must be >= 1");
    const ColoredGraph g = load_graph(cfg.graph);
    const CyclesFile cycles = load_cycles(cfg.cycles);
    if (cycles.fingerprint != g.fingerprint() || cycles.k != g.k())
        throw ArtifactMismatchError("cycles/graph pair mismatch: " + cfg.cycles.string() +
                                    " was not produced from this graph");

    CallSummary s;
    s.cycles = cycles.cycles.size();
    s.subgraphs = cycles.subgraphs;
    s.index = cycles.index_size;

    std::vector<Bubble> bubbles;
    for (const auto &c : cycles.cycles) {
        try {
            bubbles.push_back(decompose(c, g));
        } catch (const OrientationError &) {
            ++s.unwalkable;
        }
    }
    bubbles = filter_bubbles(std::move(bubbles), cfg.f);
    s.filtered = bubbles.size();

    std::vector<SnpCall> calls;
    for (const auto &b : bubbles) {
        const auto cov = extract_coverage(b, g);
        auto bc = predict_snps(b, cov, cfg.c_min);
        if (!bc.empty() && bc.front().predicted) {
            ++s.predicted_bubbles;
            s.predicted += bc.size();
        }
        calls.insert(calls.end(), std::make_move_iterator(bc.begin()), std::make_move_iterator(bc.end()));
    }
    write_fasta(bubbles, fs::path(cfg.out.string() + ".fa"));
    write_variants(std::move(calls), g.color_names(), fs::path(cfg.out.string() + ".variants.tsv"));
    write_call_summary(log, s);
    return s;
}

void write_call_summary(std::ostream &out, const CallSummary &s) {
    out << "Cyc\tFil\tPred\tPredBubbles\tSubG\tIndex\tUnwalkable\n"
        << s.cycles << '\t' << s.filtered << '\t' << s.predicted << '\t' << s.predicted_bubbles << '\t'
        << s.subgraphs << '\t' << s.index << '\t' << s.unwalkable << '\n';
}

std::vector<BenchRow> cmd_bench(const RunConfig &cfg, std::ostream &log) {
    require_file(cfg.graph, "--graph");
    require_file(cfg.index, "--index");
    require_path(cfg.out, "--out");
    if (cfg.bench_workers.empty()) throw InputError("--workers list is empty");
    const ColoredGraph g = load_graph(cfg.graph);
    const BranchingIndex index = load_index(cfg.index, g);
    const IndexShard shard = selected_shard(cfg, index);

    std::vector<BenchRow> rows;
    for (int w : cfg.bench_workers) {
        const auto result = parallel_search(g, shard, search_params(cfg, g.k(), w));
        rows.push_back({w, result.cycles.size(), result.stats.entries_consumed, result.stats.elapsed_seconds});
        log << "bench: workers=" << w << " cycles=" << rows.back().cycles
            << " entries_consumed=" << rows.back().entries_consumed << '\n';
    }
    std::ofstream out(cfg.out);
    if (!out) throw IoError("cannot write " + cfg.out.string());
    out << kBenchHeader << '\n';
    for (const auto &r : rows) {
        char elapsed[32];
        std::snprintf(elapsed, sizeof elapsed, "%.3f", r.elapsed_seconds);
        out << r.workers << ',' << r.cycles << ',' << r.entries_consumed << ',' << elapsed << '\n';
    }
    return rows;
}

fs::path cmd_synth(const RunConfig &cfg, std::ostream &log) {
    require_path(cfg.out, "--out");
    const auto data = testkit::synth_genomes(cfg.synth);
    const auto manifest = testkit::write_dataset(data, cfg.out);
    log << "synth: colors=" << data.config.colors << " genome=" << data.truth.genome.size()
        << " variants=" << data.truth.variants.size() << " manifest=" << manifest.string() << '\n';
    return manifest;
}

std::size_t cmd_merge_cycles(const RunConfig &cfg, std::ostream &log) {
    require_path(cfg.out, "--out");
    if (cfg.inputs.empty()) throw InputError("merge-cycles needs input files");
    std::vector<CyclesFile> files;
    for (const auto &p : cfg.inputs) {
        require_file(p, "input");
        files.push_back(load_cycles(p));
    }
    const CyclesFile merged = merge_cycle_files(files);
    save_cycles(merged, cfg.out);
    log << "merge-cycles: inputs=" << files.size() << " cycles=" << merged.cycles.size() << '\n';
    return merged.cycles.size();
}

} // namespace picyc
