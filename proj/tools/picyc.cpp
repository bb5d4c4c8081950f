// picyc: reference-free SNP discovery from colored de Bruijn graph cycles.
//
//   picyc synth  --out DIR [--seed S --length L --colors C --snps N --mode isolated|clustered -k K]
//   picyc build  --manifest M -k K --out graph.bin
//   picyc index  --graph graph.bin --out index.bin
//   picyc search --graph graph.bin --index index.bin --out cycles.bin [--shard I/N --threads T ...]
//   picyc merge-cycles --out merged.bin a.bin b.bin ...
//   picyc call   --graph graph.bin --cycles cycles.bin --out PREFIX [-f 15 --cmin 1]
//   picyc bench  --graph graph.bin --index index.bin --out bench.csv --workers 1,8 --budget-seconds 10
//
// Exit codes: 0 success, 2 input error, 3 artifact mismatch, 4 internal error.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "picyc/errors.hpp"
#include "picyc/pipeline.hpp"

namespace {

int env_threads() {
    if (const char *v = std::getenv("PICYC_THREADS")) {
        char *end = nullptr;
        long n = std::strtol(v, &end, 10);
        if (end && *end == '\0' && n >= 1) return static_cast<int>(n);
    }
    return 1;
}

} // namespace

int main(int argc, char **argv) {
    using picyc::RunConfig;
    RunConfig cfg;
    int threads = 0;
    std::string shard = "0/1";
    std::string fraction_mode = "strided";
    std::string synth_mode = "isolated";
    double budget = -1;

    CLI::App app{"picyc: parallel cycle search SNP discovery in colored de Bruijn graphs"};
    app.require_subcommand(1);

    auto add_k = [&](CLI::App *s) { s->add_option("-k", cfg.k, "k-mer size (odd, 3..63)"); };
    auto add_threads = [&](CLI::App *s) {
        s->add_option("--threads", threads, "worker threads (default: $PICYC_THREADS or 1)");
    };
    auto add_search = [&](CLI::App *s) {
        s->add_option("--vmax", cfg.v_max, "maximum subgraph vertices");
        s->add_option("--nmin", cfg.n_min, "smallest n in 2(k+n)+2");
        s->add_option("--nmax", cfg.n_max, "largest n in 2(k+n)+2 (default k)");
        s->add_option("--fraction", cfg.fraction, "fraction of the shard to use, e.g. 1/3");
        s->add_option("--fraction-mode", fraction_mode, "prefix or strided")
            ->check(CLI::IsMember({"prefix", "strided"}));
        s->add_option("--shard", shard, "process shard I of N, as I/N");
        s->add_option("--budget-seconds", budget, "stop taking index entries after this many seconds");
        s->add_option("--chunk", cfg.chunk, "index entries per work chunk");
        add_threads(s);
    };

    auto *build = app.add_subcommand("build", "build the colored graph from a manifest");
    build->add_option("--manifest", cfg.manifest, "sample manifest (name<TAB>paths)")->required();
    build->add_option("--out", cfg.out, "graph file")->required();
    add_k(build);
    add_threads(build);

    auto *index = app.add_subcommand("index", "extract the branching-vertex index");
    index->add_option("--graph", cfg.graph)->required();
    index->add_option("--out", cfg.out, "index file")->required();
    add_threads(index);

    auto *search = app.add_subcommand("search", "enumerate 2(k+n)+2 cycles");
    search->add_option("--graph", cfg.graph)->required();
    search->add_option("--index", cfg.index)->required();
    search->add_option("--out", cfg.out, "cycles file")->required();
    search->add_option("--stats", cfg.stats, "stats CSV (default <out>.stats.csv)");
    add_search(search);

    auto *call = app.add_subcommand("call", "decompose cycles and predict SNPs");
    call->add_option("--graph", cfg.graph)->required();
    call->add_option("--cycles", cfg.cycles)->required();
    call->add_option("--out", cfg.out, "output prefix (<out>.fa, <out>.variants.tsv)")->required();
    call->add_option("-f", cfg.f, "maximum mismatches between paths");
    call->add_option("--cmin", cfg.c_min, "minimum interior coverage for path support");

    auto *bench = app.add_subcommand("bench", "search under a budget for several worker counts");
    bench->add_option("--graph", cfg.graph)->required();
    bench->add_option("--index", cfg.index)->required();
    bench->add_option("--out", cfg.out, "CSV file")->required();
    bench->add_option("--workers", cfg.bench_workers, "worker counts")->delimiter(',');
    add_search(bench);

    auto *synth = app.add_subcommand("synth", "write a synthetic multi-color dataset with planted SNPs");
    synth->add_option("--out", cfg.out, "output directory")->required();
    synth->add_option("--seed", cfg.synth.seed);
    synth->add_option("--length", cfg.synth.genome_length, "genome length");
    synth->add_option("--colors", cfg.synth.colors);
    synth->add_option("--snps", cfg.synth.n_snps);
    synth->add_option("--mode", synth_mode)->check(CLI::IsMember({"isolated", "clustered"}));
    synth->add_option("--read-length", cfg.synth.read_length);
    synth->add_option("--depth", cfg.synth.depth);
    synth->add_option("--error-rate", cfg.synth.error_rate);
    synth->add_option("--gap", cfg.synth.cluster_gap, "distance between clustered SNPs");
    synth->add_option("-k", cfg.synth.k, "k used for unique-context checks");

    auto *merge = app.add_subcommand("merge-cycles", "union cycles files from several shards");
    merge->add_option("--out", cfg.out)->required();
    merge->add_option("inputs", cfg.inputs, "cycles files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        cfg.threads = threads > 0 ? threads : env_threads();
        if (budget >= 0) cfg.budget_seconds = budget;
        std::tie(cfg.shard_id, cfg.shard_count) = picyc::parse_shard(shard);
        cfg.fraction_mode = fraction_mode == "prefix" ? picyc::FractionMode::Prefix : picyc::FractionMode::Strided;
        cfg.synth.mode = synth_mode == "clustered" ? picyc::testkit::SynthMode::Clustered
                                                   : picyc::testkit::SynthMode::Isolated;

        if (*build) picyc::cmd_build(cfg, std::cerr);
        else if (*index) picyc::cmd_index(cfg, std::cerr);
        else if (*search) picyc::cmd_search(cfg, std::cerr);
        else if (*call) picyc::cmd_call(cfg, std::cout);
        else if (*bench) picyc::cmd_bench(cfg, std::cerr);
        else if (*synth) picyc::cmd_synth(cfg, std::cerr);
        else if (*merge) picyc::cmd_merge_cycles(cfg, std::cerr);
    } catch (const picyc::ArtifactMismatchError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const picyc::InputError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
