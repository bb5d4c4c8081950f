#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "helpers.hpp"
#include "picyc/cycles_io.hpp"
#include "picyc/errors.hpp"
#include "picyc/pipeline.hpp"

using namespace picyc;
using picyc::test::read_text;
using picyc::test::TempDir;

namespace {

int run_cli(const std::string &args) {
    const std::string cmd = std::string(PICYC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const std::filesystem::path &p) { return "'" + p.string() + "'"; }

// synth + build + index into `dir`, returns the config used.
RunConfig prepare(const TempDir &dir, std::size_t snps, int colors = 2, std::uint64_t seed = 1) {
    RunConfig cfg;
    cfg.synth.seed = seed;
    cfg.synth.n_snps = snps;
    cfg.synth.colors = colors;
    cfg.out = dir / "data";
    std::ostringstream log;
    cfg.manifest = cmd_synth(cfg, log);
    cfg.k = 21;
    cfg.out = dir / "g.bin";
    cmd_build(cfg, log);
    cfg.graph = dir / "g.bin";
    cfg.out = dir / "i.bin";
    cmd_index(cfg, log);
    cfg.index = dir / "i.bin";
    cfg.n_max = 0;
    return cfg;
}

} // namespace

TEST(CmdBuild, SummaryAndDeterminism) {
    TempDir dir;
    test::write_text(dir / "a.fa", ">r1\nACGTTGCAAGGCTTAACCGGTAGCTAGGATC\n");
    test::write_text(dir / "b.fa", ">r1\nACGTTGCAAGGCTTAACCGGTAGCTAGCATC\n");
    test::write_text(dir / "m.tsv", "alpha\ta.fa\nbeta\tb.fa\n");
    RunConfig cfg;
    cfg.k = 21;
    cfg.manifest = dir / "m.tsv";
    cfg.out = dir / "g1.bin";
    std::ostringstream log;
    const auto s = cmd_build(cfg, log);
    EXPECT_EQ(s.colors, (std::vector<std::string>{"alpha", "beta"}));
    EXPECT_EQ(s.color_mass, (std::vector<std::uint64_t>{11, 11}));
    EXPECT_NE(log.str().find("C=2"), std::string::npos);
    cfg.out = dir / "g2.bin";
    cfg.threads = 2;
    cmd_build(cfg, log);
    EXPECT_EQ(read_text(dir / "g1.bin"), read_text(dir / "g2.bin"));
}

TEST(CmdBuild, MissingManifestThrows) {
    TempDir dir;
    RunConfig cfg;
    cfg.manifest = dir / "none.tsv";
    cfg.out = dir / "g.bin";
    std::ostringstream log;
    EXPECT_THROW(cmd_build(cfg, log), InputError);
}

TEST(CmdIndex, Counts) {
    TempDir dir;
    auto cfg = prepare(dir, 0);
    std::ostringstream log;
    cfg.out = dir / "i0.bin";
    EXPECT_EQ(cmd_index(cfg, log), 0u);
    TempDir dir2;
    prepare(dir2, 1);
    const auto g = load_graph(dir2 / "g.bin");
    EXPECT_EQ(load_index(dir2 / "i.bin", g).entries.size(), 2u);
}

TEST(CmdSearch, ThreadsShardFraction) {
    TempDir dir;
    auto cfg = prepare(dir, 30);
    std::ostringstream log;
    cfg.out = dir / "c1.bin";
    const auto s1 = cmd_search(cfg, log);
    cfg.threads = 8;
    cfg.out = dir / "c8.bin";
    cmd_search(cfg, log);
    EXPECT_EQ(read_text(dir / "c1.bin"), read_text(dir / "c8.bin"));
    EXPECT_EQ(read_text(dir / "c1.bin.stats.csv"), read_text(dir / "c8.bin.stats.csv"));

    cfg.threads = 1;
    cfg.shard_id = 0;
    cfg.shard_count = 1;
    cfg.out = dir / "s01.bin";
    cmd_search(cfg, log);
    EXPECT_EQ(read_text(dir / "c1.bin"), read_text(dir / "s01.bin"));

    cfg.fraction = "1/3";
    cfg.out = dir / "third.bin";
    const auto third = cmd_search(cfg, log);
    EXPECT_LE(std::abs(static_cast<double>(third.entries_consumed) - s1.entries_consumed / 3.0), 1.0);
    EXPECT_EQ(load_cycles(dir / "third.bin").index_size, s1.entries_total);
}

TEST(CmdCall, PlantedAndIdentical) {
    TempDir dir;
    auto cfg = prepare(dir, 50);
    std::ostringstream log;
    cfg.out = dir / "c.bin";
    cmd_search(cfg, log);
    cfg.cycles = dir / "c.bin";
    cfg.out = dir / "calls";
    const auto s = cmd_call(cfg, log);
    EXPECT_EQ(s.cycles, 50u);
    EXPECT_EQ(s.filtered, 50u);
    EXPECT_EQ(s.predicted, 50u);
    EXPECT_EQ(s.index, 100u);
    EXPECT_EQ(s.unwalkable, 0u);
    const std::string summary = log.str();
    EXPECT_NE(summary.find("Cyc\tFil\tPred\tPredBubbles\tSubG\tIndex\tUnwalkable\n"), std::string::npos);
    const std::string tsv = read_text(dir / "calls.variants.tsv");
    EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 51);

    TempDir same;
    auto c2 = prepare(same, 0);
    // no variants means no branching and therefore nothing to call
    c2.out = same / "c.bin";
    cmd_search(c2, log);
    c2.cycles = same / "c.bin";
    c2.out = same / "calls";
    const auto s2 = cmd_call(c2, log);
    EXPECT_EQ(s2.predicted, 0u);
    EXPECT_EQ(s2.cycles, 0u);
}

TEST(CmdBench, SingleRowAndHeader) {
    TempDir dir;
    auto cfg = prepare(dir, 10);
    cfg.bench_workers = {1};
    cfg.out = dir / "bench.csv";
    std::ostringstream log;
    const auto rows = cmd_bench(cfg, log);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].cycles, 10u);
    const std::string csv = read_text(dir / "bench.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "workers,cycles,entries_consumed,elapsed_seconds");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(ParseShard, Forms) {
    EXPECT_EQ(parse_shard("2/5"), (std::pair<int, int>{2, 5}));
    EXPECT_THROW(parse_shard("5/5"), InputError);
    EXPECT_THROW(parse_shard("x"), InputError);
    EXPECT_THROW(parse_shard("1/"), InputError);
}

TEST(MergeCycles, RejectsForeignFiles) {
    CyclesFile a, b;
    a.k = b.k = 21;
    a.fingerprint = 1;
    b.fingerprint = 2;
    EXPECT_THROW(merge_cycle_files({a, b}), ArtifactMismatchError);
    b.fingerprint = 1;
    EXPECT_NO_THROW(merge_cycle_files({a, b}));
}

TEST(Cli, ExitCodes) {
    TempDir dir;
    EXPECT_EQ(run_cli("build --manifest " + q(dir / "missing.tsv") + " -k 21 --out " + q(dir / "g.bin")), 2);
    EXPECT_EQ(run_cli("frobnicate"), 2);
    EXPECT_EQ(run_cli("build -k 22 --manifest x --out y"), 2);

    ASSERT_EQ(run_cli("synth --out " + q(dir / "d1") + " --snps 5 --seed 3"), 0);
    ASSERT_EQ(run_cli("synth --out " + q(dir / "d2") + " --snps 5 --seed 4"), 0);
    ASSERT_EQ(run_cli("build --manifest " + q(dir / "d1/manifest.tsv") + " -k 21 --out " + q(dir / "g1.bin")), 0);
    ASSERT_EQ(run_cli("build --manifest " + q(dir / "d2/manifest.tsv") + " -k 21 --out " + q(dir / "g2.bin")), 0);
    ASSERT_EQ(run_cli("index --graph " + q(dir / "g1.bin") + " --out " + q(dir / "i1.bin")), 0);
    // index of graph 1 against graph 2
    EXPECT_EQ(run_cli("search --graph " + q(dir / "g2.bin") + " --index " + q(dir / "i1.bin") + " --out " +
                      q(dir / "c.bin")),
              3);
    ASSERT_EQ(run_cli("search --graph " + q(dir / "g1.bin") + " --index " + q(dir / "i1.bin") + " --nmax 0 --out " +
                      q(dir / "c1.bin")),
              0);
    EXPECT_EQ(run_cli("call --graph " + q(dir / "g2.bin") + " --cycles " + q(dir / "c1.bin") + " --out " +
                      q(dir / "x")),
              3);
    // a zero-length graph file is an input error
    test::write_text(dir / "empty.bin", "");
    EXPECT_EQ(run_cli("index --graph " + q(dir / "empty.bin") + " --out " + q(dir / "e.bin")), 2);
}

TEST(Cli, OutputsDeterministic) {
    TempDir dir;
    ASSERT_EQ(run_cli("synth --out " + q(dir / "d") + " --snps 8 --colors 3 --seed 9"), 0);
    ASSERT_EQ(run_cli("build --manifest " + q(dir / "d/manifest.tsv") + " -k 21 --out " + q(dir / "g.bin")), 0);
    ASSERT_EQ(run_cli("index --graph " + q(dir / "g.bin") + " --out " + q(dir / "i.bin")), 0);
    for (int t : {1, 3}) {
        const std::string tag = std::to_string(t);
        ASSERT_EQ(run_cli("search --graph " + q(dir / "g.bin") + " --index " + q(dir / "i.bin") + " --threads " + tag +
                          " --nmax 2 --out " + q(dir / ("c" + tag + ".bin"))),
                  0);
        ASSERT_EQ(run_cli("call --graph " + q(dir / "g.bin") + " --cycles " + q(dir / ("c" + tag + ".bin")) +
                          " --out " + q(dir / ("v" + tag))),
                  0);
    }
    EXPECT_EQ(read_text(dir / "c1.bin"), read_text(dir / "c3.bin"));
    EXPECT_EQ(read_text(dir / "v1.fa"), read_text(dir / "v3.fa"));
    EXPECT_EQ(read_text(dir / "v1.variants.tsv"), read_text(dir / "v3.variants.tsv"));
    // PICYC_THREADS fallback
    ASSERT_EQ(run_cli("index --graph " + q(dir / "g.bin") + " --out " + q(dir / "i2.bin")), 0);
    const std::string env = "PICYC_THREADS=2 " + std::string(PICYC_CLI_PATH) + " search --graph " + q(dir / "g.bin") +
                            " --index " + q(dir / "i.bin") + " --nmax 2 --out " + q(dir / "ce.bin") + " >/dev/null 2>&1";
    ASSERT_EQ(std::system(env.c_str()), 0);
    EXPECT_EQ(read_text(dir / "c1.bin"), read_text(dir / "ce.bin"));
    EXPECT_EQ(read_text(dir / "i.bin"), read_text(dir / "i2.bin"));
}
