#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "helpers.hpp"
#include "picyc/binio.hpp"
#include "picyc/errors.hpp"
#include "picyc/graph.hpp"

using namespace picyc;
using picyc::test::canon_oracle;
using picyc::test::graph_of;
using picyc::test::TempDir;

namespace {

// Brute-force degree oracle: canonical strings and undirected edges from
// consecutive windows of each sequence.
struct StringGraph {
    std::set<std::string> nodes;
    std::map<std::string, std::set<std::string>> adj;
};

StringGraph string_graph(const std::vector<std::string> &seqs, int k) {
    StringGraph g;
    for (const auto &s : seqs) {
        std::string prev;
        for (std::size_t i = 0; i + k <= s.size(); ++i) {
            std::string c = canon_oracle(s.substr(i, k));
            g.nodes.insert(c);
            if (!prev.empty() && prev != c) {
                g.adj[prev].insert(c);
                g.adj[c].insert(prev);
            }
            prev = c;
        }
    }
    return g;
}

void expect_edge_symmetry(const ColoredGraph &g) {
    for (NodeId id = 0; id < g.node_count(); ++id) {
        for (const auto &nb : g.neighbors(id)) {
            ASSERT_TRUE(g.contains(nb.kmer)) << "dangling edge from " << g.kmer(id).to_string();
            bool back = false;
            for (const auto &b : g.neighbors(nb.kmer)) back |= b.kmer == g.kmer(id);
            ASSERT_TRUE(back) << g.kmer(id).to_string() << " -> " << nb.kmer.to_string();
        }
    }
}

ColoredGraph random_graph(std::mt19937_64 &rng, std::size_t colors, std::size_t target_nodes, int k) {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> reads(colors);
    const std::string base = testkit::random_sequence(rng, target_nodes + k - 1);
    for (std::size_t c = 0; c < colors; ++c) {
        names.push_back("sample_" + std::to_string(c));
        for (int r = 0; r < 20; ++r) {
            std::size_t at = testkit::draw(rng, base.size() - 200);
            reads[c].push_back(base.substr(at, 200));
        }
        if (c == 0) reads[c].push_back(base);
    }
    return build_graph_from_reads(names, reads, k);
}

} // namespace

TEST(BuildGraph, AcgtaCollapsesStrands) {
    // CGT is the reverse complement of ACG, so the three windows of ACGTA
    // fall on two canonical nodes and the ACG-CGT step is a self loop.
    const ColoredGraph g = graph_of({"ACGTA"}, 3);
    auto sg = string_graph({"ACGTA"}, 3);
    ASSERT_EQ(g.node_count(), sg.nodes.size());
    EXPECT_EQ(g.node_count(), 2u);
    EXPECT_EQ(g.coverage(g.at(Kmer::parse("ACG")))[0], 2u);
    for (NodeId i = 0; i < g.node_count(); ++i) {
        EXPECT_GE(g.coverage(i)[0], 1u);
        EXPECT_EQ(static_cast<std::size_t>(g.degree(i)), sg.adj[g.kmer(i).to_string()].size());
    }
}

TEST(BuildGraph, ThreeNodeChain) {
    const ColoredGraph g = graph_of({"AACCA"}, 3);
    ASSERT_EQ(g.node_count(), 3u);
    std::size_t degree_sum = 0;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        EXPECT_GE(g.coverage(i)[0], 1u);
        degree_sum += g.degree(i);
    }
    EXPECT_EQ(degree_sum, 4u);  // two undirected edges
}

TEST(BuildGraph, ChainNeighbors) {
    // 3 distinct canonical k-mers in a row: AAC, ACC, CCA
    const ColoredGraph g = graph_of({"AACCA"}, 3);
    ASSERT_EQ(g.node_count(), 3u);
    EXPECT_EQ(g.neighbors(Kmer::parse("ACC").canonical()).size(), 2u);
    EXPECT_EQ(g.neighbors(Kmer::parse("AAC").canonical()).size(), 1u);
    EXPECT_EQ(g.neighbors(Kmer::parse("CCA").canonical()).size(), 1u);
    EXPECT_THROW(g.neighbors(Kmer::parse("GGG").canonical()), LookupError);
}

TEST(BuildGraph, IdenticalColorsSymmetric) {
    std::mt19937_64 rng(11);
    const std::string s = testkit::random_sequence(rng, 300);
    const ColoredGraph g = graph_of({s, s}, 21);
    const ColoredGraph single = graph_of({s}, 21);
    ASSERT_EQ(g.node_count(), single.node_count());
    for (NodeId i = 0; i < g.node_count(); ++i) {
        EXPECT_EQ(g.kmer(i), single.kmer(i));
        EXPECT_EQ(g.edges(i), single.edges(i));
        EXPECT_EQ(g.coverage(i)[0], g.coverage(i)[1]);
    }
}

TEST(BuildGraph, PlantedSnpCountsMatchSetOracle) {
    const int k = 21;
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        auto [a, b] = test::snp_pair(rng, 200, k, 60 + trial * 20);
        const ColoredGraph g = graph_of({a, b}, k);
        auto sg = string_graph({a, b}, k);
        auto sa = string_graph({a}, k);
        std::size_t shared = 0;
        for (const auto &n : string_graph({b}, k).nodes) shared += sa.nodes.count(n);
        EXPECT_EQ(shared, 200u - k + 1 - k);
        EXPECT_EQ(g.node_count(), sg.nodes.size());
        EXPECT_EQ(g.node_count(), shared + 2 * k);

        int degree3 = 0;
        for (NodeId i = 0; i < g.node_count(); ++i) {
            const std::string name = g.kmer(i).to_string();
            ASSERT_EQ(static_cast<std::size_t>(g.degree(i)), sg.adj[name].size()) << name;
            degree3 += g.degree(i) == 3;
            EXPECT_LE(g.degree(i), 3);
        }
        EXPECT_EQ(degree3, 2);
        expect_edge_symmetry(g);
    }
}

TEST(BuildGraph, SimplePathForUniqueSequence) {
    std::mt19937_64 rng(3);
    const std::string s = test::unique_sequence(rng, 2000, 21);
    const ColoredGraph g = graph_of({s}, 21);
    EXPECT_EQ(g.node_count(), 2000u - 21 + 1);
    for (NodeId i = 0; i < g.node_count(); ++i) EXPECT_LE(g.degree(i), 2);
}

TEST(BuildGraph, MassEqualsWindowCount) {
    std::mt19937_64 rng(4);
    std::vector<std::vector<std::string>> reads(3);
    std::vector<std::size_t> windows(3, 0);
    for (int c = 0; c < 3; ++c) {
        for (int r = 0; r < 40; ++r) {
            std::string s = testkit::random_sequence(rng, 30 + testkit::draw(rng, 90));
            if (r % 7 == 0) s[testkit::draw(rng, s.size())] = 'N';
            windows[c] += kmerize(s, 15).size();
            reads[c].push_back(s);
        }
    }
    const ColoredGraph g = build_graph_from_reads({"x", "y", "z"}, reads, 15);
    for (ColorId c = 0; c < 3; ++c) EXPECT_EQ(g.color_mass(c), windows[c]);
    expect_edge_symmetry(g);
}

TEST(BuildGraph, ThreadCountDoesNotMatter) {
    std::mt19937_64 rng(8);
    const ColoredGraph g = random_graph(rng, 6, 3000, 21);
    std::mt19937_64 rng2(8);
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> reads(6);
    const std::string base = testkit::random_sequence(rng2, 3000 + 20);
    for (std::size_t c = 0; c < 6; ++c) {
        names.push_back("sample_" + std::to_string(c));
        for (int r = 0; r < 20; ++r) reads[c].push_back(base.substr(testkit::draw(rng2, base.size() - 200), 200));
        if (c == 0) reads[c].push_back(base);
    }
    const ColoredGraph g4 = build_graph_from_reads(names, reads, 21, 4);
    EXPECT_TRUE(g == g4);
    EXPECT_EQ(serialize_graph(g), serialize_graph(g4));
}

TEST(BuildGraph, FromManifestFiles) {
    TempDir dir;
    test::write_text(dir / "a.fa", ">r\nACGTACGGTCA\n");
    test::write_text(dir / "b.fq", "@r\nACGTACGGTCA\n+\nIIIIIIIIIII\n");
    write_manifest(dir / "m.tsv", {{"a", {dir / "a.fa"}}, {"b", {dir / "b.fq"}}});
    const ColoredGraph g = build_graph(read_manifest(dir / "m.tsv"), 5, 2);
    EXPECT_EQ(g.color_count(), 2u);
    EXPECT_EQ(g.color_names()[1], "b");
    EXPECT_EQ(g.color_mass(0), g.color_mass(1));
    EXPECT_EQ(g.color_mass(0), 7u);
}

TEST(BuildGraph, BadFileNamesColor) {
    TempDir dir;
    test::write_text(dir / "bad.fq", "@r\nACGT\n+\nII\n");
    try {
        build_graph({{"sampleX", {dir / "bad.fq"}}}, 3);
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_NE(std::string(e.what()).find("sampleX"), std::string::npos);
    }
}

TEST(GraphFile, RoundTripChain) {
    TempDir dir;
    const ColoredGraph g = graph_of({"AACCA"}, 3);
    save_graph(g, dir / "g.bin");
    const ColoredGraph h = load_graph(dir / "g.bin");
    EXPECT_TRUE(g == h);
    EXPECT_EQ(g.fingerprint(), h.fingerprint());
    EXPECT_EQ(serialize_graph(h), serialize_graph(g));
}

TEST(GraphFile, HeaderLayout) {
    const ColoredGraph g = graph_of({"AACCA"}, 3);
    const auto bytes = serialize_graph(g);
    ASSERT_GE(bytes.size(), 24u);
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 8), "PICYCGPH");
    EXPECT_EQ(bytes[8], 1);  // version, little-endian
    EXPECT_EQ(bytes[12], 3); // k
    EXPECT_EQ(bytes[16], 1); // C
    // header 20 + name (4+2) + count 8 + fingerprint 8, then 3 nodes of 1+4+1 bytes
    EXPECT_EQ(bytes.size(), 20u + 6 + 16 + 3 * 6);
}

TEST(GraphFile, FiftyColorsTenThousandNodes) {
    std::mt19937_64 rng(50);
    const ColoredGraph g = random_graph(rng, 50, 10000, 31);
    EXPECT_GE(g.node_count(), 10000u);
    const auto bytes = serialize_graph(g);
    const ColoredGraph h = load_graph_bytes(bytes);
    EXPECT_EQ(h.fingerprint(), g.fingerprint());
    EXPECT_TRUE(h == g);
    EXPECT_EQ(serialize_graph(h), bytes);
    expect_edge_symmetry(h);
}

TEST(GraphFile, ZeroLengthIsBadMagic) {
    TempDir dir;
    test::write_text(dir / "empty.bin", "");
    EXPECT_THROW(load_graph(dir / "empty.bin"), BadMagicError);
}

TEST(GraphFile, DistinctErrors) {
    std::mt19937_64 rng(1);
    const ColoredGraph g = graph_of({testkit::random_sequence(rng, 100)}, 11);
    const auto good = serialize_graph(g);

    auto bad_magic = good;
    bad_magic[0] = 'X';
    EXPECT_THROW(load_graph_bytes(bad_magic), BadMagicError);

    auto bad_version = good;
    bad_version[8] = 2;
    EXPECT_THROW(load_graph_bytes(bad_version), VersionMismatchError);

    for (std::size_t cut : {good.size() - 1, good.size() / 2, std::size_t{10}}) {
        std::vector<std::uint8_t> truncated(good.begin(), good.begin() + cut);
        EXPECT_THROW(load_graph_bytes(truncated), TruncatedFileError) << cut;
    }

    auto flipped = good;
    flipped[good.size() - 3] ^= 0x01;  // a coverage byte of the last node
    EXPECT_THROW(load_graph_bytes(flipped), DigestMismatchError);

    auto trailing = good;
    trailing.push_back(0);
    EXPECT_THROW(load_graph_bytes(trailing), InputError);
}
