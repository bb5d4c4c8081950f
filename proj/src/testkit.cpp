#include "picyc/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "picyc/errors.hpp"
#include "picyc/seqio.hpp"

namespace picyc::testkit {

namespace fs = std::filesystem;

std::size_t draw(std::mt19937_64 &rng, std::size_t bound) {
    return bound == 0 ? 0 : static_cast<std::size_t>(rng() % bound);
}

std::string random_sequence(std::mt19937_64 &rng, std::size_t length) {
    std::string s(length, 'A');
    for (auto &c : s) c = code_base(static_cast<int>(rng() & 3));
    return s;
}

namespace {

constexpr int kMaxAttempts = 200;

bool uniqueness_feasible(std::size_t length, int k) {
    if (k >= 31) return true;
    const double space = std::pow(4.0, k) / 2.0;
    return static_cast<double>(length) * 2.0 <= space;
}

// Random genome whose canonical k-mers are pairwise distinct.
std::optional<std::string> unique_genome(std::mt19937_64 &rng, std::size_t length, int k,
                                         std::unordered_map<Kmer, std::size_t, KmerHash> &positions) {
    positions.clear();
    std::string g = random_sequence(rng, static_cast<std::size_t>(k - 1));
    g.reserve(length);
    while (g.size() < length) {
        int order[4] = {0, 1, 2, 3};
        std::shuffle(std::begin(order), std::end(order), rng);
        bool placed = false;
        for (int b : order) {
            std::string_view tail(g.data() + g.size() - (k - 1), static_cast<std::size_t>(k - 1));
            Kmer km = Kmer::parse(std::string(tail) + code_base(b)).canonical();
            if (positions.contains(km)) continue;
            positions.emplace(km, g.size() + 1 - static_cast<std::size_t>(k));
            g.push_back(code_base(b));
            placed = true;
            break;
        }
        if (!placed) return std::nullopt;
    }
    return g;
}

struct Unit {
    std::size_t start = 0;
    std::size_t width = 0;  // 0 for a single SNP, cluster_gap for a pair
    int color = 1;
};

std::vector<Unit> layout_units(std::mt19937_64 &rng, const SynthConfig &cfg) {
    std::vector<std::size_t> widths;
    if (cfg.mode == SynthMode::Isolated) {
        widths.assign(cfg.n_snps, 0);
    } else {
        widths.assign(cfg.n_snps / 2, cfg.cluster_gap);
        if (cfg.n_snps % 2) widths.push_back(0);
    }
    const std::size_t sep = 2 * static_cast<std::size_t>(cfg.k);
    std::size_t required = 2 * sep + 1;
    for (auto w : widths) required += w;
    if (!widths.empty()) required += (widths.size() - 1) * sep;
    if (required > cfg.genome_length)
        throw InputError("infeasible variant density: " + std::to_string(cfg.n_snps) +
                         " SNPs do not fit in " + std::to_string(cfg.genome_length) + " bases");
    const std::size_t free = cfg.genome_length - required;
    std::vector<std::size_t> offsets(widths.size());
    for (auto &o : offsets) o = draw(rng, free + 1);
    std::sort(offsets.begin(), offsets.end());
    std::vector<Unit> units(widths.size());
    std::size_t cursor = sep;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        units[i].start = cursor + offsets[i];
        units[i].width = widths[i];
        units[i].color = 1 + static_cast<int>(draw(rng, static_cast<std::size_t>(cfg.colors - 1)));
        cursor += widths[i] + sep;
    }
    return units;
}

std::vector<std::size_t> unit_positions(const Unit &u) {
    if (u.width == 0) return {u.start};
    return {u.start, u.start + u.width};
}

} // namespace

SynthDataset synth_genomes(const SynthConfig &cfg) {
    require_valid_k(cfg.k);
    if (cfg.colors < 1) throw InputError("need at least one color");
    if (cfg.n_snps > 0 && cfg.colors < 2) throw InputError("planting SNPs needs at least two colors");
    if (cfg.genome_length < 20 * static_cast<std::size_t>(cfg.k))
        throw InputError("genome length must be >= 20k");
    if (cfg.mode == SynthMode::Clustered &&
        (cfg.cluster_gap == 0 || cfg.cluster_gap >= static_cast<std::size_t>(cfg.k)))
        throw InputError("cluster gap must be in [1, k)");
    if (cfg.read_length < static_cast<std::size_t>(cfg.k) || cfg.depth < 1)
        throw InputError("reads must be >= k long with depth >= 1");

    std::mt19937_64 rng(cfg.seed);
    const int k = cfg.k;
    const bool unique = uniqueness_feasible(cfg.genome_length, k);

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::unordered_map<Kmer, std::size_t, KmerHash> positions;
        std::string genome;
        if (unique) {
            auto g = unique_genome(rng, cfg.genome_length, k, positions);
            if (!g) continue;
            genome = std::move(*g);
        } else {
            genome = random_sequence(rng, cfg.genome_length);
        }

        const auto units = layout_units(rng, cfg);
        std::vector<PlantedVariant> variants;
        bool ok = true;
        for (const auto &u : units) {
            const auto pos = unit_positions(u);
            bool placed = false;
            for (int tries = 0; tries < 16 && !placed; ++tries) {
                std::vector<char> alts;
                for (auto p : pos) {
                    const int ref = base_code(genome[p]);
                    alts.push_back(code_base((ref + 1 + static_cast<int>(draw(rng, 3))) % 4));
                }
                if (!unique) {
                    placed = true;
                } else {
                    // The alt haplotype's windows over the unit must be novel.
                    const std::size_t lo = pos.front() + 1 - static_cast<std::size_t>(k);
                    std::string segment = genome.substr(lo, pos.back() - lo + static_cast<std::size_t>(k));
                    for (std::size_t i = 0; i < pos.size(); ++i) segment[pos[i] - lo] = alts[i];
                    std::vector<Kmer> fresh;
                    for (const auto &w : kmerize(segment, k)) fresh.push_back(w.canonical());
                    std::unordered_set<Kmer, KmerHash> seen;
                    placed = std::all_of(fresh.begin(), fresh.end(), [&](const Kmer &km) {
                        return !positions.contains(km) && seen.insert(km).second;
                    });
                    if (placed)
                        for (std::size_t i = 0; i < fresh.size(); ++i) positions.emplace(fresh[i], lo + i);
                }
                if (placed)
                    for (std::size_t i = 0; i < pos.size(); ++i)
                        variants.push_back({pos[i], genome[pos[i]], alts[i], {u.color}});
            }
            if (!placed) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        SynthDataset data;
        data.config = cfg;
        data.truth.genome = genome;
        data.truth.variants = std::move(variants);
        for (int c = 0; c < cfg.colors; ++c) {
            data.color_names.push_back("color" + std::to_string(c));
            std::string h = genome;
            for (const auto &v : data.truth.variants)
                if (std::find(v.colors.begin(), v.colors.end(), c) != v.colors.end()) h[v.position] = v.alt;
            data.haplotypes.push_back(std::move(h));
        }

        // Uniform tiling, alternating strands.
        std::mt19937_64 err_rng(cfg.seed ^ 0x5eedf00dULL);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        // Read i starts at floor(i * read_length / depth), so the mean depth
        // matches the request even when depth does not divide read_length.
        for (const auto &h : data.haplotypes) {
            std::vector<std::string> reads;
            const std::size_t rl = std::min(cfg.read_length, h.size());
            const auto depth = static_cast<std::size_t>(cfg.depth);
            std::vector<std::size_t> starts;
            for (std::size_t i = 0;; ++i) {
                const std::size_t s = i * rl / depth;
                if (s + rl > h.size()) break;
                if (starts.empty() || starts.back() != s) starts.push_back(s);
            }
            if (starts.empty() || starts.back() + rl < h.size()) starts.push_back(h.size() - rl);
            for (std::size_t i = 0; i < starts.size(); ++i) {
                std::string r = h.substr(starts[i], rl);
                if (cfg.error_rate > 0)
                    for (auto &b : r)
                        if (unit(err_rng) < cfg.error_rate)
                            b = code_base((base_code(b) + 1 + static_cast<int>(draw(err_rng, 3))) % 4);
                reads.push_back(i % 2 ? reverse_complement(r) : r);
            }
            data.reads.push_back(std::move(reads));
        }
        return data;
    }
    throw InputError("infeasible synthetic dataset: could not place variants with unique context");
}

void write_truth(const PlantedTruth &truth, const fs::path &path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "position\tref\talt\tcolors\n";
    for (const auto &v : truth.variants) {
        out << v.position << '\t' << v.ref << '\t' << v.alt << '\t';
        for (std::size_t i = 0; i < v.colors.size(); ++i) out << (i ? "," : "") << v.colors[i];
        out << '\n';
    }
}

fs::path write_dataset(const SynthDataset &data, const fs::path &dir) {
    fs::create_directories(dir);
    std::vector<ColorSample> samples;
    for (std::size_t c = 0; c < data.reads.size(); ++c) {
        const std::string file = data.color_names[c] + ".fa";
        std::ofstream out(dir / file);
        if (!out) throw IoError("cannot write " + (dir / file).string());
        for (std::size_t i = 0; i < data.reads[c].size(); ++i)
            write_fasta_record(out, data.color_names[c] + "_r" + std::to_string(i), data.reads[c][i], 0);
        samples.push_back({data.color_names[c], {file}});
    }
    {
        std::ofstream g(dir / "genome.fa");
        write_fasta_record(g, "genome", data.truth.genome);
    }
    write_truth(data.truth, dir / "truth.tsv");
    const fs::path manifest = dir / "manifest.tsv";
    write_manifest(manifest, samples);
    return manifest;
}

namespace {

std::vector<Kmer> brute_canonical(const std::vector<Kmer> &seq) {
    const std::size_t n = seq.size();
    std::vector<Kmer> best;
    for (int dir = 0; dir < 2; ++dir) {
        for (std::size_t r = 0; r < n; ++r) {
            std::vector<Kmer> cand(n);
            for (std::size_t i = 0; i < n; ++i)
                cand[i] = dir == 0 ? seq[(r + i) % n] : seq[(r + n - i) % n];
            if (best.empty() || cand < best) best = std::move(cand);
        }
    }
    return best;
}

} // namespace

std::vector<Cycle> brute_force_cycles(const Subgraph &sub, const Kmer &start,
                                      const std::vector<int> &allowed_lengths, bool require_antipodal) {
    if (sub.size() > kBruteForceMaxVertices)
        throw InputError("brute-force oracle limited to " + std::to_string(kBruteForceMaxVertices) + " vertices");
    const auto s = sub.index_of(start);
    if (!s) throw InputError("start vertex not in subgraph");
    const std::set<int> allowed(allowed_lengths.begin(), allowed_lengths.end());

    std::vector<std::vector<std::uint32_t>> adj(sub.size());
    for (std::uint32_t v = 0; v < sub.size(); ++v)
        for (const auto &e : sub.adjacent(v)) adj[v].push_back(e.to);
    std::vector<bool> branching(sub.size());
    for (std::uint32_t v = 0; v < sub.size(); ++v) branching[v] = adj[v].size() >= 3;

    std::set<std::vector<Kmer>> found;
    std::vector<std::uint32_t> path{*s};
    std::vector<bool> used(sub.size(), false);
    used[*s] = true;

    // Plain recursive enumeration of every simple path from s.
    auto walk = [&](auto &&self, std::uint32_t v) -> void {
        for (auto w : adj[v]) {
            if (w == *s && path.size() >= 3) {
                const int len = static_cast<int>(path.size());
                if (!allowed.contains(len)) continue;
                if (require_antipodal) {
                    if (len % 2) continue;
                    bool ok = false;
                    for (int i = 0; i < len; ++i)
                        ok = ok || (branching[path[i]] && branching[path[(i + len / 2) % len]]);
                    if (!ok) continue;
                }
                std::vector<Kmer> seq;
                for (auto p : path) seq.push_back(sub.vertex(p));
                found.insert(brute_canonical(seq));
            } else if (!used[w]) {
                used[w] = true;
                path.push_back(w);
                self(self, w);
                path.pop_back();
                used[w] = false;
            }
        }
    };
    walk(walk, *s);

    std::vector<Cycle> out;
    for (const auto &seq : found) {
        Cycle c;
        c.vertices = seq;
        for (std::uint32_t i = 0; i < seq.size(); ++i)
            if (branching[*sub.index_of(seq[i])]) c.branch_positions.push_back(i);
        out.push_back(std::move(c));
    }
    return out;
}

Score score_calls(const std::vector<SnpCall> &calls, const std::vector<Bubble> &bubbles,
                  const PlantedTruth &truth) {
    std::unordered_map<std::uint64_t, const Bubble *> by_id;
    for (const auto &b : bubbles) by_id.emplace(b.id, &b);
    std::map<std::size_t, std::size_t> truth_at;
    for (std::size_t i = 0; i < truth.variants.size(); ++i) truth_at.emplace(truth.variants[i].position, i);
    const std::string &g = truth.genome;
    const std::string rc = reverse_complement(g);

    Score score;
    score.planted = truth.variants.size();
    std::set<std::size_t> matched;
    for (const auto &call : calls) {
        if (!call.predicted) continue;
        ++score.predicted;
        auto it = by_id.find(call.bubble_id);
        if (it == by_id.end()) continue;
        const Bubble &b = *it->second;
        const std::string flank = b.label_a.substr(0, static_cast<std::size_t>(b.k));
        std::optional<std::size_t> gpos;
        char a = call.allele_a, bb = call.allele_b;
        if (auto p = g.find(flank); p != std::string::npos) {
            gpos = p + call.offset;
        } else if (auto q = rc.find(flank); q != std::string::npos && q + call.offset < g.size()) {
            gpos = g.size() - 1 - (q + call.offset);
            a = complement_base(a);
            bb = complement_base(bb);
        }
        if (!gpos) continue;
        auto t = truth_at.find(*gpos);
        if (t == truth_at.end()) continue;
        const auto &v = truth.variants[t->second];
        if ((v.ref == a && v.alt == bb) || (v.ref == bb && v.alt == a)) {
            ++score.matched_calls;
            matched.insert(t->second);
        }
    }
    score.matched_truth = matched.size();
    score.recall = score.planted ? static_cast<double>(score.matched_truth) / static_cast<double>(score.planted) : 1.0;
    if (score.predicted == 0) {
        score.precision = 1.0;
        score.precision_undefined = true;
    } else {
        score.precision = static_cast<double>(score.matched_calls) / static_cast<double>(score.predicted);
    }
    return score;
}

} // namespace picyc::testkit
