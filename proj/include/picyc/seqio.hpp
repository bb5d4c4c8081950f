#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace picyc {

struct Read {
    std::string id;
    std::string bases;
};

enum class ReadFormat { Auto, Fasta, Fastq };

// Single-pass reader over a FASTA or FASTQ file. Gzip input is recognized
// by its magic bytes and decompressed transparently. Bases are uppercased;
// qualities are discarded.
class ReadStream {
public:
    explicit ReadStream(const std::filesystem::path &path, ReadFormat format = ReadFormat::Auto);
    ~ReadStream();
    ReadStream(ReadStream &&) noexcept;
    ReadStream &operator=(ReadStream &&) noexcept;

    // Fills `read` with the next record; returns false at end of input.
    // Throws ParseError on malformed records.
    bool next(Read &read);

    ReadFormat format() const { return format_; }

private:
    bool getline(std::string &line);

    struct Impl;
    std::unique_ptr<Impl> impl_;
    ReadFormat format_;
    std::filesystem::path path_;
};

std::vector<Read> read_all(const std::filesystem::path &path, ReadFormat format = ReadFormat::Auto);

// FASTA writer with fixed line wrapping (0 = no wrapping).
void write_fasta_record(std::ostream &out, const std::string &id, const std::string &seq,
                        std::size_t width = 60);

struct ColorSample {
    std::string name;
    std::vector<std::filesystem::path> files;
};

// Manifest lines: `<sample-name>\t<comma-separated read paths>`. Relative
// paths resolve against the manifest's directory. Blank lines and lines
// starting with '#' are skipped.
std::vector<ColorSample> read_manifest(const std::filesystem::path &path);
void write_manifest(const std::filesystem::path &path, const std::vector<ColorSample> &samples);

} // namespace picyc
