#include "picyc/seqio.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "picyc/errors.hpp"

namespace picyc {

namespace fs = std::filesystem;

struct ReadStream::Impl {
    gzFile file = nullptr;
    std::size_t line_no = 0;
    std::string pending;  // FASTA header already consumed for the next record
    bool has_pending = false;
    bool eof = false;
    std::vector<char> buf = std::vector<char>(1 << 16);

    ~Impl() {
        if (file) gzclose(file);
    }
};

ReadStream::ReadStream(const fs::path &path, ReadFormat format)
    : impl_(std::make_unique<Impl>()), format_(format), path_(path) {
    // gzopen reads uncompressed files transparently; gzip is detected by magic.
    impl_->file = gzopen(path.c_str(), "rb");
    if (!impl_->file) throw IoError("cannot open read file " + path.string());
    gzbuffer(impl_->file, 1 << 17);
    int first = gzgetc(impl_->file);
    if (first == -1) {
        impl_->eof = true;
        return;
    }
    gzungetc(first, impl_->file);
    if (format_ == ReadFormat::Auto) {
        if (first == '>') format_ = ReadFormat::Fasta;
        else if (first == '@') format_ = ReadFormat::Fastq;
        else throw ParseError(path.string() + ": cannot detect format from first byte", 1);
    }
}

ReadStream::~ReadStream() = default;
ReadStream::ReadStream(ReadStream &&) noexcept = default;
ReadStream &ReadStream::operator=(ReadStream &&) noexcept = default;

bool ReadStream::getline(std::string &line) {
    line.clear();
    if (impl_->eof) return false;
    bool any = false;
    for (;;) {
        char *got = gzgets(impl_->file, impl_->buf.data(), static_cast<int>(impl_->buf.size()));
        if (!got) {
            int err = 0;
            const char *msg = gzerror(impl_->file, &err);
            if (err != Z_OK && err != Z_STREAM_END)
                throw IoError(path_.string() + ": " + msg);
            impl_->eof = true;
            break;
        }
        any = true;
        line.append(got);
        if (!line.empty() && line.back() == '\n') break;
    }
    if (!any) return false;
    ++impl_->line_no;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    return true;
}

namespace {

void upper(std::string &s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
}

std::string header_id(const std::string &line) {
    auto end = line.find_first_of(" \t", 1);
    return line.substr(1, end == std::string::npos ? std::string::npos : end - 1);
}

} // namespace

bool ReadStream::next(Read &read) {
    std::string line;
    if (format_ == ReadFormat::Fasta) {
        if (!impl_->has_pending) {
            do {
                if (!getline(line)) return false;
            } while (line.empty());
            if (line[0] != '>')
                throw ParseError(path_.string() + ": expected '>' header", impl_->line_no);
        } else {
            line = std::move(impl_->pending);
            impl_->has_pending = false;
        }
        read.id = header_id(line);
        read.bases.clear();
        while (getline(line)) {
            if (!line.empty() && line[0] == '>') {
                impl_->pending = std::move(line);
                impl_->has_pending = true;
                break;
            }
            read.bases += line;
        }
        upper(read.bases);
        return true;
    }

    do {
        if (!getline(line)) return false;
    } while (line.empty());
    const std::size_t record_line = impl_->line_no;
    if (line[0] != '@')
        throw ParseError(path_.string() + ": expected '@' header", record_line);
    read.id = header_id(line);
    if (!getline(read.bases))
        throw ParseError(path_.string() + ": truncated FASTQ record", record_line);
    if (!getline(line) || line.empty() || line[0] != '+')
        throw ParseError(path_.string() + ": expected '+' separator", impl_->line_no);
    std::string qual;
    if (!getline(qual))
        throw ParseError(path_.string() + ": missing quality line", record_line);
    if (qual.size() != read.bases.size())
        throw ParseError(path_.string() + ": sequence/quality length mismatch in record '" +
                             read.id + "'",
                         impl_->line_no);
    upper(read.bases);
    return true;
}

std::vector<Read> read_all(const fs::path &path, ReadFormat format) {
    ReadStream stream(path, format);
    std::vector<Read> out;
    Read r;
    while (stream.next(r)) out.push_back(r);
    return out;
}

void write_fasta_record(std::ostream &out, const std::string &id, const std::string &seq,
                        std::size_t width) {
    out << '>' << id << '\n';
    if (width == 0) {
        out << seq << '\n';
        return;
    }
    for (std::size_t i = 0; i < seq.size(); i += width) out << seq.substr(i, width) << '\n';
}

std::vector<ColorSample> read_manifest(const fs::path &path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path.string());
    const fs::path base = path.parent_path();
    std::vector<ColorSample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw ParseError(path.string() + ": expected '<name>\\t<paths>'", line_no);
        ColorSample s;
        s.name = line.substr(0, tab);
        std::stringstream paths(line.substr(tab + 1));
        std::string p;
        while (std::getline(paths, p, ',')) {
            if (p.empty()) continue;
            fs::path fp(p);
            s.files.push_back(fp.is_absolute() ? fp : base / fp);
        }
        if (s.files.empty())
            throw ParseError(path.string() + ": sample '" + s.name + "' lists no files", line_no);
        samples.push_back(std::move(s));
    }
    if (samples.empty()) throw InputError("manifest " + path.string() + " lists no samples");
    return samples;
}

void write_manifest(const fs::path &path, const std::vector<ColorSample> &samples) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write manifest " + path.string());
    for (const auto &s : samples) {
        out << s.name << '\t';
        for (std::size_t i = 0; i < s.files.size(); ++i) {
            if (i) out << ',';
            out << s.files[i].string();
        }
        out << '\n';
    }
}

} // namespace picyc
