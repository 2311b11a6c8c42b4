#ifndef LEOIOT_REPORT_HPP
#define LEOIOT_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace leoiot::report {

/// Fixed-precision float formatting; all emitted numbers go through these so
/// a rerun is byte-identical.
std::string fmt_f(double v, int decimals);
std::string fmt_g(double v);  // %.9g, for CSV payloads

/// Plain-text table with space-aligned columns.
class TableWriter {
public:
    explicit TableWriter(std::vector<std::string> headers);
    void add_row(std::vector<std::string> cells);
    std::string str() const;

private:
    std::vector<std::string> headers_;
    std::vector<std::vector<std::string>> rows_;
};

struct FileEntry {
    std::string name;  // relative to the output directory
    std::uint64_t size = 0;
    std::uint64_t hash = 0;  // FNV-1a 64 over the bytes
};

/// Collects files for one run and writes them under a directory, recording
/// size and content hash for the manifest.
class OutputDir {
public:
    explicit OutputDir(std::string dir);  // creates the directory

    void write(const std::string& name, const std::string& content);
    const std::vector<FileEntry>& files() const { return files_; }
    const std::string& dir() const { return dir_; }

    /// Provenance block plus one line per emitted file.
    void write_manifest(std::uint64_t config_hash, std::uint64_t seed, const std::string& version);

private:
    std::string dir_;
    std::vector<FileEntry> files_;
};

}  // namespace leoiot::report

#endif
