#include "leoiot/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "leoiot/rng.hpp"

namespace leoiot::report {

std::string fmt_f(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

TableWriter::TableWriter(std::vector<std::string> headers) : headers_(std::move(headers)) {}

void TableWriter::add_row(std::vector<std::string> cells) {
    if (cells.size() != headers_.size())
        throw std::invalid_argument("report: row width does not match the header");
    rows_.push_back(std::move(cells));
}

std::string TableWriter::str() const {
    std::vector<std::size_t> width(headers_.size());
    for (std::size_t c = 0; c < headers_.size(); ++c) width[c] = headers_[c].size();
    for (const auto& row : rows_)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

    std::string out;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            if (c + 1 < row.size()) out.append(width[c] - row[c].size() + 2, ' ');
        }
        out += '\n';
    };
    emit(headers_);
    std::string rule;
    for (std::size_t c = 0; c < width.size(); ++c) {
        rule.append(width[c], '-');
        if (c + 1 < width.size()) rule.append(2, ' ');
    }
    out += rule + '\n';
    for (const auto& row : rows_) emit(row);
    return out;
}

OutputDir::OutputDir(std::string dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

void OutputDir::write(const std::string& name, const std::string& content) {
    const std::filesystem::path path = std::filesystem::path(dir_) / name;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("report: cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("report: short write to '" + path.string() + "'");
    files_.push_back({name, content.size(), rng::fnv1a64(content)});
}

void OutputDir::write_manifest(std::uint64_t config_hash, std::uint64_t seed,
                               const std::string& version) {
    std::string body;
    char buf[80];
    body += "tool leoiot " + version + "\n";
    std::snprintf(buf, sizeof buf, "config_hash %016llx\n", static_cast<unsigned long long>(config_hash));
    body += buf;
    std::snprintf(buf, sizeof buf, "seed %llu\n", static_cast<unsigned long long>(seed));
    body += buf;
    body += "files " + std::to_string(files_.size()) + "\n";
    for (const FileEntry& f : files_) {
        std::snprintf(buf, sizeof buf, "  %016llx %10llu  ", static_cast<unsigned long long>(f.hash),
                      static_cast<unsigned long long>(f.size));
        body += buf;
        body += f.name + "\n";
    }
    write("manifest.txt", body);
}

}  // namespace leoiot::report
