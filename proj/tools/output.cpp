#include "output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "dnls/dnls.h"

namespace dnls_cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    std::array<char, 64> buf{};
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf.data(), p);
}

std::string git_blob_sha1(const std::string& bytes) {
    std::string head = "blob " + std::to_string(bytes.size());
    head.push_back('\0');
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr);
    EVP_DigestUpdate(ctx, head.data(), head.size());
    EVP_DigestUpdate(ctx, bytes.data(), bytes.size());
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

RunOutput::RunOutput(std::string directory, std::vector<std::string> formats)
    : dir_(std::move(directory)), formats_(std::move(formats)) {
    std::filesystem::create_directories(dir_);
}

void RunOutput::write_file(const std::string& name, const std::string& bytes) {
    std::ofstream out(std::filesystem::path(dir_) / name, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("cannot write " + name);
    hashes_.emplace_back(name, git_blob_sha1(bytes));
}

void RunOutput::write_table(const std::string& stem, const std::vector<std::string>& header,
                            const std::vector<std::vector<std::string>>& rows) {
    auto wants = [&](const char* f) { return std::find(formats_.begin(), formats_.end(), f) != formats_.end(); };
    if (wants("csv")) {
        std::string csv;
        for (std::size_t c = 0; c < header.size(); ++c) csv += (c ? "," : "") + header[c];
        csv += '\n';
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) csv += (c ? "," : "") + row[c];
            csv += '\n';
        }
        write_file(stem + ".csv", csv);
    }
    if (wants("json")) {
        nlohmann::ordered_json j;
        j["columns"] = header;
        j["rows"] = rows;
        write_file(stem + ".json", j.dump(1) + "\n");
    }
}

void RunOutput::add_check(std::string name, double value, double threshold, bool upper) {
    bool ok = upper ? value <= threshold : value >= threshold;
    checks_.push_back({std::move(name), value, threshold, upper, ok && !std::isnan(value)});
}

bool RunOutput::checks_passed() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const CheckRecord& c) { return c.passed; });
}

void RunOutput::write_manifest(const nlohmann::ordered_json& config, double seconds, int exit_code,
                               const std::string& subcommand) const {
    nlohmann::ordered_json m;
    m["config"] = config;
    m["versions"] = {{"dnls", dnls_version()},
                     {"fftw", dnls_fftw_version()},
                     {"extension_id", dnls_extension_id()},
                     {"compiler", __VERSION__}};
    m["timing_seconds"] = seconds;
    auto hashes = nlohmann::ordered_json::object();
    for (const auto& [name, h] : hashes_) hashes[name] = h;
    m["output_hashes"] = hashes;
    m["subcommand"] = subcommand;
    m["exit_code"] = exit_code;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : checks_)
        checks.push_back({{"name", c.name},
                          {"value", std::isfinite(c.value) ? nlohmann::ordered_json(c.value) : nlohmann::ordered_json()},
                          {"threshold", c.threshold},
                          {"bound", c.upper ? "upper" : "lower"},
                          {"passed", c.passed}});
    m["checks"] = checks;
    std::filesystem::create_directories(dir_);
    std::ofstream out(std::filesystem::path(dir_) / "manifest.json");
    out << m.dump(2) << '\n';
}

}  // namespace dnls_cli
