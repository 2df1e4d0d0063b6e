#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace dnls_cli {

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Git blob object id: SHA-1 of "blob <size>\0" followed by the bytes.
std::string git_blob_sha1(const std::string& bytes);

struct CheckRecord {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool upper = true;
    bool passed = false;
};

/// Output directory of one run; records every file written.
class RunOutput {
  public:
    RunOutput(std::string directory, std::vector<std::string> formats);

    const std::string& directory() const { return dir_; }

    /// Writes <stem>.csv (and <stem>.json when requested) with the given
    /// header and rows of preformatted cells.
    void write_table(const std::string& stem, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

    void add_check(std::string name, double value, double threshold, bool upper = true);
    const std::vector<CheckRecord>& checks() const { return checks_; }
    bool checks_passed() const;

    /// manifest.json with config, versions, timing_seconds, output_hashes,
    /// plus exit status and checks.
    void write_manifest(const nlohmann::ordered_json& config, double seconds, int exit_code,
                        const std::string& subcommand) const;

  private:
    void write_file(const std::string& name, const std::string& bytes);

    std::string dir_;
    std::vector<std::string> formats_;
    std::vector<std::pair<std::string, std::string>> hashes_;
    std::vector<CheckRecord> checks_;
};

}  // namespace dnls_cli
