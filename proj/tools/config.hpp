#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "json.hpp"

namespace dnls_cli {

/// Validation failure; `field` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// Sectioned key-value run configuration (YAML subset: one level of
/// sections holding scalars or flat lists).
class Config {
  public:
    static Config load(const std::string& path);
    static Config parse(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;

    double number(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key, double fallback) const;
    long integer(const std::string& section, const std::string& key) const;
    long integer(const std::string& section, const std::string& key, long fallback) const;
    std::uint64_t seed(const std::string& section, const std::string& key) const;
    std::string text(const std::string& section, const std::string& key) const;
    std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;
    bool flag(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> numbers(const std::string& section, const std::string& key) const;
    std::vector<std::string> texts(const std::string& section, const std::string& key) const;
    std::vector<std::vector<double>> tuples(const std::string& section, const std::string& key) const;

    /// Keys of a section in file order.
    std::vector<std::string> keys(const std::string& section) const;

    /// Echo with scalars typed as integer, float, bool or string.
    nlohmann::ordered_json to_json() const;

  private:
    explicit Config(YAML::Node root);
    YAML::Node node(const std::string& section, const std::string& key) const;
    void validate() const;

    YAML::Node root_;
};

}  // namespace dnls_cli
