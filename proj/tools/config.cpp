#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace dnls_cli {

namespace {

const std::set<std::string> kSections = {"grid", "equation", "data", "boundary", "check", "run", "output"};

std::string path_of(const std::string& section, const std::string& key) { return section + "." + key; }

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* b = s.data();
    const char* e = b + s.size();
    if (*b == '+') ++b;
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

bool parse_long(const std::string& s, long& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

nlohmann::ordered_json scalar_json(const YAML::Node& n) {
    const std::string& s = n.Scalar();
    if (n.Tag() == "!") return s;
    long l = 0;
    double d = 0.0;
    if (parse_long(s, l)) return l;
    if (parse_double(s, d)) return d;
    if (s == "true") return true;
    if (s == "false") return false;
    return s;
}

nlohmann::ordered_json node_json(const YAML::Node& n) {
    if (n.IsScalar()) return scalar_json(n);
    if (n.IsSequence()) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& item : n) arr.push_back(node_json(item));
        return arr;
    }
    if (n.IsMap()) {
        auto obj = nlohmann::ordered_json::object();
        for (const auto& kv : n) obj[kv.first.Scalar()] = node_json(kv.second);
        return obj;
    }
    return nullptr;
}

}  // namespace

Config::Config(YAML::Node root) : root_(std::move(root)) { validate(); }

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

Config Config::parse(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError("config", std::string("syntax error: ") + e.what());
    }
    if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
    if (!root.IsMap()) throw ConfigError("config", "top level must be a set of sections");
    return Config(root);
}

void Config::validate() const {
    for (const auto& sec : root_) {
        const std::string name = sec.first.Scalar();
        if (!kSections.count(name)) throw ConfigError(name, "unknown section '" + name + "'");
        if (!sec.second.IsMap() && !sec.second.IsNull())
            throw ConfigError(name, "section '" + name + "' must hold key-value pairs");
        for (const auto& kv : sec.second) {
            const std::string key = path_of(name, kv.first.Scalar());
            if (kv.second.IsMap()) throw ConfigError(key, key + ": nested sections are not allowed");
            if (kv.second.IsSequence())
                for (const auto& item : kv.second)
                    if (item.IsMap()) throw ConfigError(key, key + ": list entries must be scalars or lists");
        }
    }
    if (root_["check"])
        for (const auto& kv : root_["check"]) {
            const std::string key = path_of("check", kv.first.Scalar());
            double v = 0.0;
            if (!kv.second.IsScalar() || !parse_double(kv.second.Scalar(), v))
                throw ConfigError(key, key + ": tolerance must be a number");
            if (!(v > 0.0)) throw ConfigError(key, key + ": tolerance must be positive");
        }
}

YAML::Node Config::node(const std::string& section, const std::string& key) const {
    YAML::Node sec = root_[section];
    if (!sec || !sec.IsMap()) return YAML::Node();
    for (const auto& kv : sec)
        if (kv.first.Scalar() == key) return kv.second;
    return YAML::Node();
}

bool Config::has(const std::string& section, const std::string& key) const {
    YAML::Node n = node(section, key);
    return n.IsDefined() && !n.IsNull();
}

double Config::number(const std::string& section, const std::string& key) const {
    const std::string p = path_of(section, key);
    YAML::Node n = node(section, key);
    if (!n.IsDefined() || n.IsNull()) throw ConfigError(p, p + " is required");
    double v = 0.0;
    if (!n.IsScalar() || !parse_double(n.Scalar(), v) || !std::isfinite(v))
        throw ConfigError(p, p + ": expected a number");
    return v;
}

double Config::number(const std::string& section, const std::string& key, double fallback) const {
    return has(section, key) ? number(section, key) : fallback;
}

long Config::integer(const std::string& section, const std::string& key) const {
    const std::string p = path_of(section, key);
    YAML::Node n = node(section, key);
    if (!n.IsDefined() || n.IsNull()) throw ConfigError(p, p + " is required");
    long v = 0;
    if (!n.IsScalar() || !parse_long(n.Scalar(), v)) throw ConfigError(p, p + ": expected an integer");
    return v;
}

long Config::integer(const std::string& section, const std::string& key, long fallback) const {
    return has(section, key) ? integer(section, key) : fallback;
}

std::uint64_t Config::seed(const std::string& section, const std::string& key) const {
    const std::string p = path_of(section, key);
    YAML::Node n = node(section, key);
    if (!n.IsDefined() || n.IsNull()) throw ConfigError(p, p + " is required");
    std::uint64_t v = 0;
    const std::string& s = n.IsScalar() ? n.Scalar() : std::string();
    auto [q, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || q != s.data() + s.size())
        throw ConfigError(p, p + ": expected a non-negative integer");
    return v;
}

std::string Config::text(const std::string& section, const std::string& key) const {
    const std::string p = path_of(section, key);
    YAML::Node n = node(section, key);
    if (!n.IsDefined() || n.IsNull()) throw ConfigError(p, p + " is required");
    if (!n.IsScalar()) throw ConfigError(p, p + ": expected a string");
    return n.Scalar();
}

std::string Config::text(const std::string& section, const std::string& key, const std::string& fallback) const {
    return has(section, key) ? text(section, key) : fallback;
}

bool Config::flag(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    std::string v = text(section, key);
    if (v == "true") return true;
    if (v == "false") return false;
    const std::string p = path_of(section, key);
    throw ConfigError(p, p + ": expected true or false");
}

std::vector<double> Config::numbers(const std::string& section, const std::string& key) const {
    const std::string p = path_of(section, key);
    YAML::Node n = node(section, key);
    if (!n.IsDefined() || n.IsNull()) throw ConfigError(p, p + " is required");
    std::vector<double> out;
    auto push = [&](const YAML::Node& item) {
        double v = 0.0;
        if (!item.IsScalar() || !parse_double(item.Scalar(), v)) throw ConfigError(p, p + ": expected numbers");
        out.push_back(v);
    };
    if (n.IsSequence())
        for (const auto& item : n) push(item);
    else
        push(n);
    return out;
}

std::vector<std::string> Config::texts(const std::string& section, const std::string& key) const {
    const std::string p = path_of(section, key);
    YAML::Node n = node(section, key);
    if (!n.IsDefined() || n.IsNull()) throw ConfigError(p, p + " is required");
    std::vector<std::string> out;
    if (n.IsScalar()) return {n.Scalar()};
    for (const auto& item : n) {
        if (!item.IsScalar()) throw ConfigError(p, p + ": expected strings");
        out.push_back(item.Scalar());
    }
    return out;
}

std::vector<std::vector<double>> Config::tuples(const std::string& section, const std::string& key) const {
    const std::string p = path_of(section, key);
    YAML::Node n = node(section, key);
    if (!n.IsDefined() || n.IsNull()) throw ConfigError(p, p + " is required");
    if (!n.IsSequence()) throw ConfigError(p, p + ": expected a list of lists");
    std::vector<std::vector<double>> out;
    for (const auto& row : n) {
        if (!row.IsSequence()) throw ConfigError(p, p + ": expected a list of lists");
        std::vector<double> r;
        for (const auto& item : row) {
            double v = 0.0;
            if (!item.IsScalar() || !parse_double(item.Scalar(), v)) throw ConfigError(p, p + ": expected numbers");
            r.push_back(v);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::string> Config::keys(const std::string& section) const {
    std::vector<std::string> out;
    YAML::Node sec = root_[section];
    if (sec && sec.IsMap())
        for (const auto& kv : sec) out.push_back(kv.first.Scalar());
    return out;
}

nlohmann::ordered_json Config::to_json() const { return node_json(root_); }

}  // namespace dnls_cli
