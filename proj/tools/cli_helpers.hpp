#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dhms/dhms.h"
#include "json.hpp"

namespace cli {

using nlohmann::json;

// Exit codes: 0 ok, 1 validation/usage-value problems, 2 structural problems
// (malformed documents, bad ids, unknown flags).
struct CliError : std::runtime_error {
    int exit_code;
    CliError(std::string msg, int code) : std::runtime_error(std::move(msg)), exit_code(code) {}
};

inline int exit_code_for(dhms_status status) {
    return status == DHMS_ERR_STRUCTURAL ? 2 : 1;
}

// Every engine call goes through here so failures surface uniformly.
inline void check(dhms_status status) {
    if (status != DHMS_OK) throw CliError(dhms_last_error(), exit_code_for(status));
}

// Owned string coming back across the C boundary.
class EngineString {
  public:
    EngineString() = default;
    ~EngineString() { dhms_string_free(ptr_); }
    EngineString(const EngineString&) = delete;
    EngineString& operator=(const EngineString&) = delete;
    char** out() { return &ptr_; }
    std::string str() const { return ptr_ ? ptr_ : ""; }

  private:
    char* ptr_ = nullptr;
};

inline std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CliError("cannot open: " + path, 1);
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

inline json parse_json_or_die(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // Report line:column rather than a byte offset.
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        int line = 1, col = 1;
        for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw CliError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                           e.what(),
                       2);
    }
}

// ----------------------------------------------------------------------
// Config: strict INI with a fixed key registry.
// ----------------------------------------------------------------------

struct Config {
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback) const {
        auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    }
    double get_double(const std::string& key, double fallback) const {
        auto it = values.find(key);
        if (it == values.end()) return fallback;
        try {
            return std::stod(it->second);
        } catch (...) {
            throw CliError("config key '" + key + "' is not a number: " + it->second, 1);
        }
    }
    long long get_int(const std::string& key, long long fallback) const {
        auto it = values.find(key);
        if (it == values.end()) return fallback;
        try {
            return std::stoll(it->second);
        } catch (...) {
            throw CliError("config key '" + key + "' is not an integer: " + it->second, 1);
        }
    }
};

inline const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys = {
        "triage.electrical", "triage.water", "triage.plumbing", "triage.sanitation",
        "triage.civil", "triage.general", "triage.other", "triage.age_saturation_hours",
        "triage.impact_saturation",
        "anomaly.subsample", "anomaly.trees", "anomaly.threshold_percentile",
        "anomaly.window_days", "anomaly.keywords", "anomaly.seed",
        "forecast.harmonics", "forecast.interval_z", "forecast.heat_medium",
        "forecast.heat_high", "forecast.stale_days",
        "gatepass.key", "gatepass.key_env", "gatepass.grace_minutes",
        "io.data_dir", "io.lexicon", "io.stopwords",
    };
    return keys;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline Config load_config(const std::string& path) {
    Config cfg;
    if (path.empty()) return cfg;
    std::ifstream f(path);
    if (!f) throw CliError("cannot open config file: " + path, 1);
    std::string line, section;
    int lineno = 0;
    const auto& known = known_config_keys();
    while (std::getline(f, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw CliError(path + ":" + std::to_string(lineno) + ": unterminated section", 1);
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw CliError(path + ":" + std::to_string(lineno) + ": expected key=value", 1);
        std::string key = section + "." + trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw CliError(path + ":" + std::to_string(lineno) + ": unknown config key '" + key +
                               "'",
                           1);
        cfg.values[key] = value;
    }
    return cfg;
}

// ----------------------------------------------------------------------
// Output path policy: everything the CLI writes stays inside data_dir.
// ----------------------------------------------------------------------

struct Paths {
    std::filesystem::path data_dir;

    std::string out(const std::string& requested) const {
        namespace fs = std::filesystem;
        fs::path p(requested);
        fs::path resolved = p.is_absolute() ? p : data_dir / p;
        fs::path canon_dir = fs::weakly_canonical(data_dir);
        fs::path canon_out = fs::weakly_canonical(resolved);
        auto rel = canon_out.lexically_relative(canon_dir);
        if (rel.empty() || rel.native().rfind("..", 0) == 0)
            throw CliError("refusing to write outside data directory: " + requested, 1);
        if (canon_out.has_parent_path()) fs::create_directories(canon_out.parent_path());
        return canon_out.string();
    }
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::trunc | std::ios::binary);
    if (!f) throw CliError("cannot write: " + path, 1);
    f << content;
}

// Weights JSON assembled from [triage] config for the engine.
inline std::string weights_json_from_config(const Config& cfg) {
    json tw;
    for (const char* cat :
         {"electrical", "water", "plumbing", "sanitation", "civil", "general", "other"}) {
        std::string key = std::string("triage.") + cat;
        if (cfg.has(key)) tw[cat] = cfg.get_double(key, 0.0);
    }
    json w;
    if (!tw.is_null()) w["type_weights"] = tw;
    if (cfg.has("triage.age_saturation_hours"))
        w["age_saturation_hours"] = cfg.get_double("triage.age_saturation_hours", 72.0);
    if (cfg.has("triage.impact_saturation"))
        w["impact_saturation"] = cfg.get_int("triage.impact_saturation", 50);
    return w.is_null() ? "" : w.dump();
}

inline std::vector<uint8_t> gatepass_key(const Config& cfg) {
    std::string env_name = cfg.get("gatepass.key_env", "DHMS_GATEPASS_KEY");
    if (const char* env = std::getenv(env_name.c_str()); env && *env)
        return std::vector<uint8_t>(env, env + std::strlen(env));
    std::string from_cfg = cfg.get("gatepass.key", "");
    if (!from_cfg.empty()) return std::vector<uint8_t>(from_cfg.begin(), from_cfg.end());
    // Development fallback; deployments should set the env var or config key.
    static const char* kDevKey = "dhms-dev-signing-key";
    return std::vector<uint8_t>(kDevKey, kDevKey + std::strlen(kDevKey));
}

}  // namespace cli
