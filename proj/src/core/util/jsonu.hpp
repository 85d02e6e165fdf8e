#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "core/util/errors.hpp"

namespace dhms::util {

using json = nlohmann::json;

// nlohmann reports a byte offset; turn it into line:column for error text.
inline std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw StructuralError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                              ": " + e.what());
    }
}

inline json parse_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_json_text(buf.str(), path);
}

template <typename T>
T require(const json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key))
        throw StructuralError("missing required field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw StructuralError("field '" + key + "': " + e.what());
    }
}

template <typename T>
T get_or(const json& j, const std::string& key, const T& fallback) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw StructuralError("field '" + key + "': " + e.what());
    }
}

}  // namespace dhms::util
