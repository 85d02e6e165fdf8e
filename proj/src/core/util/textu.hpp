#pragma once

#include <string>
#include <vector>

namespace dhms::util {

// Lowercases ASCII, maps punctuation to spaces, splits on whitespace.
std::vector<std::string> tokenize(const std::string& text);

std::string to_lower(const std::string& s);
std::string trim(const std::string& s);

}  // namespace dhms::util
