#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dhms::util {

std::string base64_encode(const std::vector<std::uint8_t>& data);

// Strict decode: standard alphabet, correct padding. nullopt on any defect.
std::optional<std::vector<std::uint8_t>> base64_decode(const std::string& text);

}  // namespace dhms::util
