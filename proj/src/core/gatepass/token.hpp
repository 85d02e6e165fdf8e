#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/util/timeu.hpp"

namespace dhms::gatepass {

// Canonical token payload. Wire layout (all integers big-endian, strings
// length-prefixed with a u32):
//   u8  version (= 1)
//   u32 len(pass_id)    | pass_id bytes (UTF-8)
//   u32 len(student_id) | student_id bytes
//   i64 exit_at         (epoch seconds)
//   i64 return_by       (epoch seconds)
//   u32 len(nonce)      | nonce bytes
struct TokenPayload {
    std::string pass_id;
    std::string student_id;
    util::Timestamp exit_at = 0;
    util::Timestamp return_by = 0;
    std::string nonce;

    std::vector<std::uint8_t> canonical_bytes() const;
    static std::optional<TokenPayload> parse(const std::vector<std::uint8_t>& bytes);

    bool operator==(const TokenPayload&) const = default;
};

// payload || HMAC-SHA256(key, payload), transported as base64 text (the QR
// content contract).
struct SignedToken {
    TokenPayload payload;
    std::vector<std::uint8_t> signature;

    std::string encode() const;
    static std::optional<SignedToken> decode(const std::string& text);
};

std::vector<std::uint8_t> hmac_sha256(const std::vector<std::uint8_t>& key,
                                      const std::vector<std::uint8_t>& data);

SignedToken mint_token(const TokenPayload& payload, const std::vector<std::uint8_t>& key);

// Constant-time signature check over the canonical payload bytes.
bool verify_token(const SignedToken& token, const std::vector<std::uint8_t>& key);

}  // namespace dhms::gatepass
