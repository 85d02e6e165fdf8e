#include "core/gatepass/token.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>

#include "core/util/base64.hpp"
#include "core/util/errors.hpp"

namespace dhms::gatepass {

namespace {

constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kSignatureBytes = 32;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_i64(std::vector<std::uint8_t>& out, std::int64_t v) {
    std::uint64_t u = static_cast<std::uint64_t>(v);
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(u >> shift));
}

void put_string(std::vector<std::uint8_t>& out, const std::string& s) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.insert(out.end(), s.begin(), s.end());
}

struct Reader {
    const std::vector<std::uint8_t>& buf;
    std::size_t pos = 0;

    bool u8(std::uint8_t& v) {
        if (pos + 1 > buf.size()) return false;
        v = buf[pos++];
        return true;
    }
    bool u32(std::uint32_t& v) {
        if (pos + 4 > buf.size()) return false;
        v = (static_cast<std::uint32_t>(buf[pos]) << 24) |
            (static_cast<std::uint32_t>(buf[pos + 1]) << 16) |
            (static_cast<std::uint32_t>(buf[pos + 2]) << 8) |
            static_cast<std::uint32_t>(buf[pos + 3]);
        pos += 4;
        return true;
    }
    bool i64(std::int64_t& v) {
        if (pos + 8 > buf.size()) return false;
        std::uint64_t u = 0;
        for (int i = 0; i < 8; ++i) u = (u << 8) | buf[pos + static_cast<std::size_t>(i)];
        pos += 8;
        v = static_cast<std::int64_t>(u);
        return true;
    }
    bool str(std::string& s) {
        std::uint32_t len;
        if (!u32(len)) return false;
        if (pos + len > buf.size()) return false;
        s.assign(buf.begin() + static_cast<std::ptrdiff_t>(pos),
                 buf.begin() + static_cast<std::ptrdiff_t>(pos + len));
        pos += len;
        return true;
    }
};

}  // namespace

std::vector<std::uint8_t> TokenPayload::canonical_bytes() const {
    std::vector<std::uint8_t> out;
    out.push_back(kVersion);
    put_string(out, pass_id);
    put_string(out, student_id);
    put_i64(out, exit_at);
    put_i64(out, return_by);
    put_string(out, nonce);
    return out;
}

std::optional<TokenPayload> TokenPayload::parse(const std::vector<std::uint8_t>& bytes) {
    Reader r{bytes};
    std::uint8_t version;
    TokenPayload p;
    if (!r.u8(version) || version != kVersion) return std::nullopt;
    if (!r.str(p.pass_id) || !r.str(p.student_id)) return std::nullopt;
    if (!r.i64(p.exit_at) || !r.i64(p.return_by)) return std::nullopt;
    if (!r.str(p.nonce)) return std::nullopt;
    if (r.pos != bytes.size()) return std::nullopt;  // trailing bytes are tampering
    return p;
}

std::vector<std::uint8_t> hmac_sha256(const std::vector<std::uint8_t>& key,
                                      const std::vector<std::uint8_t>& data) {
    unsigned char mac[EVP_MAX_MD_SIZE];
    unsigned int mac_len = 0;
    if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
              mac, &mac_len))
        throw IoError("HMAC computation failed");
    return std::vector<std::uint8_t>(mac, mac + mac_len);
}

SignedToken mint_token(const TokenPayload& payload, const std::vector<std::uint8_t>& key) {
    if (key.empty()) throw ValidationError("gate pass signing key must not be empty");
    SignedToken t;
    t.payload = payload;
    t.signature = hmac_sha256(key, payload.canonical_bytes());
    return t;
}

bool verify_token(const SignedToken& token, const std::vector<std::uint8_t>& key) {
    if (token.signature.size() != kSignatureBytes) return false;
    std::vector<std::uint8_t> expected = hmac_sha256(key, token.payload.canonical_bytes());
    return CRYPTO_memcmp(expected.data(), token.signature.data(), kSignatureBytes) == 0;
}

std::string SignedToken::encode() const {
    std::vector<std::uint8_t> wire = payload.canonical_bytes();
    wire.insert(wire.end(), signature.begin(), signature.end());
    return util::base64_encode(wire);
}

std::optional<SignedToken> SignedToken::decode(const std::string& text) {
    auto wire = util::base64_decode(text);
    if (!wire || wire->size() <= kSignatureBytes) return std::nullopt;
    SignedToken t;
    t.signature.assign(wire->end() - kSignatureBytes, wire->end());
    std::vector<std::uint8_t> payload_bytes(wire->begin(), wire->end() - kSignatureBytes);
    auto payload = TokenPayload::parse(payload_bytes);
    if (!payload) return std::nullopt;
    t.payload = *payload;
    return t;
}

}  // namespace dhms::gatepass
