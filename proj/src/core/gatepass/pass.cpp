#include "core/gatepass/pass.hpp"

#include <fstream>

#include "core/util/errors.hpp"

namespace dhms::gatepass {

std::string to_string(PassStatus s) {
    switch (s) {
        case PassStatus::Requested: return "Requested";
        case PassStatus::Approved: return "Approved";
        case PassStatus::Rejected: return "Rejected";
        case PassStatus::Exited: return "Exited";
        case PassStatus::Returned: return "Returned";
        case PassStatus::Expired: return "Expired";
    }
    return "Requested";
}

std::string to_string(ScanDirection d) { return d == ScanDirection::Exit ? "exit" : "entry"; }

std::string to_string(ScanResult r) {
    switch (r) {
        case ScanResult::Accepted: return "Accepted";
        case ScanResult::RejectedTampered: return "RejectedTampered";
        case ScanResult::RejectedReused: return "RejectedReused";
        case ScanResult::RejectedExpired: return "RejectedExpired";
        case ScanResult::RejectedUnknown: return "RejectedUnknown";
    }
    return "RejectedUnknown";
}

std::optional<PassStatus> pass_status_from_string(const std::string& s) {
    for (PassStatus v : {PassStatus::Requested, PassStatus::Approved, PassStatus::Rejected,
                         PassStatus::Exited, PassStatus::Returned, PassStatus::Expired})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

std::optional<ScanDirection> scan_direction_from_string(const std::string& s) {
    if (s == "exit") return ScanDirection::Exit;
    if (s == "entry") return ScanDirection::Entry;
    return std::nullopt;
}

std::optional<ScanResult> scan_result_from_string(const std::string& s) {
    for (ScanResult v : {ScanResult::Accepted, ScanResult::RejectedTampered,
                         ScanResult::RejectedReused, ScanResult::RejectedExpired,
                         ScanResult::RejectedUnknown})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

PassStore::PassStore(std::vector<std::uint8_t> signing_key, util::Duration exit_grace,
                     std::uint64_t nonce_seed)
    : key_(std::move(signing_key)), exit_grace_(exit_grace), nonce_rng_(nonce_seed) {
    if (key_.empty()) throw ValidationError("gate pass signing key must not be empty");
    if (exit_grace_ < 0) throw ValidationError("exit grace must be non-negative");
}

GatePass PassStore::request_pass(const PassRequest& details, util::Timestamp at) {
    if (details.exit_at >= details.return_by)
        throw ValidationError("exit_at must precede return_by");
    if (details.reason.empty()) throw ValidationError("gate pass reason must not be empty");
    if (details.student_id.empty()) throw ValidationError("gate pass needs a student_id");

    std::lock_guard<std::mutex> lock(mutex_);
    GatePass p;
    p.id = "GP" + std::to_string(passes_.size() + 1) + "-" + details.student_id;
    p.student_id = details.student_id;
    p.reason = details.reason;
    p.destination = details.destination;
    p.exit_at = details.exit_at;
    p.return_by = details.return_by;
    p.emergency_contact = details.emergency_contact;
    p.status = PassStatus::Requested;
    p.requested_at = at;
    passes_[p.id] = p;
    return p;
}

GatePass PassStore::decide(const std::string& pass_id, bool approve, const std::string& remarks,
                           util::Timestamp at) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = passes_.find(pass_id);
    if (it == passes_.end()) throw StructuralError("unknown gate pass: " + pass_id);
    GatePass& p = it->second;
    if (p.status != PassStatus::Requested)
        throw TransitionError("pass " + pass_id + " already decided (status " +
                              to_string(p.status) + ")");
    if (!approve && remarks.empty())
        throw ValidationError("rejection requires remarks for the student");

    p.remarks = remarks;
    p.decided_at = at;
    if (approve) {
        p.status = PassStatus::Approved;
        TokenPayload payload;
        payload.pass_id = p.id;
        payload.student_id = p.student_id;
        payload.exit_at = p.exit_at;
        payload.return_by = p.return_by;
        // The pass id is folded in so that stores reseeded across separate
        // runs still mint a distinct nonce per pass.
        std::uint64_t fold = 1469598103934665603ULL;
        for (char ch : p.id) fold = (fold ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
        char nonce[17];
        std::snprintf(nonce, sizeof(nonce), "%016llx",
                      static_cast<unsigned long long>(nonce_rng_.next_u64() ^ fold));
        payload.nonce = nonce;
        p.token = mint_token(payload, key_).encode();
    } else {
        p.status = PassStatus::Rejected;
    }
    return p;
}

ScanEvent PassStore::log_scan(const std::string& pass_id, ScanEvent event) {
    scan_log_.push_back({pass_id, event});
    auto it = passes_.find(pass_id);
    if (it != passes_.end()) it->second.scans.push_back(event);
    return event;
}

ScanEvent PassStore::scan(const std::string& token_text, ScanDirection direction,
                          util::Timestamp at) {
    std::lock_guard<std::mutex> lock(mutex_);
    ScanEvent event{at, direction, ScanResult::Accepted};

    auto token = SignedToken::decode(token_text);
    if (!token || !verify_token(*token, key_)) {
        event.result = ScanResult::RejectedTampered;
        return log_scan("", event);
    }

    auto it = passes_.find(token->payload.pass_id);
    // The signature only proves the bytes came from us; the credential must
    // also be the one currently on record for that pass.
    if (it == passes_.end() || !it->second.token || *it->second.token != token_text) {
        event.result = ScanResult::RejectedUnknown;
        return log_scan(it == passes_.end() ? "" : it->first, event);
    }
    GatePass& p = it->second;

    if (p.status == PassStatus::Expired) {
        event.result = ScanResult::RejectedExpired;
        return log_scan(p.id, event);
    }

    bool in_window = direction == ScanDirection::Exit
                         ? (at >= p.exit_at - exit_grace_ && at <= p.return_by)
                         : (at <= p.return_by);
    if (!in_window) {
        event.result = ScanResult::RejectedExpired;
        if (p.status == PassStatus::Approved || p.status == PassStatus::Exited)
            p.status = PassStatus::Expired;
        return log_scan(p.id, event);
    }

    bool used = false;
    for (const ScanEvent& s : p.scans)
        if (s.result == ScanResult::Accepted && s.direction == direction) used = true;
    // An entry scan with no open exit consumes nothing and is also reuse.
    bool out_of_order = direction == ScanDirection::Entry && p.status != PassStatus::Exited;
    bool exit_wrong_state = direction == ScanDirection::Exit && p.status != PassStatus::Approved;
    if (used || out_of_order || exit_wrong_state) {
        event.result = ScanResult::RejectedReused;
        return log_scan(p.id, event);
    }

    p.status = direction == ScanDirection::Exit ? PassStatus::Exited : PassStatus::Returned;
    return log_scan(p.id, event);
}

const GatePass& PassStore::get(const std::string& pass_id) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = passes_.find(pass_id);
    if (it == passes_.end()) throw StructuralError("unknown gate pass: " + pass_id);
    return it->second;
}

std::vector<GatePass> PassStore::all_passes() const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::vector<GatePass> out;
    out.reserve(passes_.size());
    for (const auto& [id, p] : passes_) out.push_back(p);
    return out;
}

util::json pass_to_json(const GatePass& p) {
    util::json j{{"type", "pass"},
                 {"id", p.id},
                 {"student_id", p.student_id},
                 {"reason", p.reason},
                 {"destination", p.destination},
                 {"exit_at", util::format_iso8601(p.exit_at)},
                 {"return_by", util::format_iso8601(p.return_by)},
                 {"emergency_contact", p.emergency_contact},
                 {"status", to_string(p.status)},
                 {"remarks", p.remarks},
                 {"requested_at", util::format_iso8601(p.requested_at)}};
    if (p.token) j["token"] = *p.token;
    if (p.decided_at) j["decided_at"] = util::format_iso8601(*p.decided_at);
    util::json scans = util::json::array();
    for (const ScanEvent& s : p.scans)
        scans.push_back({{"at", util::format_iso8601(s.at)},
                         {"direction", to_string(s.direction)},
                         {"result", to_string(s.result)}});
    j["scans"] = std::move(scans);
    return j;
}

GatePass pass_from_json(const util::json& j) {
    GatePass p;
    p.id = util::require<std::string>(j, "id");
    p.student_id = util::require<std::string>(j, "student_id");
    p.reason = util::get_or<std::string>(j, "reason", "");
    p.destination = util::get_or<std::string>(j, "destination", "");
    p.exit_at = util::parse_iso8601(util::require<std::string>(j, "exit_at"));
    p.return_by = util::parse_iso8601(util::require<std::string>(j, "return_by"));
    p.emergency_contact = util::get_or<std::string>(j, "emergency_contact", "");
    auto status = pass_status_from_string(util::require<std::string>(j, "status"));
    if (!status) throw StructuralError("unknown pass status");
    p.status = *status;
    p.remarks = util::get_or<std::string>(j, "remarks", "");
    if (j.contains("token") && !j.at("token").is_null())
        p.token = j.at("token").get<std::string>();
    p.requested_at = util::parse_iso8601(util::require<std::string>(j, "requested_at"));
    if (j.contains("decided_at") && !j.at("decided_at").is_null())
        p.decided_at = util::parse_iso8601(j.at("decided_at").get<std::string>());
    if (j.contains("scans")) {
        for (const util::json& js : j.at("scans")) {
            ScanEvent s;
            s.at = util::parse_iso8601(util::require<std::string>(js, "at"));
            auto dir = scan_direction_from_string(util::require<std::string>(js, "direction"));
            auto res = scan_result_from_string(util::require<std::string>(js, "result"));
            if (!dir || !res) throw StructuralError("bad scan event");
            s.direction = *dir;
            s.result = *res;
            p.scans.push_back(s);
        }
    }
    return p;
}

void PassStore::save(const std::string& path) const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write pass store: " + path);
    for (const auto& [id, p] : passes_) out << pass_to_json(p).dump() << '\n';
    for (const ScanLogEntry& e : scan_log_) {
        // Only unattached events need separate rows; attached ones ride on
        // their pass.
        if (!e.pass_id.empty() && passes_.count(e.pass_id)) continue;
        util::json j{{"type", "scan"},
                     {"pass_id", e.pass_id},
                     {"at", util::format_iso8601(e.event.at)},
                     {"direction", to_string(e.event.direction)},
                     {"result", to_string(e.event.result)}};
        out << j.dump() << '\n';
    }
}

std::unique_ptr<PassStore> PassStore::load(const std::string& path,
                                           std::vector<std::uint8_t> signing_key,
                                           util::Duration exit_grace, std::uint64_t nonce_seed) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open pass store: " + path);
    auto store_ptr = std::make_unique<PassStore>(std::move(signing_key), exit_grace, nonce_seed);
    PassStore& store = *store_ptr;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        util::json j = util::parse_json_text(line, path + ":" + std::to_string(lineno));
        std::string type = util::get_or<std::string>(j, "type", "pass");
        if (type == "pass") {
            GatePass p = pass_from_json(j);
            for (const ScanEvent& s : p.scans) store.scan_log_.push_back({p.id, s});
            store.passes_[p.id] = std::move(p);
        } else if (type == "scan") {
            ScanEvent s;
            s.at = util::parse_iso8601(util::require<std::string>(j, "at"));
            auto dir = scan_direction_from_string(util::require<std::string>(j, "direction"));
            auto res = scan_result_from_string(util::require<std::string>(j, "result"));
            if (!dir || !res) throw StructuralError("bad scan log entry");
            s.direction = *dir;
            s.result = *res;
            store.scan_log_.push_back({util::get_or<std::string>(j, "pass_id", ""), s});
        } else {
            throw StructuralError("unknown record type in pass store: " + type);
        }
    }
    return store_ptr;
}

}  // namespace dhms::gatepass
