#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "core/gatepass/token.hpp"
#include "core/util/jsonu.hpp"
#include "core/util/rng.hpp"

namespace dhms::gatepass {

enum class PassStatus { Requested, Approved, Rejected, Exited, Returned, Expired };
enum class ScanDirection { Exit, Entry };
enum class ScanResult {
    Accepted,
    RejectedTampered,
    RejectedReused,
    RejectedExpired,
    RejectedUnknown
};

std::string to_string(PassStatus s);
std::string to_string(ScanDirection d);
std::string to_string(ScanResult r);
std::optional<PassStatus> pass_status_from_string(const std::string& s);
std::optional<ScanDirection> scan_direction_from_string(const std::string& s);
std::optional<ScanResult> scan_result_from_string(const std::string& s);

struct ScanEvent {
    util::Timestamp at = 0;
    ScanDirection direction = ScanDirection::Exit;
    ScanResult result = ScanResult::Accepted;
};

struct PassRequest {
    std::string student_id;
    std::string reason;
    std::string destination;
    util::Timestamp exit_at = 0;
    util::Timestamp return_by = 0;
    std::string emergency_contact;
};

struct GatePass {
    std::string id;
    std::string student_id;
    std::string reason;
    std::string destination;
    util::Timestamp exit_at = 0;
    util::Timestamp return_by = 0;
    std::string emergency_contact;
    PassStatus status = PassStatus::Requested;
    std::string remarks;
    std::optional<std::string> token;  // encoded SignedToken, present once approved
    std::vector<ScanEvent> scans;
    util::Timestamp requested_at = 0;
    std::optional<util::Timestamp> decided_at;
};

// Scan attempts that could not be tied to a stored pass (tampered or unknown
// tokens) still land in the store-wide log.
struct ScanLogEntry {
    std::string pass_id;  // empty when the token could not be trusted
    ScanEvent event;
};

// Single-authority pass registry. Scans are serialized store-wide; the
// per-pass scan log is append-only.
class PassStore {
  public:
    PassStore(std::vector<std::uint8_t> signing_key, util::Duration exit_grace,
              std::uint64_t nonce_seed);

    // Requires exit_at < return_by and a non-empty reason.
    GatePass request_pass(const PassRequest& details, util::Timestamp at);

    // Requested -> Approved (token minted, fresh nonce) or Rejected
    // (remarks mandatory).
    GatePass decide(const std::string& pass_id, bool approve, const std::string& remarks,
                    util::Timestamp at);

    // Never throws for bad tokens: every outcome is a recorded ScanEvent.
    // Exit window is [exit_at - grace, return_by]; entry must be at or before
    // return_by; one accepted scan per direction.
    ScanEvent scan(const std::string& token_text, ScanDirection direction, util::Timestamp at);

    const GatePass& get(const std::string& pass_id) const;
    std::vector<GatePass> all_passes() const;  // sorted by id
    const std::vector<ScanLogEntry>& scan_log() const { return scan_log_; }

    void save(const std::string& path) const;
    static std::unique_ptr<PassStore> load(const std::string& path,
                                           std::vector<std::uint8_t> signing_key,
                                           util::Duration exit_grace, std::uint64_t nonce_seed);

    util::Duration exit_grace() const { return exit_grace_; }

  private:
    std::vector<std::uint8_t> key_;
    util::Duration exit_grace_;
    util::Rng nonce_rng_;
    std::map<std::string, GatePass> passes_;
    std::vector<ScanLogEntry> scan_log_;
    mutable std::mutex mutex_;

    ScanEvent log_scan(const std::string& pass_id, ScanEvent event);
};

util::json pass_to_json(const GatePass& p);
GatePass pass_from_json(const util::json& j);

}  // namespace dhms::gatepass
