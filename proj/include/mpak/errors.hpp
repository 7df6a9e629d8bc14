#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mpak {

// Error codes shared between library exceptions and wire-level error responses.
enum class Errc {
    malformed_input,
    range_error,
    nonce_reused,
    entry_reused,
    key_mismatch,
    invalid_key,
    proof_rejected,
    bad_point,
    retry_entry,
    pool_exhausted,
    unknown_point,
    replayed_point,
    invalid_presignature,
    verify_failed,
    unknown_key,
    duplicate_key,
    bad_signature,
    stale_version,
    policy_deny,
    malformed_context,
    unknown_ticket,
    ticket_not_due,
    ticket_canceled,
    ticket_already_released,
    transport_error,
    io_error,
    internal,
};

inline std::string_view to_string(Errc c) {
    switch (c) {
        case Errc::malformed_input: return "malformed_input";
        case Errc::range_error: return "range_error";
        case Errc::nonce_reused: return "nonce_reused";
        case Errc::entry_reused: return "entry_reused";
        case Errc::key_mismatch: return "key_mismatch";
        case Errc::invalid_key: return "invalid_key";
        case Errc::proof_rejected: return "proof_rejected";
        case Errc::bad_point: return "bad_point";
        case Errc::retry_entry: return "retry_entry";
        case Errc::pool_exhausted: return "pool_exhausted";
        case Errc::unknown_point: return "unknown_point";
        case Errc::replayed_point: return "replayed_point";
        case Errc::invalid_presignature: return "invalid_presignature";
        case Errc::verify_failed: return "verify_failed";
        case Errc::unknown_key: return "unknown_key";
        case Errc::duplicate_key: return "duplicate_key";
        case Errc::bad_signature: return "bad_signature";
        case Errc::stale_version: return "stale_version";
        case Errc::policy_deny: return "policy_deny";
        case Errc::malformed_context: return "malformed_context";
        case Errc::unknown_ticket: return "unknown_ticket";
        case Errc::ticket_not_due: return "ticket_not_due";
        case Errc::ticket_canceled: return "ticket_canceled";
        case Errc::ticket_already_released: return "ticket_already_released";
        case Errc::transport_error: return "transport_error";
        case Errc::io_error: return "io_error";
        case Errc::internal: return "internal";
    }
    return "internal";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace mpak
