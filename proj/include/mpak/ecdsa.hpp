#pragma once

#include <string>

#include "mpak/bigint.hpp"
#include "mpak/curve.hpp"
#include "mpak/encoding.hpp"
#include "mpak/errors.hpp"
#include "mpak/rng.hpp"
#include "mpak/sha2.hpp"

namespace mpak::ecdsa {

struct Signature {
    Bigint r;
    Bigint s;
};

inline bool operator==(const Signature& a, const Signature& b) { return a.r == b.r && a.s == b.s; }

// Leftmost-bits truncation of a message digest to a scalar, FIPS 186 style.
inline Bigint digest_to_scalar(const ec::CurveParams& c, const Bytes& digest) {
    Bigint z = bigint_from_bytes(digest);
    std::size_t qbits = bit_length(c.q);
    std::size_t dbits = digest.size() * 8;
    if (dbits > qbits) z >>= (dbits - qbits);
    return z % c.q;
}

inline bool is_low_s(const ec::CurveParams& c, const Bigint& s) { return 2 * s <= c.q; }

inline Signature normalize_low_s(const ec::CurveParams& c, Signature sig) {
    if (!is_low_s(c, sig.s)) sig.s = c.q - sig.s;
    return sig;
}

// Plain single-party signing with a caller-supplied nonce. Used as the
// reference the two-party protocol is checked against, and by tests that
// need deterministic nonces.
inline Signature sign_with_nonce(const ec::CurveParams& c, const Bigint& d, const Bigint& z,
                                 const Bigint& k, bool low_s = true) {
    if (d <= 0 || d >= c.q) fail(Errc::range_error, "sign: private key out of range");
    if (k <= 0 || k >= c.q) fail(Errc::range_error, "sign: nonce out of range");
    ec::AffinePoint kg = ec::mul_g(c, k);
    Bigint r = kg.x % c.q;
    if (r == 0) fail(Errc::retry_entry, "sign: r = 0, retry with a fresh nonce");
    Bigint s = invmod(k, c.q) * ((z + r * d) % c.q) % c.q;
    if (s == 0) fail(Errc::retry_entry, "sign: s = 0, retry with a fresh nonce");
    Signature sig{r, s};
    return low_s ? normalize_low_s(c, sig) : sig;
}

inline Signature sign(const ec::CurveParams& c, const Bigint& d, const Bigint& z,
                      RandomSource& rng, bool low_s = true) {
    for (;;) {
        Bigint k = random_nonzero_below(rng, c.q);
        try {
            return sign_with_nonce(c, d, z, k, low_s);
        } catch (const Error& e) {
            if (e.code() != Errc::retry_entry) throw;
        }
    }
}

// Accepts both high-s and low-s signatures; callers that require low-s
// normalize before verifying or check is_low_s themselves.
inline bool verify(const ec::CurveParams& c, const ec::AffinePoint& pub, const Bigint& z,
                   const Signature& sig) {
    if (pub.infinity || !ec::on_curve(c, pub)) return false;
    if (sig.r <= 0 || sig.r >= c.q || sig.s <= 0 || sig.s >= c.q) return false;
    Bigint w = invmod(sig.s, c.q);
    Bigint u1 = z % c.q * w % c.q;
    Bigint u2 = sig.r * w % c.q;
    ec::AffinePoint pt = ec::add(c, ec::mul_g(c, u1), ec::scalar_mul(c, u2, pub));
    if (pt.infinity) return false;
    return pt.x % c.q == sig.r;
}

inline bool verify_digest(const ec::CurveParams& c, const ec::AffinePoint& pub,
                          const Bytes& digest, const Signature& sig) {
    return verify(c, pub, digest_to_scalar(c, digest), sig);
}

// Fixed-width r || s, big-endian.
inline Bytes encode_signature(const ec::CurveParams& c, const Signature& sig) {
    Bytes out = bigint_to_bytes(sig.r, c.field_bytes);
    Bytes s = bigint_to_bytes(sig.s, c.field_bytes);
    out.insert(out.end(), s.begin(), s.end());
    return out;
}

inline Signature decode_signature(const ec::CurveParams& c, const Bytes& data) {
    if (data.size() != 2 * c.field_bytes)
        fail(Errc::malformed_input, "signature: expected " + std::to_string(2 * c.field_bytes) +
                                        " bytes, got " + std::to_string(data.size()));
    Signature sig;
    sig.r = bigint_from_bytes(Bytes(data.begin(), data.begin() + c.field_bytes));
    sig.s = bigint_from_bytes(Bytes(data.begin() + c.field_bytes, data.end()));
    return sig;
}

}  // namespace mpak::ecdsa
