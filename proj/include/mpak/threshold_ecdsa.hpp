#pragma once

#include <optional>
#include <string>
#include <utility>

#include "mpak/bigint.hpp"
#include "mpak/curve.hpp"
#include "mpak/ecdsa.hpp"
#include "mpak/encoding.hpp"
#include "mpak/errors.hpp"
#include "mpak/paillier.hpp"
#include "mpak/paillier_proof.hpp"
#include "mpak/rng.hpp"

// Multiplicative 2-of-2 threshold ECDSA. The client acts as a trusted
// dealer: it splits its key x into x1' (encrypted under the server's
// Paillier key) and x2' (kept locally) with x1'·x2' = x mod q. Nonces are
// agreed DH-style, R = (k1·k2)·G, so neither side learns the combined
// nonce. The client then folds its half of the signature into a single
// Paillier ciphertext c3 and the server finishes with one decryption.

namespace mpak::tecdsa {

struct ApiKeyEcdsa {
    std::string key_id;
    const ec::CurveParams* curve = nullptr;
    Bigint client_share;                       // x2'
    paillier::Ciphertext enc_server_share;     // Enc(x1')
    ec::AffinePoint public_key;                // x·G
    paillier::PublicKey paillier_pk;
};

struct KeygenAudit {
    Bigint server_share;  // x1' in the clear; test assertions only
};

struct KeygenOptions {
    // Test hook: pin the resharing scalar instead of sampling it.
    std::optional<Bigint> resharing_scalar;
    // Emit the plaintext server share for recombination assertions.
    bool emit_audit = false;
    // Allow Paillier moduli below the no-wrap bound (toy/test keys only).
    bool insecure_allow_small_modulus = false;
};

inline std::string random_key_id(RandomSource& rng) { return to_hex(rng.bytes(16)); }

// The size invariant guarantees t1·x1' + (k2^-1·m mod q) + mu·q < n for
// every reachable operand, so the plaintext inside c3 never wraps mod n.
inline bool modulus_large_enough(const paillier::PublicKey& pk, const ec::CurveParams& curve) {
    return bit_length(pk.n) > 3 * bit_length(curve.q) + 2;
}

inline std::pair<ApiKeyEcdsa, std::optional<KeygenAudit>> generate_api_key(
    const Bigint& x, const ec::CurveParams& curve, const paillier::VerifiedPublicKey& paillier_pk,
    RandomSource& rng, const KeygenOptions& opts = {}) {
    if (x <= 0 || x >= curve.q) fail(Errc::range_error, "keygen: secret key out of range");
    if (!opts.insecure_allow_small_modulus && !modulus_large_enough(paillier_pk.pk(), curve))
        fail(Errc::invalid_key, "keygen: paillier modulus too small for curve order");

    Bigint r = opts.resharing_scalar ? *opts.resharing_scalar : random_nonzero_below(rng, curve.q);
    if (r <= 0 || r >= curve.q) fail(Errc::range_error, "keygen: resharing scalar out of range");

    ApiKeyEcdsa key;
    key.key_id = random_key_id(rng);
    key.curve = &curve;
    key.client_share = x * invmod(r, curve.q) % curve.q;  // x2' = x·r^-1
    key.paillier_pk = paillier_pk.pk();
    paillier::EncNonce nonce = paillier::precompute_nonce(key.paillier_pk, rng);
    key.enc_server_share = paillier::encrypt(key.paillier_pk, r, nonce);  // x1' = r
    key.public_key = ec::mul_g(curve, x);

    std::optional<KeygenAudit> audit;
    if (opts.emit_audit) audit = KeygenAudit{r};
    return {std::move(key), std::move(audit)};
}

// One prepared nonce entry on each side. The pool layer owns storage and
// single-use bookkeeping; these structs are the math-level payloads.
struct ClientEntryEcdsa {
    ec::AffinePoint R;
    Bigint k2;
    paillier::EncNonce enc_nonce;
};

struct ServerEntryEcdsa {
    ec::AffinePoint R;
    Bigint k1;
};

struct DhClientInit {
    Bigint k2;
    ec::AffinePoint R2;
};

inline DhClientInit dh_client_init(const ec::CurveParams& curve, RandomSource& rng) {
    Bigint k2 = random_nonzero_below(rng, curve.q);
    return DhClientInit{k2, ec::mul_g(curve, k2)};
}

struct DhServerResponse {
    Bigint k1;
    ec::AffinePoint R1;
    ec::AffinePoint R;
};

inline DhServerResponse dh_server_respond(const ec::AffinePoint& R2, const ec::CurveParams& curve,
                                          RandomSource& rng) {
    ec::check_point(curve, R2, "dh: R2");
    Bigint k1 = random_nonzero_below(rng, curve.q);
    return DhServerResponse{k1, ec::mul_g(curve, k1), ec::scalar_mul(curve, k1, R2)};
}

inline ec::AffinePoint dh_client_complete(const Bigint& k2, const ec::AffinePoint& R1,
                                          const ec::CurveParams& curve) {
    ec::check_point(curve, R1, "dh: R1");
    return ec::scalar_mul(curve, k2, R1);
}

struct Presignature {
    paillier::Ciphertext c3;
    ec::AffinePoint R;
};

// Client-side finalization half: everything the server needs to finish the
// signature, folded into one ciphertext.
//
//   c3 = Enc(x1')^(k2^-1·r·x2')  ·  Enc(k2^-1·m + mu·q)
//      = Enc( k2^-1·r·x2'·x1'  +  k2^-1·m  +  mu·q )
//
// so Dec(c3) = k2^-1·(m + r·x) plus a multiple of q that the server's
// reduction mod q removes. mu over [0, q^2) statistically hides the
// client's contribution beyond the signature itself.
inline Presignature compute_presignature(const ApiKeyEcdsa& key, ClientEntryEcdsa& entry,
                                         const Bigint& m, RandomSource& rng) {
    const ec::CurveParams& curve = *key.curve;
    const Bigint& q = curve.q;
    if (m < 0 || m >= q) fail(Errc::range_error, "presignature: digest scalar out of range");
    ec::check_point(curve, entry.R, "presignature: R");
    if (entry.enc_nonce.used) fail(Errc::entry_reused, "presignature: pool entry already consumed");

    Bigint r = entry.R.x % q;
    if (r == 0) fail(Errc::retry_entry, "presignature: R.x = 0 mod q, use next entry");

    Bigint k2_inv = invmod(entry.k2, q);
    Bigint t1 = k2_inv * r % q * key.client_share % q;
    Bigint mu = random_below(rng, q * q);
    Bigint t2 = k2_inv * m % q + mu * q;

    paillier::Ciphertext scaled = paillier::hom_mul_scalar(key.paillier_pk, key.enc_server_share, t1);
    paillier::Ciphertext masked = paillier::encrypt(key.paillier_pk, t2, entry.enc_nonce);
    Presignature out{paillier::hom_add(key.paillier_pk, scaled, masked), entry.R};

    // The caller's pool removes the entry; wiping here makes reuse of a
    // dangling copy fail loudly.
    entry.k2 = 0;
    return out;
}

// Server-side completion: decrypt, normalize, and gate on standard
// verification before anything leaves the server.
inline ecdsa::Signature complete_signature(const paillier::SecretKey& paillier_sk, const Bigint& k1,
                                           const Presignature& presig, const Bigint& m,
                                           const ec::AffinePoint& public_key,
                                           const ec::CurveParams& curve, bool low_s = true) {
    const Bigint& q = curve.q;
    ec::check_point(curve, presig.R, "complete: R");
    if (k1 <= 0 || k1 >= q) fail(Errc::range_error, "complete: k1 out of range");
    Bigint r = presig.R.x % q;
    if (r == 0) fail(Errc::retry_entry, "complete: R.x = 0 mod q");

    Bigint s = invmod(k1, q) * (paillier::decrypt(paillier_sk, presig.c3) % q) % q;
    if (s == 0) fail(Errc::invalid_presignature, "complete: s = 0");
    ecdsa::Signature sig{r, s};
    if (low_s) sig = ecdsa::normalize_low_s(curve, sig);
    if (!ecdsa::verify(curve, public_key, m, sig))
        fail(Errc::invalid_presignature, "complete: signature failed verification, withholding");
    return sig;
}

}  // namespace mpak::tecdsa
