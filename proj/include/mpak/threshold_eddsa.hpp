#pragma once

#include <optional>
#include <string>
#include <utility>

#include "mpak/bigint.hpp"
#include "mpak/ed25519.hpp"
#include "mpak/encoding.hpp"
#include "mpak/errors.hpp"
#include "mpak/paillier.hpp"
#include "mpak/paillier_proof.hpp"
#include "mpak/rng.hpp"

// Additive 2-of-2 threshold Ed25519. The signing scalar a splits as
// client_share + server_share mod L; the combined nonce point is
// R = r_c*B + r_s*B, so partial signatures add up to a standard Ed25519
// signature. Nonces are random (the deterministic RFC nonce needs the
// whole key in one place, which is exactly what this scheme avoids).
// The server share travels encrypted and is decrypted at registration.

namespace mpak::teddsa {

struct ApiKeyEddsa {
    std::string key_id;
    Bigint client_share;                    // r_share in [0, L)
    paillier::Ciphertext enc_server_share;  // Enc((a - r_share) mod L)
    ed::Point public_key;                   // A = a*B
    Bytes public_key_enc;                   // encode_point(A)
    paillier::PublicKey paillier_pk;
};

struct KeygenAuditEd {
    Bigint server_share;  // test assertions only
};

struct KeygenOptionsEd {
    std::optional<Bigint> client_share;  // test hook
    bool emit_audit = false;
};

inline std::pair<ApiKeyEddsa, std::optional<KeygenAuditEd>> generate_api_key(
    const ed::Keypair& kp, const paillier::VerifiedPublicKey& paillier_pk, RandomSource& rng,
    const KeygenOptionsEd& opts = {}) {
    const Bigint& L = ed::params().L;
    if (paillier_pk.pk().n <= L)
        fail(Errc::invalid_key, "keygen: paillier modulus smaller than group order");

    Bigint client = opts.client_share ? *opts.client_share : random_below(rng, L);
    if (client < 0 || client >= L) fail(Errc::range_error, "keygen: client share out of range");
    Bigint server = (kp.a % L - client) % L;
    if (server < 0) server += L;

    ApiKeyEddsa key;
    key.key_id = to_hex(rng.bytes(16));
    key.client_share = client;
    key.paillier_pk = paillier_pk.pk();
    paillier::EncNonce nonce = paillier::precompute_nonce(key.paillier_pk, rng);
    key.enc_server_share = paillier::encrypt(key.paillier_pk, server, nonce);
    key.public_key = kp.A;
    key.public_key_enc = kp.a_enc;

    std::optional<KeygenAuditEd> audit;
    if (opts.emit_audit) audit = KeygenAuditEd{server};
    return {std::move(key), std::move(audit)};
}

// Registration-side share recovery.
inline Bigint decrypt_server_share(const paillier::SecretKey& sk,
                                   const paillier::Ciphertext& enc_share) {
    Bigint share = paillier::decrypt(sk, enc_share);
    if (share >= ed::params().L) fail(Errc::malformed_input, "server share out of range");
    return share;
}

struct ClientEntryEd {
    ed::Point R;
    Bigint r_c;
    bool used = false;
};

struct ServerEntryEd {
    ed::Point R;
    Bigint r_s;
};

struct EdClientInit {
    Bigint r_c;
    ed::Point Rc;
};

inline EdClientInit ed_client_init(RandomSource& rng) {
    Bigint r_c = random_nonzero_below(rng, ed::params().L);
    return EdClientInit{r_c, ed::mul_base(r_c)};
}

struct EdServerResponse {
    Bigint r_s;
    ed::Point Rs;
    ed::Point R;
};

inline EdServerResponse ed_server_respond(const ed::Point& Rc, RandomSource& rng) {
    ed::check_received_point(Rc, "prepare: Rc");
    Bigint r_s = random_nonzero_below(rng, ed::params().L);
    ed::Point Rs = ed::mul_base(r_s);
    return EdServerResponse{r_s, Rs, ed::add(Rc, Rs)};
}

inline ed::Point ed_client_complete(const ed::Point& Rc, const ed::Point& Rs) {
    ed::check_received_point(Rs, "prepare: Rs");
    return ed::add(Rc, Rs);
}

// Both halves of one prepared entry; test convenience mirroring the wire
// exchange the pool layer performs.
inline std::pair<ClientEntryEd, ServerEntryEd> ed_prepare(RandomSource& client_rng,
                                                          RandomSource& server_rng) {
    EdClientInit init = ed_client_init(client_rng);
    EdServerResponse resp = ed_server_respond(init.Rc, server_rng);
    ed::Point R = ed_client_complete(init.Rc, resp.Rs);
    return {ClientEntryEd{R, init.r_c, false}, ServerEntryEd{resp.R, resp.r_s}};
}

// s_client = r_c + h * client_share, with h the standard Ed25519
// challenge over the combined R. No homomorphic work on this path.
inline Bigint ed_client_sign(const ApiKeyEddsa& key, ClientEntryEd& entry, const Bytes& msg) {
    if (entry.used) fail(Errc::entry_reused, "ed sign: pool entry already consumed");
    entry.used = true;
    const Bigint& L = ed::params().L;
    Bigint h = ed::challenge(ed::encode_point(entry.R), key.public_key_enc, msg);
    Bigint s_client = (entry.r_c + h * key.client_share) % L;
    entry.r_c = 0;
    return s_client;
}

inline Bytes ed_server_complete(const Bigint& server_share, const ServerEntryEd& entry,
                                const Bytes& msg, const Bytes& public_key_enc,
                                const Bigint& s_client) {
    const Bigint& L = ed::params().L;
    if (s_client < 0 || s_client >= L) fail(Errc::range_error, "ed complete: s_client out of range");
    Bytes r_enc = ed::encode_point(entry.R);
    Bigint h = ed::challenge(r_enc, public_key_enc, msg);
    Bigint s = (s_client + entry.r_s + h * server_share) % L;
    Bytes sig = r_enc;
    Bytes s_enc = ed::encode_scalar(s);
    sig.insert(sig.end(), s_enc.begin(), s_enc.end());
    if (!ed::verify(public_key_enc, msg, sig))
        fail(Errc::invalid_presignature, "ed complete: signature failed verification, withholding");
    return sig;
}

}  // namespace mpak::teddsa
