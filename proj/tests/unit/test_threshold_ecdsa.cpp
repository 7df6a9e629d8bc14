#include <catch2/catch_amalgamated.hpp>

#include "../support/oracles.hpp"
#include "mpak/threshold_ecdsa.hpp"

using namespace mpak;

namespace {

const ec::CurveParams& C = ec::secp256k1();

struct Fixture {
    paillier::Keypair server;
    paillier::VerifiedPublicKey vpk;

    explicit Fixture(unsigned bits, const char* label)
        : server([&] {
              DrbgRng rng(label, 1);
              return paillier::keygen(bits, rng);
          }()),
          vpk(paillier::VerifiedPublicKey::verify(server.pk,
                                                  paillier::prove_correctness(server.sk))) {}
};

// 1024-bit Paillier satisfies the no-wrap bound for a 256-bit curve and
// keeps unit tests quick; the acceptance suite runs the paper's 2048.
Fixture& fixture() {
    static Fixture f(1024, "tecdsa-fixture");
    return f;
}

// Full protocol run with every exchanged value pinned by the caller.
ecdsa::Signature run_protocol(const tecdsa::ApiKeyEcdsa& key, const Bigint& audit_x1,
                              const Bigint& k1, const Bigint& k2, const Bigint& m,
                              RandomSource& rng, bool low_s = true) {
    ec::AffinePoint R2 = ec::mul_g(C, k2);
    ec::AffinePoint R = ec::scalar_mul(C, k1, R2);  // server side
    ec::AffinePoint R_client = ec::scalar_mul(C, k2, ec::mul_g(C, k1));
    REQUIRE(R == R_client);

    tecdsa::ClientEntryEcdsa entry{R_client, k2, paillier::precompute_nonce(key.paillier_pk, rng)};
    tecdsa::Presignature presig = tecdsa::compute_presignature(key, entry, m, rng);
    (void)audit_x1;
    return tecdsa::complete_signature(fixture().server.sk, k1, presig, m, key.public_key, C,
                                      low_s);
}

}  // namespace

TEST_CASE("identity resharing keeps the client share equal to x") {
    DrbgRng rng("tecdsa-identity", 2);
    Bigint x = random_nonzero_below(rng, C.q);
    tecdsa::KeygenOptions opts;
    opts.resharing_scalar = 1;
    opts.emit_audit = true;
    auto [key, audit] = tecdsa::generate_api_key(x, C, fixture().vpk, rng, opts);
    REQUIRE(audit.has_value());
    CHECK(audit->server_share == 1);
    CHECK(key.client_share == x);
    CHECK(paillier::decrypt(fixture().server.sk, key.enc_server_share) == 1);
}

TEST_CASE("x = 1 with resharing scalar 5") {
    DrbgRng rng("tecdsa-five", 3);
    tecdsa::KeygenOptions opts;
    opts.resharing_scalar = 5;
    opts.emit_audit = true;
    auto [key, audit] = tecdsa::generate_api_key(1, C, fixture().vpk, rng, opts);
    CHECK(key.client_share == invmod(5, C.q));
    CHECK(audit->server_share * key.client_share % C.q == 1);
    CHECK(key.public_key == C.g);
}

TEST_CASE("share recombination over random keys") {
    DrbgRng rng("tecdsa-recombine", 4);
    for (int i = 0; i < 20; ++i) {
        Bigint x = random_nonzero_below(rng, C.q);
        tecdsa::KeygenOptions opts;
        opts.emit_audit = true;
        auto [key, audit] = tecdsa::generate_api_key(x, C, fixture().vpk, rng, opts);
        REQUIRE(audit.has_value());
        CHECK(audit->server_share * key.client_share % C.q == x);
        CHECK(key.public_key == ec::mul_g(C, x));
        CHECK(paillier::decrypt(fixture().server.sk, key.enc_server_share) ==
              audit->server_share);
    }
}

TEST_CASE("keygen range and size errors") {
    DrbgRng rng("tecdsa-keygen-errors", 5);
    CHECK_THROWS_AS(tecdsa::generate_api_key(0, C, fixture().vpk, rng), Error);
    CHECK_THROWS_AS(tecdsa::generate_api_key(C.q, C, fixture().vpk, rng), Error);

    // A 512-bit modulus violates the no-wrap bound for a 256-bit curve.
    DrbgRng krng("tecdsa-small-paillier", 6);
    paillier::Keypair small = paillier::keygen(512, krng);
    paillier::VerifiedPublicKey small_vpk = paillier::VerifiedPublicKey::own_key(small.sk);
    try {
        tecdsa::generate_api_key(7, C, small_vpk, rng);
        FAIL("undersized modulus must be rejected");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_key);
    }
    // The explicit test-only override admits it.
    tecdsa::KeygenOptions opts;
    opts.insecure_allow_small_modulus = true;
    auto [key, audit] = tecdsa::generate_api_key(7, C, small_vpk, rng, opts);
    CHECK(key.public_key == ec::mul_g(C, 7));
}

TEST_CASE("audit output is absent unless requested") {
    DrbgRng rng("tecdsa-audit", 7);
    auto [key, audit] = tecdsa::generate_api_key(42, C, fixture().vpk, rng);
    CHECK_FALSE(audit.has_value());
}

TEST_CASE("dh nonce agreement") {
    DrbgRng crng("tecdsa-dh-client", 8);
    DrbgRng srng("tecdsa-dh-server", 9);

    tecdsa::DhClientInit init = tecdsa::dh_client_init(C, crng);
    CHECK(init.R2 == ec::mul_g(C, init.k2));

    tecdsa::DhServerResponse resp = tecdsa::dh_server_respond(init.R2, C, srng);
    ec::AffinePoint client_R = tecdsa::dh_client_complete(init.k2, resp.R1, C);
    CHECK(client_R == resp.R);
    CHECK(ec::compress(C, client_R) == ec::compress(C, resp.R));
    CHECK(client_R == ec::mul_g(C, init.k2 * resp.k1 % C.q));
}

TEST_CASE("dh unit and fixed scalars") {
    // k2 = 1: R2 = G and R = R1.
    ec::AffinePoint R1 = ec::mul_g(C, 17);
    CHECK(tecdsa::dh_client_complete(1, R1, C) == R1);
    // k1 = 2, k2 = 3: R = 6G.
    ec::AffinePoint R = ec::scalar_mul(C, 2, ec::mul_g(C, 3));
    CHECK(R == ec::mul_g(C, 6));
}

TEST_CASE("dh rejects identity and off-curve points") {
    DrbgRng rng("tecdsa-dh-bad", 10);
    CHECK_THROWS_AS(tecdsa::dh_server_respond(ec::AffinePoint::identity(), C, rng), Error);
    CHECK_THROWS_AS(tecdsa::dh_client_complete(3, ec::AffinePoint::identity(), C), Error);
    ec::AffinePoint off = C.g;
    off.y += 1;
    CHECK_THROWS_AS(tecdsa::dh_server_respond(off, C, rng), Error);
    CHECK_THROWS_AS(tecdsa::dh_client_complete(3, off, C), Error);
}

TEST_CASE("threshold signature equals single-party with k = k1*k2") {
    DrbgRng rng("tecdsa-equivalence", 11);
    Bigint x = bigint_from_hex("01");
    tecdsa::KeygenOptions opts;
    opts.resharing_scalar = 1;
    opts.emit_audit = true;
    auto [key, audit] = tecdsa::generate_api_key(x, C, fixture().vpk, rng, opts);

    Bigint m = ecdsa::digest_to_scalar(C, sha256(to_bytes("abc")));
    ecdsa::Signature threshold = run_protocol(key, audit->server_share, 2, 3, m, rng);
    ecdsa::Signature single = ecdsa::sign_with_nonce(C, x, m, 6);
    CHECK(threshold.r == single.r);
    CHECK(threshold.s == single.s);
    CHECK(oracle::ecdsa_verify_secp256k1(ec::compress(C, key.public_key),
                                         sha256(to_bytes("abc")), threshold.r, threshold.s));
}

TEST_CASE("equivalence holds across random pinned nonces") {
    DrbgRng rng("tecdsa-equiv-random", 12);
    for (int i = 0; i < 10; ++i) {
        Bigint x = random_nonzero_below(rng, C.q);
        tecdsa::KeygenOptions opts;
        opts.emit_audit = true;
        auto [key, audit] = tecdsa::generate_api_key(x, C, fixture().vpk, rng, opts);
        Bigint k1 = random_nonzero_below(rng, C.q);
        Bigint k2 = random_nonzero_below(rng, C.q);
        Bigint m = ecdsa::digest_to_scalar(C, rng.bytes(32));
        ecdsa::Signature threshold = run_protocol(key, audit->server_share, k1, k2, m, rng);
        ecdsa::Signature single = ecdsa::sign_with_nonce(C, x, m, k1 * k2 % C.q);
        CHECK(threshold.r == single.r);
        CHECK(threshold.s == single.s);
    }
}

TEST_CASE("end-to-end threshold signatures verify") {
    DrbgRng rng("tecdsa-e2e", 13);
    for (int i = 0; i < 10; ++i) {
        Bigint x = random_nonzero_below(rng, C.q);
        auto [key, audit] = tecdsa::generate_api_key(x, C, fixture().vpk, rng);

        tecdsa::DhClientInit init = tecdsa::dh_client_init(C, rng);
        tecdsa::DhServerResponse resp = tecdsa::dh_server_respond(init.R2, C, rng);
        ec::AffinePoint R = tecdsa::dh_client_complete(init.k2, resp.R1, C);

        Bytes digest = rng.bytes(32);
        Bigint m = ecdsa::digest_to_scalar(C, digest);
        tecdsa::ClientEntryEcdsa entry{R, init.k2,
                                       paillier::precompute_nonce(key.paillier_pk, rng)};
        tecdsa::Presignature presig = tecdsa::compute_presignature(key, entry, m, rng);
        ecdsa::Signature sig = tecdsa::complete_signature(fixture().server.sk, resp.k1, presig, m,
                                                          key.public_key, C);
        CHECK(ecdsa::verify(C, key.public_key, m, sig));
        CHECK(oracle::ecdsa_verify_secp256k1(ec::compress(C, key.public_key), digest, sig.r,
                                             sig.s));
        CHECK(ecdsa::is_low_s(C, sig.s));
    }
}

TEST_CASE("entry reuse is rejected") {
    DrbgRng rng("tecdsa-reuse", 14);
    Bigint x = random_nonzero_below(rng, C.q);
    auto [key, audit] = tecdsa::generate_api_key(x, C, fixture().vpk, rng);
    tecdsa::DhClientInit init = tecdsa::dh_client_init(C, rng);
    tecdsa::DhServerResponse resp = tecdsa::dh_server_respond(init.R2, C, rng);
    ec::AffinePoint R = tecdsa::dh_client_complete(init.k2, resp.R1, C);
    tecdsa::ClientEntryEcdsa entry{R, init.k2, paillier::precompute_nonce(key.paillier_pk, rng)};
    Bigint m = 12345;
    tecdsa::compute_presignature(key, entry, m, rng);
    try {
        tecdsa::compute_presignature(key, entry, m, rng);
        FAIL("reuse must throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::entry_reused);
    }
}

TEST_CASE("tampered ciphertext is caught before release") {
    DrbgRng rng("tecdsa-tamper", 15);
    Bigint x = random_nonzero_below(rng, C.q);
    auto [key, audit] = tecdsa::generate_api_key(x, C, fixture().vpk, rng);
    tecdsa::DhClientInit init = tecdsa::dh_client_init(C, rng);
    tecdsa::DhServerResponse resp = tecdsa::dh_server_respond(init.R2, C, rng);
    ec::AffinePoint R = tecdsa::dh_client_complete(init.k2, resp.R1, C);
    Bigint m = 999;

    // c3 replaced by an encryption of zero: s = 0, never released.
    paillier::EncNonce nonce = paillier::precompute_nonce(key.paillier_pk, rng);
    tecdsa::Presignature forged{paillier::encrypt(key.paillier_pk, 0, nonce), R};
    try {
        tecdsa::complete_signature(fixture().server.sk, resp.k1, forged, m, key.public_key, C);
        FAIL("zero signature must be rejected");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_presignature);
    }

    // Digest mismatch between client and server.
    tecdsa::ClientEntryEcdsa entry{R, init.k2, paillier::precompute_nonce(key.paillier_pk, rng)};
    tecdsa::Presignature presig = tecdsa::compute_presignature(key, entry, m, rng);
    CHECK_THROWS_AS(tecdsa::complete_signature(fixture().server.sk, resp.k1, presig, m + 1,
                                               key.public_key, C),
                    Error);
}

TEST_CASE("mask keeps plaintext below the modulus") {
    // Worst-case operands: t1, m at their maxima, mu at q^2 - 1.
    Bigint q = C.q;
    Bigint worst = (q - 1) * (q - 1) + (q - 1) + (q * q - 1) * q;
    CHECK(worst < fixture().server.pk.n);
}
