#include <catch2/catch_amalgamated.hpp>

#include "../support/oracles.hpp"
#include "mpak/curve.hpp"
#include "mpak/rng.hpp"

using namespace mpak;

namespace {
const ec::CurveParams& C = ec::secp256k1();
}

TEST_CASE("generator and small multiples") {
    CHECK(ec::on_curve(C, C.g));

    // 2G and 3G, computed independently with libcrypto at test time and
    // against widely published values.
    ec::AffinePoint g2 = ec::scalar_mul(C, 2, C.g);
    CHECK(bigint_to_hex(g2.x) == "c6047f9441ed7d6d3045406e95c07cd85c778e4b8cef3ca7abac09b95c709ee5");
    CHECK(bigint_to_hex(g2.y) == "1ae168fea63dc339a3c58419466ceaeef7f632653266d0e1236431a950cfe52a");

    ec::AffinePoint g3 = ec::scalar_mul(C, 3, C.g);
    CHECK(bigint_to_hex(g3.x) == "f9308a019258c31049344f85f89d5229b531c845836f99b08601f113bce036f9");
    CHECK(bigint_to_hex(g3.y) == "388f7b0f632de8140fe337e62a37f3566500a99934c2231b6cb9fd7584b8e672");

    CHECK(ec::add(C, C.g, g2) == g3);
    CHECK(ec::add(C, g2, C.g) == g3);
    CHECK(ec::add(C, C.g, C.g) == g2);

    for (int k = 1; k <= 20; ++k) {
        ec::AffinePoint ours = ec::scalar_mul(C, k, C.g);
        CHECK(ec::compress(C, ours) == oracle::ecdsa_pub_secp256k1(k));
    }
}

TEST_CASE("group structure") {
    // q*G = identity, (q-1)*G = -G.
    CHECK(ec::scalar_mul(C, C.q, C.g).infinity);
    ec::AffinePoint minus_g = ec::scalar_mul(C, C.q - 1, C.g);
    CHECK(minus_g == ec::negate(C, C.g));
    CHECK(ec::add(C, C.g, minus_g).infinity);

    CHECK(ec::scalar_mul(C, 0, C.g).infinity);
    CHECK(ec::add(C, ec::AffinePoint::identity(), C.g) == C.g);
    CHECK(ec::add(C, C.g, ec::AffinePoint::identity()) == C.g);

    // (a + b)G = aG + bG for random scalars.
    DrbgRng rng("curve-distributive", 1);
    for (int i = 0; i < 5; ++i) {
        Bigint a = random_nonzero_below(rng, C.q);
        Bigint b = random_nonzero_below(rng, C.q);
        ec::AffinePoint lhs = ec::mul_g(C, (a + b) % C.q);
        ec::AffinePoint rhs = ec::add(C, ec::mul_g(C, a), ec::mul_g(C, b));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("compressed encoding round trip") {
    DrbgRng rng("curve-compress", 2);
    for (int i = 0; i < 10; ++i) {
        Bigint k = random_nonzero_below(rng, C.q);
        ec::AffinePoint pt = ec::mul_g(C, k);
        Bytes enc = ec::compress(C, pt);
        REQUIRE(enc.size() == 33);
        REQUIRE((enc[0] == 0x02 || enc[0] == 0x03));
        CHECK(ec::decompress(C, enc) == pt);
        CHECK(enc == oracle::ecdsa_pub_secp256k1(k));
    }
}

TEST_CASE("decompress rejects malformed encodings") {
    Bytes good = ec::compress(C, C.g);

    Bytes short_enc(good.begin(), good.end() - 1);
    CHECK_THROWS_AS(ec::decompress(C, short_enc), Error);

    Bytes bad_prefix = good;
    bad_prefix[0] = 0x04;
    CHECK_THROWS_AS(ec::decompress(C, bad_prefix), Error);

    // x = 5 is not on secp256k1 (x^3 + 7 is a non-residue).
    Bytes off_curve(33, 0);
    off_curve[0] = 0x02;
    off_curve[32] = 5;
    CHECK_THROWS_AS(ec::decompress(C, off_curve), Error);

    // x >= p rejected even if x mod p would be valid.
    Bytes big_x = good;
    for (int i = 1; i <= 32; ++i) big_x[i] = 0xff;
    CHECK_THROWS_AS(ec::decompress(C, big_x), Error);

    CHECK_THROWS_AS(ec::compress(C, ec::AffinePoint::identity()), Error);
}

TEST_CASE("on_curve rejects tweaked points") {
    ec::AffinePoint bad = C.g;
    bad.y += 1;
    CHECK_FALSE(ec::on_curve(C, bad));
    CHECK_THROWS_AS(ec::check_point(C, bad, "test"), Error);
    CHECK_THROWS_AS(ec::check_point(C, ec::AffinePoint::identity(), "test"), Error);
}

TEST_CASE("curve lookup by id") {
    CHECK(ec::curve_by_id("secp256k1").id == "secp256k1");
    CHECK_THROWS_AS(ec::curve_by_id("secp256r1"), Error);
}
