#pragma once

// Paillier cryptosystem with the g = n + 1 convention. Encryption randomness
// r^n mod n^2 is precomputable (EncNonce) so that encrypting during signature
// finalization costs a single modular multiplication. Decryption runs through
// the standard CRT split mod p^2 / q^2; decrypt_direct keeps the plain lambda
// route as a reference.

#include <array>
#include <cstdint>
#include <string>

#include "mpak/bigint.hpp"
#include "mpak/errors.hpp"
#include "mpak/sha2.hpp"

namespace mpak::paillier {

inline constexpr std::array<unsigned, 6> kSupportedBits = {512, 1024, 2048, 3072, 4096, 8192};
inline constexpr unsigned kDefaultBits = 2048;

struct PublicKey {
    Bigint n;
    Bigint n_sq;

    static PublicKey from_n(const Bigint& n) {
        if (n <= 3 || mpz_even_p(n.get_mpz_t())) fail(Errc::invalid_key, "paillier modulus must be odd and > 3");
        return PublicKey{n, n * n};
    }

    bool operator==(const PublicKey& other) const { return n == other.n; }

    // Stable identifier for "does this key file match the live exchange key".
    std::string fingerprint() const { return to_hex(sha256(bigint_to_hex(n))); }
};

struct SecretKey {
    Bigint p;
    Bigint q;  // the spec's q_p
    Bigint n;
    Bigint n_sq;
    Bigint lambda;  // lcm(p-1, q-1)
    // CRT decryption precomputation
    Bigint p_sq;
    Bigint q_sq;
    Bigint hp;  // (L_p((n+1)^{p-1} mod p^2))^{-1} mod p
    Bigint hq;
    Bigint p_inv_q;  // p^{-1} mod q

    PublicKey pub() const { return PublicKey{n, n_sq}; }
};

struct Keypair {
    PublicKey pk;
    SecretKey sk;
};

struct Ciphertext {
    Bigint value;

    bool operator==(const Ciphertext& other) const { return value == other.value; }
};

// Single-use encryption randomness: r and the precomputed r^n mod n^2.
struct EncNonce {
    Bigint r;
    Bigint r_pow;
    bool used = false;
};

namespace detail {

inline Bigint l_function(const Bigint& u, const Bigint& d) { return (u - 1) / d; }

inline Bigint sample_prime(unsigned bits, RandomSource& rng) {
    if (bits < 8) fail(Errc::range_error, "prime size too small");
    for (;;) {
        Bigint start = random_bits(rng, bits);
        mpz_setbit(start.get_mpz_t(), bits - 1);
        Bigint p;
        mpz_nextprime(p.get_mpz_t(), start.get_mpz_t());
        if (bit_length(p) != bits) continue;  // ran past 2^bits
        if (!is_probable_prime(p, 64)) continue;
        return p;
    }
}

}  // namespace detail

inline Keypair keypair_from_primes(const Bigint& p, const Bigint& q) {
    if (p == q) fail(Errc::invalid_key, "paillier primes must differ");
    if (p < 2 || q < 2) fail(Errc::invalid_key, "paillier factors must be primes");
    SecretKey sk;
    sk.p = p;
    sk.q = q;
    sk.n = p * q;
    sk.n_sq = sk.n * sk.n;
    Bigint phi = (p - 1) * (q - 1);
    if (gcd(sk.n, phi) != 1) fail(Errc::invalid_key, "gcd(n, phi(n)) != 1");
    sk.lambda = lcm(p - 1, q - 1);
    sk.p_sq = p * p;
    sk.q_sq = q * q;
    Bigint g = sk.n + 1;
    sk.hp = invmod(detail::l_function(powm(g, p - 1, sk.p_sq), p), p);
    sk.hq = invmod(detail::l_function(powm(g, q - 1, sk.q_sq), q), q);
    sk.p_inv_q = invmod(p, q);
    return Keypair{sk.pub(), sk};
}

// Key sizes outside the benchmark set are for tests only and must be asked
// for explicitly.
inline Keypair keygen(unsigned bits, RandomSource& rng, bool insecure_test_sizes = false) {
    bool supported = false;
    for (unsigned b : kSupportedBits) supported |= (b == bits);
    if (!supported && !insecure_test_sizes)
        fail(Errc::range_error, "unsupported paillier key size " + std::to_string(bits));
    if (bits < 16) fail(Errc::range_error, "paillier key size too small");
    for (;;) {
        Bigint p = detail::sample_prime(bits / 2, rng);
        Bigint q = detail::sample_prime(bits - bits / 2, rng);
        if (p == q) continue;
        Keypair kp = keypair_from_primes(p, q);
        std::size_t nbits = bit_length(kp.pk.n);
        if (nbits + 1 < bits || nbits > bits) continue;
        return kp;
    }
}

inline EncNonce precompute_nonce(const PublicKey& pk, RandomSource& rng) {
    for (;;) {
        Bigint r = random_below(rng, pk.n);
        if (r <= 1) continue;  // trivial nonce forbidden
        if (gcd(r, pk.n) != 1) continue;
        return EncNonce{r, powm(r, pk.n, pk.n_sq), false};
    }
}

// c = (1 + m*n) * r^n mod n^2. Consumes the nonce.
inline Ciphertext encrypt(const PublicKey& pk, const Bigint& m, EncNonce& nonce) {
    if (m < 0 || m >= pk.n) fail(Errc::range_error, "plaintext outside [0, n)");
    if (nonce.used) fail(Errc::nonce_reused, "encryption nonce already consumed");
    if (nonce.r <= 1 || nonce.r >= pk.n) fail(Errc::range_error, "nonce outside (1, n)");
    nonce.used = true;
    Bigint c = (1 + m * pk.n) % pk.n_sq;
    c = c * nonce.r_pow % pk.n_sq;
    return Ciphertext{c};
}

inline void check_ciphertext(const SecretKey& sk, const Ciphertext& c) {
    if (c.value <= 0 || c.value >= sk.n_sq) fail(Errc::malformed_input, "ciphertext outside (0, n^2)");
    if (gcd(c.value, sk.n) != 1) fail(Errc::malformed_input, "malformed ciphertext: gcd(c, n) != 1");
}

// CRT decryption: recover m mod p and m mod q, then recombine.
inline Bigint decrypt(const SecretKey& sk, const Ciphertext& c) {
    check_ciphertext(sk, c);
    Bigint mp = detail::l_function(powm(c.value % sk.p_sq, sk.p - 1, sk.p_sq), sk.p) * sk.hp % sk.p;
    Bigint mq = detail::l_function(powm(c.value % sk.q_sq, sk.q - 1, sk.q_sq), sk.q) * sk.hq % sk.q;
    Bigint diff = (mq - mp) % sk.q;
    if (diff < 0) diff += sk.q;
    return mp + sk.p * (diff * sk.p_inv_q % sk.q);
}

// Reference route: m = L(c^lambda mod n^2) * (lambda mod n)^{-1} mod n.
inline Bigint decrypt_direct(const SecretKey& sk, const Ciphertext& c) {
    check_ciphertext(sk, c);
    Bigint mu = invmod(sk.lambda % sk.n, sk.n);
    return detail::l_function(powm(c.value, sk.lambda, sk.n_sq), sk.n) * mu % sk.n;
}

// Dec(hom_add(c1, c2)) = m1 + m2 mod n.
inline Ciphertext hom_add(const PublicKey& pk, const Ciphertext& c1, const Ciphertext& c2) {
    if (c1.value >= pk.n_sq || c2.value >= pk.n_sq)
        fail(Errc::key_mismatch, "ciphertext not under this public key");
    return Ciphertext{c1.value * c2.value % pk.n_sq};
}

// Dec(hom_mul_scalar(c, a)) = a * m mod n.
inline Ciphertext hom_mul_scalar(const PublicKey& pk, const Ciphertext& c, const Bigint& a) {
    if (a < 0) fail(Errc::range_error, "scalar must be non-negative");
    if (c.value >= pk.n_sq) fail(Errc::key_mismatch, "ciphertext not under this public key");
    return Ciphertext{powm(c.value, a, pk.n_sq)};
}

}  // namespace mpak::paillier
