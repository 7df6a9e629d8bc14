#pragma once

// Noninteractive proof that a Paillier modulus satisfies gcd(n, phi(n)) = 1.
// The map x -> x^n is a permutation of Z_n* exactly when that gcd is 1, so the
// prover exhibits n-th roots of Fiat-Shamir challenges derived from n. The
// verifier additionally trial-divides n by every prime below alpha, which
// bounds the soundness error by alpha^-m2 (6370^-11 < 2^-128). m1 is the
// challenge count of the interactive variant; both counts stay pinned to 11.

#include <vector>

#include "mpak/bigint.hpp"
#include "mpak/errors.hpp"
#include "mpak/paillier.hpp"
#include "mpak/sha2.hpp"

namespace mpak::paillier {

struct ProofParams {
    unsigned alpha = 6370;
    unsigned m1 = 11;
    unsigned m2 = 11;

    bool operator==(const ProofParams&) const = default;
};

// Toy parameters for tiny test moduli (trial division below 6370 would reject
// any toy n). Insecure by construction.
inline ProofParams toy_proof_params() { return ProofParams{4, 11, 11}; }

struct KeyCorrectnessProof {
    ProofParams params;
    std::vector<Bigint> sigmas;

    // Length-prefixed integer sequence: u32be count, then per integer a u32be
    // length and lowercase big-endian hex. Order: alpha, m1, m2, sigma_1..m2.
    Bytes serialize() const;
    static KeyCorrectnessProof deserialize(const Bytes& in);
};

namespace detail {

inline std::vector<std::uint32_t> primes_below(std::uint32_t bound) {
    std::vector<std::uint32_t> primes;
    std::vector<bool> sieve(bound, true);
    for (std::uint32_t i = 2; i < bound; ++i) {
        if (!sieve[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = std::uint64_t(i) * i; j < bound; j += i) sieve[j] = false;
    }
    return primes;
}

// Deterministic challenge in Z_n* derived from (n, index). Prover and
// verifier must walk the identical rejection path.
inline Bigint derive_challenge(const PublicKey& pk, unsigned index) {
    const std::size_t nbytes = (bit_length(pk.n) + 7) / 8;
    for (std::uint32_t attempt = 0;; ++attempt) {
        Bytes buf;
        buf.reserve(nbytes);
        for (std::uint32_t block = 0; buf.size() < nbytes; ++block) {
            Sha256 h;
            h.update("mpak.paillier.correctness.v1");
            h.update(bigint_to_hex(pk.n));
            Bytes ctr;
            put_u32be(ctr, index);
            put_u32be(ctr, attempt);
            put_u32be(ctr, block);
            h.update(ctr);
            Bytes d = h.finish();
            buf.insert(buf.end(), d.begin(), d.end());
        }
        buf.resize(nbytes);
        std::size_t extra = nbytes * 8 - bit_length(pk.n);
        if (extra > 0) buf[0] &= static_cast<std::uint8_t>(0xff >> extra);
        Bigint x = bigint_from_bytes(buf);
        if (x <= 1 || x >= pk.n) continue;
        if (gcd(x, pk.n) != 1) continue;
        return x;
    }
}

}  // namespace detail

inline KeyCorrectnessProof prove_correctness(const SecretKey& sk, const ProofParams& params = {}) {
    Bigint phi = (sk.p - 1) * (sk.q - 1);
    if (sk.p == sk.q || gcd(sk.n, phi) != 1) fail(Errc::invalid_key, "gcd(n, phi(n)) != 1");
    Bigint root_exp = invmod(sk.n, phi);  // x -> x^root_exp inverts the n-th power map
    PublicKey pk = sk.pub();
    KeyCorrectnessProof proof;
    proof.params = params;
    proof.sigmas.reserve(params.m2);
    for (unsigned i = 0; i < params.m2; ++i)
        proof.sigmas.push_back(powm(detail::derive_challenge(pk, i), root_exp, sk.n));
    return proof;
}

inline bool verify_correctness(const PublicKey& pk, const KeyCorrectnessProof& proof,
                               const ProofParams& expected = {}) {
    if (!(proof.params == expected)) return false;
    if (proof.sigmas.size() != expected.m2) return false;
    if (pk.n <= 3 || mpz_even_p(pk.n.get_mpz_t())) return false;
    for (std::uint32_t small : detail::primes_below(expected.alpha)) {
        if (mpz_divisible_ui_p(pk.n.get_mpz_t(), small) != 0) return false;
    }
    for (unsigned i = 0; i < expected.m2; ++i) {
        const Bigint& sigma = proof.sigmas[i];
        if (sigma <= 0 || sigma >= pk.n) return false;
        if (powm(sigma, pk.n, pk.n) != detail::derive_challenge(pk, i)) return false;
    }
    return true;
}

inline Bytes KeyCorrectnessProof::serialize() const {
    std::vector<Bigint> ints;
    ints.reserve(3 + sigmas.size());
    ints.emplace_back(params.alpha);
    ints.emplace_back(params.m1);
    ints.emplace_back(params.m2);
    for (const Bigint& s : sigmas) ints.push_back(s);
    Bytes out;
    put_u32be(out, static_cast<std::uint32_t>(ints.size()));
    for (const Bigint& x : ints) {
        std::string hex = bigint_to_hex(x);
        put_u32be(out, static_cast<std::uint32_t>(hex.size()));
        out.insert(out.end(), hex.begin(), hex.end());
    }
    return out;
}

inline KeyCorrectnessProof KeyCorrectnessProof::deserialize(const Bytes& in) {
    std::size_t pos = 0;
    std::uint32_t count = get_u32be(in, pos);
    if (count < 3 || count > 1024) fail(Errc::malformed_input, "bad transcript integer count");
    std::vector<Bigint> ints;
    ints.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        std::uint32_t len = get_u32be(in, pos);
        if (len == 0 || pos + len > in.size()) fail(Errc::malformed_input, "truncated transcript integer");
        std::string hex(reinterpret_cast<const char*>(in.data()) + pos, len);
        pos += len;
        ints.push_back(bigint_from_hex(hex));
    }
    if (pos != in.size()) fail(Errc::malformed_input, "trailing bytes in transcript");
    KeyCorrectnessProof proof;
    if (ints[0] > 1u << 24 || ints[1] > 1u << 16 || ints[2] > 1u << 16)
        fail(Errc::malformed_input, "transcript parameters out of range");
    proof.params.alpha = static_cast<unsigned>(ints[0].get_ui());
    proof.params.m1 = static_cast<unsigned>(ints[1].get_ui());
    proof.params.m2 = static_cast<unsigned>(ints[2].get_ui());
    if (ints.size() != 3u + proof.params.m2) fail(Errc::malformed_input, "transcript count mismatch");
    proof.sigmas.assign(ints.begin() + 3, ints.end());
    return proof;
}

// Parse-and-verify for transcripts off the wire; any malformation rejects.
inline bool verify_serialized(const PublicKey& pk, const Bytes& transcript,
                              const ProofParams& expected = {}) {
    try {
        return verify_correctness(pk, KeyCorrectnessProof::deserialize(transcript), expected);
    } catch (const Error&) {
        return false;
    }
}

// A Paillier public key that passed the correctness proof. API key
// generation takes this type instead of a bare PublicKey, so skipping
// verification is a compile error rather than a policy violation.
class VerifiedPublicKey {
public:
    static VerifiedPublicKey verify(const PublicKey& pk, const KeyCorrectnessProof& proof,
                                    const ProofParams& expected = {}) {
        if (!verify_correctness(pk, proof, expected))
            fail(Errc::proof_rejected, "paillier key correctness proof rejected");
        return VerifiedPublicKey(pk);
    }

    static VerifiedPublicKey verify_transcript(const PublicKey& pk, const Bytes& transcript,
                                               const ProofParams& expected = {}) {
        return verify(pk, KeyCorrectnessProof::deserialize(transcript), expected);
    }

    // For the party that generated the key itself (it holds the factors).
    static VerifiedPublicKey own_key(const SecretKey& sk) { return VerifiedPublicKey(sk.pub()); }

    const PublicKey& pk() const { return pk_; }

private:
    explicit VerifiedPublicKey(PublicKey pk) : pk_(std::move(pk)) {}
    PublicKey pk_;
};

}  // namespace mpak::paillier
