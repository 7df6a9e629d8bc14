#pragma once

// Big-integer helpers over GMP's mpz_class. Wire convention everywhere:
// lowercase big-endian hex without leading zeros ("0" for zero).

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "mpak/encoding.hpp"
#include "mpak/errors.hpp"
#include "mpak/rng.hpp"

namespace mpak {

using Bigint = mpz_class;

inline std::size_t bit_length(const Bigint& x) {
    if (x == 0) return 0;
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline std::string bigint_to_hex(const Bigint& x) {
    if (x < 0) fail(Errc::range_error, "negative integer has no wire encoding");
    char* s = mpz_get_str(nullptr, 16, x.get_mpz_t());
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
}

inline Bigint bigint_from_hex(std::string_view s) {
    if (s.empty()) fail(Errc::malformed_input, "empty integer");
    for (char c : s)
        if (hex_nibble(c) < 0) fail(Errc::malformed_input, "invalid hex integer");
    Bigint x;
    if (mpz_set_str(x.get_mpz_t(), std::string(s).c_str(), 16) != 0)
        fail(Errc::malformed_input, "invalid hex integer");
    return x;
}

// Big-endian bytes; zero-padded to `width` when nonzero (throws if it does not fit).
inline Bytes bigint_to_bytes(const Bigint& x, std::size_t width = 0) {
    if (x < 0) fail(Errc::range_error, "negative integer has no wire encoding");
    std::size_t count = (bit_length(x) + 7) / 8;
    if (width == 0) width = count;
    if (count > width) fail(Errc::range_error, "integer too large for fixed width");
    Bytes out(width, 0);
    if (x != 0) mpz_export(out.data() + (width - count), nullptr, 1, 1, 1, 0, x.get_mpz_t());
    return out;
}

inline Bigint bigint_from_bytes(const std::uint8_t* data, std::size_t len) {
    Bigint x;
    if (len > 0) mpz_import(x.get_mpz_t(), len, 1, 1, 1, 0, data);
    return x;
}

inline Bigint bigint_from_bytes(const Bytes& b) { return bigint_from_bytes(b.data(), b.size()); }

inline Bigint powm(const Bigint& base, const Bigint& exp, const Bigint& mod) {
    Bigint out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return out;
}

inline Bigint invmod(const Bigint& a, const Bigint& m) {
    Bigint out;
    if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        fail(Errc::range_error, "no modular inverse");
    return out;
}

inline Bigint gcd(const Bigint& a, const Bigint& b) {
    Bigint out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline Bigint lcm(const Bigint& a, const Bigint& b) {
    Bigint out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline bool is_probable_prime(const Bigint& x, int rounds = 64) {
    return mpz_probab_prime_p(x.get_mpz_t(), rounds) != 0;
}

// Uniform in [0, 2^bits).
inline Bigint random_bits(RandomSource& rng, std::size_t bits) {
    std::size_t nbytes = (bits + 7) / 8;
    Bytes buf = rng.bytes(nbytes);
    if (bits % 8 != 0) buf[0] &= static_cast<std::uint8_t>(0xff >> (8 - bits % 8));
    return bigint_from_bytes(buf);
}

// Uniform in [0, bound) by rejection sampling.
inline Bigint random_below(RandomSource& rng, const Bigint& bound) {
    if (bound <= 0) fail(Errc::range_error, "bound must be positive");
    std::size_t bits = bit_length(bound);
    for (;;) {
        Bigint x = random_bits(rng, bits);
        if (x < bound) return x;
    }
}

// Uniform in [1, bound).
inline Bigint random_nonzero_below(RandomSource& rng, const Bigint& bound) {
    for (;;) {
        Bigint x = random_below(rng, bound);
        if (x != 0) return x;
    }
}

}  // namespace mpak
