#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "mpak/bigint.hpp"
#include "mpak/encoding.hpp"
#include "mpak/errors.hpp"
#include "mpak/rng.hpp"
#include "mpak/sha2.hpp"

// Ed25519 per RFC 8032: twisted Edwards curve -x^2 + y^2 = 1 + d x^2 y^2
// over GF(2^255 - 19), extended homogeneous coordinates. Decoding is
// strict (y < p, x = 0 with sign bit set rejected) and verification is
// cofactorless; a cofactored variant exists for batch-style cross-checks.

namespace mpak::ed {

struct Params {
    Bigint p;
    Bigint d;
    Bigint L;        // prime subgroup order
    Bigint sqrt_m1;  // sqrt(-1) = 2^((p-1)/4)
    Bigint bx;
    Bigint by;
};

inline const Params& params() {
    static const Params P = [] {
        Params e;
        e.p = (Bigint(1) << 255) - 19;
        e.d = bigint_from_hex("52036cee2b6ffe738cc740797779e89800700a4d4141d8ab75eb4dca135978a3");
        e.L = bigint_from_hex("1000000000000000000000000000000014def9dea2f79cd65812631a5cf5d3ed");
        e.sqrt_m1 = bigint_from_hex("2b8324804fc1df0b2b4d00993dfbd7a72f431806ad2fe478c4ee1b274a0ea0b0");
        e.bx = bigint_from_hex("216936d3cd6e53fec0a4e231fdd6dc5c692cc7609525a7b2c9562d608f25d51a");
        e.by = bigint_from_hex("6666666666666666666666666666666666666666666666666666666666666658");
        return e;
    }();
    return P;
}

// Extended homogeneous coordinates: x = X/Z, y = Y/Z, T = XY/Z.
struct Point {
    Bigint x;
    Bigint y;
    Bigint z;
    Bigint t;
};

inline Point identity() { return Point{0, 1, 1, 0}; }

inline Point base_point() {
    const Params& P = params();
    return Point{P.bx, P.by, 1, P.bx * P.by % P.p};
}

inline std::pair<Bigint, Bigint> to_affine(const Point& pt) {
    const Bigint& p = params().p;
    Bigint zinv = invmod(pt.z, p);
    return {pt.x * zinv % p, pt.y * zinv % p};
}

inline bool points_equal(const Point& a, const Point& b) {
    // Cross-multiplied comparison avoids inversions: X1/Z1 = X2/Z2 etc.
    const Bigint& p = params().p;
    if ((a.x * b.z - b.x * a.z) % p != 0) return false;
    return (a.y * b.z - b.y * a.z) % p == 0;
}

inline bool is_identity(const Point& pt) {
    const Bigint& p = params().p;
    return pt.x % p == 0 && (pt.y - pt.z) % p == 0;
}

// RFC 8032 section 5.1.4 unified addition; complete for this curve.
inline Point add(const Point& p1, const Point& p2) {
    const Params& P = params();
    const Bigint& p = P.p;
    Bigint a = (p1.y - p1.x) * (p2.y - p2.x) % p;
    Bigint b = (p1.y + p1.x) * (p2.y + p2.x) % p;
    Bigint c = p1.t * 2 % p * P.d % p * p2.t % p;
    Bigint dd = p1.z * 2 % p * p2.z % p;
    Bigint e = b - a;
    Bigint f = dd - c;
    Bigint g = dd + c;
    Bigint h = b + a;
    Point out;
    out.x = e * f % p;
    out.y = g * h % p;
    out.t = e * h % p;
    out.z = f * g % p;
    if (out.x < 0) out.x += p;
    if (out.y < 0) out.y += p;
    if (out.t < 0) out.t += p;
    if (out.z < 0) out.z += p;
    return out;
}

inline Point dbl(const Point& p1) {
    const Bigint& p = params().p;
    Bigint a = p1.x * p1.x % p;
    Bigint b = p1.y * p1.y % p;
    Bigint c = 2 * p1.z % p * p1.z % p;
    Bigint h = a + b;
    Bigint xy = p1.x + p1.y;
    Bigint e = h - xy * xy % p;
    Bigint g = a - b;
    Bigint f = c + g;
    Point out;
    out.x = e * f % p;
    out.y = g * h % p;
    out.t = e * h % p;
    out.z = f * g % p;
    if (out.x < 0) out.x += p;
    if (out.y < 0) out.y += p;
    if (out.t < 0) out.t += p;
    if (out.z < 0) out.z += p;
    return out;
}

inline Point scalar_mul(const Bigint& k, const Point& pt) {
    if (k < 0) fail(Errc::range_error, "ed25519: negative scalar");
    Point acc = identity();
    for (long i = static_cast<long>(bit_length(k)) - 1; i >= 0; --i) {
        acc = dbl(acc);
        if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) acc = add(acc, pt);
    }
    return acc;
}

inline Point mul_base(const Bigint& k) { return scalar_mul(k, base_point()); }

inline Bytes encode_point(const Point& pt) {
    auto [x, y] = to_affine(pt);
    Bytes be = bigint_to_bytes(y, 32);
    Bytes le(be.rbegin(), be.rend());
    if (mpz_tstbit(x.get_mpz_t(), 0)) le[31] |= 0x80;
    return le;
}

inline Point decode_point(const Bytes& data) {
    if (data.size() != 32) fail(Errc::bad_point, "ed25519: point encoding must be 32 bytes");
    const Params& P = params();
    const Bigint& p = P.p;
    bool x_odd = (data[31] & 0x80) != 0;
    Bytes le = data;
    le[31] &= 0x7f;
    Bytes be(le.rbegin(), le.rend());
    Bigint y = bigint_from_bytes(be);
    if (y >= p) fail(Errc::bad_point, "ed25519: y out of field range");

    // x^2 = (y^2 - 1) / (d y^2 + 1); candidate root via the (p+3)/8 trick.
    Bigint y2 = y * y % p;
    Bigint u = (y2 - 1) % p;
    if (u < 0) u += p;
    Bigint v = (P.d * y2 + 1) % p;
    Bigint x = u * powm(v, 3, p) % p * powm(u * powm(v, 7, p) % p, (p - 5) / 8, p) % p;
    Bigint vx2 = v * x % p * x % p;
    if (vx2 != u) {
        if ((vx2 + u) % p != 0) fail(Errc::bad_point, "ed25519: not a curve point");
        x = x * P.sqrt_m1 % p;
    }
    if (x == 0 && x_odd) fail(Errc::bad_point, "ed25519: invalid sign bit for x = 0");
    if ((mpz_tstbit(x.get_mpz_t(), 0) != 0) != x_odd) x = p - x;
    return Point{x, y, 1, x * y % p};
}

// Low-order and identity points vanish under multiplication by the
// cofactor; an honest nonce or public point never does.
inline bool is_low_order(const Point& pt) {
    return is_identity(scalar_mul(8, pt));
}

inline void check_received_point(const Point& pt, const char* label) {
    if (is_low_order(pt)) fail(Errc::bad_point, std::string(label) + ": low-order point");
}

inline Bytes encode_scalar(const Bigint& s) {
    Bytes be = bigint_to_bytes(s, 32);
    return Bytes(be.rbegin(), be.rend());
}

inline Bigint decode_scalar(const Bytes& data) {
    if (data.size() != 32) fail(Errc::malformed_input, "ed25519: scalar must be 32 bytes");
    Bytes be(data.rbegin(), data.rend());
    return bigint_from_bytes(be);
}

inline Bigint clamp_scalar(const Bytes& h32) {
    Bytes le = h32;
    le[0] &= 0xf8;
    le[31] &= 0x7f;
    le[31] |= 0x40;
    Bytes be(le.rbegin(), le.rend());
    return bigint_from_bytes(be);
}

struct Keypair {
    Bytes seed;    // 32-byte RFC 8032 secret key
    Bigint a;      // clamped signing scalar
    Bytes prefix;  // second half of SHA-512(seed)
    Point A;       // public point a*B
    Bytes a_enc;   // encode_point(A)
};

inline Keypair keypair_from_seed(const Bytes& seed) {
    if (seed.size() != 32) fail(Errc::malformed_input, "ed25519: seed must be 32 bytes");
    Bytes h = sha512(seed);
    Keypair kp;
    kp.seed = seed;
    kp.a = clamp_scalar(Bytes(h.begin(), h.begin() + 32));
    kp.prefix.assign(h.begin() + 32, h.end());
    kp.A = mul_base(kp.a);
    kp.a_enc = encode_point(kp.A);
    return kp;
}

inline Keypair generate_keypair(RandomSource& rng) { return keypair_from_seed(rng.bytes(32)); }

inline Bigint challenge(const Bytes& r_enc, const Bytes& a_enc, const Bytes& msg) {
    Sha512 h;
    h.update(r_enc);
    h.update(a_enc);
    h.update(msg);
    Bytes dig = h.finish();
    Bytes be(dig.rbegin(), dig.rend());
    return bigint_from_bytes(be) % params().L;
}

// Single-party signing with an explicit nonce scalar; the deterministic
// RFC nonce and the threshold protocol both layer on top of this.
inline Bytes sign_with_nonce(const Bigint& a, const Bytes& a_enc, const Bigint& r,
                             const Bytes& msg) {
    const Bigint& L = params().L;
    Bytes r_enc = encode_point(mul_base(r));
    Bigint h = challenge(r_enc, a_enc, msg);
    Bigint s = (r % L + h * (a % L)) % L;
    Bytes out = r_enc;
    Bytes s_enc = encode_scalar(s);
    out.insert(out.end(), s_enc.begin(), s_enc.end());
    return out;
}

inline Bytes sign(const Keypair& kp, const Bytes& msg) {
    Sha512 h;
    h.update(kp.prefix);
    h.update(msg);
    Bytes dig = h.finish();
    Bytes be(dig.rbegin(), dig.rend());
    Bigint r = bigint_from_bytes(be) % params().L;
    return sign_with_nonce(kp.a, kp.a_enc, r, msg);
}

// Cofactorless verification: s*B == R + h*A exactly.
inline bool verify(const Bytes& a_enc, const Bytes& msg, const Bytes& sig) {
    if (sig.size() != 64 || a_enc.size() != 32) return false;
    const Params& P = params();
    try {
        Point A = decode_point(a_enc);
        Bytes r_enc(sig.begin(), sig.begin() + 32);
        Point R = decode_point(r_enc);
        Bigint s = decode_scalar(Bytes(sig.begin() + 32, sig.end()));
        if (s >= P.L) return false;
        Bigint h = challenge(r_enc, a_enc, msg);
        Point lhs = mul_base(s);
        Point rhs = add(R, scalar_mul(h, A));
        return points_equal(lhs, rhs);
    } catch (const Error&) {
        return false;
    }
}

// Cofactored check 8sB == 8R + 8hA; accepts everything verify() accepts.
inline bool verify_cofactored(const Bytes& a_enc, const Bytes& msg, const Bytes& sig) {
    if (sig.size() != 64 || a_enc.size() != 32) return false;
    const Params& P = params();
    try {
        Point A = decode_point(a_enc);
        Bytes r_enc(sig.begin(), sig.begin() + 32);
        Point R = decode_point(r_enc);
        Bigint s = decode_scalar(Bytes(sig.begin() + 32, sig.end()));
        if (s >= P.L) return false;
        Bigint h = challenge(r_enc, a_enc, msg);
        Point lhs = scalar_mul(8, mul_base(s));
        Point rhs = scalar_mul(8, add(R, scalar_mul(h, A)));
        return points_equal(lhs, rhs);
    } catch (const Error&) {
        return false;
    }
}

}  // namespace mpak::ed
