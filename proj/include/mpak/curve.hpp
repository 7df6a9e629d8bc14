#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "mpak/bigint.hpp"
#include "mpak/encoding.hpp"
#include "mpak/errors.hpp"

// Short-Weierstrass curves over prime fields, y^2 = x^3 + ax + b.
// Affine points at the API surface, Jacobian coordinates inside scalar
// multiplication. Only curves with p = 3 (mod 4) and cofactor 1 are
// supported, which keeps square roots and subgroup checks trivial.

namespace mpak::ec {

struct AffinePoint {
    Bigint x;
    Bigint y;
    bool infinity = false;

    static AffinePoint identity() { return AffinePoint{0, 0, true}; }
};

inline bool operator==(const AffinePoint& a, const AffinePoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
}

struct CurveParams {
    std::string id;
    Bigint p;  // field prime, p = 3 (mod 4)
    Bigint a;
    Bigint b;
    Bigint q;  // group order, prime (cofactor 1)
    AffinePoint g;
    std::size_t field_bytes = 0;
};

inline const CurveParams& secp256k1() {
    static const CurveParams curve = [] {
        CurveParams c;
        c.id = "secp256k1";
        c.p = bigint_from_hex("fffffffffffffffffffffffffffffffffffffffffffffffffffffffefffffc2f");
        c.a = 0;
        c.b = 7;
        c.q = bigint_from_hex("fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141");
        c.g.x = bigint_from_hex("79be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798");
        c.g.y = bigint_from_hex("483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8");
        c.g.infinity = false;
        c.field_bytes = 32;
        return c;
    }();
    return curve;
}

inline const CurveParams& curve_by_id(std::string_view id) {
    if (id == "secp256k1") return secp256k1();
    fail(Errc::malformed_input, "unknown curve id: " + std::string(id));
}

inline bool on_curve(const CurveParams& c, const AffinePoint& pt) {
    if (pt.infinity) return true;
    if (pt.x < 0 || pt.x >= c.p || pt.y < 0 || pt.y >= c.p) return false;
    Bigint lhs = (pt.y * pt.y) % c.p;
    Bigint rhs = (pt.x * pt.x * pt.x + c.a * pt.x + c.b) % c.p;
    return lhs == rhs;
}

// Points received from the other party must be on the curve and not the
// identity; with cofactor 1 that already puts them in the prime-order group.
inline void check_point(const CurveParams& c, const AffinePoint& pt, const char* label) {
    if (pt.infinity) fail(Errc::bad_point, std::string(label) + ": identity point");
    if (!on_curve(c, pt)) fail(Errc::bad_point, std::string(label) + ": point not on curve");
}

namespace detail {

struct JacobianPoint {
    Bigint x;
    Bigint y;
    Bigint z;  // z = 0 marks the identity
};

inline JacobianPoint to_jacobian(const AffinePoint& pt) {
    if (pt.infinity) return JacobianPoint{1, 1, 0};
    return JacobianPoint{pt.x, pt.y, 1};
}

inline AffinePoint to_affine(const CurveParams& c, const JacobianPoint& pt) {
    if (pt.z == 0) return AffinePoint::identity();
    Bigint zinv = invmod(pt.z, c.p);
    Bigint zinv2 = (zinv * zinv) % c.p;
    AffinePoint out;
    out.x = (pt.x * zinv2) % c.p;
    out.y = (pt.y * zinv2 % c.p) * zinv % c.p;
    out.infinity = false;
    return out;
}

inline JacobianPoint jacobian_double(const CurveParams& c, const JacobianPoint& pt) {
    if (pt.z == 0 || pt.y == 0) return JacobianPoint{1, 1, 0};
    const Bigint& p = c.p;
    Bigint xx = (pt.x * pt.x) % p;
    Bigint yy = (pt.y * pt.y) % p;
    Bigint yyyy = (yy * yy) % p;
    Bigint zz = (pt.z * pt.z) % p;
    Bigint s = (pt.x + yy);
    s = (s * s - xx - yyyy) % p;
    s = (s * 2) % p;
    if (s < 0) s += p;
    Bigint m = (3 * xx + c.a * ((zz * zz) % p)) % p;
    if (m < 0) m += p;
    Bigint x3 = (m * m - 2 * s) % p;
    Bigint y3 = (m * (s - x3) - 8 * yyyy) % p;
    Bigint z3 = (pt.y + pt.z);
    z3 = (z3 * z3 - yy - zz) % p;
    if (x3 < 0) x3 += p;
    if (y3 < 0) y3 += p;
    if (z3 < 0) z3 += p;
    return JacobianPoint{x3, y3, z3};
}

// Mixed addition: q2 is affine (z = 1).
inline JacobianPoint jacobian_add_affine(const CurveParams& c, const JacobianPoint& p1,
                                         const AffinePoint& q2) {
    if (q2.infinity) return p1;
    if (p1.z == 0) return JacobianPoint{q2.x, q2.y, 1};
    const Bigint& p = c.p;
    Bigint z1z1 = (p1.z * p1.z) % p;
    Bigint u2 = (q2.x * z1z1) % p;
    Bigint s2 = (q2.y * p1.z % p) * z1z1 % p;
    Bigint h = (u2 - p1.x) % p;
    if (h < 0) h += p;
    Bigint r = (s2 - p1.y) % p;
    if (r < 0) r += p;
    if (h == 0) {
        if (r == 0) return jacobian_double(c, p1);
        return JacobianPoint{1, 1, 0};
    }
    Bigint hh = (h * h) % p;
    Bigint i = (4 * hh) % p;
    Bigint j = (h * i) % p;
    r = (2 * r) % p;
    Bigint v = (p1.x * i) % p;
    Bigint x3 = (r * r - j - 2 * v) % p;
    if (x3 < 0) x3 += p;
    Bigint y3 = (r * ((v - x3) % p) - 2 * p1.y * j) % p;
    if (y3 < 0) y3 += p;
    Bigint z3 = (p1.z + h);
    z3 = (z3 * z3 - z1z1 - hh) % p;
    if (z3 < 0) z3 += p;
    return JacobianPoint{x3, y3, z3};
}

}  // namespace detail

inline AffinePoint add(const CurveParams& c, const AffinePoint& p1, const AffinePoint& p2) {
    if (p1.infinity) return p2;
    if (p2.infinity) return p1;
    const Bigint& p = c.p;
    if (p1.x == p2.x) {
        if ((p1.y + p2.y) % p == 0) return AffinePoint::identity();
        // Tangent line: lambda = (3x^2 + a) / 2y.
        Bigint lambda = (3 * p1.x * p1.x + c.a) % p * invmod((2 * p1.y) % p, p) % p;
        Bigint x3 = (lambda * lambda - 2 * p1.x) % p;
        if (x3 < 0) x3 += p;
        Bigint y3 = (lambda * ((p1.x - x3) % p) - p1.y) % p;
        if (y3 < 0) y3 += p;
        return AffinePoint{x3, y3, false};
    }
    Bigint num = (p2.y - p1.y) % p;
    Bigint den = (p2.x - p1.x) % p;
    if (den < 0) den += p;
    Bigint lambda = num * invmod(den, p) % p;
    if (lambda < 0) lambda += p;
    Bigint x3 = (lambda * lambda - p1.x - p2.x) % p;
    if (x3 < 0) x3 += p;
    Bigint y3 = (lambda * ((p1.x - x3) % p) - p1.y) % p;
    if (y3 < 0) y3 += p;
    return AffinePoint{x3, y3, false};
}

inline AffinePoint negate(const CurveParams& c, const AffinePoint& pt) {
    if (pt.infinity) return pt;
    return AffinePoint{pt.x, pt.y == 0 ? Bigint(0) : Bigint(c.p - pt.y), false};
}

inline AffinePoint scalar_mul(const CurveParams& c, const Bigint& k, const AffinePoint& pt) {
    if (k < 0) fail(Errc::range_error, "scalar_mul: negative scalar");
    if (k == 0 || pt.infinity) return AffinePoint::identity();
    detail::JacobianPoint acc{1, 1, 0};
    for (long i = static_cast<long>(bit_length(k)) - 1; i >= 0; --i) {
        acc = detail::jacobian_double(c, acc);
        if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            acc = detail::jacobian_add_affine(c, acc, pt);
    }
    return detail::to_affine(c, acc);
}

inline AffinePoint mul_g(const CurveParams& c, const Bigint& k) { return scalar_mul(c, k, c.g); }

// SEC1 compressed encoding: 0x02/0x03 prefix plus the big-endian x coordinate.
inline Bytes compress(const CurveParams& c, const AffinePoint& pt) {
    if (pt.infinity) fail(Errc::bad_point, "compress: identity point has no encoding");
    Bytes out;
    out.reserve(1 + c.field_bytes);
    out.push_back(mpz_tstbit(pt.y.get_mpz_t(), 0) ? 0x03 : 0x02);
    Bytes x = bigint_to_bytes(pt.x, c.field_bytes);
    out.insert(out.end(), x.begin(), x.end());
    return out;
}

inline AffinePoint decompress(const CurveParams& c, const Bytes& data) {
    if (data.size() != 1 + c.field_bytes)
        fail(Errc::bad_point, "decompress: expected " + std::to_string(1 + c.field_bytes) +
                                  " bytes, got " + std::to_string(data.size()));
    if (data[0] != 0x02 && data[0] != 0x03)
        fail(Errc::bad_point, "decompress: invalid prefix byte");
    Bigint x = bigint_from_bytes(Bytes(data.begin() + 1, data.end()));
    if (x >= c.p) fail(Errc::bad_point, "decompress: x out of field range");
    Bigint rhs = (x * x * x + c.a * x + c.b) % c.p;
    // p = 3 (mod 4): candidate root is rhs^((p+1)/4).
    Bigint y = powm(rhs, (c.p + 1) / 4, c.p);
    if ((y * y) % c.p != rhs) fail(Errc::bad_point, "decompress: x not on curve");
    bool want_odd = data[0] == 0x03;
    if ((mpz_tstbit(y.get_mpz_t(), 0) != 0) != want_odd) y = c.p - y;
    return AffinePoint{x, y, false};
}

inline std::string point_to_hex(const CurveParams& c, const AffinePoint& pt) {
    return to_hex(compress(c, pt));
}

inline AffinePoint point_from_hex(const CurveParams& c, std::string_view hex) {
    return decompress(c, from_hex(hex));
}

}  // namespace mpak::ec
