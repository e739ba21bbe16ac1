#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

// Basic exact modular arithmetic on 64-bit residues. All moduli here are
// prime powers p^m fitting in a uint64_t; products go through __int128.

namespace pcs {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

struct NotInvertible : std::domain_error {
    explicit NotInvertible(const std::string& what) : std::domain_error(what) {}
};

struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((u128)a * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// p^e with overflow check.
inline u64 pow_u64(u64 p, u64 e) {
    u64 r = 1;
    for (u64 i = 0; i < e; ++i) {
        if (r > UINT64_MAX / p) throw std::overflow_error("pow_u64 overflow");
        r *= p;
    }
    return r;
}

// Reduce a signed integer into [0, m).
inline u64 reduce(i64 x, u64 m) {
    i64 r = x % (i64)m;
    if (r < 0) r += (i64)m;
    return (u64)r;
}

inline u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// y with x*y == 1 mod m. Throws NotInvertible if gcd(x, m) != 1.
inline u64 inv_mod(u64 x, u64 m) {
    i64 r0 = (i64)m, r1 = (i64)(x % m);
    i64 s0 = 0, s1 = 1;
    while (r1) {
        i64 q = r0 / r1;
        i64 r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        i64 s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1)
        throw NotInvertible("inv_mod: argument shares a factor with the modulus");
    return reduce(s0, m);
}

// p-adic valuation of an integer. v is meaningless when finite == false
// (the zero convention: ord(0) = infinity).
struct Valuation {
    bool finite = true;
    u64 v = 0;

    friend bool operator==(const Valuation& a, const Valuation& b) {
        if (!a.finite || !b.finite) return a.finite == b.finite;
        return a.v == b.v;
    }
};

inline Valuation ord_p_int(i64 x, u64 p) {
    if (x == 0) return {false, 0};
    u64 a = x < 0 ? (u64)(-x) : (u64)x;
    u64 v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return {true, v};
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace pcs
