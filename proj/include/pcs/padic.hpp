#pragma once

#include <cmath>

#include "pcs/modarith.hpp"

// Truncated p-adic integers: residues mod p^prec carrying (p, prec),
// the p-adic logarithm on 1 + pZ_p, and Hensel square-root lifting.

namespace pcs {

struct NonResidue : std::domain_error {
    explicit NonResidue(const std::string& what) : std::domain_error(what) {}
};

class PAdicInt {
  public:
    PAdicInt(u64 p, u64 prec, i64 value)
        : p_(p), prec_(prec), mod_(pow_u64(p, prec)), value_(reduce(value, mod_)) {
        if (p <= 3 || !is_prime_u64(p)) throw DomainError("PAdicInt: p must be a prime > 3");
        if (prec == 0) throw DomainError("PAdicInt: prec must be positive");
    }

    u64 p() const { return p_; }
    u64 prec() const { return prec_; }
    u64 modulus() const { return mod_; }
    u64 value() const { return value_; }

    Valuation valuation() const { return value_ == 0 ? Valuation{false, 0} : ord_p_int((i64)value_, p_); }

    PAdicInt operator+(const PAdicInt& o) const { return with(addmod(value_, o.matched(*this), mod_)); }
    PAdicInt operator-(const PAdicInt& o) const { return with(submod(value_, o.matched(*this), mod_)); }
    PAdicInt operator*(const PAdicInt& o) const { return with(mulmod(value_, o.matched(*this), mod_)); }

    PAdicInt inverse() const {
        if (value_ % p_ == 0) throw NotInvertible("PAdicInt::inverse: p divides value");
        return with(inv_mod(value_, mod_));
    }

    // Reduction to a lower precision.
    PAdicInt reduced(u64 prec) const {
        if (prec > prec_) throw DomainError("PAdicInt::reduced: cannot raise precision");
        return PAdicInt(p_, prec, (i64)(value_ % pow_u64(p_, prec)));
    }

    bool operator==(const PAdicInt& o) const {
        return p_ == o.p_ && prec_ == o.prec_ && value_ == o.value_;
    }

  private:
    PAdicInt with(u64 v) const {
        PAdicInt r = *this;
        r.value_ = v;
        return r;
    }
    u64 matched(const PAdicInt& other) const {
        if (p_ != other.p_ || prec_ != other.prec_)
            throw DomainError("PAdicInt: mixed (p, prec) operands");
        return value_;
    }

    u64 p_, prec_, mod_, value_;
};

// log_p(x) mod p^prec for x == 1 mod p, given as a residue mod p^prec.
//
// The series sum_{m>=1} (-1)^{m+1}(x-1)^m/m is truncated at
// M = prec + 2*ceil(log_p(prec+1)) + 2; terms are computed at lifted
// precision prec + ord_p(m!)-headroom so every division by the p-part of m
// is an exact integer division before the unit part is inverted.
inline u64 padic_log_mod(u64 x, u64 p, u64 prec) {
    if (p <= 3 || !is_prime_u64(p)) throw DomainError("padic_log: p must be a prime > 3");
    u64 modn = pow_u64(p, prec);
    x %= modn;
    if (x % p != 1) throw DomainError("padic_log: argument must be 1 mod p");

    u64 terms = prec + 2 * (u64)std::ceil(std::log((double)prec + 1) / std::log((double)p)) + 2;
    u64 emax = 0;
    while (pow_u64(p, emax + 1) <= terms) ++emax;
    u64 lifted = prec + emax;
    u64 modl = pow_u64(p, lifted);  // throws on overflow for absurd precisions

    u64 t = x - 1;  // lifted arbitrarily to mod p^lifted
    u64 ypow = 1;
    u64 acc = 0;
    for (u64 m = 1; m <= terms; ++m) {
        ypow = mulmod(ypow, t, modl);
        u64 e = 0, unit = m;
        while (unit % p == 0) {
            unit /= p;
            ++e;
        }
        u64 term = ypow / pow_u64(p, e);  // exact: ord_p(ypow) >= m >= e
        term %= modn;
        term = mulmod(term, inv_mod(unit % modn, modn), modn);
        acc = (m & 1) ? addmod(acc, term, modn) : submod(acc, term, modn);
    }
    return acc;
}

inline PAdicInt padic_log(const PAdicInt& x) {
    return PAdicInt(x.p(), x.prec(), (i64)padic_log_mod(x.value(), x.p(), x.prec()));
}

// Square root of a mod p^n by Newton lifting, anchored at the smallest
// non-negative base root v0 mod p. The companion root is p^n - v.
inline u64 hensel_sqrt(u64 a, u64 p, u64 n) {
    if (!is_prime_u64(p) || p == 2) throw DomainError("hensel_sqrt: p must be an odd prime");
    u64 q = pow_u64(p, n);
    a %= q;
    if (a % p == 0) throw DomainError("hensel_sqrt: p divides a");

    u64 v0 = 0;
    for (u64 c = 1; c < p; ++c)
        if (c * c % p == a % p) {
            v0 = c;
            break;
        }
    if (v0 == 0) throw NonResidue("hensel_sqrt: a is not a quadratic residue mod p");

    u64 v = v0, k = 1;
    while (k < n) {
        k = std::min(2 * k, n);
        u64 mod = pow_u64(p, k);
        u64 diff = submod(mulmod(v % mod, v % mod, mod), a % mod, mod);
        v = submod(v % mod, mulmod(diff, inv_mod(2 * v % mod, mod), mod), mod);
    }
    if (v % p != v0) v = q - v;  // Newton keeps the branch; guard anyway
    return v;
}

}  // namespace pcs
