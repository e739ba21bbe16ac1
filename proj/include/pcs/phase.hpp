#pragma once

#include <complex>
#include <numbers>

#include "pcs/modarith.hpp"

namespace pcs {

// Exact root of unity e(num/den). Sums of phases leave the exact world only
// at to_complex().
struct UnitPhase {
    u64 num = 0;
    u64 den = 1;

    static UnitPhase make(i64 num, u64 den) {
        if (den == 0) throw DomainError("UnitPhase: zero denominator");
        return {reduce(num, den), den};
    }

    UnitPhase reduced() const {
        if (num == 0) return {0, 1};
        u64 g = gcd_u64(num, den);
        return {num / g, den / g};
    }

    UnitPhase operator*(const UnitPhase& o) const {
        u64 g = gcd_u64(den, o.den);
        u128 l = (u128)(den / g) * o.den;
        if (l > UINT64_MAX) throw std::overflow_error("UnitPhase: lcm overflow");
        u64 lcm = (u64)l;
        u64 a = mulmod(num, lcm / den, lcm);
        u64 b = mulmod(o.num, lcm / o.den, lcm);
        return {addmod(a, b, lcm), lcm};
    }

    UnitPhase conj() const { return {num == 0 ? 0 : den - num, den}; }

    bool operator==(const UnitPhase& o) const {
        UnitPhase a = reduced(), b = o.reduced();
        return a.num == b.num && a.den == b.den;
    }

    std::complex<double> to_complex() const {
        double arg = 2.0 * std::numbers::pi * (double)num / (double)den;
        return {std::cos(arg), std::sin(arg)};
    }
};

// chi(x) is either zero (p | x) or an exact phase.
struct PhaseOrZero {
    bool zero = true;
    UnitPhase phase{};

    static PhaseOrZero zero_value() { return {true, {}}; }
    static PhaseOrZero of(UnitPhase ph) { return {false, ph}; }

    std::complex<double> to_complex() const {
        return zero ? std::complex<double>{0.0, 0.0} : phase.to_complex();
    }
};

}  // namespace pcs
