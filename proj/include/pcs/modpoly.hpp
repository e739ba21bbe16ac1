#pragma once

#include <vector>

#include "pcs/modarith.hpp"

// Polynomials and rational functions with coefficients in Z/p^m Z, for the
// symbolic side of the pipeline: closed-form derivatives of F and the
// truncated Taylor tails G.

namespace pcs {

class ModPoly {
  public:
    ModPoly() = default;
    ModPoly(u64 mod, std::vector<u64> coeffs) : mod_(mod), c_(std::move(coeffs)) {
        for (u64& c : c_) c %= mod_;
        trim();
    }

    static ModPoly constant(u64 mod, u64 v) { return ModPoly(mod, {v}); }

    u64 mod() const { return mod_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return (int)c_.size() - 1; }
    u64 coeff(u64 i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<u64>& coeffs() const { return c_; }

    ModPoly operator+(const ModPoly& o) const;
    ModPoly operator-(const ModPoly& o) const;
    ModPoly operator*(const ModPoly& o) const;
    ModPoly scaled(u64 s) const;
    ModPoly derivative() const;
    ModPoly pow(u64 e) const;

    u64 eval(u64 x) const;

    // Coefficients reduced into a smaller modulus (must divide mod()).
    ModPoly reduced(u64 smaller_mod) const;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    u64 mod_ = 0;
    std::vector<u64> c_;
};

struct ModRat {
    ModPoly num, den;

    u64 mod() const { return num.mod(); }
    ModRat operator+(const ModRat& o) const {
        return {num * o.den + o.num * den, den * o.den};
    }
    ModRat scaled(u64 s) const { return {num.scaled(s), den}; }
    // (n'd - nd')/d^2
    ModRat derivative() const {
        return {num.derivative() * den - num * den.derivative(), den * den};
    }
    ModRat reduced(u64 smaller_mod) const { return {num.reduced(smaller_mod), den.reduced(smaller_mod)}; }

    // Throws NotInvertible when the denominator value is not a unit.
    u64 eval(u64 x) const {
        return mulmod(num.eval(x), inv_mod(den.eval(x), mod()), mod());
    }
};

}  // namespace pcs
