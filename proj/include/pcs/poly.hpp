#pragma once

#include <initializer_list>
#include <vector>

#include "pcs/modarith.hpp"

// Exact integer polynomials (ascending coefficients, int64 with overflow
// checks) and rational functions f = num/den over Z, as used for the
// complete exponential sums and the critical-point audit.

namespace pcs {

class IntPoly {
  public:
    IntPoly() = default;
    IntPoly(std::initializer_list<i64> coeffs) : c_(coeffs) { trim(); }
    explicit IntPoly(std::vector<i64> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPoly constant(i64 v) { return IntPoly({v}); }
    static IntPoly monomial(i64 coeff, u64 deg) {
        std::vector<i64> c(deg + 1, 0);
        c[deg] = coeff;
        return IntPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1 (the -infinity sentinel).
    int degree() const { return (int)c_.size() - 1; }
    i64 coeff(u64 i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<i64>& coeffs() const { return c_; }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(i64 s) const;
    IntPoly derivative() const;

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    // f(x) mod m, negative coefficients handled.
    u64 eval_mod(u64 x, u64 m) const;

    // Divide every coefficient by p^e; throws unless exact.
    IntPoly exact_div_pow(u64 p, u64 e) const;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<i64> c_;
};

Valuation ord_p_poly(const IntPoly& f, u64 p);

struct RationalFunc {
    IntPoly num;
    IntPoly den = IntPoly::constant(1);

    RationalFunc derivative() const {
        // (n'd - nd') / d^2 -- no gcd cancellation, content handled by callers.
        return {num.derivative() * den - num * den.derivative(), den * den};
    }
};

// ord_p(f) = ord_p(num) - ord_p(den); throws DomainError on the zero
// numerator or denominator.
i64 ord_p_rat(const RationalFunc& f, u64 p);

}  // namespace pcs
