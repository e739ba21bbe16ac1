#include "pcs/poly.hpp"

#include <algorithm>

namespace pcs {

namespace {

i64 checked(i128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error(what);
    return (i64)v;
}

}  // namespace

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<i64> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = checked((i128)coeff(i) + o.coeff(i), "IntPoly add overflow");
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<i64> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = checked((i128)coeff(i) - o.coeff(i), "IntPoly sub overflow");
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<i128> acc(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += (i128)c_[i] * o.c_[j];
    std::vector<i64> r(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r[i] = checked(acc[i], "IntPoly mul overflow");
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(i64 s) const {
    std::vector<i64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i)
        r[i] = checked((i128)c_[i] * s, "IntPoly scale overflow");
    return IntPoly(std::move(r));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<i64> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        r[i - 1] = checked((i128)c_[i] * (i64)i, "IntPoly derivative overflow");
    return IntPoly(std::move(r));
}

u64 IntPoly::eval_mod(u64 x, u64 m) const {
    u64 acc = 0;
    for (size_t i = c_.size(); i-- > 0;) {
        acc = mulmod(acc, x, m);
        acc = addmod(acc, reduce(c_[i] % (i64)m, m), m);
    }
    return acc;
}

IntPoly IntPoly::exact_div_pow(u64 p, u64 e) const {
    i64 d = (i64)pow_u64(p, e);
    std::vector<i64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] % d != 0) throw DomainError("IntPoly::exact_div_pow: not divisible");
        r[i] = c_[i] / d;
    }
    return IntPoly(std::move(r));
}

Valuation ord_p_poly(const IntPoly& f, u64 p) {
    if (f.is_zero()) return {false, 0};
    Valuation best{false, 0};
    for (i64 c : f.coeffs()) {
        if (c == 0) continue;
        Valuation v = ord_p_int(c, p);
        if (!best.finite || v.v < best.v) best = v;
    }
    return best;
}

i64 ord_p_rat(const RationalFunc& f, u64 p) {
    Valuation vn = ord_p_poly(f.num, p), vd = ord_p_poly(f.den, p);
    if (!vn.finite || !vd.finite) throw DomainError("ord_p_rat: zero numerator or denominator");
    return (i64)vn.v - (i64)vd.v;
}

}  // namespace pcs
