#include "pcs/modpoly.hpp"

#include <algorithm>

namespace pcs {

ModPoly ModPoly::operator+(const ModPoly& o) const {
    if (mod_ != 0 && o.mod_ != 0 && mod_ != o.mod_)
        throw DomainError("ModPoly: mixed moduli");
    u64 m = mod_ ? mod_ : o.mod_;
    std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = addmod(coeff(i), o.coeff(i), m);
    return ModPoly(m, std::move(r));
}

ModPoly ModPoly::operator-(const ModPoly& o) const {
    if (mod_ != 0 && o.mod_ != 0 && mod_ != o.mod_)
        throw DomainError("ModPoly: mixed moduli");
    u64 m = mod_ ? mod_ : o.mod_;
    std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = submod(coeff(i), o.coeff(i), m);
    return ModPoly(m, std::move(r));
}

ModPoly ModPoly::operator*(const ModPoly& o) const {
    if (mod_ != 0 && o.mod_ != 0 && mod_ != o.mod_)
        throw DomainError("ModPoly: mixed moduli");
    u64 m = mod_ ? mod_ : o.mod_;
    if (is_zero() || o.is_zero()) return ModPoly(m, {});
    std::vector<u64> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = addmod(r[i + j], mulmod(c_[i], o.c_[j], m), m);
    return ModPoly(m, std::move(r));
}

ModPoly ModPoly::scaled(u64 s) const {
    std::vector<u64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mulmod(c_[i], s % mod_, mod_);
    return ModPoly(mod_, std::move(r));
}

ModPoly ModPoly::derivative() const {
    if (c_.size() <= 1) return ModPoly(mod_, {});
    std::vector<u64> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = mulmod(c_[i], i % mod_, mod_);
    return ModPoly(mod_, std::move(r));
}

ModPoly ModPoly::pow(u64 e) const {
    ModPoly r = ModPoly::constant(mod_, 1);
    ModPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

u64 ModPoly::eval(u64 x) const {
    u64 acc = 0;
    x %= mod_;
    for (size_t i = c_.size(); i-- > 0;) acc = addmod(mulmod(acc, x, mod_), c_[i], mod_);
    return acc;
}

ModPoly ModPoly::reduced(u64 smaller_mod) const {
    if (mod_ % smaller_mod != 0) throw DomainError("ModPoly::reduced: modulus mismatch");
    std::vector<u64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] % smaller_mod;
    return ModPoly(smaller_mod, std::move(r));
}

}  // namespace pcs
