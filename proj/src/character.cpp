#include "pcs/character.hpp"

#include <numbers>

namespace pcs {

namespace {

std::vector<u64> prime_factors(u64 x) {
    std::vector<u64> fs;
    for (u64 d = 2; d * d <= x; ++d)
        if (x % d == 0) {
            fs.push_back(d);
            while (x % d == 0) x /= d;
        }
    if (x > 1) fs.push_back(x);
    return fs;
}

}  // namespace

u64 smallest_primitive_root(u64 p, u64 n) {
    u64 q = pow_u64(p, n);
    u64 phi = pow_u64(p, n - 1) * (p - 1);
    std::vector<u64> fs = prime_factors(phi);
    for (u64 g = 2; g < q; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (u64 f : fs)
            if (powmod(g, phi / f, q) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw std::logic_error("smallest_primitive_root: no generator found");
}

UnitGroup::UnitGroup(u64 p, u64 n) : p_(p), n_(n) {
    if (p <= 3 || !is_prime_u64(p)) throw DomainError("UnitGroup: p must be a prime > 3");
    if (n < 2) throw DomainError("UnitGroup: n must be >= 2");
    q_ = pow_u64(p, n);
    phi_ = pow_u64(p, n - 1) * (p - 1);
    g_ = smallest_primitive_root(p, n);
    dlog_.assign(q_, kNonUnit);
    u64 x = 1;
    for (u64 k = 0; k < phi_; ++k) {
        dlog_[x] = k;
        x = mulmod(x, g_, q_);
    }
    if (x != 1) throw std::logic_error("UnitGroup: generator order mismatch");
}

u64 postnikov_a0(const DirichletCharacter& chi) {
    if (!chi.is_primitive()) throw NotPrimitive("postnikov_a0: character must be primitive");
    const u64 p = chi.p(), n = chi.n();
    const u64 q = chi.modulus();
    const u64 qn1 = pow_u64(p, n - 1);

    // 1 + pZ is the subgroup generated by g^{p-1}, so dlog(1+pt) is a
    // multiple of p-1; write chi(1+pt) = e(index*s / p^{n-1}).
    u64 d1 = chi.group().dlog(1 + p);
    if (d1 % (p - 1) != 0) throw std::logic_error("postnikov_a0: dlog(1+p) not divisible by p-1");
    u64 s1 = d1 / (p - 1);

    u64 log1p = padic_log_mod(1 + p, p, n);
    if (log1p % p != 0 || (log1p / p) % p == 0)
        throw std::logic_error("postnikov_a0: ord_p(log_p(1+p)) != 1");
    u64 a0 = mulmod(mulmod(chi.index() % qn1, s1 % qn1, qn1), inv_mod(log1p / p, qn1), qn1);

    for (u64 t = 0; t < qn1; ++t) {
        u64 x = (1 + mulmod(p, t, q)) % q;
        u64 lt = padic_log_mod(x, p, n);
        UnitPhase rhs = UnitPhase::make((i64)mulmod(a0, lt, q), q);
        PhaseOrZero lhs = chi((i64)x);
        if (lhs.zero || !(lhs.phase == rhs))
            throw VerificationFailed("postnikov_a0: identity failed at t=" + std::to_string(t));
    }
    return a0;
}

std::vector<std::complex<double>> character_table(const DirichletCharacter& chi) {
    const u64 q = chi.modulus(), phi = chi.order();
    std::vector<std::complex<double>> table(q, {0.0, 0.0});
    // Walk the powers of g once; chi(g^k) = e(index*k/phi).
    const UnitGroup& grp = chi.group();
    u64 x = 1, e = 0;
    const double scale = 2.0 * std::numbers::pi / (double)phi;
    for (u64 k = 0; k < phi; ++k) {
        double arg = scale * (double)e;
        table[x] = {std::cos(arg), std::sin(arg)};
        x = mulmod(x, grp.generator(), q);
        e += chi.index();
        if (e >= phi) e -= phi;
    }
    return table;
}

}  // namespace pcs
