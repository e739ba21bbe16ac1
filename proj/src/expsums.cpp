#include "pcs/expsums.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace pcs {

namespace {

// Reduce an IntPoly mod p into dense F_p coefficients (trimmed).
std::vector<u64> reduce_mod_p(const IntPoly& f, u64 p) {
    std::vector<u64> r;
    for (i64 c : f.coeffs()) r.push_back(reduce(c % (i64)p, p));
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

u64 eval_fp(const std::vector<u64>& f, u64 x, u64 p) {
    u64 acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    return acc;
}

// Root multiplicity at alpha by repeated synthetic division over F_p.
u64 root_multiplicity(std::vector<u64> f, u64 alpha, u64 p) {
    u64 nu = 0;
    while (!f.empty() && eval_fp(f, alpha, p) == 0) {
        // divide by (X - alpha)
        std::vector<u64> q(f.size() - 1);
        u64 carry = 0;
        for (size_t i = f.size(); i-- > 1;) {
            carry = (carry * alpha + f[i]) % p;
            q[i - 1] = carry;
        }
        f = std::move(q);
        ++nu;
    }
    return nu;
}

// Per-modulus tables shared across calls: e(k/p^m) and unit inverses.
struct ModulusTables {
    std::vector<std::complex<double>> roots;
    std::vector<u64> inv;  // 0 for non-units
};

std::shared_ptr<const ModulusTables> modulus_tables(u64 p, u64 m) {
    static std::mutex mu;
    static std::map<u64, std::shared_ptr<const ModulusTables>> cache;
    u64 pm = pow_u64(p, m);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(pm);
    if (it != cache.end()) return it->second;
    auto t = std::make_shared<ModulusTables>();
    t->roots.resize(pm);
    const double scale = 2.0 * std::numbers::pi / (double)pm;
    for (u64 k = 0; k < pm; ++k) t->roots[k] = {std::cos(scale * k), std::sin(scale * k)};
    t->inv.assign(pm, 0);
    for (u64 x = 1; x < pm; ++x)
        if (x % p != 0) t->inv[x] = inv_mod(x, pm);
    cache[pm] = t;
    return t;
}

struct StrippedRat {
    IntPoly num, den;
    u64 e_num, e_den;
};

StrippedRat strip(const RationalFunc& f, u64 p) {
    if (f.den.is_zero()) throw DegenerateDenominator("rational function with zero denominator");
    if (f.num.is_zero()) return {f.num, f.den, 0, ord_p_poly(f.den, p).v};
    Valuation vn = ord_p_poly(f.num, p), vd = ord_p_poly(f.den, p);
    return {f.num.exact_div_pow(p, vn.v), f.den.exact_div_pow(p, vd.v), vn.v, vd.v};
}

}  // namespace

CriticalData critical_points(const RationalFunc& f, u64 p) {
    StrippedRat fs = strip(f, p);
    std::vector<u64> den_bar = reduce_mod_p(fs.den, p);
    if (den_bar.empty())
        throw DegenerateDenominator("critical_points: denominator vanishes identically mod p");

    RationalFunc fp = f.derivative();
    if (fp.num.is_zero()) throw DomainError("critical_points: f is constant");
    i64 t = ord_p_rat(fp, p);

    StrippedRat ds = strip(fp, p);
    std::vector<u64> num_bar = reduce_mod_p(ds.num, p);

    CriticalData cd;
    cd.t = t;
    for (u64 a = 0; a < p; ++a) {
        if (eval_fp(den_bar, a, p) == 0) {
            cd.degenerate.push_back(a);
            continue;
        }
        u64 nu = root_multiplicity(num_bar, a, p);
        if (nu > 0) cd.points.push_back({a, nu});
    }
    return cd;
}

u64 multiplicity_at(const CriticalData& cd, u64 alpha) {
    for (const CriticalPoint& cp : cd.points)
        if (cp.alpha == alpha) return cp.nu;
    return 0;
}

std::complex<double> complete_sum(const RationalFunc& f, u64 p, u64 m, u64 alpha) {
    if (m == 0) throw DomainError("complete_sum: m must be positive");
    StrippedRat fs = strip(f, p);
    if (fs.num.is_zero()) return {(double)pow_u64(p, m - 1), 0.0};
    if (fs.e_den > fs.e_num)
        throw DomainError("complete_sum: rational function has negative order");
    u64 pm = pow_u64(p, m);
    auto tables = modulus_tables(p, m);
    u64 lead = powmod(p, fs.e_num - fs.e_den, pm);

    std::complex<double> acc = 0.0;
    for (u64 nv = alpha % p; nv < pm; nv += p) {
        u64 d = fs.den.eval_mod(nv, pm);
        u64 di = d < pm ? tables->inv[d] : 0;
        if (di == 0) throw DenominatorVanishes("complete_sum: denominator vanishes in class");
        u64 val = mulmod(mulmod(fs.num.eval_mod(nv, pm), di, pm), lead, pm);
        acc += tables->roots[val];
    }
    return acc;
}

CompleteSums complete_sum_all(const RationalFunc& f, u64 p, u64 m) {
    if (m == 0) throw DomainError("complete_sum_all: m must be positive");
    StrippedRat fs = strip(f, p);
    if (fs.num.is_zero()) {
        CompleteSums out;
        out.by_class.assign(p, {(double)pow_u64(p, m - 1), 0.0});
        out.degenerate.assign(p, false);
        return out;
    }
    if (fs.e_den > fs.e_num)
        throw DomainError("complete_sum_all: rational function has negative order");
    u64 pm = pow_u64(p, m);
    auto tables = modulus_tables(p, m);
    u64 lead = powmod(p, fs.e_num - fs.e_den, pm);

    std::vector<u64> den_bar = reduce_mod_p(fs.den, p);
    CompleteSums out;
    out.by_class.assign(p, {0.0, 0.0});
    out.degenerate.assign(p, false);
    for (u64 a = 0; a < p; ++a)
        if (eval_fp(den_bar, a, p) == 0) out.degenerate[a] = true;

    for (u64 nv = 0; nv < pm; ++nv) {
        u64 a = nv % p;
        if (out.degenerate[a]) continue;
        u64 d = fs.den.eval_mod(nv, pm);
        u64 val = mulmod(mulmod(fs.num.eval_mod(nv, pm), tables->inv[d], pm), lead, pm);
        out.by_class[a] += tables->roots[val];
    }
    return out;
}

ClzResult clz_check(const RationalFunc& f, u64 p, u64 m, u64 alpha) {
    CriticalData cd = critical_points(f, p);
    if ((i64)m < cd.t + 2)
        throw HypothesisViolated("clz_check: m < t + 2");
    for (u64 a : cd.degenerate)
        if (a == alpha % p) throw DegenerateDenominator("clz_check: degenerate class");

    u64 nu = multiplicity_at(cd, alpha % p);
    double abs_sum = std::abs(complete_sum(f, p, m, alpha));

    ClzResult r;
    r.abs_sum = abs_sum;
    r.t = cd.t;
    r.nu = nu;
    if (nu == 0) {
        r.bound = 0.0;
        r.pass = abs_sum <= 1e-9;
    } else {
        double expo = (double)cd.t / (nu + 1) + (double)m * (1.0 - 1.0 / (nu + 1));
        r.bound = (double)nu * std::pow((double)p, expo);
        r.pass = abs_sum <= r.bound + 1e-9;
    }
    return r;
}

}  // namespace pcs
