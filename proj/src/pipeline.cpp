#include "pcs/pipeline.hpp"

#include <cmath>
#include <random>
#include <unordered_map>

#include "pcs/padic.hpp"

namespace pcs {

namespace {

u64 reduce128(i128 x, u64 m) {
    i128 r = x % (i128)m;
    if (r < 0) r += (i128)m;
    return (u64)r;
}

// Integer summation range covered by w((x - C)/X).
struct Range {
    i64 lo, hi;
};

Range support_range(const SmoothWeight& w, double C, double X) {
    if (w.empty_support()) return {0, -1};
    double lo = C + X * w.support_lo(), hi = C + X * w.support_hi();
    return {(i64)std::ceil(lo) - 1, (i64)std::floor(hi) + 1};
}

i64 ord_of(i64 h, u64 p) {
    if (h == 0) throw DomainError("shift h must be nonzero");
    i64 l = 0;
    while (h % (i64)p == 0) {
        h /= (i64)p;
        ++l;
    }
    return l;
}

}  // namespace

// ---- brute-force sums -----------------------------------------------------

std::complex<double> CharSums::sum_SQ(const QuadraticForm& Q, const SumParams& params) const {
    const u64 p = chi_.p(), q = chi_.modulus();
    if (reduce(Q.c, p) == 0 || reduce(Q.det(), p) == 0)
        throw BadForm("sum_SQ: p divides c*det(Q)");

    Range xr = support_range(params.psi, (double)params.A, (double)params.M);
    Range yr = support_range(params.phi, (double)params.B, (double)params.N);
    if (xr.lo > xr.hi || yr.lo > yr.hi) return {0.0, 0.0};

    std::vector<double> wy(yr.hi - yr.lo + 1);
    for (i64 y = yr.lo; y <= yr.hi; ++y)
        wy[y - yr.lo] = params.phi(((double)y - (double)params.B) / (double)params.N);

    const u64 c2 = reduce(2 * Q.c, q);
    std::complex<double> acc = 0.0;
    for (i64 x = xr.lo; x <= xr.hi; ++x) {
        double wx = params.psi(((double)x - (double)params.A) / (double)params.M);
        if (wx == 0.0) continue;
        // r = Q(x,y) mod q, updated incrementally in y.
        u64 r = reduce128((i128)Q.a * x * x + (i128)2 * Q.b * x * yr.lo + (i128)Q.c * yr.lo * yr.lo, q);
        u64 d = reduce128((i128)2 * Q.b * x + (i128)Q.c * (2 * yr.lo + 1), q);
        std::complex<double> row = 0.0;
        for (i64 y = yr.lo; y <= yr.hi; ++y) {
            row += wy[y - yr.lo] * table_[r];
            r = addmod(r, d, q);
            d = addmod(d, c2, q);
        }
        acc += wx * row;
    }
    return acc;
}

std::complex<double> CharSums::sum_SQ1(const QuadraticForm& Q, const SumParams& params) const {
    const u64 p = chi_.p(), q = chi_.modulus();
    Completion comp = quadratic_completion(Q, p, chi_.n());
    const u64 rho = mulmod(reduce(Q.b, q), comp.cbar, q);  // b cbar mod q

    Range xr = support_range(params.psi, (double)params.A, (double)params.M);
    std::complex<double> acc = 0.0;
    for (i64 x = xr.lo; x <= xr.hi; ++x) {
        double wx = params.psi(((double)x - (double)params.A) / (double)params.M);
        if (wx == 0.0) continue;
        i64 Btilde = (i64)rho * x + params.B;
        u64 ax2 = mulmod(comp.alpha, reduce128((i128)x * x, q), q);
        Range yr = support_range(params.phi, (double)Btilde, (double)params.N);
        std::complex<double> row = 0.0;
        for (i64 y = yr.lo; y <= yr.hi; ++y) {
            if (reduce(y, p) == 0) continue;
            double wyv = params.phi(((double)y - (double)Btilde) / (double)params.N);
            if (wyv == 0.0) continue;
            u64 r = addmod(ax2, reduce128((i128)y * y, q), q);
            row += wyv * table_[r];
        }
        acc += wx * row;
    }
    return chi_at(reduce(Q.c, q)) * acc;
}

std::complex<double> CharSums::sum_SQ2(const QuadraticForm& Q, const SumParams& params) const {
    const u64 p = chi_.p(), q = chi_.modulus();
    Completion comp = quadratic_completion(Q, p, chi_.n());
    const u64 rho = mulmod(reduce(Q.b, q), comp.cbar, q);
    const u64 alpha_bar = inv_mod(comp.alpha, q);

    Range xr = support_range(params.psi, (double)params.A, (double)params.M);
    std::complex<double> acc = 0.0;
    for (i64 x = xr.lo; x <= xr.hi; ++x) {
        if (reduce(x, p) == 0) continue;
        double wx = params.psi(((double)x - (double)params.A) / (double)params.M);
        if (wx == 0.0) continue;
        i64 Btilde = (i64)rho * x + params.B;
        u64 x2 = reduce128((i128)x * x, q);
        Range yr = support_range(params.phi, (double)Btilde, (double)params.N);
        std::complex<double> row = 0.0;
        for (i64 y = yr.lo; y <= yr.hi; ++y) {
            if (reduce(y, p) != 0) continue;
            double wyv = params.phi(((double)y - (double)Btilde) / (double)params.N);
            if (wyv == 0.0) continue;
            u64 r = addmod(mulmod(alpha_bar, reduce128((i128)y * y, q), q), x2, q);
            row += wyv * table_[r];
        }
        acc += wx * row;
    }
    return chi_at((i64)mulmod(reduce(Q.c, q), comp.alpha, q)) * acc;
}

std::complex<double> CharSums::sum_T(const SmoothWeight& phi, i64 Btilde, u64 N,
                                     i64 beta) const {
    const u64 p = chi_.p(), q = chi_.modulus();
    Range yr = support_range(phi, (double)Btilde, (double)N);
    std::complex<double> acc = 0.0;
    for (i64 y = yr.lo; y <= yr.hi; ++y) {
        if (reduce(y, p) == 0) continue;
        double w = phi(((double)y - (double)Btilde) / (double)N);
        if (w == 0.0) continue;
        acc += w * table_[reduce128((i128)beta + (i128)y * y, q)];
    }
    return acc;
}

std::complex<double> CharSums::sum_Sigma(const SmoothWeight& phi, double C, double X, i64 beta,
                                         u64 v) const {
    const u64 p = chi_.p(), q = chi_.modulus();
    Range wr = support_range(phi, C, X);
    std::complex<double> acc = 0.0;
    for (i64 w = wr.lo; w <= wr.hi; ++w) {
        double wt = phi(((double)w - C) / X);
        if (wt == 0.0) continue;
        i128 t = (i128)p * w + (i128)v;
        acc += wt * table_[reduce128((i128)beta + t * t, q)];
    }
    return acc;
}

// ---- quadratic completion -------------------------------------------------

Completion quadratic_completion(const QuadraticForm& Q, u64 p, u64 n) {
    u64 q = pow_u64(p, n);
    if (reduce(Q.c, p) == 0 || reduce(Q.det(), p) == 0)
        throw BadForm("quadratic_completion: p divides c*det(Q)");
    u64 cbar = inv_mod(reduce(Q.c, q), q);
    u64 alpha = mulmod(reduce(Q.det(), q), mulmod(cbar, cbar, q), q);
    return {cbar, alpha};
}

bool certify_completion(const QuadraticForm& Q, u64 p, u64 n, u64 samples, u64 seed) {
    u64 q = pow_u64(p, n);
    Completion comp = quadratic_completion(Q, p, n);
    u64 rho = mulmod(reduce(Q.b, q), comp.cbar, q);
    u64 cm = reduce(Q.c, q);

    auto check = [&](u64 x, u64 y) {
        u64 lhs = reduce128((i128)Q.a * x * x + (i128)2 * Q.b * x * y + (i128)Q.c * y * y, q);
        u64 z = addmod(mulmod(rho, x, q), y, q);
        u64 rhs = mulmod(cm, addmod(mulmod(comp.alpha, mulmod(x, x, q), q), mulmod(z, z, q), q), q);
        return lhs == rhs;
    };

    if (q <= 625) {
        for (u64 x = 0; x < q; ++x)
            for (u64 y = 0; y < q; ++y)
                if (!check(x, y)) return false;
        return true;
    }
    std::mt19937_64 rng(seed);
    for (u64 i = 0; i < samples; ++i)
        if (!check(rng() % q, rng() % q)) return false;
    return true;
}

// ---- residue splitting ----------------------------------------------------

std::vector<ResidueClass> residue_split(i64 beta, u64 p, u64 n) {
    u64 q = pow_u64(p, n);
    u64 bp = reduce(beta, p);
    std::vector<ResidueClass> classes;
    for (u64 u = 1; u < p; ++u) {
        if (u == bp) continue;
        u64 d = submod(u, bp, p);
        if (powmod(d, (p - 1) / 2, p) != 1) continue;  // not a QR
        u64 vp = hensel_sqrt(submod(reduce(u, q), reduce(beta, q), q), p, n);
        classes.push_back({u, vp, q - vp});
    }
    return classes;
}

bool residue_split_covers(i64 beta, u64 p, u64 n) {
    u64 q = pow_u64(p, n);
    std::vector<ResidueClass> classes = residue_split(beta, p, n);

    u64 target = 0;
    for (u64 y = 0; y < q; ++y) {
        if (y % p == 0) continue;
        if (reduce128((i128)beta + (i128)y * y, p) == 0) continue;
        ++target;
        // membership: exactly one class with u = beta+y^2 mod p and y == v mod p
        u64 u = reduce128((i128)beta + (i128)y * y, p);
        u64 hits = 0;
        for (const ResidueClass& rc : classes) {
            if (rc.u != u) continue;
            if (rc.v_plus % p == y % p || rc.v_minus % p == y % p) ++hits;
        }
        if (hits != 1) return false;
    }
    // each class contributes two lifts (+-v), each a residue class mod p^n of
    // size p^{n-1} inside [0, p^n)
    return target == classes.size() * 2 * pow_u64(p, n - 1);
}

// ---- F --------------------------------------------------------------------

PipelineState make_state(u64 p, u64 n, u64 a0, i64 beta, u64 u, u64 v, i64 Btilde, u64 N) {
    if (!is_prime_u64(p) || p <= 3) throw DomainError("make_state: p must be a prime > 3");
    u64 q = pow_u64(p, n);
    u %= q;
    v %= q;
    if (u % p == 0 || v % p == 0 || a0 % p == 0)
        throw DomainError("make_state: u, v, a0 must be units");
    if (mulmod(v, v, q) != submod(u, reduce(beta, q), q))
        throw DomainError("make_state: v^2 != u - beta mod p^n");
    PipelineState st;
    st.p = p;
    st.n = n;
    st.q = q;
    st.beta = beta;
    st.u = u;
    st.v = v;
    st.ubar = inv_mod(u, q);
    st.a0 = a0 % q;
    st.Btilde = Btilde;
    st.N = N;
    return st;
}

PipelineState make_state(const DirichletCharacter& chi, i64 beta, u64 u, u64 v, i64 Btilde,
                         u64 N) {
    return make_state(chi.p(), chi.n(), postnikov_a0(chi), beta, u, v, Btilde, N);
}

u64 F_eval(const PipelineState& st, i64 w) {
    u64 wq = reduce(w, st.q);
    u64 g = addmod(mulmod(mulmod(2, st.v, st.q), wq, st.q),
                   mulmod(st.p, mulmod(wq, wq, st.q), st.q), st.q);
    u64 arg = addmod(1, mulmod(st.p, mulmod(st.ubar, g, st.q), st.q), st.q);
    return mulmod(st.a0, padic_log_mod(arg, st.p, st.n), st.q);
}

bool F_identity_holds(const CharSums& cs, const PipelineState& st, i64 w) {
    const u64 q = st.q;
    i128 t = (i128)st.p * w + (i128)st.v;
    u64 arg = reduce128((i128)st.beta + t * t, q);
    PhaseOrZero lhs = cs.chi()((i64)arg);
    PhaseOrZero chiu = cs.chi()((i64)st.u);
    if (lhs.zero || chiu.zero) return false;
    UnitPhase rhs = chiu.phase * UnitPhase::make((i64)F_eval(st, w), q);
    return lhs.phase == rhs;
}

// ---- symbolic layer -------------------------------------------------------

ModRat F_derivative(const PipelineState& st, u64 j) {
    if (j == 0) throw DomainError("F_derivative: j must be >= 1");
    const u64 q = st.q;
    u64 two_a0_p = mulmod(2, mulmod(st.a0, st.p, q), q);
    ModPoly num(q, {mulmod(two_a0_p, st.v, q), mulmod(two_a0_p, st.p, q)});
    ModPoly den(q, {st.u, mulmod(2, mulmod(st.v, st.p, q), q), mulmod(st.p, st.p, q)});
    // F^{(i)} = N_i / den^i with N_{i+1} = N_i' den - i N_i den'.
    ModPoly dprime = den.derivative();
    for (u64 i = 1; i < j; ++i)
        num = num.derivative() * den - (num * dprime).scaled(i);
    return {num, den.pow(j)};
}

namespace {

// Running factorial decomposition j! = p^e * unit.
struct FactorialParts {
    u64 p, mod;
    u64 e = 0, unit = 1;
    void advance_to(u64 j) {  // multiply in the factor j
        u64 x = j;
        while (x % p == 0) {
            x /= p;
            ++e;
        }
        unit = mulmod(unit, x % mod, mod);
    }
};

u64 binom_u64(u64 n, u64 k) {
    u128 r = 1;
    for (u64 i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) throw std::overflow_error("binom_u64 overflow");
    }
    return (u64)r;
}

}  // namespace

ModRat taylor_G1(const PipelineState& st, u64 k1, i64 h1) {
    if (k1 < 1) throw DomainError("taylor_G1: k1 must be >= 1");
    const u64 q = st.q, p = st.p, n = st.n;
    u64 l1 = (u64)ord_of(h1, p);
    u64 g1 = reduce(h1 / (i64)pow_u64(p, l1), q);

    ModPoly den = F_derivative(st, 1).den;
    u64 jmax_bound = (4 * (n + k1 + 2)) / 3 + 4;

    // collect scalars c_j = Delta^{j-1}/(j! p^{k1}) mod q for terms below
    // valuation n
    std::vector<std::pair<u64, u64>> terms;  // (j, scalar)
    FactorialParts fact{p, q};
    fact.advance_to(1);
    u64 g1pow = 1;
    for (u64 j = 2; j <= jmax_bound; ++j) {
        fact.advance_to(j);
        g1pow = mulmod(g1pow, g1, q);
        i64 val = (i64)((k1 + l1) * (j - 1)) - (i64)k1 - (i64)fact.e;
        if (val < 0) throw PrecisionLoss("taylor_G1: negative term valuation");
        if ((u64)val >= n) continue;
        u64 s = mulmod(g1pow, powmod(p, (u64)val, q), q);
        s = mulmod(s, inv_mod(fact.unit, q), q);
        terms.push_back({j, s});
    }
    if (terms.empty()) return {ModPoly(q, {}), ModPoly::constant(q, 1)};

    u64 jtop = terms.back().first;
    ModPoly num(q, {});
    for (auto [j, s] : terms)
        num = num + (F_derivative(st, j).num * den.pow(jtop - j)).scaled(s);
    return {num, den.pow(jtop)};
}

ModRat taylor_G2(const PipelineState& st, u64 k1, u64 k2, i64 h1, i64 h2) {
    if (k1 < 1 || k2 < 1) throw DomainError("taylor_G2: k1, k2 must be >= 1");
    const u64 q = st.q, p = st.p, n = st.n;
    u64 l1 = (u64)ord_of(h1, p), l2 = (u64)ord_of(h2, p);
    u64 g1 = reduce(h1 / (i64)pow_u64(p, l1), q), g2 = reduce(h2 / (i64)pow_u64(p, l2), q);
    u64 k = std::min(k1, k2);

    ModPoly den = F_derivative(st, 1).den;
    u64 jmax_bound = (4 * n + 11) / 3 + 2 * k + 8;

    std::vector<std::pair<u64, u64>> terms;
    FactorialParts fact{p, q};
    fact.advance_to(1);
    fact.advance_to(2);
    for (u64 j = 3; j <= jmax_bound; ++j) {
        fact.advance_to(j);
        u64 scalar = 0;
        bool any = false;
        for (u64 i = 1; i <= j - 1; ++i) {
            u64 A = (k1 + l1) * (i - 1) + (k2 + l2) * (j - i - 1);
            i64 val = (i64)A - (i64)fact.e - (i64)k;
            if (val < 0) throw PrecisionLoss("taylor_G2: negative term valuation");
            if ((u64)val >= n) continue;
            u64 s = mulmod(binom_u64(j, i) % q, powmod(p, (u64)val, q), q);
            s = mulmod(s, powmod(g1, i - 1, q), q);
            s = mulmod(s, powmod(g2, j - i - 1, q), q);
            scalar = addmod(scalar, mulmod(s, inv_mod(fact.unit, q), q), q);
            any = true;
        }
        if (any) terms.push_back({j, scalar});
    }
    if (terms.empty()) return {ModPoly(q, {}), ModPoly::constant(q, 1)};

    u64 jtop = terms.back().first;
    ModPoly num(q, {});
    for (auto [j, s] : terms)
        num = num + (F_derivative(st, j).num * den.pow(jtop - j)).scaled(s);
    return {num, den.pow(jtop)};
}

bool taylor_identity1_holds(const PipelineState& st, u64 k1, i64 h1, i64 w) {
    const u64 q = st.q;
    i64 delta = (i64)pow_u64(st.p, k1) * h1;
    u64 lhs = submod(F_eval(st, w + delta), F_eval(st, w), q);
    ModRat G = taylor_G1(st, k1, h1);
    u64 wq = reduce(w, q);
    u64 inner = addmod(F_derivative(st, 1).eval(wq),
                       mulmod(powmod(st.p, k1, q), G.eval(wq), q), q);
    u64 rhs = mulmod(reduce(delta, q), inner, q);
    return lhs == rhs;
}

bool taylor_identity2_holds(const PipelineState& st, u64 k1, u64 k2, i64 h1, i64 h2, i64 w) {
    const u64 q = st.q;
    i64 d1 = (i64)pow_u64(st.p, k1) * h1, d2 = (i64)pow_u64(st.p, k2) * h2;
    u64 lhs = submod(addmod(F_eval(st, w + d1 + d2), F_eval(st, w), q),
                     addmod(F_eval(st, w + d1), F_eval(st, w + d2), q), q);
    ModRat G = taylor_G2(st, k1, k2, h1, h2);
    u64 wq = reduce(w, q);
    u64 k = std::min(k1, k2);
    u64 inner = addmod(F_derivative(st, 2).eval(wq),
                       mulmod(powmod(st.p, k, q), G.eval(wq), q), q);
    u64 rhs = mulmod(reduce128((i128)d1 * d2, q), inner, q);
    return lhs == rhs;
}

ModRat f1_func(const PipelineState& st, u64 k1, u64 l1, i64 g1) {
    if (reduce(g1, st.p) == 0 || g1 == 0) throw DomainError("f1_func: g1 must be a unit");
    i64 h1 = (i64)pow_u64(st.p, l1) * g1;
    if (st.n < k1 + l1 + 1) throw PrecisionLoss("f1_func: s1 < 1");
    u64 s1 = st.n - k1 - l1;
    ModRat fprime = F_derivative(st, 1);
    ModRat G = taylor_G1(st, k1, h1);
    ModRat sum = fprime + G.scaled(powmod(st.p, k1, st.q));
    return sum.scaled(reduce(g1, st.q)).reduced(pow_u64(st.p, s1));
}

ModRat f2_func(const PipelineState& st, u64 k1, u64 k2, u64 l1, u64 l2, i64 g1, i64 g2) {
    if (g1 == 0 || g2 == 0 || reduce(g1, st.p) == 0 || reduce(g2, st.p) == 0)
        throw DomainError("f2_func: g1, g2 must be units");
    i64 h1 = (i64)pow_u64(st.p, l1) * g1, h2 = (i64)pow_u64(st.p, l2) * g2;
    if (st.n < k1 + k2 + l1 + l2 + 1) throw PrecisionLoss("f2_func: s2 < 1");
    u64 s2 = st.n - k1 - k2 - l1 - l2;
    u64 k = std::min(k1, k2);
    ModRat fpp = F_derivative(st, 2);
    ModRat G = taylor_G2(st, k1, k2, h1, h2);
    ModRat sum = fpp + G.scaled(powmod(st.p, k, st.q));
    return sum.scaled(mulmod(reduce(g1, st.q), reduce(g2, st.q), st.q))
        .reduced(pow_u64(st.p, s2));
}

// ---- Weyl -----------------------------------------------------------------

WeylReport weyl_step(const PipelineState& st, const SmoothWeight& phi, u64 kappa,
                     const std::function<u64(i64)>& phase_mod_q) {
    const u64 q = st.q;
    const double X = st.length(), C = st.center();
    const u64 H = pow_u64(st.p, kappa);
    if ((double)H > X) throw DomainError("weyl_step: H must be <= X");

    auto F = phase_mod_q ? phase_mod_q : [&st](i64 w) { return F_eval(st, w); };

    Range wr = support_range(phi, C, X);
    std::complex<double> sigma = 0.0;
    for (i64 w = wr.lo; w <= wr.hi; ++w) {
        double wt = phi(((double)w - C) / X);
        if (wt == 0.0) continue;
        sigma += wt * UnitPhase::make((i64)F(w), q).to_complex();
    }
    double lhs_sq = std::norm(sigma);

    double hsum = 0.0;
    i64 hmax = (i64)std::ceil(2.0 * X / (double)H);
    for (i64 h = -hmax + 1; h < hmax; ++h) {
        if (h == 0) continue;
        SmoothWeight phih = phi.shifted_product((double)H * (double)h / X);
        Range r = support_range(phih, C, X);
        std::complex<double> inner = 0.0;
        for (i64 w = r.lo; w <= r.hi; ++w) {
            double wt = phih(((double)w - C) / X);
            if (wt == 0.0) continue;
            u64 diff = submod(F(w + (i64)H * h), F(w), q);
            inner += wt * UnitPhase::make((i64)diff, q).to_complex();
        }
        hsum += std::abs(inner);
    }
    double rhs = X * (double)H + (double)H * hsum;
    return {lhs_sq, rhs, lhs_sq / rhs};
}

// ---- Poisson --------------------------------------------------------------

PoissonReport poisson_identity(const SmoothWeight& omega, double C, double X, u64 q, i64 r,
                               double tol) {
    if (q == 0 || X < 1.0) throw DomainError("poisson_identity: need q >= 1, X >= 1");
    // direct side
    Range tr = support_range(omega, C, X);
    double lhs = 0.0;
    i64 rm = (i64)reduce(r, q);
    i64 start = tr.lo + (i64)reduce(rm - tr.lo, q);
    for (i64 t = start; t <= tr.hi; t += (i64)q) lhs += omega(((double)t - C) / X);

    // dual side, truncated by the decay certificate
    double decay = decay_constant(omega, 9);
    u64 T = tail_cutoff(decay, X / (double)q, tol * 0.01 * (double)q / X, 9);
    std::complex<double> rhs = 0.0;
    for (i64 t = 0; t <= (i64)T; ++t) {
        std::complex<double> om = fourier_transform(omega, (double)t * X / (double)q, 1e-12).value;
        double arg = 2.0 * std::numbers::pi * (double)t * ((double)rm - C) / (double)q;
        std::complex<double> ph{std::cos(arg), std::sin(arg)};
        rhs += om * ph;
        if (t > 0) rhs += std::conj(om) * std::conj(ph);  // what(-y) = conj(what(y))
    }
    rhs *= X / (double)q;

    double abs_err = std::abs((std::complex<double>)lhs - rhs);
    return {{lhs, 0.0}, rhs, abs_err, abs_err / std::max(1.0, std::abs(lhs))};
}

namespace {

// Shared shape of the two Poisson expansions: LHS by exact differencing of F,
// RHS = (X/p^s) sum_t what(tX/p^s) e(-tC/p^s) K(t), K the complete sum of
// e((f(r)+tr)/p^s) from the symbolic side.
PoissonReport poisson_expand(const PipelineState& st, const SmoothWeight& omega, u64 s,
                             const std::function<u64(i64)>& diffquot_mod_ps,
                             const ModRat& f_symbolic) {
    const u64 p = st.p, ps = pow_u64(p, s);
    const double X = st.length(), C = st.center();

    // LHS
    Range wr = support_range(omega, C, X);
    std::complex<double> lhs = 0.0;
    for (i64 w = wr.lo; w <= wr.hi; ++w) {
        double wt = omega(((double)w - C) / X);
        if (wt == 0.0) continue;
        lhs += wt * UnitPhase::make((i64)diffquot_mod_ps(w), ps).to_complex();
    }

    // RHS
    std::vector<u64> fvals(ps);
    for (u64 r = 0; r < ps; ++r) fvals[r] = f_symbolic.eval(r);
    std::vector<std::complex<double>> roots(ps);
    for (u64 kk = 0; kk < ps; ++kk) {
        double arg = 2.0 * std::numbers::pi * (double)kk / (double)ps;
        roots[kk] = {std::cos(arg), std::sin(arg)};
    }
    std::unordered_map<u64, std::complex<double>> kcache;
    auto K = [&](u64 tmod) {
        auto it = kcache.find(tmod);
        if (it != kcache.end()) return it->second;
        std::complex<double> acc = 0.0;
        u64 shift = 0;
        for (u64 r = 0; r < ps; ++r) {
            acc += roots[addmod(fvals[r], shift, ps)];
            shift = addmod(shift, tmod, ps);
        }
        kcache.emplace(tmod, acc);
        return acc;
    };

    double decay = decay_constant(omega, 9);
    u64 T = tail_cutoff(decay, X / (double)ps, 1e-9 / std::max(X, 1.0), 9);
    const u64 ps1 = ps * p;                      // C has denominator p
    const i64 cnum = st.Btilde - (i64)st.v;      // C = cnum / p
    std::complex<double> rhs = 0.0;
    for (i64 t = 0; t <= (i64)T; ++t) {
        std::complex<double> om = fourier_transform(omega, (double)t * X / (double)ps, 1e-12).value;
        for (i64 sgn : {1, -1}) {
            if (t == 0 && sgn < 0) break;
            i64 ts = sgn * t;
            std::complex<double> omts = sgn > 0 ? om : std::conj(om);
            UnitPhase ph = UnitPhase::make((i64)reduce128(-(i128)ts * cnum, ps1), ps1);
            rhs += omts * ph.to_complex() * K(reduce(ts, ps));
        }
    }
    rhs *= X / (double)ps;

    double abs_err = std::abs(lhs - rhs);
    return {lhs, rhs, abs_err, abs_err / std::max(1.0, std::abs(lhs))};
}

}  // namespace

PoissonReport poisson_T1(const PipelineState& st, const SmoothWeight& phi, u64 k1, u64 l1,
                         i64 g1) {
    if (st.n < k1 + l1 + 2) throw DomainError("poisson_T1: s1 must be >= 2");
    u64 s1 = st.n - k1 - l1;
    i64 h1 = (i64)pow_u64(st.p, l1) * g1;
    i64 delta = (i64)pow_u64(st.p, k1) * h1;
    u64 div = pow_u64(st.p, k1 + l1), ps1 = pow_u64(st.p, s1);

    SmoothWeight omega1 = phi.shifted_product((double)delta / st.length());
    auto dq = [&](i64 w) {
        u64 d = submod(F_eval(st, w + delta), F_eval(st, w), st.q);
        if (d % div != 0) throw PrecisionLoss("poisson_T1: difference not divisible");
        return (d / div) % ps1;
    };
    return poisson_expand(st, omega1, s1, dq, f1_func(st, k1, l1, g1));
}

PoissonReport poisson_T2(const PipelineState& st, const SmoothWeight& phi, u64 k1, u64 k2,
                         u64 l1, u64 l2, i64 g1, i64 g2) {
    if (st.n < k1 + k2 + l1 + l2 + 2) throw DomainError("poisson_T2: s2 must be >= 2");
    u64 s2 = st.n - k1 - k2 - l1 - l2;
    i64 h1 = (i64)pow_u64(st.p, l1) * g1, h2 = (i64)pow_u64(st.p, l2) * g2;
    i64 d1 = (i64)pow_u64(st.p, k1) * h1, d2 = (i64)pow_u64(st.p, k2) * h2;
    u64 div = pow_u64(st.p, k1 + k2 + l1 + l2), ps2 = pow_u64(st.p, s2);

    SmoothWeight omega2 =
        phi.shifted_product((double)d1 / st.length()).shifted_product((double)d2 / st.length());
    auto dq = [&](i64 w) {
        u64 d = submod(addmod(F_eval(st, w + d1 + d2), F_eval(st, w), st.q),
                       addmod(F_eval(st, w + d1), F_eval(st, w + d2), st.q), st.q);
        if (d % div != 0) throw PrecisionLoss("poisson_T2: difference not divisible");
        return (d / div) % ps2;
    };
    return poisson_expand(st, omega2, s2, dq, f2_func(st, k1, k2, l1, l2, g1, g2));
}

}  // namespace pcs
