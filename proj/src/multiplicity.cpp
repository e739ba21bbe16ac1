#include "pcs/multiplicity.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace pcs {

namespace {

u64 ugcd(u64 a, u64 b) { return gcd_u64(a, b); }

u64 unit_mod_p(i64 x, u64 p) { return reduce(x, p); }

// Max root multiplicity over F_p of a nonzero polynomial given mod p
// (ascending coefficients, values in [0, p)).
u64 max_root_multiplicity(std::vector<u64> c, u64 p) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) throw DomainError("max_root_multiplicity: zero polynomial");
    u64 best = 0;
    for (u64 a = 0; a < p; ++a) {
        std::vector<u64> q = c;
        u64 mult = 0;
        while (true) {
            // synthetic division by (x - a); remainder = q(a)
            u64 rem = 0;
            std::vector<u64> next(q.size() > 1 ? q.size() - 1 : 0);
            for (size_t i = q.size(); i-- > 0;) {
                u64 val = addmod(mulmod(rem, a, p), q[i], p);
                if (i > 0)
                    next[i - 1] = val, rem = val;
                else
                    rem = val;
            }
            if (rem != 0) break;
            ++mult;
            q = std::move(next);
            if (q.empty()) break;
        }
        best = std::max(best, mult);
    }
    return best;
}

struct ReducedPoly {
    u64 omega;               // ord_p of the integer polynomial
    std::vector<u64> modp;   // (P / p^omega) mod p
};

ReducedPoly reduce_poly(const IntPoly& P, u64 p) {
    Valuation w = ord_p_poly(P, p);
    if (!w.finite) throw DomainError("reduce_poly: zero polynomial");
    u64 pe = pow_u64(p, w.v);
    std::vector<u64> modp(P.coeffs().size());
    for (size_t i = 0; i < modp.size(); ++i) {
        i64 c = P.coeff(i) / (i64)pe;  // exact for coefficients at the min valuation
        if (P.coeff(i) % (i64)pe != 0)
            modp[i] = 0;  // valuation above omega: vanishes after division mod p
        else
            modp[i] = reduce(c, p);
    }
    return {w.v, std::move(modp)};
}

std::string dump_params(const AuditParams& pr) {
    std::ostringstream os;
    os << "p=" << pr.p << " a0=" << pr.a0 << " g1=" << pr.g1 << " g2=" << pr.g2
       << " v=" << pr.v << " beta=" << pr.beta << " t1=" << pr.t1 << " t2=" << pr.t2;
    return os.str();
}

}  // namespace

void AuditParams::validate() const {
    if (p <= 3 || !is_prime_u64(p)) throw ParamViolation("AuditParams: p must be a prime > 3");
    i64 prod[5] = {a0, g1, g2, v, u()};
    for (i64 x : prod)
        if (ugcd(unit_mod_p(x, p), p) != 1)
            throw ParamViolation("AuditParams: a0 g1 g2 v u must be units mod p (" +
                                 dump_params(*this) + ")");
}

IntPoly build_P1(const AuditParams& pr) {
    pr.validate();
    i64 p = (i64)pr.p;
    IntPoly T({pr.v, p});
    IntPoly T2 = T * T;
    IntPoly beta_minus = IntPoly::constant(pr.beta) - T2;
    IntPoly beta_plus = IntPoly::constant(pr.beta) + T2;
    return beta_minus * (2 * pr.a0 * pr.g1 * p * p) + beta_plus * beta_plus * pr.t1;
}

RationalFunc build_R1(const AuditParams& pr) {
    i64 p = (i64)pr.p;
    IntPoly T({pr.v, p});
    IntPoly beta_plus = IntPoly::constant(pr.beta) + T * T;
    return {build_P1(pr), beta_plus * beta_plus};
}

std::array<i64, 5> printed_c_coeffs(const AuditParams& pr) {
    i64 p = (i64)pr.p, A = pr.a0 * pr.g1, u = pr.u(), v = pr.v, t1 = pr.t1;
    return {2 * p * p * A * (pr.beta - v * v) + t1 * u * u,
            4 * p * (-p * p * A * v + u * v * t1),
            2 * p * p * (-p * p * A + pr.beta * t1 + 3 * t1 * v * v),
            4 * p * p * p * t1 * v,
            p * p * p * p * t1};
}

IntPoly build_P2(const AuditParams& pr) {
    pr.validate();
    i64 p = (i64)pr.p;
    IntPoly T({pr.v, p});
    IntPoly T2 = T * T;
    IntPoly beta_plus = IntPoly::constant(pr.beta) + T2;
    IntPoly odd = T * (IntPoly::constant(3 * pr.beta) - T2);
    return odd * (-4 * pr.a0 * pr.g1 * pr.g2 * p * p * p) + beta_plus * beta_plus * beta_plus * pr.t2;
}

RationalFunc build_R2(const AuditParams& pr) {
    i64 p = (i64)pr.p;
    IntPoly T({pr.v, p});
    IntPoly beta_plus = IntPoly::constant(pr.beta) + T * T;
    return {build_P2(pr), beta_plus * beta_plus * beta_plus};
}

AuditResult audit_case1(const AuditParams& pr) {
    IntPoly P1 = build_P1(pr);
    ReducedPoly red = reduce_poly(P1, pr.p);
    AuditResult r;
    r.omega1 = red.omega;
    r.m1 = max_root_multiplicity(red.modp, pr.p);
    for (u64 i = 0; i < 5; ++i) r.ord_c[i] = ord_p_int(P1.coeff(i), pr.p);

    Valuation vt = ord_p_int(pr.t1, pr.p);
    u64 m_cap, w_cap;
    if (vt.finite && vt.v <= 1) {
        r.case1 = "1.1";
        m_cap = 1;
        w_cap = 2;
    } else if (!vt.finite || vt.v >= 3) {
        r.case1 = "1.2";
        m_cap = 1;
        w_cap = 3;
    } else {
        r.case1 = "1.3";
        m_cap = 2;
        w_cap = 5;
    }
    if (r.m1 > m_cap || r.omega1 > w_cap)
        throw ClaimViolated("audit_case1: m1=" + std::to_string(r.m1) +
                            " w1=" + std::to_string(r.omega1) + " in case " + r.case1 + " (" +
                            dump_params(pr) + ")");
    return r;
}

AuditResult audit_case2(const AuditParams& pr) {
    IntPoly P2 = build_P2(pr);
    ReducedPoly red = reduce_poly(P2, pr.p);
    AuditResult r;
    r.omega2 = red.omega;
    r.m2 = max_root_multiplicity(red.modp, pr.p);
    for (u64 i = 0; i < 7; ++i) r.ord_d[i] = ord_p_int(P2.coeff(i), pr.p);

    Valuation vt = ord_p_int(pr.t2, pr.p);
    u64 m_cap = 3, w_cap = 8;
    if (vt.finite && vt.v <= 2) {
        r.case2 = "2.1";
        m_cap = 0;  // reduced polynomial is a nonzero constant: no critical point
        w_cap = 2;
    } else if (!vt.finite || vt.v >= 4) {
        r.case2 = "2.2";
        m_cap = 2;
        w_cap = 5;
    } else {
        r.case2 = "2.3";
    }
    u64 pm12 = pr.p % 12;
    if (pm12 == 5 || pm12 == 7) m_cap = std::min<u64>(m_cap, 2);
    if (r.m2 > m_cap || r.omega2 > w_cap)
        throw ClaimViolated("audit_case2: m2=" + std::to_string(r.m2) +
                            " w2=" + std::to_string(r.omega2) + " in case " + r.case2 + " (" +
                            dump_params(pr) + ")");
    return r;
}

AuditResult audit(const AuditParams& pr) {
    AuditResult a = audit_case1(pr);
    AuditResult b = audit_case2(pr);
    a.omega2 = b.omega2;
    a.m2 = b.m2;
    a.case2 = b.case2;
    a.ord_d = b.ord_d;
    return a;
}

bool legendre_3_check(u64 p) {
    if (p <= 3 || !is_prime_u64(p)) throw DomainError("legendre_3_check: p must be a prime > 3");
    bool residue = powmod(3, (p - 1) / 2, p) == 1;
    u64 r = p % 12;
    bool pm5 = (r == 5 || r == 7);  // p == +-5 mod 12
    if (residue == pm5)
        throw ClaimViolated("legendre_3_check: (3|p) vs p mod 12 mismatch at p=" +
                            std::to_string(p));
    return residue;
}

bool fprime_link_check(const PipelineState& st, u64 k1, u64 k2, i64 g1, i64 g2, i64 t1,
                       i64 t2, u64 samples, u64 seed) {
    const u64 q = st.q, p = st.p;
    u64 k = std::min(k1, k2);

    ModRat F2 = F_derivative(st, 2), F3 = F_derivative(st, 3);
    ModRat G1 = taylor_G1(st, k1, g1);
    ModRat G2 = taylor_G2(st, k1, k2, g1, g2);
    u64 g1m = reduce(g1, q), g12 = mulmod(g1m, reduce(g2, q), q);
    u64 t1m = reduce(t1, q), t2m = reduce(t2, q);

    // R_i evaluated directly mod q.
    auto R1_at = [&](u64 r) {
        u64 T = addmod(reduce((i64)st.v, q), mulmod(p, r, q), q);
        u64 T2 = mulmod(T, T, q);
        u64 bq = reduce(st.beta, q);
        u64 num = mulmod(mulmod(2, mulmod(st.a0, g1m, q), q), mulmod(p, p, q), q);
        num = mulmod(num, submod(bq, T2, q), q);
        u64 den = addmod(bq, T2, q);
        den = mulmod(den, den, q);
        return addmod(mulmod(num, inv_mod(den, q), q), t1m, q);
    };
    auto R2_at = [&](u64 r) {
        u64 T = addmod(reduce((i64)st.v, q), mulmod(p, r, q), q);
        u64 T2 = mulmod(T, T, q);
        u64 bq = reduce(st.beta, q);
        u64 num = mulmod(4, mulmod(mulmod(st.a0, g12, q), powmod(p, 3, q), q), q);
        num = mulmod(num, mulmod(T, submod(mulmod(3, bq, q), T2, q), q), q);
        num = submod(0, num, q);
        u64 den = addmod(bq, T2, q);
        den = mulmod(mulmod(den, den, q), den, q);
        return addmod(mulmod(num, inv_mod(den, q), q), t2m, q);
    };

    ModRat G1d = G1.derivative(), G2d = G2.derivative();
    std::mt19937_64 rng(seed);
    for (u64 i = 0; i < samples; ++i) {
        u64 r = rng() % q;
        u64 F1p = addmod(mulmod(g1m, addmod(F2.eval(r), mulmod(powmod(p, k1, q), G1d.eval(r), q), q), q),
                         t1m, q);
        u64 d1 = submod(F1p, R1_at(r), q);
        if (d1 != 0 && ord_p_int((i64)d1, p).v < k1)
            throw ClaimViolated("fprime_link_check: ord(F1' - R1) < k1 at r=" +
                                std::to_string(r));

        u64 F2p = addmod(mulmod(g12, addmod(F3.eval(r), mulmod(powmod(p, k, q), G2d.eval(r), q), q), q),
                         t2m, q);
        u64 d2 = submod(F2p, R2_at(r), q);
        if (d2 != 0 && ord_p_int((i64)d2, p).v < k)
            throw ClaimViolated("fprime_link_check: ord(F2' - R2) < k at r=" +
                                std::to_string(r));
    }
    return true;
}

namespace {

// P1 depends on (a0 g1, v, beta, t1) and P2 on (a0 g1 g2, v, beta, t2), so
// the two cases are swept independently over their own parameter products;
// the cross product of the two loops would repeat identical audits.
SweepReport sweep_slice(u64 p, u64 v_lo, u64 v_hi) {
    SweepReport rep;
    rep.p = p;
    u64 pm12 = p % 12;
    rep.refined = (pm12 == 5 || pm12 == 7);

    std::vector<i64> tvals;
    for (u64 j = 0; j <= 6; ++j)
        for (u64 e = 1; e < p; ++e) tvals.push_back((i64)(pow_u64(p, j) * e));

    auto note = [&rep](const ClaimViolated&) { ++rep.violations; };

    for (u64 v = v_lo; v < v_hi; ++v) {
        for (i64 beta = 0; beta < (i64)(p * p); ++beta) {
            if ((beta + (i64)(v * v)) % (i64)p == 0) continue;
            for (u64 a0 = 1; a0 < p; ++a0)
                for (u64 g1 = 1; g1 < p; ++g1) {
                    AuditParams pr{p, (i64)a0, (i64)g1, 1, (i64)v, beta, 0, 0};
                    for (i64 t1 : tvals) {
                        pr.t1 = t1;
                        ++rep.tuples;
                        try {
                            AuditResult r = audit_case1(pr);
                            rep.max_m1 = std::max(rep.max_m1, r.m1);
                            rep.max_w1 = std::max(rep.max_w1, r.omega1);
                        } catch (const ClaimViolated& e) {
                            note(e);
                        }
                    }
                    pr.t1 = 0;
                    for (u64 g2 = 1; g2 < p; ++g2) {
                        pr.g2 = (i64)g2;
                        for (i64 t2 : tvals) {
                            pr.t2 = t2;
                            ++rep.tuples;
                            try {
                                AuditResult r = audit_case2(pr);
                                rep.max_m2 = std::max(rep.max_m2, r.m2);
                                rep.max_w2 = std::max(rep.max_w2, r.omega2);
                            } catch (const ClaimViolated& e) {
                                note(e);
                            }
                        }
                    }
                }
        }
    }
    return rep;
}

}  // namespace

SweepReport audit_sweep(u64 p, u64 jobs) {
    if (p <= 3 || !is_prime_u64(p)) throw DomainError("audit_sweep: p must be a prime > 3");
    jobs = std::max<u64>(1, std::min(jobs, p - 1));
    std::vector<SweepReport> parts(jobs);
    std::vector<std::thread> workers;
    u64 span = p - 1;
    for (u64 w = 0; w < jobs; ++w) {
        u64 lo = 1 + span * w / jobs, hi = 1 + span * (w + 1) / jobs;
        workers.emplace_back([&, w, lo, hi] { parts[w] = sweep_slice(p, lo, hi); });
    }
    for (auto& t : workers) t.join();

    SweepReport rep;
    rep.p = p;
    rep.refined = parts[0].refined;
    for (const SweepReport& s : parts) {
        rep.tuples += s.tuples;
        rep.max_m1 = std::max(rep.max_m1, s.max_m1);
        rep.max_w1 = std::max(rep.max_w1, s.max_w1);
        rep.max_m2 = std::max(rep.max_m2, s.max_m2);
        rep.max_w2 = std::max(rep.max_w2, s.max_w2);
        rep.violations += s.violations;
    }
    return rep;
}

SweepReport audit_sweep_sampled(u64 p, u64 samples, u64 seed) {
    if (p <= 3 || !is_prime_u64(p)) throw DomainError("audit_sweep_sampled: bad p");
    SweepReport rep;
    rep.p = p;
    u64 pm12 = p % 12;
    rep.refined = (pm12 == 5 || pm12 == 7);

    std::mt19937_64 rng(seed);
    auto unit = [&] { return (i64)(1 + rng() % (p - 1)); };
    for (u64 i = 0; i < samples; ++i) {
        i64 v = unit();
        i64 beta;
        do beta = (i64)(rng() % (p * p));
        while ((beta + v * v) % (i64)p == 0);
        i64 t1 = (i64)pow_u64(p, rng() % 7) * unit();
        i64 t2 = (i64)pow_u64(p, rng() % 7) * unit();
        AuditParams pr{p, unit(), unit(), unit(), v, beta, t1, t2};
        AuditResult r = audit(pr);
        ++rep.tuples;
        rep.max_m1 = std::max(rep.max_m1, r.m1);
        rep.max_w1 = std::max(rep.max_w1, r.omega1);
        rep.max_m2 = std::max(rep.max_m2, r.m2);
        rep.max_w2 = std::max(rep.max_w2, r.omega2);
    }
    return rep;
}

std::string sweep_report_json(const std::vector<SweepReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SweepReport& r : reports) {
        arr.push_back({{"p", r.p},
                       {"tuples", r.tuples},
                       {"max_m1", r.max_m1},
                       {"max_w1", r.max_w1},
                       {"max_m2", r.max_m2},
                       {"max_w2", r.max_w2},
                       {"violations", r.violations},
                       {"refined", r.refined}});
    }
    return nlohmann::json{{"sweeps", arr}}.dump(2) + "\n";
}

}  // namespace pcs
