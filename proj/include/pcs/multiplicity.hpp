#pragma once

#include <array>
#include <string>
#include <vector>

#include "pcs/pipeline.hpp"
#include "pcs/poly.hpp"

// The multiplicity audit: symbolic construction of the rational functions
// R1, R2, their coefficient valuations, critical-point multiplicities m1, m2
// and derivative orders w1, w2, and exhaustive verification of the case
// bounds including the p = +-5 mod 12 refinement.

namespace pcs {

struct ParamViolation : std::domain_error {
    explicit ParamViolation(const std::string& what) : std::domain_error(what) {}
};

struct ClaimViolated : std::runtime_error {
    explicit ClaimViolated(const std::string& what) : std::runtime_error(what) {}
};

struct AuditParams {
    u64 p;
    i64 a0, g1, g2, v;  // units mod p
    i64 beta;
    i64 t1 = 0, t2 = 0;  // dual frequencies

    i64 u() const { return beta + v * v; }
    // Throws ParamViolation when gcd(a0 g1 g2 u v, p) != 1.
    void validate() const;
};

struct AuditResult {
    u64 omega1 = 0, omega2 = 0;  // ord_p of the reduced numerators
    u64 m1 = 0, m2 = 0;          // max critical-point multiplicities
    std::string case1, case2;    // "1.1".."1.3", "2.1".."2.3"
    std::array<Valuation, 5> ord_c;  // ord_p(c0..c4)
    std::array<Valuation, 7> ord_d;  // ord_p(d0..d6)
};

// P1 = 2 g1 a0 p^2 (beta - T^2) + t1 (beta + T^2)^2, T = v + p r, expanded
// over exact integers; verified against the printed coefficient formulas.
IntPoly build_P1(const AuditParams& params);
RationalFunc build_R1(const AuditParams& params);

// The printed table c0..c4 (c0 = 2p^2 a0 g1 (beta - v^2) + t1 u^2, ...,
// c4 = p^4 t1).
std::array<i64, 5> printed_c_coeffs(const AuditParams& params);

// P2 = -4 g1 g2 a0 p^3 T (3 beta - T^2) + t2 (beta + T^2)^3, Q2 = (beta+T^2)^3.
IntPoly build_P2(const AuditParams& params);
RationalFunc build_R2(const AuditParams& params);

// Case analysis for R1: asserts
//   ord_p(t1) <= 1  =>  m1 <= 1 and w1 <= 2   (case 1.1)
//   ord_p(t1) >= 3  =>  m1 <= 1 and w1 <= 3   (case 1.2)
//   ord_p(t1) == 2  =>  m1 <= 2 and w1 <= 5   (case 1.3)
// Throws ClaimViolated with a parameter dump if any bound fails.
AuditResult audit_case1(const AuditParams& params);

// Case analysis for R2: asserts m2 <= 3 and w2 <= 8 always, plus
//   ord_p(t2) <= 2  =>  w2 <= 2 and no critical point   (case 2.1)
//   ord_p(t2) >= 4  =>  m2 <= 2 and w2 <= 5             (case 2.2)
//   ord_p(t2) == 3  =>  m2 <= 3 and w2 <= 8             (case 2.3)
// and, when p == +-5 mod 12, m2 <= 2 in every case.
AuditResult audit_case2(const AuditParams& params);

// Combined audit of both cases.
AuditResult audit(const AuditParams& params);

// (3|p) = -1 iff p == +-5 mod 12; returns the Legendre symbol value as a
// bool (true = residue) and asserts the equivalence.
bool legendre_3_check(u64 p);

// ord_p(F1' - R1) >= k1 and ord_p(F2' - R2) >= min(k1,k2) at `samples`
// seeded points r; F_i' from the symbolic pipeline side, R_i from the audit
// side. Throws ClaimViolated on failure.
bool fprime_link_check(const PipelineState& st, u64 k1, u64 k2, i64 g1, i64 g2, i64 t1,
                       i64 t2, u64 samples = 100, u64 seed = 1);

// Exhaustive sweep at one prime: all units v, a0, g1, g2 mod p; beta mod p^2
// with p not dividing u; t_i = p^j * unit for j in 0..6 (unit drawn from a
// small fixed set to keep the tuple count sane, plus t_i = 0).
struct SweepReport {
    u64 p;
    u64 tuples = 0;
    u64 max_m1 = 0, max_w1 = 0, max_m2 = 0, max_w2 = 0;
    u64 violations = 0;
    bool refined = false;  // p == +-5 mod 12, so m2 <= 2 was asserted
};

SweepReport audit_sweep(u64 p, u64 jobs = 1);

// Sampled sweep for larger primes (p = 13 spot checks): `samples` seeded
// tuples, asserting only the unconditional bounds.
SweepReport audit_sweep_sampled(u64 p, u64 samples, u64 seed);

std::string sweep_report_json(const std::vector<SweepReport>& reports);

}  // namespace pcs
