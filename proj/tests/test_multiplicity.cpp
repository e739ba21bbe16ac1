#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pcs/multiplicity.hpp"

using namespace pcs;

namespace {

AuditParams random_params(std::mt19937_64& rng, u64 p) {
    auto unit = [&] { return (i64)(1 + rng() % (p - 1)); };
    i64 v = unit();
    i64 beta;
    do beta = (i64)(rng() % (p * p));
    while ((beta + v * v) % (i64)p == 0);
    i64 t1 = (i64)pow_u64(p, rng() % 5) * unit();
    i64 t2 = (i64)pow_u64(p, rng() % 5) * unit();
    return AuditParams{p, unit(), unit(), unit(), v, beta, t1, t2};
}

}  // namespace

TEST_CASE("P1 with t1 = 0 has no cubic or quartic term") {
    AuditParams pr{5, 2, 3, 1, 2, 7, 0, 0};
    IntPoly P1 = build_P1(pr);
    CHECK(P1.coeff(3) == 0);
    CHECK(P1.coeff(4) == 0);
    CHECK(P1.degree() == 2);
}

TEST_CASE("c1 example: p=5, v=1, beta=1, a0=2, g1=1, t1=1") {
    AuditParams pr{5, 2, 1, 1, 1, 1, 1, 0};
    IntPoly P1 = build_P1(pr);
    CHECK(P1.coeff(1) == -960);
    CHECK(ord_p_int(P1.coeff(1), 5).v == 1);
    auto printed = printed_c_coeffs(pr);
    CHECK(printed[1] == -960);
}

TEST_CASE("printed coefficient table matches the expansion, 1000 draws") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        u64 p = std::vector<u64>{5, 7, 11, 13}[rng() % 4];
        AuditParams pr = random_params(rng, p);
        IntPoly P1 = build_P1(pr);
        auto printed = printed_c_coeffs(pr);
        for (u64 j = 0; j < 5; ++j) CHECK(P1.coeff(j) == printed[j]);
    }
}

TEST_CASE("P2 with t2 = 0") {
    AuditParams pr{5, 3, 2, 4, 1, 2, 0, 0};
    IntPoly P2 = build_P2(pr);
    CHECK(P2.coeff(4) == 0);
    CHECK(P2.coeff(5) == 0);
    CHECK(P2.coeff(6) == 0);
    i64 p6 = 15625;
    CHECK(P2.coeff(3) == 4 * pr.a0 * pr.g1 * pr.g2 * p6);
}

TEST_CASE("d5 = 6 p^5 t2 v pattern") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 50; ++i) {
        AuditParams pr = random_params(rng, 5);
        IntPoly P2 = build_P2(pr);
        i64 p5 = 3125;
        CHECK(P2.coeff(5) == 6 * p5 * pr.t2 * pr.v);
    }
}

TEST_CASE("R2 Q2 - P2 = 0 as an exact polynomial identity") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        AuditParams pr = random_params(rng, i % 2 ? 5 : 7);
        RationalFunc R2 = build_R2(pr);
        // independent reconstruction of the numerator from the two summands
        i64 p = (i64)pr.p;
        IntPoly T({pr.v, p});
        IntPoly Q2 = (IntPoly::constant(pr.beta) + T * T);
        Q2 = Q2 * Q2 * Q2;
        IntPoly lhs = T * (IntPoly::constant(3 * pr.beta) - T * T) *
                          (-4 * pr.a0 * pr.g1 * pr.g2 * p * p * p) +
                      Q2 * pr.t2;
        CHECK(R2.num == lhs);
        CHECK(R2.den == Q2);
    }
}

TEST_CASE("audit case 1 instances") {
    // t1 unit: case 1.1, linear reduced polynomial
    AuditParams pr{5, 2, 1, 1, 1, 1, 1, 0};
    AuditResult r = audit_case1(pr);
    CHECK(r.case1 == "1.1");
    CHECK(r.m1 <= 1);
    CHECK(r.omega1 <= 2);
    // t1 = p^3: case 1.2
    pr.t1 = 125;
    r = audit_case1(pr);
    CHECK(r.case1 == "1.2");
    CHECK(r.m1 <= 1);
    CHECK(r.omega1 <= 3);
    CHECK(ord_p_int(build_P1(pr).coeff(1), 5).v == 3);
    // t1 = p^2: case 1.3
    pr.t1 = 25;
    r = audit_case1(pr);
    CHECK(r.case1 == "1.3");
    CHECK(r.m1 <= 2);
    CHECK(r.omega1 <= 5);
}

TEST_CASE("audit case 2: unit t2 has no critical point") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        AuditParams pr = random_params(rng, 7);
        pr.t2 = (i64)(1 + rng() % 6);
        AuditResult r = audit_case2(pr);
        CHECK(r.case2 == "2.1");
        CHECK(r.m2 == 0);
        CHECK(r.omega2 <= 2);
    }
}

TEST_CASE("invalid parameters rejected") {
    CHECK_THROWS_AS(build_P1(AuditParams{5, 5, 1, 1, 1, 0, 0, 0}), ParamViolation);
    CHECK_THROWS_AS(build_P1(AuditParams{5, 1, 1, 1, 1, 24, 0, 0}), ParamViolation);  // p | u
    CHECK_THROWS_AS(build_P1(AuditParams{4, 1, 1, 1, 1, 0, 0, 0}), ParamViolation);
}

TEST_CASE("legendre 3 check") {
    CHECK_FALSE(legendre_3_check(7));   // (3|7) = -1, 7 == -5 mod 12
    CHECK(legendre_3_check(11));        // 5^2 = 25 == 3 mod 11
    CHECK(legendre_3_check(13));        // 4^2 = 16 == 3 mod 13
    CHECK_FALSE(legendre_3_check(5));
    for (u64 p : {17ull, 19ull, 23ull, 29ull, 31ull, 37ull, 41ull, 43ull})
        CHECK_NOTHROW(legendre_3_check(p));
}

TEST_CASE("sampled sweeps at p = 5 and p = 13") {
    SweepReport r5 = audit_sweep_sampled(5, 4000, 11);
    CHECK(r5.violations == 0);
    CHECK(r5.max_m1 <= 2);
    CHECK(r5.max_w1 <= 5);
    CHECK(r5.max_m2 <= 2);  // 5 == 5 mod 12 refinement
    CHECK(r5.max_w2 <= 8);
    CHECK(r5.refined);

    SweepReport r13 = audit_sweep_sampled(13, 2000, 12);
    CHECK(r13.violations == 0);
    CHECK(r13.max_m2 <= 3);
    CHECK_FALSE(r13.refined);

    auto json = sweep_report_json({r5, r13});
    CHECK(json.find("\"p\": 5") != std::string::npos);
    CHECK(json.find("violations") != std::string::npos);
}

TEST_CASE("fprime link: one-shift tail at k1 = 6, n = 16") {
    // beta = 1, u = 2, v = 1 (v^2 = u - beta); any unit a0 works
    PipelineState st = make_state(5, 16, 7, 1, 2, 1, 0, 1);
    CHECK(fprime_link_check(st, 6, 9, 2, 3, 7, 11, 100, 1));
}

TEST_CASE("fprime link: two-shift tail at k = 9, n = 24") {
    PipelineState st = make_state(5, 24, 3, 2, 3, 1, 0, 1);
    CHECK(fprime_link_check(st, 9, 9, 1, 2, 3, 4, 50, 2));
}
