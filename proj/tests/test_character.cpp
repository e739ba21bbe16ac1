#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcs/character.hpp"
#include "pcs/padic.hpp"

using namespace pcs;

TEST_CASE("smallest primitive roots") {
    CHECK(smallest_primitive_root(5, 2) == 2);
    CHECK(smallest_primitive_root(7, 2) == 3);
    CHECK(smallest_primitive_root(5, 4) == 2);
}

TEST_CASE("character values mod 25, index 1") {
    DirichletCharacter chi(5, 2, 1);
    CHECK(chi.group().generator() == 2);
    PhaseOrZero v7 = chi(7);
    REQUIRE_FALSE(v7.zero);
    CHECK(v7.phase == UnitPhase::make(5, 20));
    PhaseOrZero v6 = chi(6);
    REQUIRE_FALSE(v6.zero);
    CHECK(v6.phase == UnitPhase::make(8, 20));
    CHECK(chi(10).zero);
    CHECK(chi(0).zero);
    PhaseOrZero v1 = chi(1);
    CHECK(v1.phase == UnitPhase::make(0, 1));
}

TEST_CASE("multiplicativity, exhaustive for p^n <= 5^4") {
    for (u64 n : {2ull, 3ull, 4ull}) {
        auto grp = std::make_shared<UnitGroup>(5, n);
        DirichletCharacter chi(grp, 3);
        u64 q = grp->modulus();
        for (u64 x = 1; x < q; ++x) {
            if (x % 5 == 0) continue;
            for (u64 y = x; y < q; y += 7) {
                if (y % 5 == 0) continue;
                PhaseOrZero a = chi((i64)x), b = chi((i64)y), ab = chi((i64)mulmod(x, y, q));
                CHECK(ab.phase == a.phase * b.phase);
            }
        }
    }
}

TEST_CASE("primitivity is nontriviality on 1 + p^{n-1}Z") {
    for (u64 p : {5ull, 7ull}) {
        for (u64 n : {2ull, 3ull}) {
            auto grp = std::make_shared<UnitGroup>(p, n);
            u64 q = grp->modulus();
            for (u64 idx = 1; idx < grp->order(); idx += (p == 5 ? 1 : 5)) {
                DirichletCharacter chi(grp, idx, false);
                bool nontrivial = false;
                for (u64 t = 1; t < p; ++t) {
                    u64 x = (1 + pow_u64(p, n - 1) * t) % q;
                    PhaseOrZero v = chi((i64)x);
                    if (!(v.phase == UnitPhase::make(0, 1))) nontrivial = true;
                }
                CHECK(chi.is_primitive() == nontrivial);
            }
            CHECK_THROWS_AS(DirichletCharacter(grp, p), NotPrimitive);
        }
    }
}

TEST_CASE("postnikov constant mod 25") {
    DirichletCharacter chi(5, 2, 1);
    u64 a0 = postnikov_a0(chi);
    CHECK(a0 % 5 == 2);
    // conjugation negates a0 mod p^{n-1}
    u64 a0c = postnikov_a0(chi.conjugate());
    CHECK(addmod(a0 % 5, a0c % 5, 5) == 0);
}

TEST_CASE("postnikov identity as exact phases") {
    for (u64 p : {5ull, 7ull}) {
        for (u64 n : {2ull, 3ull, 4ull}) {
            auto grp = std::make_shared<UnitGroup>(p, n);
            u64 q = grp->modulus();
            for (u64 idx : std::vector<u64>{1, 2, 3, grp->order() - 1}) {
                if (idx % p == 0) continue;
                DirichletCharacter chi(grp, idx);
                u64 a0 = postnikov_a0(chi);
                CHECK(a0 % p != 0);
                for (u64 t = 0; t < pow_u64(p, n - 1); ++t) {
                    u64 x = (1 + p * t) % q;
                    UnitPhase expect =
                        UnitPhase::make((i64)mulmod(a0, padic_log_mod(x, p, n), q), q);
                    CHECK(chi((i64)x).phase == expect);
                }
            }
        }
    }
}

TEST_CASE("conjugate character is the complex conjugate") {
    DirichletCharacter chi(5, 3, 7);
    DirichletCharacter bar = chi.conjugate();
    for (u64 x = 1; x < 125; x += 3) {
        if (x % 5 == 0) continue;
        CHECK(bar((i64)x).phase == chi((i64)x).phase.conj());
    }
}

TEST_CASE("character_table matches direct evaluation") {
    DirichletCharacter chi(7, 2, 3);
    auto table = character_table(chi);
    REQUIRE(table.size() == 49);
    for (u64 x = 0; x < 49; ++x) {
        std::complex<double> direct = chi((i64)x).to_complex();
        CHECK(std::abs(table[x] - direct) < 1e-12);
    }
}

TEST_CASE("unit group errors") {
    CHECK_THROWS_AS(UnitGroup(4, 2), DomainError);
    auto grp = std::make_shared<UnitGroup>(5, 2);
    CHECK_THROWS_AS(grp->dlog(10), DomainError);
    CHECK(grp->order() == 20);
}
