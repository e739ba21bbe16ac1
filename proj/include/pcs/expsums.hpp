#pragma once

#include <complex>
#include <vector>

#include "pcs/poly.hpp"

// Complete exponential sums S_alpha(f, p^m) of rational functions mod prime
// powers, critical points over F_p with multiplicities, and the
// Cochrane-Liu-Zheng bound check.

namespace pcs {

struct DegenerateDenominator : std::domain_error {
    explicit DegenerateDenominator(const std::string& what) : std::domain_error(what) {}
};

struct DenominatorVanishes : std::domain_error {
    explicit DenominatorVanishes(const std::string& what) : std::domain_error(what) {}
};

struct HypothesisViolated : std::runtime_error {
    explicit HypothesisViolated(const std::string& what) : std::runtime_error(what) {}
};

struct CriticalPoint {
    u64 alpha;  // residue mod p
    u64 nu;     // multiplicity >= 1
};

struct CriticalData {
    i64 t;  // ord_p(f')
    std::vector<CriticalPoint> points;
    // classes alpha mod p where den(f) vanishes mod p (excluded from the audit)
    std::vector<u64> degenerate;
};

// t = ord_p(f') and the zeros of p^{-t} f' over F_p with multiplicities,
// restricted to classes with unit denominator.
CriticalData critical_points(const RationalFunc& f, u64 p);

// Multiplicity at a single class (0 if alpha is not critical).
u64 multiplicity_at(const CriticalData& cd, u64 alpha);

// S_alpha(f, p^m) = sum_{n mod p^m, n == alpha mod p} e(f(n)/p^m).
std::complex<double> complete_sum(const RationalFunc& f, u64 p, u64 m, u64 alpha);

// All classes in one pass over n mod p^m. result[alpha] is S_alpha; classes
// with den(alpha) == 0 mod p are left at 0 and flagged.
struct CompleteSums {
    std::vector<std::complex<double>> by_class;
    std::vector<bool> degenerate;
};
CompleteSums complete_sum_all(const RationalFunc& f, u64 p, u64 m);

struct ClzResult {
    double abs_sum;
    double bound;
    i64 t;
    u64 nu;
    bool pass;
};

// |S_alpha| <= nu p^{t/(nu+1)} p^{m(1-1/(nu+1))} (+1e-9 float slack), and
// S_alpha = 0 when nu = 0. Throws HypothesisViolated when m < t + 2.
ClzResult clz_check(const RationalFunc& f, u64 p, u64 m, u64 alpha);

}  // namespace pcs
