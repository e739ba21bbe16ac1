#pragma once

#include <string>
#include <vector>

#include "pcs/pipeline.hpp"

// Exponent arithmetic (exact rationals), the parameter choices H1, H2, and
// empirical desk-scale sweeps of the main estimates.

namespace pcs {

struct Infeasible : std::runtime_error {
    explicit Infeasible(const std::string& what) : std::runtime_error(what) {}
};

// Exact rational with normalized sign (den > 0) and reduced terms.
struct Fraction {
    i64 num = 0;
    i64 den = 1;

    Fraction() = default;
    Fraction(i64 n, i64 d);
    Fraction(i64 n) : num(n), den(1) {}  // NOLINT: implicit by design

    Fraction operator+(const Fraction& o) const;
    Fraction operator-(const Fraction& o) const;
    Fraction operator*(const Fraction& o) const;
    Fraction operator/(const Fraction& o) const;

    bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
    bool operator<(const Fraction& o) const { return (i128)num * o.den < (i128)o.num * den; }
    bool operator<=(const Fraction& o) const { return (i128)num * o.den <= (i128)o.num * den; }

    double value() const { return (double)num / (double)den; }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

struct ExponentSet {
    int j1, j2;
    Fraction rho1;        // (j1-1)/(2(2j1-1))
    Fraction sigma;       // (7j2-4)/(2(5j2-3))
    Fraction rho2;        // (j2-1)/(2(5j2-3))
    Fraction range1_lo;   // (j1-1)/(2j1-1)
    Fraction range1_hi;   // (3j1-2)/(2(2j1-1))
    Fraction range2_lo;   // (j2-1)/(3j2-2)
    Fraction crossover;   // (3j1j2-j1-4j2+2)/((2j1-1)(2j2-1))
};

ExponentSet exponents(int j1, int j2);

struct HbExponents {
    int r;
    Fraction exponent;     // (r+2)/(4r^2), the q-exponent next to N^{2-1/r}
    Fraction valid_lo;     // 1/4 + 1/(2r)
    Fraction valid_hi;     // 5/12 + 1/(2r)
    Fraction optimal_lo;   // (r^2+5r+2)/(4(r^2+r))
    Fraction optimal_hi;   // (r^2+3r-2)/(4(r^2-r))
};

HbExponents hb_exponents(int r);

// The r-sets in 3..r_max where each branch beats the squarefree-modulus
// comparison bound: first branch from j1, second branch from j2.
struct SupersedeReport {
    std::vector<int> first_branch;   // r with r(j1-1)/((r-2)(2j1-1)) - (r+2)/(2r(r-2)) <= optimal_lo
    std::vector<int> second_branch;  // r with the (takes) inequality for j2
};

SupersedeReport supersede_ranges(int j1, int j2, int r_max = 30);

enum class Branch { OneShift, TwoShift };

struct HChoice {
    u64 H1 = 1, H2 = 1;
    u64 k1 = 0, k2 = 0;
};

// One-shift: the unique power of p in [q^{(j-1)/(2j-1)}, p q^{(j-1)/(2j-1)}).
// Two-shift: H1 in [X^{(2j-1)/(5j-3)} q^{(j-1)/(5j-3)}, p ...),
//            H2 in [X^{-(j-1)/(5j-3)} q^{2(j-1)/(5j-3)}, p ...).
// Throws Infeasible when a window lies above X.
HChoice choose_H(Branch branch, double X, u64 p, u64 n, int j);

struct SweepRecord {
    u64 p, n;
    QuadraticForm Q;
    u64 chi_index;
    u64 M, N;
    std::string branch;
    double abs_sum;
    double bound;
    double ratio;
    double seconds = 0.0;
};

struct SweepConfig {
    u64 p = 5, n = 9;
    QuadraticForm Q{1, 1, 3};
    u64 chi_index = 1;
    int points = 12;     // grid points per window
    int j1 = 3, j2 = 4;
    bool timings = false;  // keep `seconds` at 0 for byte-stable artifacts
    u64 jobs = 1;
};

struct SweepResult {
    std::vector<SweepRecord> upper, lower;
    double slope_upper;  // least-squares slope of log|S_Q| vs log N
    double slope_lower;
};

// Runs both corollary branches on log-spaced N-grids inside their windows,
// with M = N, A = B = 0 and the standard bump weights; bounds use constant 1.
SweepResult sweep_main_bound(const SweepConfig& cfg);

// Explicit grid variant (used by the CLI --grid flag): records for one branch.
std::vector<SweepRecord> sweep_grid(const SweepConfig& cfg, Branch branch,
                                    const std::vector<u64>& Ns);

std::string sweep_csv(const std::vector<SweepRecord>& records);
std::string sweep_json(const std::vector<SweepRecord>& records);

// Least-squares slope of log(abs_sum) against log(N); records with
// abs_sum == 0 are skipped.
double fit_slope(const std::vector<SweepRecord>& records);

}  // namespace pcs
