#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "pcs/character.hpp"
#include "pcs/modpoly.hpp"
#include "pcs/weights.hpp"

// Transformation pipeline: quadratic completion, the two-part split of the
// smoothed character sum, residue splitting with Hensel lifts, the additive
// representation F(w), Weyl differencing with Taylor tails, and the Poisson
// expansions of the differenced sums.

namespace pcs {

struct BadForm : std::domain_error {
    explicit BadForm(const std::string& what) : std::domain_error(what) {}
};

struct PrecisionLoss : std::runtime_error {
    explicit PrecisionLoss(const std::string& what) : std::runtime_error(what) {}
};

struct QuadraticForm {
    i64 a, b, c;  // a x^2 + 2 b x y + c y^2
    i64 det() const { return a * c - b * b; }
};

struct SumParams {
    i64 A = 0, B = 0;
    u64 M = 1, N = 1;
    SmoothWeight psi = SmoothWeight::bump();
    SmoothWeight phi = SmoothWeight::bump();
};

// Evaluation context for one character: dense chi table for the brute-force
// sum kernels. All sums use a fixed order (outer ascending, inner ascending),
// so repeated runs are bit-identical.
class CharSums {
  public:
    explicit CharSums(DirichletCharacter chi)
        : chi_(std::move(chi)), table_(character_table(chi_)) {}

    const DirichletCharacter& chi() const { return chi_; }
    std::complex<double> chi_at(i64 x) const { return table_[reduce(x, chi_.modulus())]; }

    std::complex<double> sum_SQ(const QuadraticForm& Q, const SumParams& params) const;
    std::complex<double> sum_SQ1(const QuadraticForm& Q, const SumParams& params) const;
    std::complex<double> sum_SQ2(const QuadraticForm& Q, const SumParams& params) const;

    // T(Phi, Btilde, N, beta; chi) over (y,p)=1.
    std::complex<double> sum_T(const SmoothWeight& phi, i64 Btilde, u64 N, i64 beta) const;

    // Sigma(Phi, C, X, beta, u, v; chi) = sum_w Phi((w-C)/X) chi(beta+(pw+v)^2).
    std::complex<double> sum_Sigma(const SmoothWeight& phi, double C, double X, i64 beta,
                                   u64 v) const;

  private:
    DirichletCharacter chi_;
    std::vector<std::complex<double>> table_;
};

// ---- quadratic completion -------------------------------------------------

struct Completion {
    u64 cbar;   // inverse of c mod p^n
    u64 alpha;  // det(Q) * cbar^2 mod p^n
};

// Throws BadForm when p | c*det(Q).
Completion quadratic_completion(const QuadraticForm& Q, u64 p, u64 n);

// Q(x,y) == c(alpha x^2 + (b cbar x + y)^2) mod p^n, exhaustively for
// p^n <= 625, otherwise on `samples` seeded points.
bool certify_completion(const QuadraticForm& Q, u64 p, u64 n, u64 samples = 10000,
                        u64 seed = 1);

// ---- residue splitting ----------------------------------------------------

struct ResidueClass {
    u64 u;       // residue mod p, u != 0, beta
    u64 v_plus;  // Hensel lift with smallest base root
    u64 v_minus; // companion root p^n - v_plus
};

std::vector<ResidueClass> residue_split(i64 beta, u64 p, u64 n);

// Partition certificate: the classes cover {y mod p^n : p does not divide
// y(beta+y^2)} exactly once.
bool residue_split_covers(i64 beta, u64 p, u64 n);

// ---- the additive representation F ---------------------------------------

struct PipelineState {
    u64 p, n, q;   // q = p^n
    i64 beta;
    u64 u, v;      // v^2 == u - beta mod p^n, (uv, p) = 1
    u64 ubar;      // inverse of u mod p^n
    u64 a0;        // Postnikov constant of the character in play
    i64 Btilde = 0;
    u64 N = 1;

    double center() const { return ((double)Btilde - (double)v) / (double)p; }
    double length() const { return (double)N / (double)p; }
};

// State for one (u,v) class; validates the unit conditions.
PipelineState make_state(u64 p, u64 n, u64 a0, i64 beta, u64 u, u64 v, i64 Btilde, u64 N);
PipelineState make_state(const DirichletCharacter& chi, i64 beta, u64 u, u64 v, i64 Btilde,
                         u64 N);

// F(w) = a0 log_p(1 + p ubar g(w)) mod p^n, g(w) = 2vw + pw^2.
u64 F_eval(const PipelineState& st, i64 w);

// chi(beta + (pw+v)^2) == chi(u) e(F(w)/p^n) as exact phases at w.
bool F_identity_holds(const CharSums& cs, const PipelineState& st, i64 w);

// ---- symbolic derivatives and Taylor tails --------------------------------

// F^{(j)} as a rational function mod p^n, j >= 1 (F' = 2 a0 p T/(beta+T^2),
// higher derivatives by the quotient recursion N_{j+1} = N_j' d - j N_j d').
ModRat F_derivative(const PipelineState& st, u64 j);

// G_{h1}: the tail with F(w+p^{k1}h1) - F(w) = p^{k1}h1 (F'(w) + p^{k1} G(w)).
ModRat taylor_G1(const PipelineState& st, u64 k1, i64 h1);

// G_{h1,h2}: the tail of the second difference,
// = p^{k1+k2}h1h2 (F''(w) + p^k G(w)), k = min(k1,k2).
ModRat taylor_G2(const PipelineState& st, u64 k1, u64 k2, i64 h1, i64 h2);

bool taylor_identity1_holds(const PipelineState& st, u64 k1, i64 h1, i64 w);
bool taylor_identity2_holds(const PipelineState& st, u64 k1, u64 k2, i64 h1, i64 h2, i64 w);

// f_i of the Poisson step, reduced mod p^{s_i}.
ModRat f1_func(const PipelineState& st, u64 k1, u64 l1, i64 g1);
ModRat f2_func(const PipelineState& st, u64 k1, u64 k2, u64 l1, u64 l2, i64 g1, i64 g2);

// ---- Weyl differencing ----------------------------------------------------

struct WeylReport {
    double lhs_sq;  // |Sigma|^2
    double rhs;     // XH + H sum_h |...|
    double ratio;
};

// Empirical check of the Weyl shift inequality for H = p^kappa <= X. The
// phase function defaults to F of the state; pass a custom one to probe
// degenerate cases (e.g. F == 0).
WeylReport weyl_step(const PipelineState& st, const SmoothWeight& phi, u64 kappa,
                     const std::function<u64(i64)>& phase_mod_q = {});

// ---- Poisson --------------------------------------------------------------

struct PoissonReport {
    std::complex<double> lhs, rhs;
    double abs_err;
    double rel_err;  // abs_err / max(1, |lhs|)
};

// sum_{t == r mod q} Omega((t-C)/X) vs (X/q) sum_t what(tX/q) e(t(r-C)/q).
PoissonReport poisson_identity(const SmoothWeight& omega, double C, double X, u64 q, i64 r,
                               double tol = 1e-8);

// (TT1): the differenced sum vs its Poisson expansion with complete
// exponential sums mod p^{s1}. LHS phases come from exact differencing of F;
// RHS from the symbolic f1. Requires s1 >= 2.
PoissonReport poisson_T1(const PipelineState& st, const SmoothWeight& phi, u64 k1, u64 l1,
                         i64 g1);

// (TT2): same with two shifts, s2 = n - (k1+k2+l1+l2) >= 2.
PoissonReport poisson_T2(const PipelineState& st, const SmoothWeight& phi, u64 k1, u64 k2,
                         u64 l1, u64 l2, i64 g1, i64 g2);

}  // namespace pcs
