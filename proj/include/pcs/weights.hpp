#pragma once

#include <complex>
#include <vector>

#include "pcs/modarith.hpp"

// Concrete Schwartz-class weights with compact support: the standard bump
// exp(1/(x^2-1)) on (-1,1) and its shifted products, plus a certified
// Fourier transform by adaptive quadrature.

namespace pcs {

struct ToleranceNotMet : std::runtime_error {
    explicit ToleranceNotMet(const std::string& what) : std::runtime_error(what) {}
};

// exp(1/(x^2-1)) for |x| < 1, 0 otherwise.
double bump_eval(double x);

// A product of shifted copies of the standard bump: w(x) = prod_i bump(x + off_i).
// Covers Phi, Phi_h = Phi(.)Phi(. + off) and Phi_{h1,h2} = (Phi_h1)_h2.
class SmoothWeight {
  public:
    static SmoothWeight bump() { return SmoothWeight({0.0}); }

    // Phi_h with offset off = p^kappa h / X: returns y -> (*this)(y) * (*this0)(y+off)
    // applied to every factor; the single-bump case is the shifted weight Phi_h.
    SmoothWeight shifted_product(double off) const;

    double operator()(double x) const;

    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    bool empty_support() const { return lo_ >= hi_; }

    const std::vector<double>& offsets() const { return offsets_; }

  private:
    explicit SmoothWeight(std::vector<double> offsets);

    std::vector<double> offsets_;
    double lo_, hi_;
};

struct FourierEval {
    std::complex<double> value;
    double abs_error;
};

// \hat{Omega}(y) = int Omega(x) e(-xy) dx over the compact support, adaptive
// bisection with Gauss-Legendre panels; abs_error is the certified estimate.
FourierEval fourier_transform(const SmoothWeight& w, double y, double tol = 1e-12);

// sup over a log-spaced grid y in [1, 300] of |what(y)| (1+y)^power; the
// decay certificate used to truncate Poisson tails. Any fixed power works
// for the bump (its transform decays faster than any polynomial); higher
// powers buy shorter tails.
double decay_constant(const SmoothWeight& w, unsigned power = 3);

// Smallest T with sum_{|t|>T} |what(t*scale)| < tol, using the decay
// certificate C: |what(y)| <= C/(1+|y|)^power.
u64 tail_cutoff(double decay_c, double scale, double tol, unsigned power = 3);

}  // namespace pcs
