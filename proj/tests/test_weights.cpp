#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pcs/weights.hpp"

using namespace pcs;

TEST_CASE("bump basics") {
    CHECK(bump_eval(0.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(bump_eval(1.0) == 0.0);
    CHECK(bump_eval(-1.0) == 0.0);
    CHECK(bump_eval(2.5) == 0.0);
    CHECK(bump_eval(0.5) == doctest::Approx(std::exp(1.0 / (0.25 - 1.0))));
}

TEST_CASE("shifted products shrink the support") {
    SmoothWeight w = SmoothWeight::bump();
    CHECK(w.support_lo() == -1.0);
    CHECK(w.support_hi() == 1.0);
    SmoothWeight wh = w.shifted_product(0.5);
    CHECK(wh.support_lo() == doctest::Approx(-1.0));
    CHECK(wh.support_hi() == doctest::Approx(0.5));
    // value is the product of the shifted factors
    CHECK(wh(0.2) == doctest::Approx(bump_eval(0.2) * bump_eval(0.7)));
    SmoothWeight none = w.shifted_product(2.5);
    CHECK(none.empty_support());
    CHECK(none(0.0) == 0.0);
}

TEST_CASE("fourier transform at zero is the mass") {
    SmoothWeight w = SmoothWeight::bump();
    // Riemann sum reference
    double mass = 0.0;
    int K = 200000;
    for (int i = 0; i < K; ++i) mass += w(-1.0 + 2.0 * (i + 0.5) / K) * (2.0 / K);
    FourierEval f0 = fourier_transform(w, 0.0);
    CHECK(std::abs(f0.value.real() - mass) < 1e-7);
    CHECK(std::abs(f0.value.imag()) < 1e-12);
}

TEST_CASE("transform symmetry and boundedness") {
    SmoothWeight w = SmoothWeight::bump();
    double peak = std::abs(fourier_transform(w, 0.0).value);
    for (double y : {0.3, 1.0, 2.7, 5.0, 11.0}) {
        auto plus = fourier_transform(w, y).value;
        auto minus = fourier_transform(w, -y).value;
        CHECK(std::abs(plus - std::conj(minus)) < 1e-10);
        // even real weight: the transform is real
        CHECK(std::abs(plus.imag()) < 1e-10);
        CHECK(std::abs(plus) <= peak + 1e-12);
    }
    // asymmetric weight: complex transform, still conjugate-symmetric
    SmoothWeight wh = w.shifted_product(0.8);
    auto a = fourier_transform(wh, 1.7).value;
    auto b = fourier_transform(wh, -1.7).value;
    CHECK(std::abs(a - std::conj(b)) < 1e-10);
}

TEST_CASE("decay certificate and tail cutoff") {
    SmoothWeight w = SmoothWeight::bump();
    double c3 = decay_constant(w, 3);
    CHECK(c3 > 0.0);
    // certificate really dominates on a probe grid
    for (double y : {1.5, 4.0, 40.0, 300.0}) {
        double a = std::abs(fourier_transform(w, y).value);
        CHECK(a <= c3 / std::pow(1.0 + y, 3.0) * (1.0 + 1e-9));
    }
    double c5 = decay_constant(w, 5);
    u64 t1 = tail_cutoff(c5, 0.1, 1e-9, 5);
    u64 t2 = tail_cutoff(c5, 0.1, 1e-12, 5);
    CHECK(t2 >= t1);
    // the certified tail bound really is below tol
    double scale = 0.1;
    double tail = 2.0 * c5 / (4.0 * scale * std::pow(1.0 + t1 * scale, 4.0));
    CHECK(tail <= 1e-9 * 1.001);
    CHECK_THROWS_AS(tail_cutoff(c5, 0.0, 1e-9, 5), DomainError);
}

TEST_CASE("decay regression values stay in a sane band") {
    SmoothWeight w = SmoothWeight::bump();
    double c3 = decay_constant(w, 3);
    CHECK(c3 > 0.01);
    CHECK(c3 < 100.0);
}
