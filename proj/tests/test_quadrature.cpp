#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rissk/math.hpp"
#include "rissk/quadrature.hpp"

using namespace rissk;

TEST_CASE("basic integrals") {
    CHECK(adaptive_quadrature([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12).value ==
          Catch::Approx(2.0).margin(1e-10));
    CHECK(adaptive_quadrature([](double x) { return std::sin(x) * std::sin(x); }, 0.0, kPi / 2, 1e-12).value ==
          Catch::Approx(kPi / 4.0).margin(1e-10));
    CHECK(adaptive_quadrature([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("caller-side sqrt substitution handles x^{-1/2} endpoints") {
    // int_0^1 x^{-1/2} dx = 2 via t = sqrt(x): int_0^1 2 dt
    const auto direct = adaptive_quadrature([](double t) { return 2.0 * t / t; }, 0.0, 1.0, 1e-12);
    CHECK(direct.value == Catch::Approx(2.0).margin(1e-10));
}

TEST_CASE("gaussian tail integral") {
    const auto r = adaptive_quadrature([](double x) { return std::exp(-x * x / 2.0); }, -40.0, 40.0, 1e-12);
    CHECK(r.value == Catch::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-10));
    CHECK(r.converged);
}

TEST_CASE("non-convergence is reported, not swallowed") {
    // interior |x|^{-1/2} singularity; impossible at this tolerance
    auto f = [](double x) { return 1.0 / std::sqrt(std::fabs(x) + 1e-300); };
    const auto r = adaptive_quadrature(f, -1.0, 1.0, 1e-15);
    CHECK_FALSE(r.converged);
    CHECK(r.error_estimate > 0.0);
    CHECK(std::isfinite(r.value));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(adaptive_quadrature([](double x) { return x; }, 0.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(adaptive_quadrature([](double x) { return x; }, 0.0, std::nan(""), 1e-8), std::domain_error);
}
