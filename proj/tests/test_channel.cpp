#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "rissk/channel.hpp"
#include "rissk/rng.hpp"

using namespace rissk;

TEST_CASE("los steering with zero angles is all ones") {
    RicianParams p;
    p.L_x = 4;
    p.L_y = 4;
    p.phi_x = 0.0;
    p.phi_y = 0.0;
    for (const auto& v : los_steering(p)) {
        CHECK(v.real() == Catch::Approx(1.0).margin(1e-15));
        CHECK(v.imag() == Catch::Approx(0.0).margin(1e-15));
    }
}

TEST_CASE("los steering single element") {
    RicianParams p;
    p.L_x = 1;
    p.L_y = 1;
    const auto v = los_steering(p);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == cplx{1.0, 0.0});
}

TEST_CASE("los steering 2x2 index map") {
    RicianParams p;
    p.L_x = 2;
    p.L_y = 2;
    p.phi_x = kPi / 2.0;
    p.phi_y = 0.0;
    const auto v = los_steering(p);
    // phases pi*l_x with l_x = mod(l-1, 2): {0, pi, 0, pi}
    REQUIRE(v.size() == 4);
    CHECK(std::arg(v[0]) == Catch::Approx(0.0).margin(1e-12));
    CHECK(std::fabs(std::arg(v[1])) == Catch::Approx(kPi).margin(1e-12));
    CHECK(std::arg(v[2]) == Catch::Approx(0.0).margin(1e-12));
    CHECK(std::fabs(std::arg(v[3])) == Catch::Approx(kPi).margin(1e-12));
    for (const auto& x : v) CHECK(std::abs(x) == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("rician sampling degenerates to the LoS vector for huge kappa") {
    RicianParams p;
    p.L_x = 8;
    p.L_y = 2;
    p.kappa = 1e12;
    RngStream rng(5, 0);
    const auto los = los_steering(p);
    const auto h = sample_rician_channel(p, rng);
    for (size_t i = 0; i < h.size(); ++i) CHECK(std::abs(h[i] - los[i]) < 1e-5);
}

TEST_CASE("rician kappa=0 reduces to Rayleigh amplitude statistics") {
    RicianParams p;
    p.L_x = 100;
    p.L_y = 1;
    p.kappa = 0.0;
    RngStream rng(17, 3);
    double acc = 0.0;
    const int reps = 10000;  // 1e6 amplitudes
    for (int r = 0; r < reps; ++r)
        for (const auto& h : sample_rician_channel(p, rng)) acc += std::abs(h);
    const double mean = acc / (100.0 * reps);
    const double se = std::sqrt((1.0 - kPi / 4.0) / (100.0 * reps));
    CHECK(std::fabs(mean - std::sqrt(kPi) / 2.0) < 3.0 * se);
}

TEST_CASE("rician empirical amplitude mean matches the analytic mean at 3 dB") {
    RicianParams p;
    p.L_x = 100;
    p.L_y = 1;
    p.kappa = db_to_linear(3.0);
    RngStream rng(18, 4);
    double acc = 0.0, acc2 = 0.0;
    const int reps = 10000;
    for (int r = 0; r < reps; ++r)
        for (const auto& h : sample_rician_channel(p, rng)) {
            const double a = std::abs(h);
            acc += a;
            acc2 += a * a;
        }
    const double n = 100.0 * reps;
    const double mean = acc / n;
    const double se = std::sqrt((acc2 / n - mean * mean) / n);
    CHECK(std::fabs(mean - rician_amplitude_mean(p.kappa)) < 3.0 * se);
}

TEST_CASE("rician per-element power stays normalized") {
    for (double kappa : {0.0, 2.0, 100.0}) {
        RicianParams p;
        p.L_x = 64;
        p.L_y = 2;
        p.kappa = kappa;
        RngStream rng(21, static_cast<uint64_t>(kappa * 10));
        double pow2 = 0.0;
        const int reps = 8000;  // ~1e6 elements
        for (int r = 0; r < reps; ++r)
            for (const auto& h : sample_rician_channel(p, rng)) pow2 += std::norm(h);
        const double mean = pow2 / (128.0 * reps);
        CHECK(mean > 0.99);
        CHECK(mean < 1.01);
    }
}

TEST_CASE("rayleigh matrix moments") {
    RngStream rng(33, 0);
    double p2 = 0.0, a1 = 0.0, n = 0.0;
    for (int r = 0; r < 2000; ++r) {
        const auto g = sample_rayleigh_matrix(125, 4, rng);
        for (const auto& col : g)
            for (const auto& v : col) {
                p2 += std::norm(v);
                a1 += std::abs(v);
                n += 1.0;
            }
    }
    CHECK(p2 / n == Catch::Approx(1.0).margin(0.01));
    CHECK(a1 / n == Catch::Approx(std::sqrt(kPi) / 2.0).margin(0.003));
    const double var = p2 / n - (a1 / n) * (a1 / n);
    CHECK(var == Catch::Approx((4.0 - kPi) / 4.0).margin(0.005));
}

TEST_CASE("rayleigh matrix draw is reproducible for a fixed seed") {
    RngStream a(777, 9), b(777, 9);
    const auto ga = sample_rayleigh_matrix(1, 1, a);
    const auto gb = sample_rayleigh_matrix(1, 1, b);
    CHECK(ga[0][0] == gb[0][0]);
}

TEST_CASE("rician amplitude mean reference values") {
    CHECK(rician_amplitude_mean(0.0) == Catch::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-14));
    CHECK(rician_amplitude_mean(1e4) == Catch::Approx(1.0).margin(1e-3));
    CHECK_THROWS_AS(rician_amplitude_mean(-0.5), std::domain_error);
    // variance identity Var = 1 - mean^2 across a grid
    for (double k : {0.0, 0.3, 1.0, 2.0, 10.0, 1e3, 1e8}) {
        const double m = rician_amplitude_mean(k);
        CHECK(rician_amplitude_variance(k) == Catch::Approx(1.0 - m * m).margin(1e-12));
        CHECK(m <= 1.0 + 1e-12);
    }
}

TEST_CASE("rician amplitude mean against a large scalar sampling oracle") {
    const double kappa = 2.0;
    RngStream rng(50, 2);
    const double al = std::sqrt(kappa / (kappa + 1.0)), an = std::sqrt(1.0 / (kappa + 1.0));
    const size_t n = 10'000'000;
    double acc = 0.0, acc2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double v = std::abs(al + an * rng.next_cnormal(1.0));
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / static_cast<double>(n);
    const double se = std::sqrt((acc2 / static_cast<double>(n) - mean * mean) / static_cast<double>(n));
    CHECK(std::fabs(mean - rician_amplitude_mean(kappa)) < 3.0 * se);
}

TEST_CASE("imperfect csi composition") {
    RngStream rng(60, 1);
    std::vector<cplx> hhat(8), dh(8);
    for (auto& v : hhat) v = rng.next_cnormal(1.0);
    for (auto& v : dh) v = rng.next_cnormal(0.1);

    SECTION("perfect estimation keeps the channel untouched") {
        auto [h, zeta] = compose_imperfect_csi(hhat, dh, CsiErrorModel::fixed(0.0), 1.0);
        CHECK(zeta == 1.0);
        for (size_t i = 0; i < h.size(); ++i) CHECK(h[i] == hhat[i]);
    }

    SECTION("correlation coefficients of the fixed error grid") {
        CHECK(CsiErrorModel::fixed(3.0).zeta_at(1.0) == Catch::Approx(0.5).margin(1e-4));
        CHECK(CsiErrorModel::fixed(2.0).zeta_at(1.0) == Catch::Approx(0.5774).margin(1e-4));
        CHECK(CsiErrorModel::fixed(1.0).zeta_at(1.0) == Catch::Approx(0.7071).margin(1e-4));
        CHECK(CsiErrorModel::fixed(0.1).zeta_at(1.0) == Catch::Approx(0.9535).margin(1e-4));
    }

    SECTION("variable mode recomputes per SNR") {
        const auto csi = CsiErrorModel::variable(10);
        CHECK(csi.sigma_e2_at(100.0) == Catch::Approx(1e-3).epsilon(1e-12));
        CHECK(csi.zeta_at(100.0) == Catch::Approx(1.0 / std::sqrt(1.001)).epsilon(1e-12));
        CHECK_THROWS_AS(csi.sigma_e2_at(0.0), std::domain_error);
        CHECK_THROWS_AS(csi.sigma_e2_at(-2.0), std::domain_error);
    }

    SECTION("composition is linear in both channel arguments") {
        const auto csi = CsiErrorModel::fixed(0.5);
        auto [h1, z1] = compose_imperfect_csi(hhat, dh, csi, 1.0);
        std::vector<cplx> hh2(hhat), dh2(dh);
        for (auto& v : hh2) v *= 2.0;
        for (auto& v : dh2) v *= 2.0;
        auto [h2, z2] = compose_imperfect_csi(hh2, dh2, csi, 1.0);
        for (size_t i = 0; i < h1.size(); ++i) CHECK(std::abs(h2[i] - 2.0 * h1[i]) < 1e-14);
    }

    SECTION("length mismatch is rejected") {
        std::vector<cplx> short_dh(3);
        CHECK_THROWS_AS(compose_imperfect_csi(hhat, short_dh, CsiErrorModel::fixed(0.1), 1.0), std::domain_error);
    }
}
