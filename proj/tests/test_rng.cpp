#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rissk/rng.hpp"

using namespace rissk;

TEST_CASE("identical (seed, stream) replays bit-identical sequences") {
    RngStream a(123456789, 7), b(123456789, 7);
    for (int i = 0; i < 10000; ++i) REQUIRE(a.next_u64() == b.next_u64());
    RngStream c(123456789, 7), d(123456789, 7);
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(c.next_normal() == d.next_normal());
        REQUIRE(c.next_double() == d.next_double());
    }
}

TEST_CASE("distinct stream ids diverge") {
    RngStream a(42, 0), b(42, 1), c(43, 0);
    int same_ab = 0, same_ac = 0;
    for (int i = 0; i < 64; ++i) {
        same_ab += a.next_u64() == b.next_u64();
        same_ac += a.next_u64() == c.next_u64();
    }
    CHECK(same_ab == 0);
    CHECK(same_ac == 0);
}

TEST_CASE("uniform range and mean") {
    RngStream r(2024, 5);
    double acc = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        acc += u;
    }
    CHECK(acc / n == Catch::Approx(0.5).margin(0.005));
}

TEST_CASE("normal moments") {
    RngStream r(99, 3);
    const int n = 1'000'000;
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = r.next_normal();
        s1 += z;
        s2 += z * z;
        s4 += z * z * z * z;
    }
    CHECK(s1 / n == Catch::Approx(0.0).margin(4.0 / std::sqrt(n)));
    CHECK(s2 / n == Catch::Approx(1.0).margin(6.0 / std::sqrt(n)));
    CHECK(s4 / n == Catch::Approx(3.0).margin(0.05));  // kurtosis check catches bad transforms
}

TEST_CASE("complex normal variance splits evenly") {
    RngStream r(7, 11);
    const int n = 400000;
    double re2 = 0.0, im2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto z = r.next_cnormal(2.0);
        re2 += z.real() * z.real();
        im2 += z.imag() * z.imag();
    }
    CHECK(re2 / n == Catch::Approx(1.0).margin(0.02));
    CHECK(im2 / n == Catch::Approx(1.0).margin(0.02));
}

TEST_CASE("next_below is in range and roughly uniform") {
    RngStream r(11, 0);
    std::vector<int> counts(4, 0);
    for (int i = 0; i < 100000; ++i) {
        const auto v = r.next_below(4);
        REQUIRE(v < 4);
        counts[v]++;
    }
    for (int c : counts) CHECK(c == Catch::Approx(25000).margin(600));
}
