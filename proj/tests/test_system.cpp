#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "rissk/channel.hpp"
#include "rissk/rng.hpp"
#include "rissk/system.hpp"

using namespace rissk;

namespace {

ChannelRealization make_realization(int L, int N_t, double kappa, double sigma_e2, uint64_t seed) {
    RicianParams p;
    p.L_x = L;
    p.L_y = 1;
    p.kappa = kappa;
    RngStream rng(seed, 0);
    return draw_channel(p, CsiErrorModel::fixed(sigma_e2), N_t, 1.0, rng);
}

}  // namespace

TEST_CASE("intelligent phases align every element") {
    const auto ch = make_realization(64, 2, 2.0, 0.0, 1);
    const auto phi = ris_phases(PhasePolicy::intelligent(), ch.G[0], ch.H_hat);
    for (size_t l = 0; l < phi.size(); ++l) {
        const cplx w{std::cos(phi[l]), std::sin(phi[l])};
        const cplx v = ch.H_hat[l] * w * ch.G[0][l];
        CHECK(std::fabs(v.imag()) <= 1e-12 * (1.0 + std::abs(v)));
        CHECK(v.real() >= 0.0);
    }
}

TEST_CASE("blind phases are all zero") {
    const auto ch = make_realization(16, 2, 0.0, 0.1, 2);
    for (double p : ris_phases(PhasePolicy::blind(), ch.G[1], ch.H_hat)) CHECK(p == 0.0);
}

TEST_CASE("quantized phases approach the continuous ones as Q grows") {
    const auto ch = make_realization(32, 2, 1.0, 0.0, 3);
    const auto cont = ris_phases(PhasePolicy::intelligent(), ch.G[0], ch.H_hat);
    const auto q30 = ris_phases(PhasePolicy::quantized(30), ch.G[0], ch.H_hat);
    const double step = 2.0 * kPi / std::pow(2.0, 30);
    for (size_t l = 0; l < cont.size(); ++l) {
        double d = std::remainder(q30[l] - cont[l], 2.0 * kPi);
        CHECK(std::fabs(d) <= step);
    }
}

TEST_CASE("quantization error stays inside the half-step band") {
    const auto ch = make_realization(200, 2, 2.0, 0.0, 4);
    for (int Q : {1, 2, 3, 8}) {
        const auto cont = ris_phases(PhasePolicy::intelligent(), ch.G[0], ch.H_hat);
        const auto qq = ris_phases(PhasePolicy::quantized(Q), ch.G[0], ch.H_hat);
        const double bound = kPi / std::pow(2.0, Q) + 1e-12;
        for (size_t l = 0; l < cont.size(); ++l) CHECK(std::fabs(std::remainder(qq[l] - cont[l], 2.0 * kPi)) <= bound);
        // and the grid itself: phi in [0:2^Q-1] 2pi/2^Q - pi + pi/2^Q
        const double step = 2.0 * kPi / std::pow(2.0, Q);
        for (double p : qq) {
            const double idx = (p + kPi - step / 2.0) / step;
            CHECK(std::fabs(idx - std::round(idx)) < 1e-9);
        }
    }
}

TEST_CASE("quantized aligned gain converges to sinc(pi/2^Q)") {
    RngStream rng(5, 0);
    RicianParams p;
    p.L_x = 128;
    p.L_y = 1;
    p.kappa = db_to_linear(3.0);
    const double a_los = std::sqrt(p.kappa / (p.kappa + 1.0)), a_nlos = std::sqrt(1.0 / (p.kappa + 1.0));
    for (int Q : {1, 2, 3}) {
        double num = 0.0, den = 0.0;
        for (int r = 0; r < 3000; ++r) {
            for (int l = 0; l < 128; ++l) {
                const cplx g = rng.next_cnormal(1.0);
                const cplx h = a_los + a_nlos * rng.next_cnormal(1.0);
                const double phi = -std::arg(g * h);
                const double d = quantize_phase(phi, Q) - phi;
                num += std::abs(g * h) * std::cos(d);
                den += std::abs(g * h);
            }
        }
        const double target = sinc(kPi / std::pow(2.0, Q));
        CHECK(std::fabs(num / den - target) / target < 0.02);
    }
}

TEST_CASE("detector complexity counts") {
    auto r = complexity(PhasePolicy::Kind::Intelligent, 128, 2);
    CHECK(r.real_multiplications == 264);
    CHECK(r.real_additions == 258);
    r = complexity(PhasePolicy::Kind::Blind, 128, 2);
    CHECK(r.real_multiplications == 1036);
    CHECK(r.real_additions == 1026);
    r = complexity(PhasePolicy::Kind::Intelligent, 1, 1);
    CHECK(r.real_multiplications == 5);
    CHECK(r.real_additions == 2);
    CHECK_THROWS_AS(complexity(PhasePolicy::Kind::Blind, 0, 1), std::domain_error);
}

TEST_CASE("noiseless aligned receive signal is the positive amplitude sum") {
    auto ch = make_realization(32, 2, 1.5, 0.0, 6);
    const auto phi = ris_phases(PhasePolicy::intelligent(), ch.G[0], ch.H_hat);
    RngStream rng(7, 1);
    const cplx y = synthesize_rx(ch, 1, phi, 4.0, 0.0, rng);
    double expect = 0.0;
    for (size_t l = 0; l < ch.H_hat.size(); ++l) expect += std::abs(ch.G[0][l]) * std::abs(ch.H_hat[l]);
    expect *= 2.0;  // sqrt(P_s) = 2, zeta = 1
    CHECK(y.real() == Catch::Approx(expect).epsilon(1e-12));
    CHECK(std::fabs(y.imag()) < 1e-10 * expect);
}

TEST_CASE("noiseless blind receive equals the plain composite") {
    auto ch = make_realization(16, 2, 0.0, 0.0, 8);
    const std::vector<double> zeros(16, 0.0);
    RngStream rng(9, 1);
    const cplx y = synthesize_rx(ch, 2, zeros, 1.0, 0.0, rng);
    cplx expect{0.0, 0.0};
    for (size_t l = 0; l < ch.H_hat.size(); ++l) expect += ch.G[1][l] * ch.H_hat[l];
    CHECK(std::abs(y - expect) < 1e-12 * (1.0 + std::abs(expect)));
}

TEST_CASE("error-term variance matches sigma_e^2 L") {
    // Var(sqrt(1-z^2) sum dh e^{j phi} g) over draws -> (1-z^2) se2 L
    const int L = 64;
    const double se2 = 0.3;
    RicianParams p;
    p.L_x = L;
    p.L_y = 1;
    p.kappa = 1.0;
    const auto csi = CsiErrorModel::fixed(se2);
    RngStream rng(100, 0);
    const double zeta = csi.zeta_at(1.0);
    double acc = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        auto ch = draw_channel(p, csi, 1, 1.0, rng);
        const auto phi = ris_phases(PhasePolicy::intelligent(), ch.G[0], ch.H_hat);
        cplx u{0.0, 0.0};
        for (int l = 0; l < L; ++l) {
            const cplx w{std::cos(phi[static_cast<size_t>(l)]), std::sin(phi[static_cast<size_t>(l)])};
            u += ch.Delta_H[static_cast<size_t>(l)] * w * ch.G[0][static_cast<size_t>(l)];
        }
        acc += std::norm(std::sqrt(1.0 - zeta * zeta) * u);
    }
    const double expect = (1.0 - zeta * zeta) * se2 * L;
    CHECK(acc / n == Catch::Approx(expect).epsilon(0.02));
}

TEST_CASE("detectors are perfect without noise or estimation error") {
    RngStream trial_rng(11, 2);
    RicianParams p;
    p.L_x = 16;
    p.L_y = 1;
    p.kappa = 2.0;
    const auto csi = CsiErrorModel::fixed(0.0);
    for (int t = 0; t < 10000; ++t) {
        auto ch = draw_channel(p, csi, 2, 1.0, trial_rng);
        const int nt = 1 + static_cast<int>(trial_rng.next_below(2));
        const auto phi = ris_phases(PhasePolicy::intelligent(), ch.G[static_cast<size_t>(nt - 1)], ch.H_hat);
        RngStream noise(12, static_cast<uint64_t>(t));
        const cplx y = synthesize_rx(ch, nt, phi, 1.0, 0.0, noise);
        REQUIRE(detect_intelligent(y, ch, phi, 1.0).n_t == nt);

        const std::vector<double> zeros(16, 0.0);
        const cplx yb = synthesize_rx(ch, nt, zeros, 1.0, 0.0, noise);
        REQUIRE(detect_blind(yb, ch, 1.0).n_t == nt);
    }
}

TEST_CASE("single-antenna alphabet always detects index 1") {
    auto ch = make_realization(8, 1, 0.0, 0.1, 13);
    const std::vector<double> zeros(8, 0.0);
    RngStream rng(14, 0);
    const cplx y = synthesize_rx(ch, 1, zeros, 1.0, 1.0, rng);
    CHECK(detect_blind(y, ch, 1.0).n_t == 1);
    CHECK(detect_intelligent(y, ch, zeros, 1.0).n_t == 1);
}

TEST_CASE("decisions are invariant to a global positive metric scaling") {
    auto ch = make_realization(16, 4, 1.0, 0.1, 15);
    const auto phi = ris_phases(PhasePolicy::intelligent(), ch.G[0], ch.H_hat);
    RngStream rng(16, 0);
    const cplx y = synthesize_rx(ch, 1, phi, 1.0, 0.5, rng);
    const int base = detect_intelligent(y, ch, phi, 1.0).n_t;
    // scaling every channel amplitude and y by c scales all metrics by c^2
    const double c = 7.25;
    ChannelRealization scaled = ch;
    for (auto& col : scaled.G)
        for (auto& v : col) v *= c;
    CHECK(detect_intelligent(c * y, scaled, phi, 1.0).n_t == base);
}

TEST_CASE("blind relabeling symmetry") {
    auto ch = make_realization(12, 2, 0.0, 0.0, 17);
    RngStream rng(18, 0);
    const std::vector<double> zeros(12, 0.0);
    const cplx y = synthesize_rx(ch, 1, zeros, 1.0, 0.1, rng);
    const int d1 = detect_blind(y, ch, 1.0).n_t;
    std::swap(ch.G[0], ch.G[1]);
    const int d2 = detect_blind(y, ch, 1.0).n_t;
    CHECK(d1 + d2 == 3);  // swapping candidates swaps the decision
}

TEST_CASE("exact metric ties break toward the smaller index") {
    ChannelRealization ch;
    ch.zeta = 1.0;
    ch.G = {{cplx{1.0, 0.0}}, {cplx{3.0, 0.0}}};
    ch.H_hat = {cplx{1.0, 0.0}};
    ch.Delta_H = {cplx{0.0, 0.0}};
    ch.H = ch.H_hat;
    const std::vector<double> zeros(1, 0.0);
    // candidates are 1 and 3; y = 2 is equidistant
    CHECK(detect_blind(cplx{2.0, 0.0}, ch, 1.0).n_t == 1);
    CHECK(detect_intelligent(cplx{2.0, 0.0}, ch, zeros, 1.0).n_t == 1);
}

TEST_CASE("ssk symbol labels") {
    CHECK(SskSymbol::bits_per_symbol(2) == 1);
    CHECK(SskSymbol::bits_per_symbol(8) == 3);
    CHECK(SskSymbol::power_of_two(4));
    CHECK_FALSE(SskSymbol::power_of_two(3));
    CHECK(SskSymbol::hamming(1, 2) == 1);
    CHECK(SskSymbol::hamming(1, 4) == 2);  // 00 vs 11
    CHECK(SskSymbol::hamming(3, 3) == 0);
}
