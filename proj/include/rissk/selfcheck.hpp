#pragma once

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "rissk/analysis.hpp"
#include "rissk/channel.hpp"
#include "rissk/math.hpp"
#include "rissk/montecarlo.hpp"
#include "rissk/quadrature.hpp"

namespace rissk {

struct CheckResult {
    std::string name;
    double achieved = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double runtime_ms = 0.0;
};

namespace detail {

// Series oracle for I_a, independent of the production switch logic.
inline double bessel_series_oracle(int order, double x) {
    return bessel_i_series(order, x);
}

inline double craig_q_oracle(double x) {
    auto f = [&](double th) {
        const double s = std::sin(th);
        return std::exp(-x * x / (2.0 * s * s));
    };
    return adaptive_quadrature(f, 1e-12, kPi / 2.0, 1e-13).value / kPi;
}

}  // namespace detail

// Oracle suite behind the CLI selfcheck command. Returns one row per
// check; any failed row should make the caller exit nonzero.
// RISSK_SELFCHECK_CORRUPT_QFACTOR=1 deliberately corrupts the quantization
// factor before the comparison (negative control for the harness).
inline std::vector<CheckResult> selfcheck(uint64_t seed = 424242) {
    std::vector<CheckResult> out;
    auto run = [&](const std::string& name, double tol, const std::function<double()>& measure) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        r.name = name;
        r.tolerance = tol;
        try {
            r.achieved = measure();
            r.pass = r.achieved <= tol;
        } catch (const std::exception& e) {
            r.achieved = std::numeric_limits<double>::infinity();
            r.pass = false;
        }
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(r);
    };

    run("bessel_i0_vs_series", 1e-10, [] {
        double worst = 0.0;
        for (double x = 0.0; x <= 50.0; x += 0.5) {
            const double ref = detail::bessel_series_oracle(0, x);
            worst = std::max(worst, std::fabs(bessel_i(0, x) - ref) / ref);
        }
        return worst;
    });
    run("bessel_i1_vs_series", 1e-10, [] {
        double worst = 0.0;
        for (double x = 0.25; x <= 50.0; x += 0.5) {
            const double ref = detail::bessel_series_oracle(1, x);
            worst = std::max(worst, std::fabs(bessel_i(1, x) - ref) / ref);
        }
        return worst;
    });
    run("q_function_vs_craig", 1e-12, [] {
        double worst = 0.0;
        for (double x : {0.3, 1.0, 2.5, 4.0}) worst = std::max(worst, std::fabs(q_function(x) - detail::craig_q_oracle(x)));
        return worst;
    });
    run("phi_oddness", 1e-15, [] {
        double worst = 0.0;
        for (double x = -4.0; x <= 4.0; x += 0.37) worst = std::max(worst, std::fabs(gauss_error_phi(x) + gauss_error_phi(-x)));
        return worst;
    });
    run("quadrature_sin", 1e-10, [] {
        return std::fabs(adaptive_quadrature([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12).value - 2.0);
    });
    run("quadrature_wallis_sin2", 1e-10, [] {
        return std::fabs(adaptive_quadrature([](double x) { return std::sin(x) * std::sin(x); }, 0.0, kPi / 2, 1e-12).value -
                         kPi / 4.0);
    });
    run("lemma1_pdf_normalization", 1e-8, [] {
        const auto m = composite_moments(100, db_to_linear(3.0));
        auto f = [&](double t) { return 2.0 * t * noncentral_chi2_pdf(t * t, m); };
        const double hi = m.mu + 14.0 * std::sqrt(m.sigma2);
        return std::fabs(adaptive_quadrature(f, 0.0, hi, 1e-12).value - 1.0);
    });
    run("mgf_duality", 1e-8, [] {
        const auto m = composite_moments(100, db_to_linear(3.0));
        double worst = 0.0;
        for (double s : {-0.1, -1.0, -10.0}) {
            const double closed = std::sqrt(1.0 / (1.0 - 2.0 * s * m.sigma2)) *
                                  std::exp(s * m.mu * m.mu / (1.0 - 2.0 * s * m.sigma2));
            auto f = [&](double t) { return 2.0 * t * std::exp(s * t * t) * noncentral_chi2_pdf(t * t, m); };
            const double hi = m.mu + 14.0 * std::sqrt(m.sigma2);
            const double num = adaptive_quadrature(f, 0.0, hi, 1e-13).value;
            worst = std::max(worst, std::fabs(num - closed) / closed);
        }
        return worst;
    });
    run("upep_exact_vs_2d_oracle", 1e-8, [] {
        double worst = 0.0;
        for (int L : {64, 200, 256}) {
            const auto m = composite_moments(L, db_to_linear(3.0));
            for (double snr : {-36.0, -30.0, -24.0}) {
                const auto e = EffectiveSnr::from(db_to_linear(snr), CsiErrorModel::fixed(0.1), L);
                const double ex = upep_intelligent_exact(e, m).value;
                auto f = [&](double t) {
                    return 2.0 * t * noncentral_chi2_pdf(t * t, m) * q_function(std::sqrt(2.0 * e.tau) * t);
                };
                const double hi = m.mu + 14.0 * std::sqrt(m.sigma2);
                const double o2 = adaptive_quadrature(f, 0.0, hi, 1e-13).value;
                if (ex > 1e-300) worst = std::max(worst, std::fabs(o2 - ex) / ex);
            }
        }
        return worst;
    });
    run("gcq20_vs_exact", 5e-3, [] {
        double worst = 0.0;
        const auto m = composite_moments(200, db_to_linear(3.0));
        for (double snr : {-32.0, -30.0, -28.0}) {
            const auto e = EffectiveSnr::from(db_to_linear(snr), CsiErrorModel::fixed(0.1), 200);
            const double ex = upep_intelligent_exact(e, m).value;
            worst = std::max(worst, std::fabs(upep_intelligent_gcq(e, m, 20).value - ex) / ex);
        }
        return worst;
    });
    run("closed_vs_exact_envelope", 0.30, [] {
        double worst = 0.0;
        const auto m = composite_moments(256, db_to_linear(3.0));
        for (double snr = -44.0; snr <= -26.0; snr += 2.0) {
            const auto e = EffectiveSnr::from(db_to_linear(snr), CsiErrorModel::fixed(0.1), 256);
            const double ex = upep_intelligent_exact(e, m).value;
            worst = std::max(worst, std::fabs(upep_intelligent_closed(e, m).value - ex) / ex);
        }
        return worst;
    });
    run("blind_closed_vs_quadrature", 1e-9, [] {
        double worst = 0.0;
        for (int L : {16, 100, 144}) {
            for (double snr : {0.0, 10.0, 20.0}) {
                const auto e = EffectiveSnr::from(db_to_linear(snr), CsiErrorModel::fixed(0.1), L);
                const double cl = upep_blind_closed(e, L).value;
                auto f = [&](double x) {
                    return std::exp(-x / (2.0 * L)) / (2.0 * L) * q_function(std::sqrt(2.0 * e.tau * x));
                };
                const double num = adaptive_quadrature(f, 0.0, 2.0 * L * 60.0, 1e-13).value;
                worst = std::max(worst, std::fabs(num - cl) / cl);
            }
        }
        return worst;
    });
    run("rician_mean_vs_sampling", 3.0, [&] {
        RngStream rng(seed, 17);
        const double kappa = 2.0;
        const double a_los = std::sqrt(kappa / (kappa + 1.0)), a_nlos = std::sqrt(1.0 / (kappa + 1.0));
        const size_t n = 2'000'000;
        double acc = 0.0, acc2 = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double v = std::abs(a_los + a_nlos * rng.next_cnormal(1.0));
            acc += v;
            acc2 += v * v;
        }
        const double mean = acc / n;
        const double se = std::sqrt((acc2 / n - mean * mean) / n);
        return std::fabs(mean - rician_amplitude_mean(kappa)) / se;  // in standard errors
    });
    run("composite_moments_vs_sampling", 0.01, [&] {
        RngStream rng(seed, 23);
        const auto z = sample_composite(100, db_to_linear(3.0), 200'000, rng);
        double mr = 0.0;
        for (const auto& v : z) mr += v.real();
        mr /= static_cast<double>(z.size());
        double var = 0.0;
        for (const auto& v : z) var += std::norm(v - cplx{mr, 0.0});
        var /= static_cast<double>(z.size());
        const auto m = composite_moments(100, db_to_linear(3.0));
        return std::max(std::fabs(mr - m.mu) / m.mu, std::fabs(var - m.sigma2) / m.sigma2);
    });
    run("quantization_factor", 1e-12, [] {
        double qf3 = quantization_factor(3);
        if (std::getenv("RISSK_SELFCHECK_CORRUPT_QFACTOR")) qf3 *= 1.01;  // negative-control hook
        double worst = std::fabs(qf3 - std::sin(kPi / 8.0) / (kPi / 8.0));
        worst = std::max(worst, std::fabs(quantization_factor(1) - 2.0 / kPi));
        worst = std::max(worst, std::fabs(quantization_factor(30) - 1.0));
        return worst;
    });
    return out;
}

inline int print_selfcheck_report(const std::vector<CheckResult>& rows) {
    int failures = 0;
    std::printf("%-34s %12s %12s %8s %10s\n", "check", "achieved", "tolerance", "status", "ms");
    for (const auto& r : rows) {
        if (!r.pass) ++failures;
        std::printf("%-34s %12.3e %12.3e %8s %10.1f\n", r.name.c_str(), r.achieved, r.tolerance,
                    r.pass ? "pass" : "FAIL", r.runtime_ms);
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(rows.size()) - failures, rows.size());
    return failures == 0 ? 0 : 1;
}

}  // namespace rissk
