#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rissk/channel.hpp"
#include "rissk/math.hpp"
#include "rissk/quadrature.hpp"
#include "rissk/system.hpp"

namespace rissk {

// CLT moments of the intelligent-scheme composite eta - eta_hat:
// mu = sqrt(pi) L E(beta)/2, sigma^2 = L (8 - pi E(beta)^2)/4.
struct CompositeMoments {
    double mu = 0.0;
    double sigma2 = 1.0;
};

inline CompositeMoments composite_moments(int L, double kappa) {
    if (L < 1) throw std::domain_error("composite_moments: L must be >= 1");
    const double b = rician_amplitude_mean(kappa);
    return {std::sqrt(kPi) * L * b / 2.0, L * (8.0 - kPi * b * b) / 4.0};
}

// Moments for the Q-bit quantized reflection: the aligned mean shrinks by
// sinc(pi/2^Q) and the variance picks up the matching deficit
// L E(beta)^2 (pi/4)(1 - sinc^2), which is the continuous formula with an
// effective amplitude mean E(beta) sinc(pi/2^Q).
inline double quantization_factor(int Q) {
    if (Q < 1) throw std::domain_error("quantization_factor: Q must be >= 1");
    return sinc(kPi / static_cast<double>(1 << std::min(Q, 62)));
}

inline CompositeMoments composite_moments_quantized(int L, double kappa, int Q) {
    const double be = rician_amplitude_mean(kappa) * quantization_factor(Q);
    return {std::sqrt(kPi) * L * be / 2.0, L * (8.0 - kPi * be * be) / 4.0};
}

// SNR bookkeeping shared by every UPEP expression: the estimation-error
// noise inflation A = 1 + rho (1-zeta^2) sigma_e^2 L and
// tau = rho zeta^2 / (2A).
struct EffectiveSnr {
    double rho = 1.0;
    double zeta2 = 1.0;
    double sigma_e2 = 0.0;
    int L = 1;
    double noise_inflation = 1.0;
    double tau = 0.5;

    static EffectiveSnr from(double rho, const CsiErrorModel& csi, int L) {
        if (!(rho > 0.0)) throw std::domain_error("EffectiveSnr: rho must be > 0");
        EffectiveSnr e;
        e.rho = rho;
        e.L = L;
        e.sigma_e2 = csi.sigma_e2_at(rho);
        const double zeta = csi.zeta_at(rho);
        e.zeta2 = zeta * zeta;
        e.noise_inflation = 1.0 + rho * (1.0 - e.zeta2) * e.sigma_e2 * L;
        e.tau = rho * e.zeta2 / (2.0 * e.noise_inflation);
        return e;
    }
};

enum class AbepMethod {
    MonteCarlo,
    ExactIntegral,
    Gcq,
    ClosedFormQApprox,
    Chernoff,
    Asymptotic,
    BlindClosedForm,
    BlindAsymptotic,
};

inline std::string method_name(AbepMethod m, int gcq_k = 0) {
    switch (m) {
        case AbepMethod::MonteCarlo: return "mc";
        case AbepMethod::ExactIntegral: return "exact";
        case AbepMethod::Gcq: return "gcq_k" + std::to_string(gcq_k);
        case AbepMethod::ClosedFormQApprox: return "closed";
        case AbepMethod::Chernoff: return "chernoff";
        case AbepMethod::Asymptotic: return "asymptotic";
        case AbepMethod::BlindClosedForm: return "blind_closed";
        case AbepMethod::BlindAsymptotic: return "blind_asymptotic";
    }
    return "unknown";
}

struct AbepEstimate {
    double value = 0.0;
    AbepMethod method = AbepMethod::ExactIntegral;
    double ci_halfwidth = 0.0;  // Monte Carlo only
    int gcq_k = 0;
};

// Lemma-1 PDF of x = |eta - eta_hat|^2 under the one-degree noncentral
// chi-square model, evaluated in log space:
// log f = -(sqrt(x)-mu)^2/(2s^2) + log1p(e^{-2 mu sqrt(x)/s^2}) - log(2 sqrt(2 pi s^2 x)).
inline double noncentral_chi2_pdf(double x, const CompositeMoments& m) {
    if (!(x >= 0.0)) throw std::domain_error("noncentral_chi2_pdf: x must be >= 0");
    if (x == 0.0) return std::numeric_limits<double>::infinity();  // integrable singularity
    const double s2 = m.sigma2;
    const double r = std::sqrt(x);
    const double a = m.mu * r / s2;
    const double logf = -(r - m.mu) * (r - m.mu) / (2.0 * s2) + std::log1p(std::exp(-2.0 * a)) -
                        std::log(2.0 * std::sqrt(2.0 * kPi * s2 * x));
    return std::exp(logf);
}

namespace detail {

// Post-cancellation single-integral UPEP integrand over theta in [0, pi/2].
// The exponent collapses to -mu^2 rho zeta^2 / (2 (2 A sin^2 + rho zeta^2 s2)),
// which is bounded and always <= 0.
inline double upep_integrand(double theta, const EffectiveSnr& e, const CompositeMoments& m) {
    const double s = std::sin(theta);
    const double ss = s * s;
    const double A = e.noise_inflation;
    const double rz = e.rho * e.zeta2;
    const double den = 2.0 * A * ss + rz * m.sigma2;
    const double coef = std::sqrt(A * m.sigma2 * ss / den);
    const double expo = -m.mu * m.mu * rz / (2.0 * den);
    return coef * std::exp(expo);
}

}  // namespace detail

// Exact intelligent-scheme UPEP: adaptive quadrature of the
// post-cancellation single integral. Throws if the quadrature cannot
// reach the requested tolerance within the depth cap.
inline AbepEstimate upep_intelligent_exact(const EffectiveSnr& e, const CompositeMoments& m, double tol = 1e-10) {
    auto f = [&](double th) { return detail::upep_integrand(th, e, m); };
    const QuadratureResult q = adaptive_quadrature(f, 0.0, kPi / 2.0, tol);
    if (!q.converged)
        throw std::runtime_error("upep_intelligent_exact: quadrature reached depth cap, achieved error " +
                                 std::to_string(q.error_estimate));
    return {std::sqrt(2.0) / (kPi * std::sqrt(m.sigma2)) * q.value, AbepMethod::ExactIntegral, 0.0, 0};
}

// K-node Gauss-Chebyshev estimate of the same integral with
// theta = (pi/4) v + pi/4 and the remainder term dropped.
inline AbepEstimate upep_intelligent_gcq(const EffectiveSnr& e, const CompositeMoments& m, int K) {
    if (K < 1) throw std::domain_error("upep_intelligent_gcq: K must be >= 1");
    const auto nodes = chebyshev_nodes(K);
    double acc = 0.0;
    for (double v : nodes) {
        const double theta = kPi / 4.0 * v + kPi / 4.0;
        acc += std::sqrt(1.0 - v * v) * detail::upep_integrand(theta, e, m);
    }
    const double val = std::sqrt(2.0) * kPi / (4.0 * std::sqrt(m.sigma2) * K) * acc;
    return {val, AbepMethod::Gcq, 0.0, K};
}

// Closed form from the two-term exponential Q-approximation matched to the
// MGF M_X(s) = sqrt(1/(1-2s s2)) exp(s mu^2/(1-2s s2)).
inline AbepEstimate upep_intelligent_closed(const EffectiveSnr& e, const CompositeMoments& m) {
    const double A = e.noise_inflation;
    const double rz = e.rho * e.zeta2;
    const double t1 = (1.0 / 12.0) * std::sqrt(2.0 * A / (2.0 * A + rz * m.sigma2)) *
                      std::exp(-rz * m.mu * m.mu / (4.0 * A + 2.0 * rz * m.sigma2));
    const double t2 = (1.0 / 4.0) * std::sqrt(3.0 * A / (3.0 * A + 2.0 * rz * m.sigma2)) *
                      std::exp(-rz * m.mu * m.mu / (3.0 * A + 2.0 * rz * m.sigma2));
    return {t1 + t2, AbepMethod::ClosedFormQApprox, 0.0, 0};
}

// Chernoff bound (1/2) M_X(-tau). The 1/2 prefactor keeps it a genuine
// upper bound and reproduces the printed high-SNR limits exactly.
inline AbepEstimate upep_intelligent_chernoff(const EffectiveSnr& e, const CompositeMoments& m) {
    const double A = e.noise_inflation;
    const double rz = e.rho * e.zeta2;
    const double v = 0.5 * std::sqrt(2.0 * A / (2.0 * A + rz * m.sigma2)) *
                     std::exp(-rz * m.mu * m.mu / (4.0 * A + 2.0 * rz * m.sigma2));
    return {v, AbepMethod::Chernoff, 0.0, 0};
}

// High-SNR limit of the Chernoff bound with fixed sigma_e^2:
// sqrt(2 se^4/(8 se^4 + 8 - pi b^2)) exp(-pi L b^2/(16 se^4 + 16 - 2 pi b^2)).
inline AbepEstimate upep_intelligent_floor_fixed(double sigma_e2, int L, double kappa) {
    const double b = rician_amplitude_mean(kappa);
    const double b2 = b * b;
    const double s4 = sigma_e2 * sigma_e2;
    const double v = std::sqrt(2.0 * s4 / (8.0 * s4 + 8.0 - kPi * b2)) *
                     std::exp(-kPi * L * b2 / (16.0 * s4 + 16.0 - 2.0 * kPi * b2));
    return {v, AbepMethod::Asymptotic, 0.0, 0};
}

// Variable-sigma_e^2 limit: (1/2) exp(-pi L b^2/(16 - 2 pi b^2)).
inline AbepEstimate upep_intelligent_floor_variable(int L, double kappa) {
    const double b = rician_amplitude_mean(kappa);
    const double b2 = b * b;
    return {0.5 * std::exp(-kPi * L * b2 / (16.0 - 2.0 * kPi * b2)), AbepMethod::Asymptotic, 0.0, 0};
}

// Blind-scheme closed form:
// (1/2)(1 - sqrt(rho L zeta^2 / (rho L zeta^2 + 2(rho(1-zeta^2) se^2 L + 1)))).
inline AbepEstimate upep_blind_closed(const EffectiveSnr& e, int L) {
    const double num = e.rho * L * e.zeta2;
    const double v = 0.5 * (1.0 - std::sqrt(num / (num + 2.0 * e.noise_inflation)));
    return {v, AbepMethod::BlindClosedForm, 0.0, 0};
}

// Wallis-formula asymptote of the blind UPEP, sigma_e^4 / 2.
inline AbepEstimate upep_blind_asymptotic(double sigma_e2) {
    if (!(sigma_e2 >= 0.0)) throw std::domain_error("upep_blind_asymptotic: sigma_e2 must be >= 0");
    return {sigma_e2 * sigma_e2 / 2.0, AbepMethod::BlindAsymptotic, 0.0, 0};
}

// Union bound over ordered antenna pairs, weighted by natural-binary
// Hamming distances and averaged over the transmitted symbol:
// (1/(N_t log2 N_t)) sum_{n,nh} P(n->nh) N(nh->n). The 1/N_t prior makes
// the N_t = 2 case collapse to the UPEP.
inline double abep_union_bound(const std::vector<std::vector<double>>& upep, int N_t) {
    if (!SskSymbol::power_of_two(N_t) || N_t < 2) throw std::domain_error("abep_union_bound: N_t must be a power of two >= 2");
    if (static_cast<int>(upep.size()) != N_t) throw std::domain_error("abep_union_bound: matrix must be N_t x N_t");
    for (const auto& row : upep)
        if (static_cast<int>(row.size()) != N_t) throw std::domain_error("abep_union_bound: matrix must be square");
    const int bits = SskSymbol::bits_per_symbol(N_t);
    double acc = 0.0;
    for (int n = 1; n <= N_t; ++n)
        for (int nh = 1; nh <= N_t; ++nh)
            acc += upep[static_cast<size_t>(n - 1)][static_cast<size_t>(nh - 1)] * SskSymbol::hamming(n, nh);
    return acc / (static_cast<double>(N_t) * bits);
}

}  // namespace rissk
