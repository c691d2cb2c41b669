#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rissk/channel.hpp"
#include "rissk/math.hpp"
#include "rissk/rng.hpp"

namespace rissk {

// RIS configuration rule: phase-aligned, zero-phase, or the aligned phase
// snapped to a 2^Q-level uniform grid.
struct PhasePolicy {
    enum class Kind { Intelligent, Blind, Quantized };
    Kind kind = Kind::Intelligent;
    int q_bits = 0;
    // Align to the true RIS-UE phase instead of the estimated one. The
    // detector statistic uses the estimated amplitudes either way.
    bool align_true_psi = false;

    static PhasePolicy intelligent() { return {Kind::Intelligent, 0, false}; }
    static PhasePolicy blind() { return {Kind::Blind, 0, false}; }
    static PhasePolicy quantized(int q) {
        if (q < 1) throw std::domain_error("PhasePolicy: Q must be >= 1");
        return {Kind::Quantized, q, false};
    }

    bool uses_intelligent_detector() const { return kind != Kind::Blind; }
};

// SSK symbol: the active-antenna index with its natural-binary bit label.
struct SskSymbol {
    int n_t = 1;  // 1-based antenna index

    static int bits_per_symbol(int N_t) {
        int b = 0;
        while ((1 << (b + 1)) <= N_t) ++b;
        return b;
    }
    static bool power_of_two(int N_t) { return N_t >= 1 && (N_t & (N_t - 1)) == 0; }

    uint32_t label() const { return static_cast<uint32_t>(n_t - 1); }

    static int hamming(int a_nt, int b_nt) {
        return __builtin_popcount(static_cast<uint32_t>(a_nt - 1) ^ static_cast<uint32_t>(b_nt - 1));
    }
};

struct ComplexityReport {
    long long real_multiplications = 0;
    long long real_additions = 0;
};

// Detector arithmetic cost per decision.
inline ComplexityReport complexity(PhasePolicy::Kind kind, int L, int N_t) {
    if (L < 1 || N_t < 1) throw std::domain_error("complexity: L, N_t must be >= 1");
    ComplexityReport r;
    if (kind == PhasePolicy::Kind::Blind) {
        r.real_multiplications = static_cast<long long>(4 * L + 6) * N_t;
        r.real_additions = static_cast<long long>(4 * L + 1) * N_t;
    } else {
        r.real_multiplications = static_cast<long long>(L + 4) * N_t;
        r.real_additions = static_cast<long long>(L + 1) * N_t;
    }
    return r;
}

// Snap a phase to the 2^Q-level grid [0:2^Q-1] 2pi/2^Q - pi + 2pi/2^{Q+1};
// the residual lies in [-pi/2^Q, pi/2^Q].
inline double quantize_phase(double phi, int q_bits) {
    const double step = 2.0 * kPi / static_cast<double>(1 << q_bits);
    double w = std::fmod(phi + kPi, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;  // w in [0, 2pi)
    const double k = std::floor(w / step);
    return -kPi + (k + 0.5) * step;
}

// Reflection phases for the active antenna: Intelligent makes every
// h_hat_l e^{j phi_l} g_{l,nt} real non-negative, Blind is all zeros,
// Quantized snaps the intelligent phase to the grid.
inline std::vector<double> ris_phases(const PhasePolicy& policy, std::span<const cplx> g_col,
                                      std::span<const cplx> h_ue) {
    if (g_col.size() != h_ue.size()) throw std::domain_error("ris_phases: length mismatch");
    std::vector<double> phi(g_col.size(), 0.0);
    if (policy.kind == PhasePolicy::Kind::Blind) return phi;
    for (size_t l = 0; l < phi.size(); ++l) {
        const double p = -std::arg(g_col[l]) - std::arg(h_ue[l]);
        phi[l] = (policy.kind == PhasePolicy::Kind::Quantized) ? quantize_phase(p, policy.q_bits) : p;
    }
    return phi;
}

// Received scalar, Eq. of the estimated/error split:
//   y = sqrt(Ps) zeta sum h_hat e^{j phi} g + sqrt(Ps(1-zeta^2)) sum dh e^{j phi} g + n0.
inline cplx synthesize_rx(const ChannelRealization& ch, int n_t, std::span<const double> phases, double P_s,
                          double N_0, RngStream& rng) {
    if (n_t < 1 || n_t > ch.N_t()) throw std::domain_error("synthesize_rx: bad antenna index");
    const auto& g = ch.G[static_cast<size_t>(n_t - 1)];
    cplx sig{0.0, 0.0}, err{0.0, 0.0};
    for (size_t l = 0; l < g.size(); ++l) {
        const cplx w{std::cos(phases[l]), std::sin(phases[l])};
        sig += ch.H_hat[l] * w * g[l];
        err += ch.Delta_H[l] * w * g[l];
    }
    const double zeta = ch.zeta;
    cplx y = std::sqrt(P_s) * zeta * sig + std::sqrt(P_s * std::max(0.0, 1.0 - zeta * zeta)) * err;
    if (N_0 > 0.0) y += rng.next_cnormal(N_0);
    return y;
}

// Candidate composites zeta * sum_l h_hat_l e^{j phi_l} g_{l,n} for each
// hypothesis n, given the applied RIS configuration. For the hypothesis
// equal to the configured antenna this is the real non-negative
// sum alpha_l beta_hat_l of the detector statistic; other hypotheses keep
// the residual BS-RIS phase rotation that the pairwise-error analysis is
// built on.
inline std::vector<cplx> candidate_composites(const ChannelRealization& ch, std::span<const double> phases) {
    std::vector<cplx> r(static_cast<size_t>(ch.N_t()));
    for (int n = 0; n < ch.N_t(); ++n) {
        cplx acc{0.0, 0.0};
        const auto& g = ch.G[static_cast<size_t>(n)];
        for (size_t l = 0; l < g.size(); ++l) {
            const cplx w{std::cos(phases[l]), std::sin(phases[l])};
            acc += ch.H_hat[l] * w * g[l];
        }
        r[static_cast<size_t>(n)] = ch.zeta * acc;
    }
    return r;
}

namespace detail {

inline SskSymbol argmin_metric(cplx y, std::span<const cplx> scaled_candidates) {
    int best = 0;
    double best_m = std::norm(y - scaled_candidates[0]);
    for (int n = 1; n < static_cast<int>(scaled_candidates.size()); ++n) {
        const double m = std::norm(y - scaled_candidates[static_cast<size_t>(n)]);
        if (m < best_m) {  // ties resolve to the smaller index
            best_m = m;
            best = n;
        }
    }
    return SskSymbol{best + 1};
}

}  // namespace detail

// ML detector for the phase-aligned schemes. The receiver knows G, H_hat
// and the applied RIS configuration.
inline SskSymbol detect_intelligent(cplx y, const ChannelRealization& ch, std::span<const double> phases,
                                    double P_s) {
    auto cand = candidate_composites(ch, phases);
    const double a = std::sqrt(P_s);
    for (auto& c : cand) c *= a;
    return detail::argmin_metric(y, cand);
}

// ML detector for the blind scheme: candidates zeta sum_l g_{l,n} h_hat_l.
inline SskSymbol detect_blind(cplx y, const ChannelRealization& ch, double P_s) {
    std::vector<cplx> cand(static_cast<size_t>(ch.N_t()));
    for (int n = 0; n < ch.N_t(); ++n) {
        cplx acc{0.0, 0.0};
        const auto& g = ch.G[static_cast<size_t>(n)];
        for (size_t l = 0; l < g.size(); ++l) acc += g[l] * ch.H_hat[l];
        cand[static_cast<size_t>(n)] = std::sqrt(P_s) * ch.zeta * acc;
    }
    return detail::argmin_metric(y, cand);
}

}  // namespace rissk
