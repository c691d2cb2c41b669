#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "rissk/math.hpp"
#include "rissk/rng.hpp"

namespace rissk {

using cplx = std::complex<double>;

// RIS-UE Rician channel parameters. UPA of L = L_x * L_y elements at
// half-wavelength spacing; kappa is the linear Rician factor.
struct RicianParams {
    double kappa = 0.0;
    double phi_x = kPi / 6.0;
    double phi_y = kPi / 6.0;
    int L_x = 1;
    int L_y = 1;

    int L() const { return L_x * L_y; }

    void validate() const {
        if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw std::domain_error("RicianParams: kappa must be >= 0");
        if (L_x < 1 || L_y < 1) throw std::domain_error("RicianParams: L_x, L_y must be >= 1");
    }
};

// Channel estimation error model. Fixed sigma_e^2, or pilot-based where
// sigma_e^2 = 1/(N rho) is recomputed at every SNR point.
struct CsiErrorModel {
    enum class Mode { Fixed, Variable };
    Mode mode = Mode::Fixed;
    double sigma_e2 = 0.0;  // Fixed mode
    int pilots = 1;         // Variable mode

    static CsiErrorModel fixed(double s) {
        if (!(s >= 0.0)) throw std::domain_error("CsiErrorModel: sigma_e2 must be >= 0");
        return {Mode::Fixed, s, 1};
    }
    static CsiErrorModel variable(int n) {
        if (n < 1) throw std::domain_error("CsiErrorModel: pilot count must be >= 1");
        return {Mode::Variable, 0.0, n};
    }

    double sigma_e2_at(double rho) const {
        if (mode == Mode::Fixed) return sigma_e2;
        if (!(rho > 0.0)) throw std::domain_error("CsiErrorModel: variable mode needs rho > 0");
        return 1.0 / (pilots * rho);
    }

    double zeta_at(double rho) const { return 1.0 / std::sqrt(1.0 + sigma_e2_at(rho)); }
};

// One draw of the full channel state: BS-RIS matrix G (L x N_t, stored
// column-major per antenna), estimated RIS-UE vector H_hat, error vector
// Delta_H, and the composed true channel H with correlation zeta.
struct ChannelRealization {
    std::vector<std::vector<cplx>> G;  // G[n][l], n = antenna index
    std::vector<cplx> H_hat;
    std::vector<cplx> Delta_H;
    std::vector<cplx> H;
    double zeta = 1.0;

    int L() const { return static_cast<int>(H_hat.size()); }
    int N_t() const { return static_cast<int>(G.size()); }
};

// UPA LoS steering vector: entry l has phase 2 pi (d/lambda)(l_x sin phi_x
// + l_y sin phi_y), l_x = mod(l-1, L_x), l_y = floor((l-1)/L_y), d/lambda
// fixed at 1/2.
inline std::vector<cplx> los_steering(const RicianParams& p) {
    p.validate();
    const int L = p.L();
    std::vector<cplx> v(static_cast<size_t>(L));
    const double cx = kPi * std::sin(p.phi_x);  // 2 pi (1/2) sin
    const double cy = kPi * std::sin(p.phi_y);
    for (int l = 0; l < L; ++l) {
        const int lx = l % p.L_x;
        const int ly = l / p.L_y;
        const double ph = cx * lx + cy * ly;
        v[static_cast<size_t>(l)] = {std::cos(ph), std::sin(ph)};
    }
    return v;
}

// Rician RIS-UE estimate: sqrt(k/(k+1)) LoS + sqrt(1/(k+1)) CN(0,1);
// per-element power 1 for any kappa.
inline std::vector<cplx> sample_rician_channel(const RicianParams& p, RngStream& rng) {
    auto v = los_steering(p);
    const double kappa = std::min(p.kappa, 1e12);
    const double a_los = std::sqrt(kappa / (kappa + 1.0));
    const double a_nlos = std::sqrt(1.0 / (kappa + 1.0));
    for (auto& h : v) h = a_los * h + a_nlos * rng.next_cnormal(1.0);
    return v;
}

// BS-RIS Rayleigh matrix, i.i.d. CN(0,1) entries; G[n][l] layout.
inline std::vector<std::vector<cplx>> sample_rayleigh_matrix(int L, int N_t, RngStream& rng) {
    if (L < 1 || N_t < 1) throw std::domain_error("sample_rayleigh_matrix: L, N_t must be >= 1");
    std::vector<std::vector<cplx>> g(static_cast<size_t>(N_t), std::vector<cplx>(static_cast<size_t>(L)));
    for (int l = 0; l < L; ++l)
        for (int n = 0; n < N_t; ++n) g[static_cast<size_t>(n)][static_cast<size_t>(l)] = rng.next_cnormal(1.0);
    return g;
}

// E(beta) of the unit-power Rician amplitude,
//   sqrt(pi/(4k+4)) e^{-k/2} [(1+k) I0(k/2) + k I1(k/2)],
// evaluated through scaled Bessel logs so large kappa cannot overflow.
inline double rician_amplitude_mean(double kappa) {
    if (!(kappa >= 0.0) || std::isnan(kappa)) throw std::domain_error("rician_amplitude_mean: kappa must be >= 0");
    kappa = std::min(kappa, 1e12);
    if (kappa == 0.0) return std::sqrt(kPi) / 2.0;
    const double x = kappa / 2.0;
    const double l0 = bessel_i_scaled_log(0, x);  // log(e^{-x} I0(x))
    const double l1 = bessel_i_scaled_log(1, x);
    // e^{-k/2} [(1+k) I0 + k I1] = (1+k) e^{l0} + k e^{l1}
    const double m = std::max(l0, l1);
    const double inner = std::exp(m) * ((1.0 + kappa) * std::exp(l0 - m) + kappa * std::exp(l1 - m));
    return std::sqrt(kPi / (4.0 * kappa + 4.0)) * inner;
}

inline double rician_amplitude_variance(double kappa) {
    const double m = rician_amplitude_mean(kappa);
    return 1.0 - m * m;
}

// Composition H = zeta H_hat + sqrt(1-zeta^2) Delta_H with
// zeta = 1/sqrt(1+sigma_e^2). Returns (H, zeta).
inline std::pair<std::vector<cplx>, double> compose_imperfect_csi(const std::vector<cplx>& h_hat,
                                                                  const std::vector<cplx>& delta_h,
                                                                  const CsiErrorModel& csi, double rho) {
    if (h_hat.size() != delta_h.size()) throw std::domain_error("compose_imperfect_csi: length mismatch");
    const double zeta = csi.zeta_at(rho);
    const double w = std::sqrt(std::max(0.0, 1.0 - zeta * zeta));
    std::vector<cplx> h(h_hat.size());
    for (size_t i = 0; i < h.size(); ++i) h[i] = zeta * h_hat[i] + w * delta_h[i];
    return {std::move(h), zeta};
}

// Full channel draw for one trial. Delta_H entries are CN(0, sigma_e^2),
// fresh per realization and independent of H_hat.
inline ChannelRealization draw_channel(const RicianParams& p, const CsiErrorModel& csi, int N_t, double rho,
                                       RngStream& rng) {
    ChannelRealization r;
    r.G = sample_rayleigh_matrix(p.L(), N_t, rng);
    r.H_hat = sample_rician_channel(p, rng);
    const double se2 = csi.sigma_e2_at(rho);
    r.Delta_H.resize(r.H_hat.size());
    for (auto& d : r.Delta_H) d = (se2 > 0.0) ? rng.next_cnormal(se2) : cplx{0.0, 0.0};
    auto [h, zeta] = compose_imperfect_csi(r.H_hat, r.Delta_H, csi, rho);
    r.H = std::move(h);
    r.zeta = zeta;
    return r;
}

}  // namespace rissk
