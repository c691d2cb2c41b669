#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "rissk/analysis.hpp"
#include "rissk/montecarlo.hpp"

namespace rissk {

struct SweepRow {
    double snr_db = 0.0;
    std::string method;
    double abep = 0.0;
    double ci95 = -1.0;  // < 0 means analytic row, CSV field left empty
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

namespace detail {

inline std::string fmt_g(double v, int prec = 12) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

}  // namespace detail

inline std::string sweep_to_csv(const SweepResult& r) {
    std::string out = "snr_db,method,abep,ci95\n";
    for (const auto& row : r.rows) {
        out += detail::fmt_g(row.snr_db, 10);
        out += ',';
        out += row.method;
        out += ',';
        out += detail::fmt_g(row.abep, 12);
        out += ',';
        if (row.ci95 >= 0.0) out += detail::fmt_g(row.ci95, 6);
        out += '\n';
    }
    return out;
}

// Analytic ABEP rows applicable to the config's policy at one SNR point.
// N_t = 2 makes the ABEP equal to the UPEP; larger alphabets go through
// the union bound with equal pairwise UPEPs.
inline std::vector<SweepRow> analytic_rows(const SystemConfig& cfg, double snr_db, const std::string& prefix = "") {
    std::vector<SweepRow> rows;
    const double rho = db_to_linear(snr_db);
    if (!(rho > 0.0) || std::isinf(rho)) return rows;
    const auto e = EffectiveSnr::from(rho, cfg.csi, cfg.L());
    auto bound = [&](double upep) {
        if (cfg.N_t == 2) return upep;
        std::vector<std::vector<double>> m(static_cast<size_t>(cfg.N_t),
                                           std::vector<double>(static_cast<size_t>(cfg.N_t), upep));
        for (int i = 0; i < cfg.N_t; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0.0;
        return abep_union_bound(m, cfg.N_t);
    };
    auto push = [&](const AbepEstimate& a) {
        rows.push_back({snr_db, prefix + method_name(a.method, a.gcq_k), bound(a.value), -1.0});
    };
    if (cfg.policy.kind == PhasePolicy::Kind::Blind) {
        push(upep_blind_closed(e, cfg.L()));
        if (cfg.csi.mode == CsiErrorModel::Mode::Fixed && cfg.csi.sigma_e2 > 0.0)
            push(upep_blind_asymptotic(cfg.csi.sigma_e2));
    } else {
        const auto m = (cfg.policy.kind == PhasePolicy::Kind::Quantized)
                           ? composite_moments_quantized(cfg.L(), cfg.rician.kappa, cfg.policy.q_bits)
                           : composite_moments(cfg.L(), cfg.rician.kappa);
        push(upep_intelligent_exact(e, m));
        push(upep_intelligent_gcq(e, m, cfg.gcq_k));
        push(upep_intelligent_closed(e, m));
        push(upep_intelligent_chernoff(e, m));
    }
    return rows;
}

// Monte Carlo plus analytic rows over the config's SNR grid.
inline SweepResult run_sweep(const SystemConfig& cfg, const std::string& prefix = "") {
    cfg.validate();
    if (cfg.snr_db.empty()) throw std::domain_error("run_sweep: empty snr grid");
    SweepResult r;
    for (double snr : cfg.snr_db) {
        const BerPoint p = run_point(cfg, snr);
        r.rows.push_back({snr, prefix + "mc", p.ber, p.ci95});
        for (auto& row : analytic_rows(cfg, snr, prefix)) r.rows.push_back(std::move(row));
    }
    return r;
}

}  // namespace rissk
