#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rissk/config.hpp"
#include "rissk/sweep.hpp"

namespace rissk {

struct PresetOptions {
    uint64_t seed = 1;
    uint64_t trials = 0;  // 0 = preset default (1e6)
    int workers = 0;
    int gcq_k = 0;  // 0 = preset default (3)
    std::string out_dir = ".";
};

namespace detail {

inline std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> v;
    for (double x = lo; x <= hi + 1e-9; x += step) v.push_back(x);
    return v;
}

inline SystemConfig base_config(const PresetOptions& o) {
    SystemConfig c;
    c.trials = o.trials ? o.trials : 1'000'000;
    c.seed = o.seed;
    c.workers = o.workers;
    c.gcq_k = o.gcq_k ? o.gcq_k : 3;
    return c;
}

inline void set_L(SystemConfig& c, int L_x, int L_y) {
    c.rician.L_x = L_x;
    c.rician.L_y = L_y;
}

}  // namespace detail

struct PresetCurve {
    std::string label;
    SystemConfig cfg;
};

struct ExperimentPreset {
    std::string name;
    std::string description;
    std::vector<PresetCurve> curves;  // sweep-style presets
    bool include_mc = true;
    bool include_floor_row = false;                                      // fig5
    std::function<SweepResult(const PresetOptions&)> special;            // fig2/fig6/fig12
};

namespace detail {

inline SweepResult run_fig2(const PresetOptions& o) {
    SweepResult r;
    for (int L : {10, 100}) {
        auto c = base_config(o);
        set_L(c, L, 1);
        c.rician.kappa = db_to_linear(3.0);
        c.policy = PhasePolicy::intelligent();
        auto [emp, ks] = fit_composite_distribution(c, 100'000);
        r.rows.push_back({0.0, "ks_clt_L" + std::to_string(L), ks, -1.0});
    }
    return r;
}

inline SweepResult run_fig6(const PresetOptions& o) {
    SweepResult r;
    const auto m = composite_moments(200, db_to_linear(3.0));
    const auto csi = CsiErrorModel::fixed(0.1);
    for (double snr : {-32.0, -30.0, -28.0}) {
        const auto e = EffectiveSnr::from(db_to_linear(snr), csi, 200);
        for (int K : {1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 30, 50}) {
            const auto a = upep_intelligent_gcq(e, m, K);
            r.rows.push_back({snr, method_name(a.method, K), a.value, -1.0});
        }
        r.rows.push_back({snr, "exact", upep_intelligent_exact(e, m).value, -1.0});
    }
    return r;
}

inline SweepResult run_fig12(const PresetOptions& o) {
    SweepResult r;
    for (double snr : {0.0, 10.0, 20.0}) {
        for (int kdb = 0; kdb <= 20; kdb += 2) {
            auto c = base_config(o);
            set_L(c, 100, 1);
            c.rician.kappa = db_to_linear(kdb);
            c.policy = PhasePolicy::blind();
            c.csi = CsiErrorModel::fixed(0.0);
            const auto p = run_point(c, snr);
            r.rows.push_back({snr, "mc_k" + std::to_string(kdb) + "db", p.ber, p.ci95});
        }
        const auto e = EffectiveSnr::from(db_to_linear(snr), CsiErrorModel::fixed(0.0), 100);
        r.rows.push_back({snr, "blind_closed", upep_blind_closed(e, 100).value, -1.0});
    }
    return r;
}

}  // namespace detail

inline std::vector<ExperimentPreset> make_presets(const PresetOptions& o) {
    using detail::base_config;
    using detail::grid;
    using detail::set_L;
    std::vector<ExperimentPreset> out;

    out.push_back({"fig2", "CLT fit of the intelligent composite channel, KS distance at L=10 and L=100", {}, false,
                   false, detail::run_fig2});

    {
        ExperimentPreset p{"fig3", "Perfect-CSI Rayleigh baseline (kappa=0), intelligent scheme, L sweep"};
        for (int L : {16, 64, 256}) {
            auto c = base_config(o);
            set_L(c, L, 1);
            c.rician.kappa = 0.0;
            c.csi = CsiErrorModel::fixed(0.0);
            c.policy = PhasePolicy::intelligent();
            c.snr_db = grid(-32, 12, 4);
            p.curves.push_back({"L" + std::to_string(L), c});
        }
        out.push_back(std::move(p));
    }

    auto fig45_curves = [&](std::vector<double> snr) {
        std::vector<PresetCurve> cs;
        for (int L : {64, 256}) {
            auto c = base_config(o);
            set_L(c, L, 1);
            c.rician.kappa = db_to_linear(3.0);
            c.csi = CsiErrorModel::fixed(0.1);
            c.policy = PhasePolicy::intelligent();
            c.snr_db = snr;
            cs.push_back({"L" + std::to_string(L), c});
        }
        return cs;
    };
    out.push_back({"fig4", "Exact integral vs Q-approximation closed form and Chernoff bound, L in {64,256}",
                   fig45_curves(detail::grid(-46, -19, 3))});
    out.push_back({"fig5", "Analytic curves with the high-SNR error floor, L in {64,256}",
                   fig45_curves(detail::grid(-46, 50, 4)), false, true});

    out.push_back({"fig6", "GCQ convergence in K at rho in {-32,-30,-28} dB, L=200", {}, false, false,
                   detail::run_fig6});

    {
        ExperimentPreset p{"fig7", "GCQ(K=3) accuracy against the exact integral and simulation, L=200"};
        auto c = base_config(o);
        set_L(c, 200, 1);
        c.rician.kappa = db_to_linear(3.0);
        c.csi = CsiErrorModel::fixed(0.1);
        c.policy = PhasePolicy::intelligent();
        c.snr_db = grid(-40, -26, 2);
        p.curves.push_back({"L200", c});
        out.push_back(std::move(p));
    }

    {
        ExperimentPreset p{"fig8", "Rician factor impact on the intelligent scheme, L=144"};
        for (int kdb : {0, 3, 10}) {
            auto c = base_config(o);
            set_L(c, 144, 1);
            c.rician.kappa = db_to_linear(kdb);
            c.csi = CsiErrorModel::fixed(0.1);
            c.policy = PhasePolicy::intelligent();
            c.snr_db = grid(-40, -26, 2);
            p.curves.push_back({"k" + std::to_string(kdb) + "db", c});
        }
        out.push_back(std::move(p));
    }

    {
        ExperimentPreset p{"fig9", "Intelligent scheme with fixed sigma_e^2 in {3,2,1,0.1} and perfect CSI, L=256"};
        for (double se2 : {3.0, 2.0, 1.0, 0.1, 0.0}) {
            auto c = base_config(o);
            set_L(c, 256, 1);
            c.rician.kappa = db_to_linear(3.0);
            c.csi = CsiErrorModel::fixed(se2);
            c.policy = PhasePolicy::intelligent();
            c.snr_db = grid(-44, -10, 2);
            const std::string label = se2 == 0.0 ? "perfect" : "se" + detail::fmt_g(se2, 6);
            p.curves.push_back({label, c});
        }
        out.push_back(std::move(p));
    }

    {
        ExperimentPreset p{"fig10", "Intelligent scheme with variable sigma_e^2 = 1/(N rho), L=256"};
        for (int n : {1, 2, 10, 30, 90}) {
            auto c = base_config(o);
            set_L(c, 256, 1);
            c.rician.kappa = db_to_linear(3.0);
            c.csi = CsiErrorModel::variable(n);
            c.policy = PhasePolicy::intelligent();
            c.snr_db = grid(-34, 0, 2);
            p.curves.push_back({"N" + std::to_string(n), c});
        }
        auto c = base_config(o);
        set_L(c, 256, 1);
        c.rician.kappa = db_to_linear(3.0);
        c.csi = CsiErrorModel::fixed(0.0);
        c.policy = PhasePolicy::intelligent();
        c.snr_db = grid(-34, 0, 2);
        p.curves.push_back({"perfect", c});
        out.push_back(std::move(p));
    }

    {
        ExperimentPreset p{"fig11", "Blind scheme error floor with fixed sigma_e^2, L=144"};
        for (double se2 : {0.1, 0.01}) {
            auto c = base_config(o);
            set_L(c, 144, 1);
            c.rician.kappa = db_to_linear(3.0);
            c.csi = CsiErrorModel::fixed(se2);
            c.policy = PhasePolicy::blind();
            c.snr_db = grid(0, 40, 4);
            p.curves.push_back({"se" + detail::fmt_g(se2, 6), c});
        }
        out.push_back(std::move(p));
    }

    out.push_back({"fig12", "Blind scheme vs Rician factor at SNR in {0,10,20} dB, L=100", {}, false, false,
                   detail::run_fig12});

    {
        ExperimentPreset p{"fig13", "Blind scheme with fixed sigma_e^2 in {0,0.005,0.01}, L=100, kappa=5 dB"};
        for (double se2 : {0.0, 0.005, 0.01}) {
            auto c = base_config(o);
            set_L(c, 100, 1);
            c.rician.kappa = db_to_linear(5.0);
            c.csi = CsiErrorModel::fixed(se2);
            c.policy = PhasePolicy::blind();
            c.snr_db = grid(0, 30, 3);
            p.curves.push_back({"se" + detail::fmt_g(se2, 6), c});
        }
        out.push_back(std::move(p));
    }

    auto quant_preset = [&](const std::string& name, const std::string& desc, CsiErrorModel csi,
                            std::vector<double> snr) {
        ExperimentPreset p{name, desc};
        auto mk = [&](PhasePolicy pol, const std::string& label) {
            auto c = base_config(o);
            set_L(c, 196, 1);  // 14x14 panel
            c.rician.L_x = 14;
            c.rician.L_y = 14;
            c.rician.kappa = db_to_linear(3.0);
            c.csi = csi;
            c.policy = pol;
            c.snr_db = snr;
            p.curves.push_back({label, c});
        };
        mk(PhasePolicy::blind(), "blind");
        mk(PhasePolicy::quantized(1), "q1");
        mk(PhasePolicy::quantized(2), "q2");
        mk(PhasePolicy::quantized(3), "q3");
        mk(PhasePolicy::intelligent(), "cont");
        return p;
    };
    out.push_back(quant_preset("fig14", "Discrete phase shifts (Q=1,2,3) vs blind and continuous, fixed sigma_e^2=0.1",
                               CsiErrorModel::fixed(0.1), detail::grid(-48, -30, 3)));
    out.push_back(quant_preset("fig15", "Discrete phase shifts with variable sigma_e^2 = 1/(30 rho)",
                               CsiErrorModel::variable(30), detail::grid(-28, -18, 2)));

    return out;
}

inline std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& p : make_presets(PresetOptions{})) names.push_back(p.name);
    return names;
}

inline SweepResult run_preset_result(const ExperimentPreset& p, const PresetOptions& o) {
    if (p.special) return p.special(o);
    SweepResult all;
    for (const auto& curve : p.curves) {
        const std::string prefix = curve.label + "_";
        if (p.include_mc) {
            auto r = run_sweep(curve.cfg, prefix);
            for (auto& row : r.rows) all.rows.push_back(std::move(row));
        } else {
            for (double snr : curve.cfg.snr_db)
                for (auto& row : analytic_rows(curve.cfg, snr, prefix)) all.rows.push_back(std::move(row));
        }
        if (p.include_floor_row && curve.cfg.csi.mode == CsiErrorModel::Mode::Fixed &&
            curve.cfg.csi.sigma_e2 > 0.0 && curve.cfg.policy.kind == PhasePolicy::Kind::Intelligent) {
            const auto fl = upep_intelligent_floor_fixed(curve.cfg.csi.sigma_e2, curve.cfg.L(), curve.cfg.rician.kappa);
            for (double snr : curve.cfg.snr_db) all.rows.push_back({snr, prefix + "asymptotic", fl.value, -1.0});
        }
    }
    return all;
}

// Runs a named preset and writes <name>.csv plus <name>.meta.json into
// out_dir. The sidecar holds everything needed to reproduce the run.
inline SweepResult run_preset(const std::string& name, const PresetOptions& o) {
    const auto presets = make_presets(o);
    const ExperimentPreset* found = nullptr;
    for (const auto& p : presets)
        if (p.name == name) found = &p;
    if (!found) {
        std::string names;
        for (const auto& p : presets) names += p.name + " ";
        throw std::invalid_argument("unknown preset '" + name + "'; valid: " + names);
    }
    const auto t0 = std::chrono::steady_clock::now();
    SweepResult r = run_preset_result(*found, o);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::filesystem::create_directories(o.out_dir);
    const auto csv_path = std::filesystem::path(o.out_dir) / (name + ".csv");
    {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + csv_path.string());
        f << sweep_to_csv(r);
    }
    json meta;
    meta["preset"] = found->name;
    meta["description"] = found->description;
    meta["seed"] = o.seed;
    meta["trials_override"] = o.trials;
    meta["gcq_k_override"] = o.gcq_k;
    meta["runtime_seconds"] = secs;
    meta["csv_columns"] = "snr_db,method,abep,ci95 (fig2 reports KS distances in the abep column)";
    meta["curves"] = json::array();
    for (const auto& c : found->curves) {
        json jc;
        jc["label"] = c.label;
        jc["config"] = config_to_json(c.cfg);
        meta["curves"].push_back(jc);
    }
    const auto meta_path = std::filesystem::path(o.out_dir) / (name + ".meta.json");
    std::ofstream mf(meta_path, std::ios::binary);
    mf << meta.dump(2) << "\n";
    return r;
}

}  // namespace rissk
