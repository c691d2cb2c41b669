#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rissk/montecarlo.hpp"

namespace rissk {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error("config: " + what) {}
};

namespace detail {

inline void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

}  // namespace detail

// Parses the JSON scenario description (syntax documented in README and
// configs/example.json). dB quantities convert to linear internally.
inline SystemConfig parse_config_json(const json& j) {
    detail::check_keys(j,
                       {"nt", "L", "lx", "ly", "kappa_db", "kappa", "phi_x", "phi_y", "policy", "q_bits", "csi",
                        "sigma_e2", "pilots", "snr_db", "trials", "seed", "workers", "escalate", "gcq_k",
                        "align_true_psi"},
                       "top level");
    SystemConfig cfg;
    cfg.N_t = j.value("nt", 2);
    if (!SskSymbol::power_of_two(cfg.N_t)) throw ConfigError("nt must be a power of two, got " + std::to_string(cfg.N_t));

    if (!j.contains("L")) throw ConfigError("missing required key 'L'");
    const int L = j.at("L").get<int>();
    if (L < 1) throw ConfigError("L must be >= 1");
    cfg.rician.L_x = j.value("lx", L);
    cfg.rician.L_y = j.value("ly", j.contains("lx") ? L / std::max(1, j.value("lx", 1)) : 1);
    if (cfg.rician.L_x * cfg.rician.L_y != L)
        throw ConfigError("lx*ly must equal L (" + std::to_string(cfg.rician.L_x) + "*" +
                          std::to_string(cfg.rician.L_y) + " != " + std::to_string(L) + ")");

    if (j.contains("kappa") && j.contains("kappa_db")) throw ConfigError("give kappa or kappa_db, not both");
    if (j.contains("kappa"))
        cfg.rician.kappa = j.at("kappa").get<double>();
    else
        cfg.rician.kappa = j.contains("kappa_db") ? db_to_linear(j.at("kappa_db").get<double>()) : 0.0;
    if (!(cfg.rician.kappa >= 0.0)) throw ConfigError("kappa must be >= 0");
    cfg.rician.phi_x = j.value("phi_x", kPi / 6.0);
    cfg.rician.phi_y = j.value("phi_y", kPi / 6.0);

    const std::string pol = j.value("policy", "intelligent");
    if (pol == "intelligent")
        cfg.policy = PhasePolicy::intelligent();
    else if (pol == "blind")
        cfg.policy = PhasePolicy::blind();
    else if (pol == "quantized")
        cfg.policy = PhasePolicy::quantized(j.value("q_bits", 1));
    else
        throw ConfigError("policy must be intelligent|blind|quantized, got '" + pol + "'");
    cfg.policy.align_true_psi = j.value("align_true_psi", false);

    if (j.contains("csi")) {
        const json& c = j.at("csi");
        detail::check_keys(c, {"mode", "sigma_e2", "pilots"}, "csi");
        const std::string mode = c.value("mode", "fixed");
        if (mode == "fixed")
            cfg.csi = CsiErrorModel::fixed(c.value("sigma_e2", 0.0));
        else if (mode == "variable")
            cfg.csi = CsiErrorModel::variable(c.value("pilots", 1));
        else
            throw ConfigError("csi.mode must be fixed|variable");
    } else if (j.contains("pilots")) {
        cfg.csi = CsiErrorModel::variable(j.at("pilots").get<int>());
    } else {
        cfg.csi = CsiErrorModel::fixed(j.value("sigma_e2", 0.0));
    }

    if (!j.contains("snr_db")) throw ConfigError("missing required key 'snr_db'");
    cfg.snr_db = j.at("snr_db").get<std::vector<double>>();
    cfg.trials = j.value("trials", static_cast<uint64_t>(1'000'000));
    if (cfg.trials == 0) throw ConfigError("trials must be > 0");
    cfg.seed = j.value("seed", static_cast<uint64_t>(1));
    cfg.workers = j.value("workers", 0);
    cfg.escalate = j.value("escalate", true);
    cfg.gcq_k = j.value("gcq_k", 3);
    cfg.validate();
    return cfg;
}

inline SystemConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("parse error: ") + e.what());
    }
    return parse_config_json(j);
}

inline SystemConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

inline json config_to_json(const SystemConfig& cfg) {
    json j;
    j["nt"] = cfg.N_t;
    j["L"] = cfg.L();
    j["lx"] = cfg.rician.L_x;
    j["ly"] = cfg.rician.L_y;
    j["kappa"] = cfg.rician.kappa;
    j["phi_x"] = cfg.rician.phi_x;
    j["phi_y"] = cfg.rician.phi_y;
    j["policy"] = cfg.policy.kind == PhasePolicy::Kind::Blind
                      ? "blind"
                      : (cfg.policy.kind == PhasePolicy::Kind::Quantized ? "quantized" : "intelligent");
    if (cfg.policy.kind == PhasePolicy::Kind::Quantized) j["q_bits"] = cfg.policy.q_bits;
    j["align_true_psi"] = cfg.policy.align_true_psi;
    if (cfg.csi.mode == CsiErrorModel::Mode::Fixed)
        j["csi"] = {{"mode", "fixed"}, {"sigma_e2", cfg.csi.sigma_e2}};
    else
        j["csi"] = {{"mode", "variable"}, {"pilots", cfg.csi.pilots}};
    j["snr_db"] = cfg.snr_db;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    j["escalate"] = cfg.escalate;
    j["gcq_k"] = cfg.gcq_k;
    return j;
}

}  // namespace rissk
