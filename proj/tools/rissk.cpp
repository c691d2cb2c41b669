// Command-line front end: scenario sweeps from JSON configs, the named
// figure presets, and the oracle self-check.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rissk/config.hpp"
#include "rissk/presets.hpp"
#include "rissk/selfcheck.hpp"
#include "rissk/sweep.hpp"

namespace {

// Precedence: flag > RISSK_* environment variable > config/default.
template <typename T>
void env_default(CLI::Option* opt, const char* name, T& target) {
    if (opt->count() > 0) return;
    if (const char* v = std::getenv(name)) {
        std::istringstream ss(v);
        T parsed;
        if (ss >> parsed) target = parsed;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-aided space shift keying: Monte Carlo simulation and ABEP analysis"};
    app.require_subcommand(1);

    uint64_t seed = 1;
    uint64_t trials = 0;
    int workers = 0;
    int gcq_k = 0;
    std::string out_dir = ".";

    auto add_common = [&](CLI::App* cmd) {
        auto* os = cmd->add_option("--seed", seed, "Base RNG seed");
        auto* ot = cmd->add_option("--trials", trials, "Override Monte Carlo trials per point");
        auto* ow = cmd->add_option("--workers", workers, "Worker threads (0 = all cores)");
        auto* og = cmd->add_option("--gcq-k", gcq_k, "GCQ node count for analytical rows");
        auto* oo = cmd->add_option("--out-dir", out_dir, "Output directory");
        return std::tuple{os, ot, ow, og, oo};
    };

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run the sweep described by a JSON config");
    run_cmd->add_option("--config", config_path, "Path to the JSON config")->required();
    auto run_opts = add_common(run_cmd);

    std::string preset_name;
    auto* preset_cmd = app.add_subcommand("preset", "Run a named figure preset");
    preset_cmd->add_option("name", preset_name, "Preset name (fig2..fig15)")->required();
    auto preset_opts = add_common(preset_cmd);

    auto* self_cmd = app.add_subcommand("selfcheck", "Run the numerical oracle suite");
    auto* list_cmd = app.add_subcommand("presets", "List available presets");

    CLI11_PARSE(app, argc, argv);

    auto apply_env = [&](auto& opts) {
        env_default(std::get<0>(opts), "RISSK_SEED", seed);
        env_default(std::get<1>(opts), "RISSK_TRIALS", trials);
        env_default(std::get<2>(opts), "RISSK_WORKERS", workers);
        env_default(std::get<3>(opts), "RISSK_GCQ_K", gcq_k);
        if (std::get<4>(opts)->count() == 0)
            if (const char* v = std::getenv("RISSK_OUT_DIR")) out_dir = v;
    };

    try {
        if (run_cmd->parsed()) {
            apply_env(run_opts);
            rissk::SystemConfig cfg = rissk::parse_config(config_path);
            if (std::get<0>(run_opts)->count() || std::getenv("RISSK_SEED")) cfg.seed = seed;
            if (trials) cfg.trials = trials;
            if (workers) cfg.workers = workers;
            if (gcq_k) cfg.gcq_k = gcq_k;
            const auto result = rissk::run_sweep(cfg);
            std::filesystem::create_directories(out_dir);
            const auto stem = std::filesystem::path(config_path).stem().string();
            const auto csv_path = std::filesystem::path(out_dir) / (stem + ".csv");
            std::ofstream f(csv_path, std::ios::binary);
            f << rissk::sweep_to_csv(result);
            rissk::json meta;
            meta["config"] = rissk::config_to_json(cfg);
            meta["source"] = config_path;
            std::ofstream mf(std::filesystem::path(out_dir) / (stem + ".meta.json"), std::ios::binary);
            mf << meta.dump(2) << "\n";
            std::printf("wrote %s (%zu rows)\n", csv_path.string().c_str(), result.rows.size());
            return 0;
        }
        if (preset_cmd->parsed()) {
            apply_env(preset_opts);
            rissk::PresetOptions o{seed, trials, workers, gcq_k, out_dir};
            const auto result = rissk::run_preset(preset_name, o);
            std::printf("wrote %s/%s.csv (%zu rows)\n", out_dir.c_str(), preset_name.c_str(), result.rows.size());
            return 0;
        }
        if (self_cmd->parsed()) {
            return rissk::print_selfcheck_report(rissk::selfcheck());
        }
        if (list_cmd->parsed()) {
            for (const auto& p : rissk::make_presets(rissk::PresetOptions{}))
                std::printf("%-7s %s\n", p.name.c_str(), p.description.c_str());
            return 0;
        }
    } catch (const rissk::ConfigError& e) {
        std::fprintf(stderr, "E_CONFIG: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "E_USAGE: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "E_RUNTIME: %s\n", e.what());
        return 1;
    }
    return 0;
}
