#pragma once

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "rissk/analysis.hpp"
#include "rissk/channel.hpp"
#include "rissk/rng.hpp"
#include "rissk/stats.hpp"
#include "rissk/system.hpp"

namespace rissk {

// Full scenario description for one simulated link.
struct SystemConfig {
    int N_t = 2;  // N_r fixed to 1
    RicianParams rician;
    CsiErrorModel csi;
    PhasePolicy policy;
    std::vector<double> snr_db;
    uint64_t trials = 1'000'000;
    uint64_t seed = 1;
    int workers = 0;  // 0 = hardware concurrency
    bool escalate = true;
    int gcq_k = 3;

    int L() const { return rician.L(); }

    void validate() const {
        if (!SskSymbol::power_of_two(N_t) || N_t < 1) throw std::domain_error("SystemConfig: N_t must be a power of two");
        rician.validate();
        if (policy.kind == PhasePolicy::Kind::Quantized && policy.q_bits < 1)
            throw std::domain_error("SystemConfig: quantized policy needs q_bits >= 1");
        for (double s : snr_db)
            if (std::isnan(s)) throw std::domain_error("SystemConfig: snr values must not be NaN");
        if (gcq_k < 1) throw std::domain_error("SystemConfig: gcq_k must be >= 1");
    }

    // Structural fingerprint folded into shard stream ids so distinct
    // configurations never share random streams.
    uint64_t fingerprint() const {
        auto mix = [](uint64_t h, uint64_t v) {
            h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
            return h;
        };
        uint64_t h = seed;
        h = mix(h, static_cast<uint64_t>(N_t));
        h = mix(h, static_cast<uint64_t>(rician.L_x) << 32 | static_cast<uint64_t>(rician.L_y));
        h = mix(h, std::bit_cast<uint64_t>(rician.kappa));
        h = mix(h, std::bit_cast<uint64_t>(rician.phi_x));
        h = mix(h, std::bit_cast<uint64_t>(rician.phi_y));
        h = mix(h, static_cast<uint64_t>(csi.mode == CsiErrorModel::Mode::Fixed ? 1 : 2));
        h = mix(h, std::bit_cast<uint64_t>(csi.sigma_e2));
        h = mix(h, static_cast<uint64_t>(csi.pilots));
        h = mix(h, static_cast<uint64_t>(policy.kind) * 8 + static_cast<uint64_t>(policy.q_bits));
        h = mix(h, static_cast<uint64_t>(policy.align_true_psi));
        return h;
    }
};

struct BerPoint {
    double snr_db = 0.0;
    uint64_t errors = 0;
    uint64_t bits = 0;
    double ber = 0.0;
    double ci95 = 0.0;
    uint64_t trials_used = 0;
};

namespace detail {

inline uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t shard_stream(uint64_t fp, double snr_db, int round, uint64_t shard) {
    uint64_t h = mix64(fp ^ std::bit_cast<uint64_t>(snr_db));
    h = mix64(h ^ (0xA0761D6478BD642FULL * static_cast<uint64_t>(round + 1)));
    return mix64(h ^ (shard * 0xD1B54A32D192ED03ULL));
}

inline constexpr uint64_t kShardTrials = 16384;

struct ShardTally {
    uint64_t errors = 0;
    uint64_t trials = 0;
};

// One shard of trials with its own stream. Scratch buffers live for the
// shard; nothing is allocated per trial.
inline ShardTally run_shard(const SystemConfig& cfg, double rho, double n0, uint64_t trials, RngStream rng) {
    const int L = cfg.L();
    const int Nt = cfg.N_t;
    const double se2 = cfg.csi.sigma_e2_at(rho);
    const double zeta = cfg.csi.zeta_at(rho);
    const double err_w = std::sqrt(std::max(0.0, 1.0 - zeta * zeta));
    const auto los = los_steering(cfg.rician);
    const double kappa = std::min(cfg.rician.kappa, 1e12);
    const double a_los = std::sqrt(kappa / (kappa + 1.0));
    const double a_nlos = std::sqrt(1.0 / (kappa + 1.0));
    const bool aligned = cfg.policy.kind != PhasePolicy::Kind::Blind;
    const bool quant = cfg.policy.kind == PhasePolicy::Kind::Quantized;
    const bool true_psi = cfg.policy.align_true_psi && se2 > 0.0;
    const int bits_per = std::max(1, SskSymbol::bits_per_symbol(Nt));

    std::vector<cplx> g(static_cast<size_t>(L) * Nt);  // g[n*L + l]
    std::vector<cplx> hhat(static_cast<size_t>(L)), dh(static_cast<size_t>(L));
    std::vector<cplx> cand(static_cast<size_t>(Nt));

    ShardTally tally;
    tally.trials = trials;
    for (uint64_t t = 0; t < trials; ++t) {
        for (size_t i = 0; i < g.size(); ++i) g[i] = rng.next_cnormal(1.0);
        for (int l = 0; l < L; ++l) hhat[static_cast<size_t>(l)] = a_los * los[static_cast<size_t>(l)] + a_nlos * rng.next_cnormal(1.0);
        if (se2 > 0.0)
            for (int l = 0; l < L; ++l) dh[static_cast<size_t>(l)] = rng.next_cnormal(se2);
        const int nt = static_cast<int>(rng.next_below(static_cast<uint32_t>(Nt)));

        for (int n = 0; n < Nt; ++n) cand[static_cast<size_t>(n)] = {0.0, 0.0};
        cplx err_acc{0.0, 0.0};
        const cplx* gt = g.data() + static_cast<size_t>(nt) * L;
        for (int l = 0; l < L; ++l) {
            const size_t sl = static_cast<size_t>(l);
            cplx w{1.0, 0.0};
            if (aligned) {
                cplx ref = hhat[sl];
                if (true_psi) ref = zeta * hhat[sl] + err_w * dh[sl];  // true channel phase
                const cplx u = gt[l] * ref;
                const double au = std::abs(u);
                if (quant) {
                    const double ph = quantize_phase(-std::arg(u), cfg.policy.q_bits);
                    w = {std::cos(ph), std::sin(ph)};
                } else if (au > 0.0) {
                    w = std::conj(u) / au;
                }
            }
            for (int n = 0; n < Nt; ++n) cand[static_cast<size_t>(n)] += hhat[sl] * w * g[static_cast<size_t>(n) * L + sl];
            if (se2 > 0.0) err_acc += dh[sl] * w * gt[l];
        }

        cplx y = zeta * cand[static_cast<size_t>(nt)] + err_w * err_acc;
        if (n0 > 0.0) y += rng.next_cnormal(n0);

        int best = 0;
        double best_m = std::norm(y - zeta * cand[0]);
        for (int n = 1; n < Nt; ++n) {
            const double m = std::norm(y - zeta * cand[static_cast<size_t>(n)]);
            if (m < best_m) {
                best_m = m;
                best = n;
            }
        }
        tally.errors += static_cast<unsigned>(__builtin_popcount(static_cast<uint32_t>(best ^ nt)));
    }
    (void)bits_per;
    return tally;
}

inline std::vector<ShardTally> run_shards(const SystemConfig& cfg, double snr_db, uint64_t trials, int round) {
    const double rho = db_to_linear(snr_db);
    const double n0 = std::isinf(rho) ? 0.0 : 1.0 / rho;  // P_s = 1, rho = P_s/N_0
    const uint64_t nshards = (trials + kShardTrials - 1) / kShardTrials;
    std::vector<ShardTally> tallies(nshards);
    const uint64_t fp = cfg.fingerprint();
    std::atomic<uint64_t> next{0};
    auto work = [&]() {
        for (;;) {
            const uint64_t s = next.fetch_add(1);
            if (s >= nshards) return;
            const uint64_t count = std::min(kShardTrials, trials - s * kShardTrials);
            tallies[s] = run_shard(cfg, rho, n0, count, RngStream(cfg.seed, shard_stream(fp, snr_db, round, s)));
        }
    };
    unsigned w = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers) : std::thread::hardware_concurrency();
    if (w == 0) w = 1;
    w = static_cast<unsigned>(std::min<uint64_t>(w, nshards));
    if (w <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(w);
        for (unsigned i = 0; i < w; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return tallies;
}

}  // namespace detail

inline constexpr uint64_t kEscalationCap = 10'000'000;
inline constexpr uint64_t kEscalationErrorFloor = 100;

// BER at one SNR point. Deterministic for fixed (seed, config, snr)
// regardless of worker count: shards have a fixed plan and fixed streams,
// and the tallies are integer sums. Points with fewer than 100 errors
// escalate the budget tenfold, up to 1e7 trials.
inline BerPoint run_point(const SystemConfig& cfg, double snr_db) {
    cfg.validate();
    if (cfg.trials == 0) throw std::domain_error("run_point: trials must be > 0");
    const int bits_per = std::max(1, SskSymbol::bits_per_symbol(cfg.N_t));
    uint64_t trials = cfg.trials;
    int round = 0;
    BerPoint p;
    p.snr_db = snr_db;
    for (;;) {
        const auto tallies = detail::run_shards(cfg, snr_db, trials, round);
        p.errors = 0;
        for (const auto& t : tallies) p.errors += t.errors;
        p.trials_used = trials;
        if (!cfg.escalate || p.errors >= kEscalationErrorFloor || trials >= kEscalationCap) break;
        trials = std::min<uint64_t>(trials * 10, kEscalationCap);
        ++round;
    }
    p.bits = p.trials_used * static_cast<uint64_t>(bits_per);
    p.ber = static_cast<double>(p.errors) / static_cast<double>(p.bits);
    p.ci95 = ci95_halfwidth(p.errors, p.bits);
    return p;
}

// Samples of the intelligent-scheme composite eta - eta_hat, drawn per its
// definition: sum_l beta_l (alpha1_l - alpha2_l e^{-j w_l}) with w_l the
// difference of two uniform phases.
inline std::vector<cplx> sample_composite(int L, double kappa, size_t n, RngStream& rng) {
    const double k = std::min(kappa, 1e12);
    const double a_los = std::sqrt(k / (k + 1.0));
    const double a_nlos = std::sqrt(1.0 / (k + 1.0));
    std::vector<cplx> out(n);
    for (auto& z : out) {
        cplx acc{0.0, 0.0};
        for (int l = 0; l < L; ++l) {
            const double a1 = std::abs(rng.next_cnormal(1.0));
            const double a2 = std::abs(rng.next_cnormal(1.0));
            const double beta = std::abs(a_los + a_nlos * rng.next_cnormal(1.0));
            const double w = rng.next_uniform(0.0, 2.0 * kPi) - rng.next_uniform(0.0, 2.0 * kPi);
            acc += beta * (a1 - a2 * cplx{std::cos(-w), std::sin(-w)});
        }
        z = acc;
    }
    return out;
}

// CLT-fit experiment: KS distance between Re(eta - eta_hat) samples and
// the Normal(mu, sigma^2) of the composite moments.
inline std::pair<EmpiricalDistribution, double> fit_composite_distribution(const SystemConfig& cfg,
                                                                           size_t n_samples) {
    if (!cfg.policy.uses_intelligent_detector())
        throw std::domain_error("fit_composite_distribution: intelligent policy required");
    RngStream rng(cfg.seed, detail::mix64(cfg.fingerprint() ^ 0xC1F651C67C62C6E0ULL));
    const auto z = sample_composite(cfg.L(), cfg.rician.kappa, n_samples, rng);
    std::vector<double> re(z.size());
    for (size_t i = 0; i < z.size(); ++i) re[i] = z[i].real();
    const auto m = composite_moments(cfg.L(), cfg.rician.kappa);
    EmpiricalDistribution emp(std::move(re));
    const double s = std::sqrt(m.sigma2);
    const double ks = ks_distance(emp, [&](double x) { return 1.0 - q_function((x - m.mu) / s); });
    return {std::move(emp), ks};
}

// Average aligned-gain ratio under Q-bit phases, relative to continuous
// alignment; converges to sinc(pi/2^Q).
inline double quantized_gain_ratio(int Q, int L, double kappa, size_t realizations, RngStream& rng) {
    const double k = std::min(kappa, 1e12);
    const double a_los = std::sqrt(k / (k + 1.0));
    const double a_nlos = std::sqrt(1.0 / (k + 1.0));
    double num = 0.0, den = 0.0;
    for (size_t r = 0; r < realizations; ++r) {
        for (int l = 0; l < L; ++l) {
            const cplx g = rng.next_cnormal(1.0);
            const cplx h = a_los + a_nlos * rng.next_cnormal(1.0);
            const cplx u = g * h;
            const double phi = -std::arg(u);
            const double d = quantize_phase(phi, Q) - phi;
            num += std::abs(u) * std::cos(d);
            den += std::abs(u);
        }
    }
    return num / den;
}

}  // namespace rissk
