#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "chaoticnn/dynamics.hpp"
#include "chaoticnn/iteration_graph.hpp"
#include "chaoticnn/metric.hpp"

namespace chaoticnn {

/// Constructs a periodic point of G_f within 10^-k of p (plus the d_s
/// truncation tolerance): keep the first k strategy terms of p, then steer
/// the configuration they reach back to p's configuration, and repeat the
/// whole label block forever. The configuration component equals p's, so
/// only the strategy tail moves.
///
/// Throws std::domain_error when Gamma(f) is not strongly connected (the
/// steering segment may not exist).
inline PhasePoint periodic_point_near(const IterationGraph& g, const PhasePoint& p, int k) {
    if (p.config.n_cells() != g.n_cells())
        throw std::invalid_argument("periodic_point_near: dimension mismatch");
    if (k < 1) throw std::invalid_argument("periodic_point_near: precision k must be >= 1");
    const ChaosCertificate cert = strongly_connected(g);
    if (!cert.strongly_connected)
        throw std::domain_error("periodic_point_near: graph of iterations is not strongly connected");

    std::vector<int> pattern;
    pattern.reserve(static_cast<std::size_t>(k));
    std::uint32_t vertex = p.config.index();
    Strategy::Stream terms = p.strategy.stream();
    for (int i = 0; i < k; ++i) {
        const int label = terms.next();
        pattern.push_back(label);
        vertex = g.replay_term(vertex, label);
    }
    const auto segment = steer(g, Configuration::from_index(g.n_cells(), vertex), p.config);
    pattern.insert(pattern.end(), segment->begin(), segment->end());
    return PhasePoint(Strategy::periodic(p.config.n_cells(), std::move(pattern)), p.config);
}

/// Empirical record of how probe pairs with equal configurations and
/// eventually-diverging strategies drift apart under iteration.
struct SensitivityEstimate {
    int probes = 0;
    int max_divergence = 0;  // largest d_e seen over all probes and steps
    /// Step at which d_e first reached 1 for each probe; 0 = never within
    /// the horizon.
    std::vector<int> first_divergence_step;
    /// False when the probed function was not certified chaotic; the
    /// numbers are still reported but carry no Devaney meaning then.
    bool certified_chaotic = false;

    int diverged_count() const {
        int c = 0;
        for (int s : first_divergence_step)
            if (s >= 1) ++c;
        return c;
    }
};

/// For each probe: draw a configuration E and a strategy S, build a second
/// strategy agreeing with S on the first m terms (m random, at most
/// horizon/2) and differing at every later term, iterate both from E, and
/// record when and how far the two configurations diverge.
inline SensitivityEstimate estimate_sensitivity(const BooleanMap& f, int probes, int horizon,
                                                std::uint64_t seed) {
    if (probes < 0 || horizon < 0)
        throw std::invalid_argument("estimate_sensitivity: negative probe count or horizon");
    const int n = f.n_cells();
    SensitivityEstimate estimate;
    estimate.probes = probes;
    estimate.certified_chaotic = certify_devaney_chaos(f).strongly_connected;
    estimate.first_divergence_step.reserve(static_cast<std::size_t>(probes));

    std::mt19937_64 rng(seed);
    for (int probe = 0; probe < probes; ++probe) {
        const Configuration e0 =
            Configuration::from_index(n, static_cast<std::uint32_t>(rng() % state_count(n)));
        const int agree = horizon > 0 ? static_cast<int>(rng() % (static_cast<std::uint64_t>(horizon) / 2 + 1)) : 0;
        Strategy::Stream base = Strategy::uniform_random(n, rng()).stream();

        Configuration x = e0;
        Configuration y = e0;
        int first_step = 0;
        int max_de = 0;
        for (int step = 1; step <= horizon; ++step) {
            const int t = base.next();
            int t2 = t;
            if (step > agree && n > 1) {
                // uniform over [1, N] \ {t}
                const int r = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
                t2 = (r >= t) ? r + 1 : r;
            }
            x = big_f(f, t, x);
            y = big_f(f, t2, y);
            const int de = config_distance(x, y);
            if (de > max_de) max_de = de;
            if (first_step == 0 && de >= 1) first_step = step;
        }
        estimate.first_divergence_step.push_back(first_step);
        if (max_de > estimate.max_divergence) estimate.max_divergence = max_de;
    }
    return estimate;
}

}  // namespace chaoticnn
