#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chaoticnn/lbfgs.hpp"
#include "chaoticnn/mlp.hpp"
#include "chaoticnn/strategy.hpp"

namespace chaoticnn {

struct TrainingConfig {
    double mse_threshold = 1e-2;
    int max_epochs = 1000;
    int lbfgs_memory = 10;
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
    double init_scale = 0.5;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(mse_threshold > 0.0))
            throw std::invalid_argument("TrainingConfig: threshold must be > 0");
        if (max_epochs < 0) throw std::invalid_argument("TrainingConfig: max_epochs must be >= 0");
        if (!(0.0 < wolfe_c1 && wolfe_c1 < wolfe_c2 && wolfe_c2 < 1.0))
            throw std::invalid_argument("TrainingConfig: need 0 < c1 < c2 < 1");
        if (!(init_scale > 0.0)) throw std::invalid_argument("TrainingConfig: init_scale must be > 0");
    }
};

struct TrainingReport {
    bool converged = false;
    int epochs_used = 0;
    double final_mse = 0.0;
    std::uint64_t seed = 0;
    std::string architecture;
    std::string note;               // diagnostics when the optimizer stopped early
    std::vector<double> mse_trace;  // value after each accepted epoch
};

/// Full-batch L-BFGS training of F_f. One epoch is one accepted outer
/// L-BFGS iteration; training stops as soon as the MSE drops below the
/// threshold or the epoch budget is spent. Deterministic given cfg.seed.
inline std::pair<MlpParameters, TrainingReport> train(const MlpArchitecture& arch,
                                                      const BooleanMap& f,
                                                      const TrainingConfig& cfg) {
    arch.validate();
    cfg.validate();
    if (arch.n_cells != f.n_cells())
        throw std::invalid_argument("train: architecture and map disagree on N");

    const std::vector<TrainingPair> set = build_training_set(f, arch.encoding);
    MlpParameters params = MlpParameters::random(arch, cfg.init_scale, cfg.seed);

    TrainingReport report;
    report.seed = cfg.seed;
    report.architecture = arch.summary();

    if (cfg.max_epochs == 0) {
        report.final_mse = mse(params, set);
        return {std::move(params), std::move(report)};
    }

    MlpParameters scratch = params;
    LbfgsOptions opts;
    opts.memory = cfg.lbfgs_memory;
    opts.wolfe_c1 = cfg.wolfe_c1;
    opts.wolfe_c2 = cfg.wolfe_c2;
    auto objective = [&scratch, &set](const std::vector<double>& x, std::vector<double>& grad) {
        scratch.assign_flat(x);
        return mse_and_gradient(scratch, set, grad);
    };
    LbfgsMinimizer minimizer(objective, params.flatten(), opts);

    if (minimizer.f() < cfg.mse_threshold) {
        report.converged = true;
        report.final_mse = minimizer.f();
        return {std::move(params), std::move(report)};
    }

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        const LbfgsStatus status = minimizer.step();
        if (status != LbfgsStatus::ok) {
            report.note = to_string(status) + " at epoch " + std::to_string(epoch);
            break;
        }
        report.epochs_used = epoch;
        report.mse_trace.push_back(minimizer.f());
        if (minimizer.f() < cfg.mse_threshold) {
            report.converged = true;
            break;
        }
    }
    report.final_mse = minimizer.f();
    params.assign_flat(minimizer.x());
    return {std::move(params), std::move(report)};
}

/// Runs the trained network as the recurrent system: the thresholded output
/// is fed back as the boolean state while the strategy drives the integer
/// channel. Returns (x^1, ..., x^steps).
inline std::vector<Configuration> recurrent_trajectory(const MlpArchitecture& arch,
                                                       const MlpParameters& params,
                                                       const Configuration& x0, const Strategy& s,
                                                       int steps) {
    if (x0.n_cells() != arch.n_cells || s.n_cells() != arch.n_cells)
        throw std::invalid_argument("recurrent_trajectory: dimension mismatch");
    if (steps < 0) throw std::invalid_argument("recurrent_trajectory: steps must be >= 0");
    if (!params.matches(arch))
        throw std::invalid_argument("recurrent_trajectory: parameters do not match architecture");
    std::vector<Configuration> trajectory;
    trajectory.reserve(static_cast<std::size_t>(steps));
    Configuration x = x0;
    Strategy::Stream terms = s.stream();
    for (int n = 0; n < steps; ++n) {
        x = threshold_output(detail::forward_layers(params, encode_input(terms.next(), x, arch.encoding)));
        trajectory.push_back(x);
    }
    return trajectory;
}

struct EquivalenceFailure {
    int k;
    Configuration input;
    Configuration expected;
    Configuration actual;
};

struct EquivalenceResult {
    bool exact = false;
    std::vector<EquivalenceFailure> failures;
};

/// Checks bit-exact realization of F_f on every one of the N * 2^N inputs.
/// Exactness here is what licenses transferring the chaos certificate to
/// the network: a merely small MSE does not.
inline EquivalenceResult verify_exact_equivalence(const MlpArchitecture& arch,
                                                  const MlpParameters& params, const BooleanMap& f) {
    if (arch.n_cells != f.n_cells())
        throw std::invalid_argument("verify_exact_equivalence: dimension mismatch");
    if (!params.matches(arch))
        throw std::invalid_argument("verify_exact_equivalence: parameters do not match architecture");
    EquivalenceResult result;
    result.exact = true;
    for (int k = 1; k <= f.n_cells(); ++k) {
        for (std::uint32_t i = 0; i < state_count(f.n_cells()); ++i) {
            const Configuration x = Configuration::from_index(f.n_cells(), i);
            const Configuration expected = big_f(f, k, x);
            const Configuration actual =
                threshold_output(detail::forward_layers(params, encode_input(k, x, arch.encoding)));
            if (actual != expected) {
                result.exact = false;
                result.failures.push_back({k, x, expected, actual});
            }
        }
    }
    return result;
}

}  // namespace chaoticnn
