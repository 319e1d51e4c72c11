#pragma once

#include <stdexcept>
#include <vector>

#include "chaoticnn/boolean_map.hpp"
#include "chaoticnn/configuration.hpp"
#include "chaoticnn/strategy.hpp"

namespace chaoticnn {

/// A point of the phase space X = [1,N]^inf x B^N.
struct PhasePoint {
    Strategy strategy;
    Configuration config;

    PhasePoint(Strategy s, Configuration c) : strategy(std::move(s)), config(std::move(c)) {
        if (strategy.n_cells() != config.n_cells())
            throw std::invalid_argument("PhasePoint: dimension mismatch");
    }
};

inline Configuration apply_map(const BooleanMap& f, const Configuration& x) {
    return f.apply(x);
}

/// F_f(k, x): cell k takes the value f(x)_k, every other cell keeps its value.
inline Configuration big_f(const BooleanMap& f, int k, const Configuration& x) {
    if (x.n_cells() != f.n_cells())
        throw std::invalid_argument("big_f: dimension mismatch");
    return x.with_bit(k, f.apply(x).bit(k));
}

/// Chaotic iterations: x^n updates only the cell named by the n-th strategy
/// term. Returns (x^1, ..., x^steps); strategy terms are consumed in
/// emission order starting at the first term.
inline std::vector<Configuration> chaotic_iterate(const BooleanMap& f, const Configuration& x0,
                                                  const Strategy& s, int steps) {
    if (x0.n_cells() != f.n_cells() || s.n_cells() != f.n_cells())
        throw std::invalid_argument("chaotic_iterate: dimension mismatch");
    if (steps < 0) throw std::invalid_argument("chaotic_iterate: steps must be >= 0");
    std::vector<Configuration> trajectory;
    trajectory.reserve(static_cast<std::size_t>(steps));
    Configuration x = x0;
    Strategy::Stream terms = s.stream();
    for (int n = 0; n < steps; ++n) {
        x = big_f(f, terms.next(), x);
        trajectory.push_back(x);
    }
    return trajectory;
}

/// One step of the phase-space map: G_f(S, E) = (sigma(S), F_f(i(S), E)).
inline PhasePoint gf_step(const BooleanMap& f, const PhasePoint& p) {
    if (p.config.n_cells() != f.n_cells())
        throw std::invalid_argument("gf_step: dimension mismatch");
    return PhasePoint(p.strategy.shift(), big_f(f, p.strategy.initial(), p.config));
}

inline Strategy shift(const Strategy& s) { return s.shift(); }
inline int initial(const Strategy& s) { return s.initial(); }

}  // namespace chaoticnn
