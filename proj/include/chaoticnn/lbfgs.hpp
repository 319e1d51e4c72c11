#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chaoticnn {

struct LbfgsOptions {
    int memory = 10;
    double wolfe_c1 = 1e-4;  // sufficient decrease
    double wolfe_c2 = 0.9;   // curvature
    int max_line_search_trials = 20;

    void validate() const {
        if (memory < 1) throw std::invalid_argument("LbfgsOptions: memory must be >= 1");
        if (!(0.0 < wolfe_c1 && wolfe_c1 < wolfe_c2 && wolfe_c2 < 1.0))
            throw std::invalid_argument("LbfgsOptions: need 0 < c1 < c2 < 1");
        if (max_line_search_trials < 1)
            throw std::invalid_argument("LbfgsOptions: need at least one line-search trial");
    }
};

enum class LbfgsStatus { ok, line_search_failed, gradient_too_small };

inline std::string to_string(LbfgsStatus s) {
    switch (s) {
        case LbfgsStatus::ok: return "ok";
        case LbfgsStatus::line_search_failed: return "line search failed";
        case LbfgsStatus::gradient_too_small: return "gradient too small";
    }
    return "unknown";
}

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

/// Minimizer of the interpolating cubic through (a, fa, da) and (b, fb, db)
/// (Nocedal & Wright, eq. 3.59). Returns NaN when the formula degenerates.
inline double cubic_minimizer(double a, double fa, double da, double b, double fb, double db) {
    const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
    const double disc = d1 * d1 - da * db;
    if (disc < 0.0) return std::nan("");
    const double d2 = (b > a ? 1.0 : -1.0) * std::sqrt(disc);
    const double denom = db - da + 2.0 * d2;
    if (denom == 0.0) return std::nan("");
    return b - (b - a) * (db + d2 - d1) / denom;
}

}  // namespace detail

/// Limited-memory BFGS with a strong Wolfe line search.
///
/// The caller drives the outer loop one accepted iteration at a time, which
/// keeps per-iteration stopping rules (such as an error threshold) outside
/// the optimizer. Direction updates use the standard two-loop recursion;
/// the line search brackets and zooms with cubic interpolation (Nocedal &
/// Wright, algorithms 3.5 and 3.6). When a search along the quasi-Newton
/// direction fails, the memory is cleared and one steepest-descent attempt
/// is made before reporting failure.
class LbfgsMinimizer {
public:
    /// Objective: returns f(x) and writes the gradient into `grad`.
    using Objective = std::function<double(const std::vector<double>&, std::vector<double>&)>;

    LbfgsMinimizer(Objective fn, std::vector<double> x0, LbfgsOptions opts = {})
        : fn_(std::move(fn)), opts_(opts), x_(std::move(x0)), g_(x_.size()),
          x_trial_(x_.size()), g_trial_(x_.size()) {
        opts_.validate();
        if (x_.empty()) throw std::invalid_argument("LbfgsMinimizer: empty parameter vector");
        f_ = evaluate(x_, g_);
    }

    /// One accepted quasi-Newton iteration. On `ok` the objective value has
    /// not increased: the accepted step satisfies the Wolfe
    /// sufficient-decrease condition (a strict decrease up to floating-point
    /// resolution).
    LbfgsStatus step() {
        if (detail::norm_inf(g_) < kGradientFloor) return LbfgsStatus::gradient_too_small;

        std::vector<double> direction = memory_.empty() ? negative_gradient() : two_loop_direction();
        if (detail::dot(direction, g_) >= 0.0) {
            memory_.clear();
            direction = negative_gradient();
        }
        double alpha0 = memory_.empty() ? 1.0 / std::max(1.0, detail::norm2(direction)) : 1.0;

        LineSearchOutcome ls = wolfe_search(direction, alpha0);
        if (!ls.success && !memory_.empty()) {
            memory_.clear();
            direction = negative_gradient();
            ls = wolfe_search(direction, 1.0 / std::max(1.0, detail::norm2(direction)));
        }
        if (!ls.success) return LbfgsStatus::line_search_failed;

        std::vector<double> s(x_.size()), y(x_.size());
        for (std::size_t i = 0; i < x_.size(); ++i) {
            s[i] = ls.alpha * direction[i];
            y[i] = g_trial_[i] - g_[i];
        }
        const double sy = detail::dot(s, y);
        if (sy > 1e-12 * detail::norm2(s) * detail::norm2(y)) {
            memory_.push_back({std::move(s), std::move(y), 1.0 / sy});
            if (static_cast<int>(memory_.size()) > opts_.memory) memory_.pop_front();
        }
        x_ = x_trial_;
        g_ = g_trial_;
        f_ = ls.f;
        return LbfgsStatus::ok;
    }

    const std::vector<double>& x() const { return x_; }
    double f() const { return f_; }
    const std::vector<double>& gradient() const { return g_; }
    double gradient_inf_norm() const { return detail::norm_inf(g_); }
    long evaluations() const { return evaluations_; }

private:
    static constexpr double kGradientFloor = 1e-14;

    struct Correction {
        std::vector<double> s;
        std::vector<double> y;
        double rho;
    };

    struct LineSearchOutcome {
        bool success = false;
        double alpha = 0.0;
        double f = 0.0;
    };

    double evaluate(const std::vector<double>& x, std::vector<double>& grad) {
        ++evaluations_;
        return fn_(x, grad);
    }

    std::vector<double> negative_gradient() const {
        std::vector<double> d(g_.size());
        for (std::size_t i = 0; i < g_.size(); ++i) d[i] = -g_[i];
        return d;
    }

    std::vector<double> two_loop_direction() const {
        std::vector<double> q = g_;
        std::vector<double> alpha(memory_.size());
        for (std::size_t i = memory_.size(); i-- > 0;) {
            const Correction& c = memory_[i];
            alpha[i] = c.rho * detail::dot(c.s, q);
            for (std::size_t j = 0; j < q.size(); ++j) q[j] -= alpha[i] * c.y[j];
        }
        const Correction& newest = memory_.back();
        const double gamma = detail::dot(newest.s, newest.y) / detail::dot(newest.y, newest.y);
        for (double& v : q) v *= gamma;
        for (std::size_t i = 0; i < memory_.size(); ++i) {
            const Correction& c = memory_[i];
            const double beta = c.rho * detail::dot(c.y, q);
            for (std::size_t j = 0; j < q.size(); ++j) q[j] += (alpha[i] - beta) * c.s[j];
        }
        for (double& v : q) v = -v;
        return q;
    }

    /// phi(alpha) = f(x + alpha * d); evaluates into x_trial_/g_trial_.
    double phi(const std::vector<double>& d, double alpha, double& dphi) {
        for (std::size_t i = 0; i < x_.size(); ++i) x_trial_[i] = x_[i] + alpha * d[i];
        const double value = evaluate(x_trial_, g_trial_);
        dphi = detail::dot(g_trial_, d);
        return value;
    }

    LineSearchOutcome wolfe_search(const std::vector<double>& d, double alpha_first) {
        const double phi0 = f_;
        const double dphi0 = detail::dot(g_, d);
        if (!(dphi0 < 0.0)) return {};

        int trials_left = opts_.max_line_search_trials;
        double alpha_prev = 0.0, phi_prev = phi0, dphi_prev = dphi0;
        double alpha = alpha_first;
        bool first = true;
        while (trials_left-- > 0) {
            double dphi = 0.0;
            const double value = phi(d, alpha, dphi);
            if (!std::isfinite(value) ||
                value > phi0 + opts_.wolfe_c1 * alpha * dphi0 || (!first && value >= phi_prev))
                return zoom(d, phi0, dphi0, alpha_prev, phi_prev, dphi_prev, alpha, value, dphi,
                            trials_left);
            if (std::abs(dphi) <= -opts_.wolfe_c2 * dphi0) return {true, alpha, value};
            if (dphi >= 0.0)
                return zoom(d, phi0, dphi0, alpha, value, dphi, alpha_prev, phi_prev, dphi_prev,
                            trials_left);
            alpha_prev = alpha;
            phi_prev = value;
            dphi_prev = dphi;
            alpha = std::min(2.5 * alpha, 1e10);
            first = false;
        }
        return {};
    }

    /// lo always satisfies the sufficient-decrease condition; the minimizer
    /// is bracketed between lo and hi (Nocedal & Wright, algorithm 3.6).
    LineSearchOutcome zoom(const std::vector<double>& d, double phi0, double dphi0, double alpha_lo,
                           double phi_lo, double dphi_lo, double alpha_hi, double phi_hi,
                           double dphi_hi, int trials_left) {
        while (trials_left-- > 0) {
            const double width = std::abs(alpha_hi - alpha_lo);
            if (width < 1e-16 * std::max(1.0, std::abs(alpha_lo))) return {};
            double alpha = detail::cubic_minimizer(alpha_lo, phi_lo, dphi_lo, alpha_hi, phi_hi, dphi_hi);
            const double lower = std::min(alpha_lo, alpha_hi) + 0.1 * width;
            const double upper = std::max(alpha_lo, alpha_hi) - 0.1 * width;
            if (!std::isfinite(alpha) || alpha < lower || alpha > upper)
                alpha = 0.5 * (alpha_lo + alpha_hi);

            double dphi = 0.0;
            const double value = phi(d, alpha, dphi);
            if (!std::isfinite(value) || value > phi0 + opts_.wolfe_c1 * alpha * dphi0 ||
                value >= phi_lo) {
                alpha_hi = alpha;
                phi_hi = value;
                dphi_hi = dphi;
            } else {
                if (std::abs(dphi) <= -opts_.wolfe_c2 * dphi0) return {true, alpha, value};
                if (dphi * (alpha_hi - alpha_lo) >= 0.0) {
                    alpha_hi = alpha_lo;
                    phi_hi = phi_lo;
                    dphi_hi = dphi_lo;
                }
                alpha_lo = alpha;
                phi_lo = value;
                dphi_lo = dphi;
            }
        }
        return {};
    }

    Objective fn_;
    LbfgsOptions opts_;
    std::vector<double> x_;
    std::vector<double> g_;
    std::vector<double> x_trial_;
    std::vector<double> g_trial_;
    double f_ = 0.0;
    long evaluations_ = 0;
    std::deque<Correction> memory_;
};

}  // namespace chaoticnn
