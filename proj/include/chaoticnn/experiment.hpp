#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "chaoticnn/boolean_map.hpp"
#include "chaoticnn/iteration_graph.hpp"
#include "chaoticnn/training.hpp"

namespace chaoticnn {

/// One benchmark sweep: a set of iteration functions times a set of MLP
/// architectures, each trained `runs_per_cell` times with consecutive seeds.
struct ExperimentSpec {
    std::vector<std::string> functions = {"f0_2", "f1_1", "g1"};
    std::vector<std::vector<int>> architectures = {{8}, {10}, {8, 4}};
    int runs_per_cell = 25;
    TrainingConfig training;
    std::uint64_t base_seed = 1;
    InputEncoding encoding = InputEncoding::one_hot;

    void validate() const {
        if (functions.empty()) throw std::invalid_argument("ExperimentSpec: no functions");
        if (architectures.empty()) throw std::invalid_argument("ExperimentSpec: no architectures");
        if (runs_per_cell < 1) throw std::invalid_argument("ExperimentSpec: runs_per_cell must be >= 1");
        training.validate();
    }
};

struct RunRecord {
    std::string function;
    std::string architecture;  // hidden sizes joined by 'x', e.g. "8x4"
    std::uint64_t seed = 0;
    bool converged = false;
    int epochs = 0;
    double final_mse = 0.0;
    bool exact_equivalence = false;
};

struct CellResult {
    std::string function;
    std::string architecture;
    int runs = 0;
    int successes = 0;
    double mean_epochs_successful = 0.0;  // NaN when no run converged
    double mean_epochs_all = 0.0;
    double success_rate = 0.0;
    double equivalence_rate = 0.0;  // among converged runs; NaN when none converged
};

struct ExperimentResult {
    std::vector<RunRecord> runs;    // ordered by (function, architecture, seed)
    std::vector<CellResult> cells;  // same ordering, one per (function, architecture)
    std::map<std::string, bool> chaotic;  // per function, from the graph certificate
};

inline std::string architecture_label(const std::vector<int>& hidden) {
    std::string s;
    for (std::size_t i = 0; i < hidden.size(); ++i) {
        if (i) s += "x";
        s += std::to_string(hidden[i]);
    }
    return s;
}

/// Runs the full sweep. Seeds are base_seed + run index within each cell, so
/// any single run can be reproduced in isolation. Every trained net is also
/// checked for bit-exact realization of F_f; convergence alone follows the
/// MSE criterion and is reported separately from that stronger check.
inline ExperimentResult reproduce_table(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult result;
    for (const std::string& fn_name : spec.functions) {
        const BooleanMap f = builtins::by_name(fn_name);
        result.chaotic[fn_name] = certify_devaney_chaos(f).strongly_connected;
        for (const std::vector<int>& hidden : spec.architectures) {
            MlpArchitecture arch;
            arch.n_cells = f.n_cells();
            arch.encoding = spec.encoding;
            arch.hidden = hidden;

            CellResult cell;
            cell.function = fn_name;
            cell.architecture = architecture_label(hidden);
            cell.runs = spec.runs_per_cell;
            long long epochs_all = 0;
            long long epochs_successful = 0;
            int equivalent = 0;
            for (int run = 0; run < spec.runs_per_cell; ++run) {
                TrainingConfig cfg = spec.training;
                cfg.seed = spec.base_seed + static_cast<std::uint64_t>(run);
                auto [params, report] = train(arch, f, cfg);

                RunRecord record;
                record.function = fn_name;
                record.architecture = cell.architecture;
                record.seed = cfg.seed;
                record.converged = report.converged;
                record.epochs = report.epochs_used;
                record.final_mse = report.final_mse;
                record.exact_equivalence = verify_exact_equivalence(arch, params, f).exact;
                epochs_all += report.epochs_used;
                if (report.converged) {
                    ++cell.successes;
                    epochs_successful += report.epochs_used;
                    if (record.exact_equivalence) ++equivalent;
                }
                result.runs.push_back(std::move(record));
            }
            cell.mean_epochs_all =
                static_cast<double>(epochs_all) / static_cast<double>(spec.runs_per_cell);
            cell.mean_epochs_successful =
                cell.successes > 0
                    ? static_cast<double>(epochs_successful) / static_cast<double>(cell.successes)
                    : std::nan("");
            cell.success_rate =
                static_cast<double>(cell.successes) / static_cast<double>(spec.runs_per_cell);
            cell.equivalence_rate = cell.successes > 0 ? static_cast<double>(equivalent) /
                                                             static_cast<double>(cell.successes)
                                                       : std::nan("");
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_mean(double v) {
    if (std::isnan(v)) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string format_rate(double v) {
    if (std::isnan(v)) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f%%", 100.0 * v);
    return buf;
}

}  // namespace detail

/// Human-readable summary: one row per (function, architecture) with mean
/// epochs (successful runs and all runs), success rate, and the fraction of
/// converged nets that realize F_f bit-exactly.
inline void emit_text_table(std::ostream& os, const ExperimentResult& result) {
    os << std::left << std::setw(10) << "function" << std::setw(13) << "chaotic" << std::setw(8)
       << "hidden" << std::setw(12) << "mean epoch" << std::setw(17) << "mean epoch(all)"
       << std::setw(14) << "success rate" << "exact realization\n";
    for (const CellResult& cell : result.cells) {
        const auto it = result.chaotic.find(cell.function);
        const std::string chaotic_tag =
            it != result.chaotic.end() && it->second ? "CHAOTIC" : "NOT CHAOTIC";
        os << std::left << std::setw(10) << cell.function << std::setw(13) << chaotic_tag
           << std::setw(8) << cell.architecture << std::setw(12)
           << detail::format_mean(cell.mean_epochs_successful) << std::setw(17)
           << detail::format_mean(cell.mean_epochs_all) << std::setw(14)
           << detail::format_rate(cell.success_rate)
           << detail::format_rate(cell.equivalence_rate) << "\n";
    }
}

/// One row per run; the aggregates in the text table are recomputable from
/// this output alone.
inline void emit_csv(std::ostream& os, const ExperimentResult& result) {
    os << "function,architecture,seed,chaotic,converged,epochs,final_mse,exact_equivalence\n";
    for (const RunRecord& run : result.runs) {
        const auto it = result.chaotic.find(run.function);
        os << run.function << "," << run.architecture << "," << run.seed << ","
           << (it != result.chaotic.end() && it->second ? 1 : 0) << "," << (run.converged ? 1 : 0)
           << "," << run.epochs << "," << detail::format_double(run.final_mse) << ","
           << (run.exact_equivalence ? 1 : 0) << "\n";
    }
}

}  // namespace chaoticnn
