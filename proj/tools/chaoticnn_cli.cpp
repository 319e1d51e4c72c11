// Command-line front end: chaos certification, iteration, distances,
// training, verification, and the benchmark table.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaoticnn/chaoticnn.hpp"

namespace {

using namespace chaoticnn;

constexpr int kExitSuccess = 0;
constexpr int kExitNegative = 1;  // certification-negative or verification failure
constexpr int kExitUsage = 2;

BooleanMap load_function(const std::string& name_or_path) {
    if (std::filesystem::exists(name_or_path)) {
        std::ifstream in(name_or_path);
        if (!in) throw std::invalid_argument("cannot open truth table file: " + name_or_path);
        return read_truth_table(in, std::filesystem::path(name_or_path).stem().string());
    }
    return builtins::by_name(name_or_path);
}

std::vector<int> parse_hidden(const std::string& text) {
    std::vector<int> hidden;
    std::istringstream hs(text);
    std::string part;
    while (std::getline(hs, part, ',')) hidden.push_back(std::stoi(part));
    return hidden;
}

int run_certify(const std::string& fn_name, const std::string& graph_file) {
    const BooleanMap f = load_function(fn_name);
    const IterationGraph graph = build_iteration_graph(f);
    if (!graph_file.empty()) {
        std::ofstream out(graph_file);
        if (!out) throw std::runtime_error("cannot write graph file: " + graph_file);
        write_iteration_graph(out, graph);
    }
    const ChaosCertificate cert = strongly_connected(graph, f.name(), f.hash());
    if (cert.strongly_connected) {
        std::cout << "CHAOTIC (Devaney, via Theorem: strongly connected)\n";
        std::cout << "scc_count = " << cert.scc_count << "\n";
        return kExitSuccess;
    }
    std::cout << "NOT CHAOTIC\n";
    std::cout << "scc_count = " << cert.scc_count << "\n";
    if (cert.witness) {
        std::cout << "witness: no path "
                  << Configuration::from_index(f.n_cells(), cert.witness->first).to_string()
                  << " -> "
                  << Configuration::from_index(f.n_cells(), cert.witness->second).to_string()
                  << "\n";
    }
    return kExitNegative;
}

int run_iterate(const std::string& fn_name, const std::string& x0_bits,
                const std::string& strategy_spec, int steps) {
    const BooleanMap f = load_function(fn_name);
    const Configuration x0 = Configuration::parse(x0_bits);
    const Strategy s = Strategy::parse(f.n_cells(), strategy_spec);
    for (const Configuration& x : chaotic_iterate(f, x0, s, steps))
        std::cout << x.to_string() << "\n";
    return kExitSuccess;
}

int run_distance(const std::string& bits1, const std::string& strat1, const std::string& bits2,
                 const std::string& strat2, int trunc_depth) {
    const Configuration e1 = Configuration::parse(bits1);
    const Configuration e2 = Configuration::parse(bits2);
    const int n = e1.n_cells();
    const PhasePoint p1(Strategy::parse(n, strat1), e1);
    const PhasePoint p2(Strategy::parse(n, strat2), e2);
    const TruncationPolicy trunc(trunc_depth);
    std::cout << std::setprecision(17);
    std::cout << "d_e = " << config_distance(e1, e2) << "\n";
    std::cout << "d_s = " << strategy_distance(p1.strategy, p2.strategy, trunc) << "\n";
    std::cout << "d   = " << phase_distance(p1, p2, trunc) << "\n";
    return kExitSuccess;
}

int run_train(const std::string& fn_name, const std::string& hidden, std::uint64_t seed,
              const std::string& encoding, const std::string& out_file, double threshold,
              int max_epochs) {
    const BooleanMap f = load_function(fn_name);
    MlpArchitecture arch;
    arch.n_cells = f.n_cells();
    arch.encoding = parse_encoding(encoding);
    arch.hidden = parse_hidden(hidden);

    TrainingConfig cfg;
    cfg.seed = seed;
    cfg.mse_threshold = threshold;
    cfg.max_epochs = max_epochs;
    const auto [params, report] = train(arch, f, cfg);

    std::cout << (report.converged ? "converged" : "did not converge") << " after "
              << report.epochs_used << " epochs, final mse = " << std::setprecision(6)
              << report.final_mse << "\n";
    if (!report.note.empty()) std::cout << "note: " << report.note << "\n";
    if (!out_file.empty()) {
        std::ofstream out(out_file);
        if (!out) throw std::runtime_error("cannot write model file: " + out_file);
        write_model(out, arch, params);
        std::cout << "model written to " << out_file << "\n";
    }
    return report.converged ? kExitSuccess : kExitNegative;
}

int run_verify(const std::string& fn_name, const std::string& model_file) {
    const BooleanMap f = load_function(fn_name);
    std::ifstream in(model_file);
    if (!in) throw std::runtime_error("cannot open model file: " + model_file);
    const auto [arch, params] = read_model(in);
    const EquivalenceResult result = verify_exact_equivalence(arch, params, f);
    if (result.exact) {
        std::cout << "exact realization of F_" << f.name() << " on all "
                  << f.n_cells() * state_count(f.n_cells()) << " inputs\n";
        return kExitSuccess;
    }
    std::cout << result.failures.size() << " mismatches:\n";
    for (const EquivalenceFailure& failure : result.failures)
        std::cout << "  k=" << failure.k << " x=" << failure.input.to_string() << " expected "
                  << failure.expected.to_string() << " got " << failure.actual.to_string() << "\n";
    return kExitNegative;
}

int run_reproduce(int runs, std::uint64_t seed, const std::string& csv_file,
                  const std::string& functions_csv, int max_epochs) {
    ExperimentSpec spec;
    spec.runs_per_cell = runs;
    spec.base_seed = seed;
    spec.training.max_epochs = max_epochs;
    if (!functions_csv.empty()) {
        spec.functions.clear();
        std::istringstream fs(functions_csv);
        std::string part;
        while (std::getline(fs, part, ',')) spec.functions.push_back(part);
    }
    const ExperimentResult result = reproduce_table(spec);
    emit_text_table(std::cout, result);
    if (!csv_file.empty()) {
        std::ofstream out(csv_file);
        if (!out) throw std::runtime_error("cannot write csv file: " + csv_file);
        emit_csv(out, result);
        std::cout << "per-run csv written to " << csv_file << "\n";
    }
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chaotic iterations on boolean networks, Devaney-chaos certification, "
                 "and recurrent MLPs trained to realize them"};
    app.require_subcommand(1);

    std::string fn_name, graph_file;
    auto* certify = app.add_subcommand("certify", "Certify Devaney chaos via strong connectivity");
    certify->add_option("function", fn_name, "builtin name or truth-table file")->required();
    certify->add_option("--emit-graph", graph_file, "write the graph of iterations to a file");

    std::string it_fn, it_x0, it_strategy;
    int it_steps = 10;
    auto* iterate = app.add_subcommand("iterate", "Run chaotic iterations");
    iterate->add_option("function", it_fn)->required();
    iterate->add_option("--x0", it_x0, "initial configuration bits, cell 1 first")->required();
    iterate->add_option("--strategy", it_strategy, "e.g. periodic:1,2 or prefix:2;random:7")->required();
    iterate->add_option("--steps", it_steps)->check(CLI::NonNegativeNumber);

    std::string d_bits1, d_strat1, d_bits2, d_strat2;
    int d_depth = 16;
    auto* distance = app.add_subcommand("distance", "Distance between two phase points");
    distance->add_option("bits1", d_bits1)->required();
    distance->add_option("strategy1", d_strat1)->required();
    distance->add_option("bits2", d_bits2)->required();
    distance->add_option("strategy2", d_strat2)->required();
    distance->add_option("--trunc-depth", d_depth, "strategy terms compared")->check(CLI::PositiveNumber);

    std::string t_fn, t_hidden = "10", t_enc = "one_hot", t_out;
    std::uint64_t t_seed = 0;
    double t_threshold = 1e-2;
    int t_max_epochs = 1000;
    auto* train_cmd = app.add_subcommand("train", "Train an MLP to realize F_f");
    train_cmd->add_option("function", t_fn)->required();
    train_cmd->add_option("--hidden", t_hidden, "hidden layer sizes, e.g. 10 or 8,4");
    train_cmd->add_option("--seed", t_seed);
    train_cmd->add_option("--enc", t_enc)->check(CLI::IsMember({"one_hot", "scalar"}));
    train_cmd->add_option("--out", t_out, "model output file");
    train_cmd->add_option("--mse-threshold", t_threshold);
    train_cmd->add_option("--max-epochs", t_max_epochs);

    std::string v_fn, v_model;
    auto* verify = app.add_subcommand("verify", "Check bit-exact realization of F_f");
    verify->add_option("function", v_fn)->required();
    verify->add_option("--model", v_model)->required();

    int r_runs = 25, r_max_epochs = 1000;
    std::uint64_t r_seed = 1;
    std::string r_csv, r_functions;
    auto* reproduce = app.add_subcommand("reproduce-table", "Training sweep over functions and architectures");
    reproduce->add_option("--runs", r_runs)->check(CLI::PositiveNumber);
    reproduce->add_option("--seed", r_seed);
    reproduce->add_option("--csv", r_csv, "write one row per run");
    reproduce->add_option("--functions", r_functions, "comma-separated builtin names");
    reproduce->add_option("--max-epochs", r_max_epochs);

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(certify)) return run_certify(fn_name, graph_file);
        if (app.got_subcommand(iterate)) return run_iterate(it_fn, it_x0, it_strategy, it_steps);
        if (app.got_subcommand(distance))
            return run_distance(d_bits1, d_strat1, d_bits2, d_strat2, d_depth);
        if (app.got_subcommand(train_cmd))
            return run_train(t_fn, t_hidden, t_seed, t_enc, t_out, t_threshold, t_max_epochs);
        if (app.got_subcommand(verify)) return run_verify(v_fn, v_model);
        if (app.got_subcommand(reproduce))
            return run_reproduce(r_runs, r_seed, r_csv, r_functions, r_max_epochs);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
