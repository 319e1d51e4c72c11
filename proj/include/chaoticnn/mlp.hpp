#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chaoticnn/boolean_map.hpp"
#include "chaoticnn/configuration.hpp"
#include "chaoticnn/dynamics.hpp"

namespace chaoticnn {

/// How the updated-cell index k is presented to the network alongside the
/// N boolean state inputs: either a one-hot block of N inputs or a single
/// channel carrying k/N.
enum class InputEncoding { one_hot, scalar };

inline std::string encoding_name(InputEncoding enc) {
    return enc == InputEncoding::one_hot ? "one_hot" : "scalar";
}

inline InputEncoding parse_encoding(const std::string& name) {
    if (name == "one_hot") return InputEncoding::one_hot;
    if (name == "scalar") return InputEncoding::scalar;
    throw std::invalid_argument("unknown input encoding: " + name);
}

/// Shape of a perceptron realizing F_f: sigmoid hidden layers (one or two)
/// and N linear output neurons.
struct MlpArchitecture {
    int n_cells = 0;
    InputEncoding encoding = InputEncoding::one_hot;
    std::vector<int> hidden;

    void validate() const {
        if (n_cells < 1 || n_cells > kMaxCells)
            throw std::invalid_argument("MlpArchitecture: n_cells must be in [1, 20]");
        if (hidden.empty() || hidden.size() > 2)
            throw std::invalid_argument("MlpArchitecture: one or two hidden layers required");
        for (int h : hidden)
            if (h < 1) throw std::invalid_argument("MlpArchitecture: hidden sizes must be >= 1");
    }

    int input_width() const {
        return n_cells + (encoding == InputEncoding::one_hot ? n_cells : 1);
    }
    int output_width() const { return n_cells; }

    /// Widths of every layer boundary: input, hidden..., output.
    std::vector<int> layer_widths() const {
        std::vector<int> w;
        w.push_back(input_width());
        for (int h : hidden) w.push_back(h);
        w.push_back(output_width());
        return w;
    }

    std::string hidden_summary() const {
        std::string s;
        for (std::size_t i = 0; i < hidden.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(hidden[i]);
        }
        return s;
    }

    std::string summary() const {
        return "N=" + std::to_string(n_cells) + " enc=" + encoding_name(encoding) +
               " hidden=" + hidden_summary();
    }

    friend bool operator==(const MlpArchitecture& a, const MlpArchitecture& b) {
        return a.n_cells == b.n_cells && a.encoding == b.encoding && a.hidden == b.hidden;
    }
};

/// One dense layer: `rows` outputs, `cols` inputs, row-major weights.
struct LayerParams {
    int rows = 0;
    int cols = 0;
    std::vector<double> weights;
    std::vector<double> biases;

    double weight(int r, int c) const { return weights[static_cast<std::size_t>(r) * cols + c]; }
};

struct MlpParameters {
    std::vector<LayerParams> layers;

    static MlpParameters zeros(const MlpArchitecture& arch) {
        arch.validate();
        MlpParameters p;
        const std::vector<int> widths = arch.layer_widths();
        for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
            LayerParams layer;
            layer.rows = widths[l + 1];
            layer.cols = widths[l];
            layer.weights.assign(static_cast<std::size_t>(layer.rows) * layer.cols, 0.0);
            layer.biases.assign(static_cast<std::size_t>(layer.rows), 0.0);
            p.layers.push_back(std::move(layer));
        }
        return p;
    }

    /// Weights and biases i.i.d. uniform on [-scale, scale]. Draws come from
    /// std::mt19937_64 mapped through the top 53 bits, so a seed produces the
    /// same parameters on every platform.
    static MlpParameters random(const MlpArchitecture& arch, double scale, std::uint64_t seed) {
        MlpParameters p = zeros(arch);
        std::mt19937_64 engine(seed);
        auto draw = [&engine, scale]() {
            const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;  // [0, 1)
            return (2.0 * u - 1.0) * scale;
        };
        for (LayerParams& layer : p.layers) {
            for (double& w : layer.weights) w = draw();
            for (double& b : layer.biases) b = draw();
        }
        return p;
    }

    std::size_t parameter_count() const {
        std::size_t n = 0;
        for (const LayerParams& layer : layers) n += layer.weights.size() + layer.biases.size();
        return n;
    }

    bool matches(const MlpArchitecture& arch) const {
        const std::vector<int> widths = arch.layer_widths();
        if (layers.size() + 1 != widths.size()) return false;
        for (std::size_t l = 0; l < layers.size(); ++l)
            if (layers[l].cols != widths[l] || layers[l].rows != widths[l + 1]) return false;
        return true;
    }

    bool all_finite() const {
        for (const LayerParams& layer : layers) {
            for (double w : layer.weights)
                if (!std::isfinite(w)) return false;
            for (double b : layer.biases)
                if (!std::isfinite(b)) return false;
        }
        return true;
    }

    std::vector<double> flatten() const {
        std::vector<double> flat;
        flat.reserve(parameter_count());
        for (const LayerParams& layer : layers) {
            flat.insert(flat.end(), layer.weights.begin(), layer.weights.end());
            flat.insert(flat.end(), layer.biases.begin(), layer.biases.end());
        }
        return flat;
    }

    void assign_flat(const std::vector<double>& flat) {
        if (flat.size() != parameter_count())
            throw std::invalid_argument("MlpParameters: flat size mismatch");
        std::size_t at = 0;
        for (LayerParams& layer : layers) {
            for (double& w : layer.weights) w = flat[at++];
            for (double& b : layer.biases) b = flat[at++];
        }
    }
};

/// Numerically stable logistic sigmoid.
inline double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

/// Network input for the pair (k, x): the N cell states as 0/1 values,
/// followed by the integer channel (one-hot block or k/N).
inline std::vector<double> encode_input(int k, const Configuration& x, InputEncoding enc) {
    const int n = x.n_cells();
    if (k < 1 || k > n) throw std::out_of_range("encode_input: cell index out of [1, N]");
    std::vector<double> input;
    input.reserve(static_cast<std::size_t>(n) + (enc == InputEncoding::one_hot ? n : 1));
    for (int i = 1; i <= n; ++i) input.push_back(x.bit(i) ? 1.0 : 0.0);
    if (enc == InputEncoding::one_hot) {
        for (int i = 1; i <= n; ++i) input.push_back(i == k ? 1.0 : 0.0);
    } else {
        input.push_back(static_cast<double>(k) / static_cast<double>(n));
    }
    return input;
}

namespace detail {

/// Applies the layers to `input`: sigmoid on every layer except the last,
/// which stays linear. When `activations` is given it receives the input
/// and every layer output (for backpropagation).
inline std::vector<double> forward_layers(const MlpParameters& params,
                                          const std::vector<double>& input,
                                          std::vector<std::vector<double>>* activations = nullptr) {
    if (params.layers.empty() || input.size() != static_cast<std::size_t>(params.layers.front().cols))
        throw std::invalid_argument("forward: input width mismatch");
    if (activations) {
        activations->clear();
        activations->push_back(input);
    }
    std::vector<double> current = input;
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        const LayerParams& layer = params.layers[l];
        const bool last = (l + 1 == params.layers.size());
        std::vector<double> next(static_cast<std::size_t>(layer.rows));
        for (int r = 0; r < layer.rows; ++r) {
            double z = layer.biases[static_cast<std::size_t>(r)];
            const double* w = layer.weights.data() + static_cast<std::size_t>(r) * layer.cols;
            for (int c = 0; c < layer.cols; ++c) z += w[c] * current[static_cast<std::size_t>(c)];
            next[static_cast<std::size_t>(r)] = last ? z : sigmoid(z);
        }
        current = std::move(next);
        if (activations) activations->push_back(current);
    }
    return current;
}

}  // namespace detail

/// Layered evaluation, Eq.-(1)-style neurons: sigmoid hidden layers and a
/// linear output layer.
inline std::vector<double> forward(const MlpArchitecture& arch, const MlpParameters& params,
                                   const std::vector<double>& input) {
    if (!params.matches(arch))
        throw std::invalid_argument("forward: parameters do not match architecture");
    if (!params.all_finite()) throw std::invalid_argument("forward: non-finite parameter");
    return detail::forward_layers(params, input);
}

struct TrainingPair {
    std::vector<double> input;
    std::vector<double> target;
};

/// The exhaustive training set of F_f: all N * 2^N pairs (k, x), targets
/// big_f(f, k, x) written as 0/1 vectors.
inline std::vector<TrainingPair> build_training_set(const BooleanMap& f, InputEncoding enc) {
    const int n = f.n_cells();
    std::vector<TrainingPair> set;
    set.reserve(static_cast<std::size_t>(n) * state_count(n));
    for (int k = 1; k <= n; ++k) {
        for (std::uint32_t i = 0; i < state_count(n); ++i) {
            const Configuration x = Configuration::from_index(n, i);
            const Configuration target = big_f(f, k, x);
            TrainingPair pair;
            pair.input = encode_input(k, x, enc);
            pair.target.reserve(static_cast<std::size_t>(n));
            for (int j = 1; j <= n; ++j) pair.target.push_back(target.bit(j) ? 1.0 : 0.0);
            set.push_back(std::move(pair));
        }
    }
    return set;
}

/// MSE = 1/(2P) * sum_p ||D_p - Y_p||^2 over the P training pairs.
inline double mse(const MlpParameters& params, const std::vector<TrainingPair>& set) {
    if (set.empty()) throw std::invalid_argument("mse: empty training set");
    double total = 0.0;
    for (const TrainingPair& pair : set) {
        const std::vector<double> y = detail::forward_layers(params, pair.input);
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double e = y[i] - pair.target[i];
            total += e * e;
        }
    }
    return total / (2.0 * static_cast<double>(set.size()));
}

/// MSE and its gradient with respect to every weight and bias, flattened in
/// the layout of MlpParameters::flatten(). Plain backpropagation.
inline double mse_and_gradient(const MlpParameters& params, const std::vector<TrainingPair>& set,
                               std::vector<double>& grad) {
    if (set.empty()) throw std::invalid_argument("mse_and_gradient: empty training set");
    std::size_t total_params = 0;
    for (const LayerParams& layer : params.layers)
        total_params += layer.weights.size() + layer.biases.size();
    grad.assign(total_params, 0.0);

    // Offsets of each layer's weight and bias block inside the flat gradient.
    std::vector<std::size_t> weight_offset(params.layers.size());
    std::vector<std::size_t> bias_offset(params.layers.size());
    std::size_t at = 0;
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        weight_offset[l] = at;
        at += params.layers[l].weights.size();
        bias_offset[l] = at;
        at += params.layers[l].biases.size();
    }

    double total = 0.0;
    std::vector<std::vector<double>> activations;
    std::vector<double> delta, delta_prev;
    for (const TrainingPair& pair : set) {
        const std::vector<double> y = detail::forward_layers(params, pair.input, &activations);
        delta.resize(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double e = y[i] - pair.target[i];
            total += e * e;
            delta[i] = e;  // linear output layer
        }
        for (std::size_t l = params.layers.size(); l-- > 0;) {
            const LayerParams& layer = params.layers[l];
            const std::vector<double>& below = activations[l];
            double* gw = grad.data() + weight_offset[l];
            double* gb = grad.data() + bias_offset[l];
            for (int r = 0; r < layer.rows; ++r) {
                const double dr = delta[static_cast<std::size_t>(r)];
                double* row = gw + static_cast<std::size_t>(r) * layer.cols;
                for (int c = 0; c < layer.cols; ++c) row[c] += dr * below[static_cast<std::size_t>(c)];
                gb[r] += dr;
            }
            if (l == 0) continue;
            delta_prev.assign(static_cast<std::size_t>(layer.cols), 0.0);
            for (int r = 0; r < layer.rows; ++r) {
                const double dr = delta[static_cast<std::size_t>(r)];
                const double* row = layer.weights.data() + static_cast<std::size_t>(r) * layer.cols;
                for (int c = 0; c < layer.cols; ++c) delta_prev[static_cast<std::size_t>(c)] += row[c] * dr;
            }
            for (int c = 0; c < layer.cols; ++c) {
                const double a = below[static_cast<std::size_t>(c)];
                delta_prev[static_cast<std::size_t>(c)] *= a * (1.0 - a);  // sigmoid'
            }
            delta = delta_prev;
        }
    }
    const double inv = 1.0 / static_cast<double>(set.size());
    for (double& g : grad) g *= inv;
    return total * 0.5 * inv;
}

/// Rounds network outputs to a configuration: bit i = 1 iff y_i >= 0.5
/// (ties round up). Throws on non-finite values.
inline Configuration threshold_output(const std::vector<double>& y) {
    if (y.empty() || y.size() > static_cast<std::size_t>(kMaxCells))
        throw std::invalid_argument("threshold_output: need 1..20 outputs");
    Configuration out = Configuration::zeros(static_cast<int>(y.size()));
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!std::isfinite(y[i])) throw std::invalid_argument("threshold_output: non-finite value");
        if (y[i] >= 0.5) out = out.with_bit(static_cast<int>(i) + 1, true);
    }
    return out;
}

/// Model text format:
///   arch N=<n> enc=<one_hot|scalar> hidden=<h1[,h2]>
///   W <rows> <cols>   followed by rows*cols row-major values
///   B <len>           followed by len values
/// Values are written with 17 significant digits so a round trip restores
/// every double bit-exactly.
inline void write_model(std::ostream& os, const MlpArchitecture& arch, const MlpParameters& params) {
    if (!params.matches(arch))
        throw std::invalid_argument("write_model: parameters do not match architecture");
    os << "arch " << arch.summary() << "\n";
    os << std::setprecision(17);
    for (const LayerParams& layer : params.layers) {
        os << "W " << layer.rows << " " << layer.cols << "\n";
        for (int r = 0; r < layer.rows; ++r) {
            for (int c = 0; c < layer.cols; ++c) {
                if (c) os << " ";
                os << layer.weight(r, c);
            }
            os << "\n";
        }
        os << "B " << layer.rows << "\n";
        for (int r = 0; r < layer.rows; ++r) {
            if (r) os << " ";
            os << layer.biases[static_cast<std::size_t>(r)];
        }
        os << "\n";
    }
}

inline std::pair<MlpArchitecture, MlpParameters> read_model(std::istream& is) {
    std::string tag;
    if (!(is >> tag) || tag != "arch")
        throw std::invalid_argument("model: expected 'arch' header");
    MlpArchitecture arch;
    std::string field;
    for (int i = 0; i < 3; ++i) {
        if (!(is >> field)) throw std::invalid_argument("model: truncated header");
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("model: malformed header field " + field);
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "N") {
            arch.n_cells = std::stoi(value);
        } else if (key == "enc") {
            arch.encoding = parse_encoding(value);
        } else if (key == "hidden") {
            std::istringstream hs(value);
            std::string part;
            while (std::getline(hs, part, ',')) arch.hidden.push_back(std::stoi(part));
        } else {
            throw std::invalid_argument("model: unknown header field " + key);
        }
    }
    arch.validate();

    MlpParameters params = MlpParameters::zeros(arch);
    for (LayerParams& layer : params.layers) {
        int rows = 0, cols = 0;
        if (!(is >> tag >> rows >> cols) || tag != "W" || rows != layer.rows || cols != layer.cols)
            throw std::invalid_argument("model: bad weight block");
        for (double& w : layer.weights)
            if (!(is >> w)) throw std::invalid_argument("model: truncated weights");
        int len = 0;
        if (!(is >> tag >> len) || tag != "B" || len != layer.rows)
            throw std::invalid_argument("model: bad bias block");
        for (double& b : layer.biases)
            if (!(is >> b)) throw std::invalid_argument("model: truncated biases");
    }
    return {std::move(arch), std::move(params)};
}

}  // namespace chaoticnn
