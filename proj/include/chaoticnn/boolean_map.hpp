#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chaoticnn/configuration.hpp"

namespace chaoticnn {

/// A function f : B^N -> B^N stored as an explicit truth table.
///
/// Entry i of the table is f applied to the configuration of index i.
/// The explicit table keeps user-supplied functions loadable from files and
/// makes iteration-graph construction uniform over all functions.
class BooleanMap {
public:
    BooleanMap(int n_cells, std::vector<std::uint32_t> table, std::string name = "")
        : n_cells_(n_cells), table_(std::move(table)), name_(std::move(name)) {
        const std::uint32_t size = state_count(n_cells_);
        if (table_.size() != size)
            throw std::invalid_argument("BooleanMap: table must have 2^N entries");
        for (std::uint32_t out : table_)
            if (out >> n_cells_ != 0u)
                throw std::invalid_argument("BooleanMap: table entry out of range");
    }

    /// Builds the table by evaluating `fn` on every configuration.
    static BooleanMap from_function(int n_cells,
                                    const std::function<Configuration(const Configuration&)>& fn,
                                    std::string name = "") {
        const std::uint32_t size = state_count(n_cells);
        std::vector<std::uint32_t> table(size);
        for (std::uint32_t i = 0; i < size; ++i) {
            Configuration out = fn(Configuration::from_index(n_cells, i));
            if (out.n_cells() != n_cells)
                throw std::invalid_argument("BooleanMap: function changed dimension");
            table[i] = out.index();
        }
        return BooleanMap(n_cells, std::move(table), std::move(name));
    }

    int n_cells() const { return n_cells_; }
    const std::string& name() const { return name_; }
    const std::vector<std::uint32_t>& table() const { return table_; }

    Configuration apply(const Configuration& x) const {
        if (x.n_cells() != n_cells_)
            throw std::invalid_argument("BooleanMap: dimension mismatch");
        return Configuration::from_index(n_cells_, table_[x.index()]);
    }

    /// FNV-1a over N and the table; identifies the function in certificates.
    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            for (int byte = 0; byte < 8; ++byte) {
                h ^= (v >> (8 * byte)) & 0xffu;
                h *= 1099511628211ull;
            }
        };
        mix(static_cast<std::uint64_t>(n_cells_));
        for (std::uint32_t out : table_) mix(out);
        return h;
    }

    friend bool operator==(const BooleanMap& a, const BooleanMap& b) {
        return a.n_cells_ == b.n_cells_ && a.table_ == b.table_;
    }

private:
    int n_cells_;
    std::vector<std::uint32_t> table_;
    std::string name_;
};

namespace builtins {

/// Vectorial negation: every cell is flipped.
inline BooleanMap f0(int n_cells) {
    return BooleanMap::from_function(
        n_cells,
        [n_cells](const Configuration& x) {
            return Configuration(n_cells, ~x.index() & (state_count(n_cells) - 1));
        },
        "f0@" + std::to_string(n_cells));
}

/// Shift-negate: (x1, ..., xN) -> (!x1, x1, x2, ..., x_{N-1}).
inline BooleanMap f1(int n_cells) {
    return BooleanMap::from_function(
        n_cells,
        [n_cells](const Configuration& x) {
            Configuration out = Configuration::zeros(n_cells).with_bit(1, !x.bit(1));
            for (int i = 2; i <= n_cells; ++i) out = out.with_bit(i, x.bit(i - 1));
            return out;
        },
        "f1@" + std::to_string(n_cells));
}

inline BooleanMap f0_1() {
    BooleanMap m = f0(4);
    return BooleanMap(4, m.table(), "f0_1");
}

inline BooleanMap f0_2() {
    BooleanMap m = f0(3);
    return BooleanMap(3, m.table(), "f0_2");
}

inline BooleanMap f1_1() {
    BooleanMap m = f1(3);
    return BooleanMap(3, m.table(), "f1_1");
}

/// Identity on three cells.
inline BooleanMap g0() {
    return BooleanMap::from_function(
        3, [](const Configuration& x) { return x; }, "g0");
}

/// (x1, x2, x3) -> (!x1, x2, x3).
inline BooleanMap g1() {
    return BooleanMap::from_function(
        3, [](const Configuration& x) { return x.with_bit(1, !x.bit(1)); }, "g1");
}

/// Looks up a builtin by name: f0_1, f0_2, f1_1, g0, g1, or the parametric
/// families f0@<N> and f1@<N>. Throws if the name is unknown.
inline BooleanMap by_name(const std::string& name) {
    if (name == "f0_1") return f0_1();
    if (name == "f0_2") return f0_2();
    if (name == "f1_1") return f1_1();
    if (name == "g0") return g0();
    if (name == "g1") return g1();
    auto at = name.find('@');
    if (at != std::string::npos) {
        const std::string family = name.substr(0, at);
        int n = 0;
        try {
            n = std::stoi(name.substr(at + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("unknown builtin function: " + name);
        }
        if (family == "f0") return f0(n);
        if (family == "f1") return f1(n);
    }
    throw std::invalid_argument("unknown builtin function: " + name);
}

}  // namespace builtins

/// Writes the truth-table text format:
///   N=<int>
///   <input bits> -> <output bits>      (2^N lines, inputs in index order,
///                                       bits written cell 1 first)
inline void write_truth_table(std::ostream& os, const BooleanMap& map) {
    os << "N=" << map.n_cells() << "\n";
    for (std::uint32_t i = 0; i < state_count(map.n_cells()); ++i) {
        Configuration in = Configuration::from_index(map.n_cells(), i);
        os << in.to_string() << " -> " << map.apply(in).to_string() << "\n";
    }
}

inline BooleanMap read_truth_table(std::istream& is, std::string name = "") {
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("truth table: empty input");
    if (line.rfind("N=", 0) != 0)
        throw std::invalid_argument("truth table: first line must be N=<int>");
    int n_cells = 0;
    try {
        n_cells = std::stoi(line.substr(2));
    } catch (const std::exception&) {
        throw std::invalid_argument("truth table: cannot parse N");
    }
    if (n_cells < 1 || n_cells > kMaxCells)
        throw std::invalid_argument("truth table: N must be in [1, 20]");

    const std::uint32_t size = state_count(n_cells);
    std::vector<std::uint32_t> table;
    table.reserve(size);
    for (std::uint32_t i = 0; i < size; ++i) {
        if (!std::getline(is, line))
            throw std::invalid_argument("truth table: expected 2^N mapping lines");
        std::istringstream row(line);
        std::string in_bits, arrow, out_bits;
        if (!(row >> in_bits >> arrow >> out_bits) || arrow != "->")
            throw std::invalid_argument("truth table: malformed line: " + line);
        Configuration in = Configuration::parse(in_bits);
        Configuration out = Configuration::parse(out_bits);
        if (in.n_cells() != n_cells || out.n_cells() != n_cells)
            throw std::invalid_argument("truth table: row width does not match N");
        if (in.index() != i)
            throw std::invalid_argument("truth table: inputs must appear in increasing index order");
        table.push_back(out.index());
    }
    return BooleanMap(n_cells, std::move(table), std::move(name));
}

}  // namespace chaoticnn
