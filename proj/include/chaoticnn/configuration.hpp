#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace chaoticnn {

/// Maximum number of cells. Keeps 2^N state spaces enumerable in memory.
inline constexpr int kMaxCells = 20;

/// Boolean state of an N-cell system.
///
/// Cell indices are 1-based everywhere in the public API. Internally the
/// bits are packed into an integer with cell 1 stored in the least
/// significant bit, so `index()` enumerates configurations in the order
/// used by truth tables and iteration graphs.
class Configuration {
public:
    Configuration(int n_cells, std::uint32_t bits)
        : n_cells_(check_cells(n_cells)), bits_(bits) {
        if (bits >> n_cells_ != 0u)
            throw std::invalid_argument("Configuration: bits exceed n_cells");
    }

    static Configuration from_index(int n_cells, std::uint32_t index) {
        return Configuration(n_cells, index);
    }

    static Configuration zeros(int n_cells) { return Configuration(n_cells, 0u); }

    /// Builds from cell values listed cell 1 first.
    static Configuration from_bits(const std::vector<int>& cell_bits) {
        if (cell_bits.empty() || cell_bits.size() > static_cast<std::size_t>(kMaxCells))
            throw std::invalid_argument("Configuration: need 1..20 cells");
        std::uint32_t bits = 0;
        for (std::size_t i = 0; i < cell_bits.size(); ++i) {
            if (cell_bits[i] != 0 && cell_bits[i] != 1)
                throw std::invalid_argument("Configuration: cell values must be 0 or 1");
            bits |= static_cast<std::uint32_t>(cell_bits[i]) << i;
        }
        return Configuration(static_cast<int>(cell_bits.size()), bits);
    }

    /// Parses a bit string written cell 1 first, e.g. "101" -> x1=1, x2=0, x3=1.
    static Configuration parse(const std::string& text) {
        std::vector<int> cells;
        cells.reserve(text.size());
        for (char c : text) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("Configuration: invalid bit character '" +
                                            std::string(1, c) + "'");
            cells.push_back(c - '0');
        }
        return from_bits(cells);
    }

    int n_cells() const { return n_cells_; }

    /// Integer index of this configuration; cell 1 is the least significant bit.
    std::uint32_t index() const { return bits_; }

    /// Value of cell i, 1-based.
    bool bit(int i) const {
        check_index(i);
        return (bits_ >> (i - 1)) & 1u;
    }

    /// Copy with cell i set to value (1-based).
    Configuration with_bit(int i, bool value) const {
        check_index(i);
        std::uint32_t mask = 1u << (i - 1);
        return Configuration(n_cells_, value ? (bits_ | mask) : (bits_ & ~mask));
    }

    /// Copy with cell i negated; the neighbor N(i, x) in the state space.
    Configuration neighbor(int i) const {
        check_index(i);
        return Configuration(n_cells_, bits_ ^ (1u << (i - 1)));
    }

    /// Bit string, cell 1 first.
    std::string to_string() const {
        std::string s(static_cast<std::size_t>(n_cells_), '0');
        for (int i = 0; i < n_cells_; ++i)
            if ((bits_ >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
        return s;
    }

    friend bool operator==(const Configuration& a, const Configuration& b) {
        return a.n_cells_ == b.n_cells_ && a.bits_ == b.bits_;
    }
    friend bool operator!=(const Configuration& a, const Configuration& b) {
        return !(a == b);
    }

private:
    static int check_cells(int n) {
        if (n < 1 || n > kMaxCells)
            throw std::invalid_argument("Configuration: n_cells must be in [1, 20]");
        return n;
    }
    void check_index(int i) const {
        if (i < 1 || i > n_cells_)
            throw std::out_of_range("Configuration: cell index out of [1, N]");
    }

    int n_cells_;
    std::uint32_t bits_;
};

/// Number of configurations of an N-cell system.
inline std::uint32_t state_count(int n_cells) {
    if (n_cells < 1 || n_cells > kMaxCells)
        throw std::invalid_argument("state_count: n_cells must be in [1, 20]");
    return 1u << n_cells;
}

}  // namespace chaoticnn
