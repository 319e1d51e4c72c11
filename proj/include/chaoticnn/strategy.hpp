#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chaoticnn {

/// An infinite sequence over [1, N] selecting which cell to update at each
/// step: a finite prefix followed by a deterministic generator.
///
/// Two kinds of generator are supported:
///   - periodic(pattern): repeats the pattern forever;
///   - uniform_random(seed): term g is 1 + (v_g mod N) where v_1, v_2, ...
///     are the outputs of a std::mt19937_64 engine seeded with `seed`. The
///     engine is fully specified by the standard, so equal fields emit
///     identical sequences on every platform.
///
/// Values are immutable; shift() returns a new Strategy that drops the
/// first term.
class Strategy {
public:
    enum class GeneratorKind { periodic, uniform_random };

    static Strategy periodic(int n_cells, std::vector<int> pattern,
                             std::vector<int> prefix = {}) {
        if (pattern.empty())
            throw std::invalid_argument("Strategy: periodic pattern must be nonempty");
        Strategy s(n_cells, GeneratorKind::periodic);
        s.pattern_ = std::move(pattern);
        s.prefix_ = std::move(prefix);
        s.check_terms(s.pattern_);
        s.check_terms(s.prefix_);
        return s;
    }

    static Strategy uniform_random(int n_cells, std::uint64_t seed,
                                   std::vector<int> prefix = {}) {
        Strategy s(n_cells, GeneratorKind::uniform_random);
        s.seed_ = seed;
        s.prefix_ = std::move(prefix);
        s.check_terms(s.prefix_);
        return s;
    }

    /// Parses the CLI grammar: optional "prefix:<csv>;" followed by
    /// "periodic:<csv>" or "random:<seed>".
    static Strategy parse(int n_cells, const std::string& spec) {
        std::string head = spec;
        std::vector<int> prefix;
        auto semi = spec.find(';');
        if (semi != std::string::npos) {
            const std::string first = spec.substr(0, semi);
            if (first.rfind("prefix:", 0) != 0)
                throw std::invalid_argument("Strategy: expected prefix:...; got " + first);
            prefix = parse_csv(first.substr(7));
            head = spec.substr(semi + 1);
        }
        if (head.rfind("periodic:", 0) == 0)
            return periodic(n_cells, parse_csv(head.substr(9)), std::move(prefix));
        if (head.rfind("random:", 0) == 0) {
            std::uint64_t seed = 0;
            try {
                seed = std::stoull(head.substr(7));
            } catch (const std::exception&) {
                throw std::invalid_argument("Strategy: cannot parse seed in " + head);
            }
            return uniform_random(n_cells, seed, std::move(prefix));
        }
        throw std::invalid_argument("Strategy: unknown generator spec: " + head);
    }

    int n_cells() const { return n_cells_; }
    GeneratorKind kind() const { return kind_; }

    /// k-th emitted term, 1-based. Random access; O(k) for random strategies.
    int term(long long k) const {
        if (k < 1) throw std::out_of_range("Strategy: term index must be >= 1");
        const long long pos = offset_ + k;
        const long long prefix_len = static_cast<long long>(prefix_.size());
        if (pos <= prefix_len) return prefix_[static_cast<std::size_t>(pos - 1)];
        const long long g = pos - prefix_len;  // 1-based generator index
        if (kind_ == GeneratorKind::periodic)
            return pattern_[static_cast<std::size_t>((g - 1) % static_cast<long long>(pattern_.size()))];
        std::mt19937_64 engine(seed_);
        engine.discard(static_cast<unsigned long long>(g - 1));
        return 1 + static_cast<int>(engine() % static_cast<std::uint64_t>(n_cells_));
    }

    /// First term; the initial function i(S).
    int initial() const { return term(1); }

    /// Strategy emitting (S^2, S^3, ...); the shift sigma(S).
    Strategy shift() const {
        Strategy s = *this;
        ++s.offset_;
        return s;
    }

    /// Sequential cursor over the emitted terms. Amortized O(1) per term.
    class Stream {
    public:
        explicit Stream(const Strategy& s)
            : n_cells_(s.n_cells_), kind_(s.kind_), prefix_(s.prefix_),
              pattern_(s.pattern_), engine_(s.seed_), pos_(s.offset_) {
            const long long past_prefix = pos_ - static_cast<long long>(prefix_.size());
            if (kind_ == GeneratorKind::uniform_random && past_prefix > 0)
                engine_.discard(static_cast<unsigned long long>(past_prefix));
        }

        int next() {
            ++pos_;
            const long long prefix_len = static_cast<long long>(prefix_.size());
            if (pos_ <= prefix_len) return prefix_[static_cast<std::size_t>(pos_ - 1)];
            const long long g = pos_ - prefix_len;
            if (kind_ == GeneratorKind::periodic)
                return pattern_[static_cast<std::size_t>((g - 1) % static_cast<long long>(pattern_.size()))];
            return 1 + static_cast<int>(engine_() % static_cast<std::uint64_t>(n_cells_));
        }

    private:
        int n_cells_;
        GeneratorKind kind_;
        std::vector<int> prefix_;
        std::vector<int> pattern_;
        std::mt19937_64 engine_;
        long long pos_;
    };

    Stream stream() const { return Stream(*this); }

    friend bool operator==(const Strategy& a, const Strategy& b) {
        return a.n_cells_ == b.n_cells_ && a.kind_ == b.kind_ && a.prefix_ == b.prefix_ &&
               a.pattern_ == b.pattern_ && a.seed_ == b.seed_ && a.offset_ == b.offset_;
    }

private:
    Strategy(int n_cells, GeneratorKind kind) : n_cells_(n_cells), kind_(kind) {
        if (n_cells < 1 || n_cells > 20)
            throw std::invalid_argument("Strategy: n_cells must be in [1, 20]");
    }

    void check_terms(const std::vector<int>& terms) const {
        for (int t : terms)
            if (t < 1 || t > n_cells_)
                throw std::invalid_argument("Strategy: term out of [1, N]");
    }

    static std::vector<int> parse_csv(const std::string& text) {
        std::vector<int> out;
        std::size_t start = 0;
        while (start < text.size()) {
            std::size_t comma = text.find(',', start);
            if (comma == std::string::npos) comma = text.size();
            try {
                out.push_back(std::stoi(text.substr(start, comma - start)));
            } catch (const std::exception&) {
                throw std::invalid_argument("Strategy: cannot parse term list: " + text);
            }
            start = comma + 1;
        }
        if (out.empty())
            throw std::invalid_argument("Strategy: empty term list");
        return out;
    }

    int n_cells_;
    GeneratorKind kind_;
    std::vector<int> prefix_;
    std::vector<int> pattern_;
    std::uint64_t seed_ = 0;
    long long offset_ = 0;
};

}  // namespace chaoticnn
