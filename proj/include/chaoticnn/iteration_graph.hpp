#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "chaoticnn/boolean_map.hpp"
#include "chaoticnn/configuration.hpp"
#include "chaoticnn/dynamics.hpp"

namespace chaoticnn {

/// The graph of iterations Gamma(f): one vertex per configuration, and an
/// arc labeled i from x to its i-th neighbor exactly when updating cell i
/// actually flips it. There are no self-loop arcs.
class IterationGraph {
public:
    struct Arc {
        int label;
        std::uint32_t to;
    };

    IterationGraph(int n_cells, std::vector<std::vector<Arc>> adjacency)
        : n_cells_(n_cells), adjacency_(std::move(adjacency)) {
        if (adjacency_.size() != state_count(n_cells_))
            throw std::invalid_argument("IterationGraph: wrong vertex count");
    }

    int n_cells() const { return n_cells_; }
    std::uint32_t vertex_count() const { return state_count(n_cells_); }

    /// Outgoing arcs of a vertex, labels ascending.
    const std::vector<Arc>& arcs_from(std::uint32_t v) const { return adjacency_[v]; }

    std::size_t arc_count() const {
        std::size_t total = 0;
        for (const auto& arcs : adjacency_) total += arcs.size();
        return total;
    }

    bool has_arc(std::uint32_t from, int label, std::uint32_t to) const {
        for (const Arc& a : adjacency_[from])
            if (a.label == label && a.to == to) return true;
        return false;
    }

    /// The configuration reached by replaying one strategy term: the flipped
    /// neighbor when the arc exists, the same vertex otherwise. Equals
    /// big_f(f, label, x) for the map the graph was built from.
    std::uint32_t replay_term(std::uint32_t from, int label) const {
        for (const Arc& a : adjacency_[from])
            if (a.label == label) return a.to;
        return from;
    }

private:
    int n_cells_;
    std::vector<std::vector<Arc>> adjacency_;
};

inline IterationGraph build_iteration_graph(const BooleanMap& f) {
    const int n = f.n_cells();
    const std::uint32_t size = state_count(n);
    std::vector<std::vector<IterationGraph::Arc>> adjacency(size);
    for (std::uint32_t v = 0; v < size; ++v) {
        const std::uint32_t image = f.table()[v];
        for (int i = 1; i <= n; ++i) {
            const std::uint32_t mask = 1u << (i - 1);
            if ((image & mask) != (v & mask))
                adjacency[v].push_back({i, v ^ mask});
        }
    }
    return IterationGraph(n, std::move(adjacency));
}

/// Writes arcs as lines "x_bits -i-> y_bits", vertices in index order.
inline void write_iteration_graph(std::ostream& os, const IterationGraph& g) {
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        const Configuration from = Configuration::from_index(g.n_cells(), v);
        for (const auto& arc : g.arcs_from(v))
            os << from.to_string() << " -" << arc.label << "-> "
               << Configuration::from_index(g.n_cells(), arc.to).to_string() << "\n";
    }
}

/// Outcome of the strong-connectivity test on Gamma(f). strongly_connected
/// is equivalent to scc_count == 1; when it is false, `witness` names an
/// ordered vertex pair with no path from first to second and `scc_id` holds
/// the full component decomposition.
struct ChaosCertificate {
    std::string function_name;
    std::uint64_t function_hash = 0;
    bool strongly_connected = false;
    int scc_count = 0;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;
    std::vector<int> scc_id;
};

namespace detail {

/// Iterative Tarjan; returns the component id of every vertex and the
/// number of components. Recursion is avoided because the graph may have
/// up to 2^20 vertices.
inline std::vector<int> tarjan_scc(const IterationGraph& g, int& scc_count) {
    const std::uint32_t n = g.vertex_count();
    constexpr int kUnvisited = -1;
    std::vector<int> index(n, kUnvisited);
    std::vector<int> lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> component(n, kUnvisited);
    std::vector<std::uint32_t> stack;
    int next_index = 0;
    scc_count = 0;

    struct Frame {
        std::uint32_t vertex;
        std::size_t next_arc;
    };
    std::vector<Frame> call_stack;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        call_stack.push_back({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call_stack.empty()) {
            Frame& frame = call_stack.back();
            const std::uint32_t v = frame.vertex;
            const auto& arcs = g.arcs_from(v);
            if (frame.next_arc < arcs.size()) {
                const std::uint32_t w = arcs[frame.next_arc++].to;
                if (index[w] == kUnvisited) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call_stack.push_back({w, 0});
                } else if (on_stack[w]) {
                    if (index[w] < lowlink[v]) lowlink[v] = index[w];
                }
            } else {
                if (lowlink[v] == index[v]) {
                    while (true) {
                        const std::uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        component[w] = scc_count;
                        if (w == v) break;
                    }
                    ++scc_count;
                }
                call_stack.pop_back();
                if (!call_stack.empty()) {
                    const std::uint32_t parent = call_stack.back().vertex;
                    if (lowlink[v] < lowlink[parent]) lowlink[parent] = lowlink[v];
                }
            }
        }
    }
    return component;
}

/// Picks (u, v) with no path u -> v: u from a component with no outgoing
/// condensation edge, v from any other component.
inline std::pair<std::uint32_t, std::uint32_t> unreachable_pair(const IterationGraph& g,
                                                                const std::vector<int>& component,
                                                                int scc_count) {
    std::vector<bool> has_out_edge(static_cast<std::size_t>(scc_count), false);
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        for (const auto& arc : g.arcs_from(v))
            if (component[arc.to] != component[v])
                has_out_edge[static_cast<std::size_t>(component[v])] = true;

    int sink = -1;
    for (int c = 0; c < scc_count; ++c)
        if (!has_out_edge[static_cast<std::size_t>(c)]) {
            sink = c;
            break;
        }
    std::uint32_t u = 0, v = 0;
    bool have_u = false, have_v = false;
    for (std::uint32_t w = 0; w < g.vertex_count(); ++w) {
        if (!have_u && component[w] == sink) {
            u = w;
            have_u = true;
        }
        if (!have_v && component[w] != sink) {
            v = w;
            have_v = true;
        }
        if (have_u && have_v) break;
    }
    return {u, v};
}

}  // namespace detail

inline ChaosCertificate strongly_connected(const IterationGraph& g, std::string function_name = "",
                                           std::uint64_t function_hash = 0) {
    ChaosCertificate cert;
    cert.function_name = std::move(function_name);
    cert.function_hash = function_hash;
    int scc_count = 0;
    std::vector<int> component = detail::tarjan_scc(g, scc_count);
    cert.scc_count = scc_count;
    cert.strongly_connected = (scc_count == 1);
    if (!cert.strongly_connected) {
        cert.witness = detail::unreachable_pair(g, component, scc_count);
        cert.scc_id = std::move(component);
    }
    return cert;
}

/// Theorem-based certification: G_f is chaotic in the sense of Devaney
/// exactly when Gamma(f) is strongly connected.
inline ChaosCertificate certify_devaney_chaos(const BooleanMap& f) {
    return strongly_connected(build_iteration_graph(f), f.name(), f.hash());
}

/// Shortest label sequence whose replay maps `from` onto `to`; empty when
/// from == to, absent when no path exists. BFS discovery order with arcs
/// explored by ascending label makes the result deterministic.
inline std::optional<std::vector<int>> steer(const IterationGraph& g, const Configuration& from,
                                             const Configuration& to) {
    if (from.n_cells() != g.n_cells() || to.n_cells() != g.n_cells())
        throw std::invalid_argument("steer: dimension mismatch");
    const std::uint32_t source = from.index();
    const std::uint32_t target = to.index();
    if (source == target) return std::vector<int>{};

    const std::uint32_t n = g.vertex_count();
    std::vector<std::int64_t> parent(n, -1);
    std::vector<int> via_label(n, 0);
    std::vector<std::uint32_t> queue;
    queue.reserve(n);
    queue.push_back(source);
    parent[source] = source;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t v = queue[head];
        for (const auto& arc : g.arcs_from(v)) {
            if (parent[arc.to] != -1) continue;
            parent[arc.to] = v;
            via_label[arc.to] = arc.label;
            if (arc.to == target) {
                std::vector<int> labels;
                for (std::uint32_t w = target; w != source; w = static_cast<std::uint32_t>(parent[w]))
                    labels.push_back(via_label[w]);
                return std::vector<int>(labels.rbegin(), labels.rend());
            }
            queue.push_back(arc.to);
        }
    }
    return std::nullopt;
}

}  // namespace chaoticnn
