#ifndef MVQ_GRAPH_ENUM_HPP
#define MVQ_GRAPH_ENUM_HPP

#include <map>
#include <stdexcept>

#include "mvq/correlators.hpp"  // stable_pair
#include "mvq/enumeration.hpp"
#include "mvq/stable_graph.hpp"

namespace mvq {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct GraphCollector {
    std::map<std::vector<int>, StableGraph> found;
    std::size_t max_graphs;

    explicit GraphCollector(std::size_t cap) : max_graphs(cap) {}

    void add(const StableGraph& candidate) {
        auto enc = canonical_encoding(candidate);
        auto it = found.find(enc);
        if (it != found.end()) return;
        StableGraph canon = canonical_form(candidate);
        canon.validate();
        found.emplace(std::move(enc), std::move(canon));
        if (found.size() > max_graphs)
            throw BudgetExceeded("stable-graph enumeration exceeded the graph budget");
    }
};

// Recursive filler for the upper-triangular cross-edge matrix. Pairs are
// visited row-major. Vertices that share (genus, loops, legs) and are
// adjacent in the vertex order get a sound symmetry-breaking constraint: while
// their columns (and then row prefixes) are tied, entries must be
// non-increasing from left to right. Every isomorphism class keeps at least
// one representative (the lex-max labeled matrix satisfies the constraints).
struct CrossFiller {
    int V;
    int total;  // cross edges still to place
    const std::vector<int>& need;       // minimum cross degree per vertex
    const std::vector<char>& same_class;  // same_class[v]: v and v-1 interchangeable
    std::vector<int> degree;
    std::vector<std::vector<int>> mat;
    GraphCollector& sink;
    const StableGraph& proto;  // genus/loops/legs template

    CrossFiller(int vertices, int t, const std::vector<int>& need_,
                const std::vector<char>& same_, GraphCollector& sink_, const StableGraph& proto_)
        : V(vertices),
          total(t),
          need(need_),
          same_class(same_),
          degree(vertices, 0),
          mat(vertices, std::vector<int>(vertices, 0)),
          sink(sink_),
          proto(proto_) {}

    bool tied_before(int u, int v, int row_limit) const {
        // columns of (v-1, v) equal strictly above row_limit?
        for (int i = 0; i < row_limit; ++i)
            if (i != v - 1 && i != v && mat[i][v - 1] != mat[i][v]) return false;
        return true;
    }

    void fill(int u, int v) {
        if (u == V - 1) {
            if (total != 0 || degree[V - 1] < need[V - 1]) return;
            emit();
            return;
        }
        if (v == V) {
            // row u complete; degree[u] is final
            if (degree[u] < need[u]) return;
            fill(u + 1, u + 2);
            return;
        }
        int cap = total;
        // symmetry breaking against the previous exchangeable vertex
        if (v > u + 1 && same_class[v]) {
            bool tied = tied_before(u, v, u);
            if (tied) cap = std::min(cap, mat[u][v - 1]);
        }
        if (u > 0 && same_class[u] && v > u + 1) {
            // row phase for the pair (u-1, u): columns above row u-1 are the
            // same loop, compare row tails once columns tied
            bool tied = tied_before(u - 1, u, u - 1);
            if (tied) {
                bool row_tied = true;
                for (int j = u + 1; j < v; ++j)
                    if (mat[u - 1][j] != mat[u][j]) {
                        row_tied = false;
                        break;
                    }
                if (row_tied) cap = std::min(cap, mat[u - 1][v]);
            }
        }
        for (int m = 0; m <= cap; ++m) {
            mat[u][v] = mat[v][u] = m;
            degree[u] += m;
            degree[v] += m;
            total -= m;
            if (feasible(u, v)) fill(u, v + 1);
            total += m;
            degree[u] -= m;
            degree[v] -= m;
        }
        mat[u][v] = mat[v][u] = 0;
    }

    // Called right after assigning pair (u,v): vertices with pairs still
    // ahead can each gain at most `total` more degree, and every remaining
    // edge adds 2 to the total degree.
    bool feasible(int u, int v) const {
        long demand = 0;
        for (int w = u; w < V; ++w) {
            if (w == u && v == V - 1) continue;  // row u has no open pairs left
            int miss = need[w] - degree[w];
            if (miss > 0) {
                if (miss > total) return false;
                demand += miss;
            }
        }
        return demand <= 2L * total;
    }

    void emit() {
        StableGraph graph = proto;
        graph.cross = mat;
        if (!graph.connected()) return;
        sink.add(graph);
    }
};

inline void genus_vectors_rec(int slots, int remaining, int max_entry, std::vector<int>& acc,
                              const std::function<void(const std::vector<int>&)>& fn) {
    if (slots == 0) {
        fn(acc);
        return;
    }
    for (int v = std::min(remaining, max_entry); v >= 0; --v) {
        acc.push_back(v);
        genus_vectors_rec(slots - 1, remaining - v, v, acc, fn);
        acc.pop_back();
    }
}

}  // namespace detail

// All stable graphs of type (g, n) with E >= 1, one canonical representative
// per isomorphism class, in a deterministic order.
inline std::vector<StableGraph> enumerate_stable_graphs(int g, int n,
                                                        std::size_t max_graphs = 1000000) {
    if (!stable_pair(g, n)) throw std::invalid_argument("enumerate_stable_graphs: unstable (g,n)");
    detail::GraphCollector collector(max_graphs);
    const int max_vertices = 2 * g - 2 + n;
    for (int V = 1; V <= max_vertices; ++V) {
        std::vector<int> genus;
        detail::genus_vectors_rec(V, g, g, genus, [&](const std::vector<int>& gvec) {
            int gsum = 0;
            for (int x : gvec) gsum += x;
            int E = g - gsum + V - 1;
            if (E < 1 || E > 3 * g - 3 + n) return;
            // legs: n labeled legs over V vertices
            std::vector<int> legs(n, 0);
            for (long legcode = 0;; ++legcode) {
                std::vector<int> legs_at(V, 0);
                for (int lv : legs) ++legs_at[lv];

                int min_S = (V == 1) ? E : 0;
                int max_S = (V == 1) ? E : E - (V - 1);
                for (int S = min_S; S <= max_S; ++S) {
                    int T = E - S;
                    for_each_composition(S, V, [&](const std::vector<int>& loops) {
                        // exchangeable adjacent vertices: loops non-increasing
                        std::vector<char> same(V, 0);
                        for (int v = 1; v < V; ++v) {
                            bool eq = gvec[v] == gvec[v - 1];
                            for (int i = 0; i < n && eq; ++i)
                                eq = (legs[i] == v) == (legs[i] == v - 1);
                            if (eq && loops[v] > loops[v - 1]) return;
                            same[v] = eq && loops[v] == loops[v - 1];
                        }
                        std::vector<int> need(V);
                        long total_need = 0;
                        for (int v = 0; v < V; ++v) {
                            int have = 2 * loops[v] + legs_at[v];
                            need[v] = std::max(0, 3 - 2 * gvec[v] - have);
                            total_need += need[v];
                        }
                        if (total_need > 2L * T) return;
                        StableGraph proto;
                        proto.genus = gvec;
                        proto.loops = loops;
                        proto.cross.assign(V, std::vector<int>(V, 0));
                        proto.leg_vertex = legs;
                        if (V == 1) {
                            if (need[0] == 0) collector.add(proto);
                            return;
                        }
                        detail::CrossFiller filler(V, T, need, same, collector, proto);
                        filler.fill(0, 1);
                    });
                }

                // next legs assignment (odometer)
                int pos = n - 1;
                while (pos >= 0 && legs[pos] == V - 1) legs[pos--] = 0;
                if (pos < 0) break;
                ++legs[pos];
            }
        });
    }
    std::vector<StableGraph> out;
    out.reserve(collector.found.size());
    for (auto& [enc, graph] : collector.found) out.push_back(graph);
    std::stable_sort(out.begin(), out.end(), [](const StableGraph& a, const StableGraph& b) {
        if (a.num_edges() != b.num_edges()) return a.num_edges() < b.num_edges();
        return a.num_vertices() < b.num_vertices();
    });
    return out;
}

}  // namespace mvq

#endif
