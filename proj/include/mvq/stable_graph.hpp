#ifndef MVQ_STABLE_GRAPH_HPP
#define MVQ_STABLE_GRAPH_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mvq/rational.hpp"

namespace mvq {

struct GraphClass {
    int vertices = 0;
    int edges = 0;
    int self_edges = 0;
    int simple_edges = 0;

    bool operator==(const GraphClass&) const = default;
    bool operator<(const GraphClass& o) const {
        return std::tie(vertices, edges, self_edges, simple_edges) <
               std::tie(o.vertices, o.edges, o.self_edges, o.simple_edges);
    }
};

// Decorated dual graph of a reduced multicurve: vertices carry genera, edges
// are loops (self-edges) or cross edges with multiplicity, legs are labeled
// marked points fixed pointwise by isomorphisms.
struct StableGraph {
    std::vector<int> genus;               // per vertex
    std::vector<int> loops;               // self-edge count per vertex
    std::vector<std::vector<int>> cross;  // symmetric multiplicity matrix, zero diagonal
    std::vector<int> leg_vertex;          // leg i -> vertex index

    int num_vertices() const { return static_cast<int>(genus.size()); }
    int num_legs() const { return static_cast<int>(leg_vertex.size()); }

    int self_edge_count() const { return std::accumulate(loops.begin(), loops.end(), 0); }
    int cross_edge_count() const {
        int t = 0;
        for (int u = 0; u < num_vertices(); ++u)
            for (int v = u + 1; v < num_vertices(); ++v) t += cross[u][v];
        return t;
    }
    int num_edges() const { return self_edge_count() + cross_edge_count(); }

    int legs_at(int v) const {
        int c = 0;
        for (int lv : leg_vertex) c += (lv == v);
        return c;
    }

    // Valency n_v: both ends of loops, one end of each incident cross edge,
    // and incident legs.
    int valency(int v) const {
        int d = 2 * loops[v] + legs_at(v);
        for (int u = 0; u < num_vertices(); ++u)
            if (u != v) d += cross[v][u];
        return d;
    }

    int total_genus() const {
        int s = std::accumulate(genus.begin(), genus.end(), 0);
        return s + num_edges() - num_vertices() + 1;
    }

    bool connected() const {
        int V = num_vertices();
        if (V <= 1) return V == 1;
        std::vector<int> seen(V, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u = 0; u < V; ++u)
                if (!seen[u] && cross[v][u] > 0) {
                    seen[u] = 1;
                    ++count;
                    stack.push_back(u);
                }
        }
        return count == V;
    }

    void validate() const {
        int V = num_vertices();
        if (V == 0) throw std::invalid_argument("StableGraph: no vertices");
        if (static_cast<int>(loops.size()) != V || static_cast<int>(cross.size()) != V)
            throw std::invalid_argument("StableGraph: inconsistent sizes");
        for (int v = 0; v < V; ++v) {
            if (static_cast<int>(cross[v].size()) != V)
                throw std::invalid_argument("StableGraph: inconsistent sizes");
            if (genus[v] < 0 || loops[v] < 0) throw std::invalid_argument("StableGraph: negative decoration");
            if (cross[v][v] != 0) throw std::invalid_argument("StableGraph: nonzero diagonal");
            for (int u = 0; u < V; ++u)
                if (cross[v][u] != cross[u][v] || cross[v][u] < 0)
                    throw std::invalid_argument("StableGraph: bad cross matrix");
            if (2 * genus[v] - 2 + valency(v) <= 0)
                throw std::invalid_argument("StableGraph: unstable vertex");
        }
        for (int lv : leg_vertex)
            if (lv < 0 || lv >= V) throw std::invalid_argument("StableGraph: leg out of range");
        if (!connected()) throw std::invalid_argument("StableGraph: disconnected");
        if (num_edges() < 1) throw std::invalid_argument("StableGraph: no edges");
    }

    // Deterministic edge order: loops at vertex 0, 1, ..., then cross edges in
    // lexicographic (u,v) order, each with multiplicity.
    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> edges;
        for (int v = 0; v < num_vertices(); ++v)
            for (int i = 0; i < loops[v]; ++i) edges.emplace_back(v, v);
        for (int u = 0; u < num_vertices(); ++u)
            for (int v = u + 1; v < num_vertices(); ++v)
                for (int i = 0; i < cross[u][v]; ++i) edges.emplace_back(u, v);
        return edges;
    }
};

inline GraphClass classify(const StableGraph& graph) {
    return GraphClass{graph.num_vertices(), graph.num_edges(), graph.self_edge_count(),
                      graph.cross_edge_count()};
}

namespace detail {

// Isomorphism-invariant vertex colors: decoration data refined by neighbor
// color multisets until stable (Weisfeiler-Leman style).
inline std::vector<int> vertex_colors(const StableGraph& graph) {
    int V = graph.num_vertices();
    std::vector<std::string> key(V);
    for (int v = 0; v < V; ++v) {
        std::ostringstream os;
        os << graph.genus[v] << '.' << graph.loops[v] << '.';
        for (int i = 0; i < graph.num_legs(); ++i)
            if (graph.leg_vertex[i] == v) os << i << ',';
        os << '.' << graph.valency(v);
        key[v] = os.str();
    }
    std::vector<int> color(V, 0);
    for (int round = 0;; ++round) {
        std::vector<std::string> sorted = key;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> next(V);
        for (int v = 0; v < V; ++v)
            next[v] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), key[v]) - sorted.begin());
        bool same = (round > 0 && next == color);
        color = next;
        if (same || round > V) break;
        for (int v = 0; v < V; ++v) {
            std::vector<std::pair<int, int>> nb;  // (neighbor color, multiplicity)
            for (int u = 0; u < V; ++u)
                if (u != v && graph.cross[v][u] > 0) nb.emplace_back(color[u], graph.cross[v][u]);
            std::sort(nb.begin(), nb.end());
            std::ostringstream os;
            os << color[v] << '#';
            for (auto& [c, m] : nb) os << c << 'x' << m << ',';
            key[v] = os.str();
        }
    }
    return color;
}

// Branch-and-bound search for the lexicographically minimal relabeled
// encoding. Slots are filled in order; the encoding contribution of slot w is
// (genus, loops, cross row to slots 0..w-1), with leg attachments appended at
// the end. Candidates are restricted to the slot's color class and branches
// that compare greater than the current best are cut.
struct CanonicalSearch {
    const StableGraph& graph;
    std::vector<int> color;       // WL color per old vertex
    std::vector<int> slot_color;  // required color per slot (sorted colors)
    std::vector<int> slot_vertex;  // assignment being built: slot -> old vertex
    std::vector<int> vertex_slot;  // inverse, -1 when unassigned
    std::vector<int> cur;
    std::vector<int> best;
    std::vector<int> best_assignment;

    explicit CanonicalSearch(const StableGraph& g) : graph(g), color(vertex_colors(g)) {
        slot_color = color;
        std::sort(slot_color.begin(), slot_color.end());
        int V = g.num_vertices();
        slot_vertex.assign(V, -1);
        vertex_slot.assign(g.num_vertices(), -1);
        run(0, false);
    }

    void run(int slot, bool strictly_less) {
        int V = graph.num_vertices();
        if (slot == V) {
            std::size_t base = cur.size();
            for (int i = 0; i < graph.num_legs(); ++i)
                cur.push_back(vertex_slot[graph.leg_vertex[i]]);
            if (best.empty() || strictly_less ||
                std::lexicographical_compare(cur.begin() + base, cur.end(),
                                             best.begin() + base, best.end())) {
                best = cur;
                best_assignment = slot_vertex;
            }
            cur.resize(base);
            return;
        }
        for (int v = 0; v < V; ++v) {
            if (vertex_slot[v] >= 0 || color[v] != slot_color[slot]) continue;
            std::size_t base = cur.size();
            cur.push_back(graph.genus[v]);
            cur.push_back(graph.loops[v]);
            for (int w = 0; w < slot; ++w) cur.push_back(graph.cross[v][slot_vertex[w]]);
            bool less = strictly_less;
            bool prune = false;
            if (!best.empty() && !less) {
                for (std::size_t i = base; i < cur.size(); ++i) {
                    if (cur[i] < best[i]) {
                        less = true;
                        break;
                    }
                    if (cur[i] > best[i]) {
                        prune = true;
                        break;
                    }
                }
            }
            if (!prune) {
                slot_vertex[slot] = v;
                vertex_slot[v] = slot;
                run(slot + 1, less);
                slot_vertex[slot] = -1;
                vertex_slot[v] = -1;
            }
            cur.resize(base);
        }
    }
};

}  // namespace detail

// Lexicographically minimal encoding over all color-respecting relabelings;
// equal exactly for isomorphic graphs (isomorphisms fix legs pointwise and
// preserve genus decorations).
inline std::vector<int> canonical_encoding(const StableGraph& graph) {
    return detail::CanonicalSearch(graph).best;
}

// Rebuilds the graph relabeled into its canonical vertex order.
inline StableGraph canonical_form(const StableGraph& graph) {
    detail::CanonicalSearch search(graph);
    int V = graph.num_vertices();
    std::vector<int> perm(V);  // old vertex -> new slot
    for (int w = 0; w < V; ++w) perm[search.best_assignment[w]] = w;
    StableGraph out;
    out.genus.resize(V);
    out.loops.resize(V);
    out.cross.assign(V, std::vector<int>(V, 0));
    out.leg_vertex.resize(graph.num_legs());
    for (int v = 0; v < V; ++v) {
        out.genus[perm[v]] = graph.genus[v];
        out.loops[perm[v]] = graph.loops[v];
        for (int u = 0; u < V; ++u) out.cross[perm[v]][perm[u]] = graph.cross[v][u];
    }
    for (int i = 0; i < graph.num_legs(); ++i) out.leg_vertex[i] = perm[graph.leg_vertex[i]];
    return out;
}

// Order of the automorphism group acting on half-edges: vertex-level
// automorphisms times loop flips (2 per loop), loop permutations at each
// vertex, and permutations of parallel cross edges.
inline Integer automorphism_order(const StableGraph& graph) {
    int V = graph.num_vertices();
    auto color = detail::vertex_colors(graph);
    // legs are fixed pointwise, so any vertex carrying a leg must be fixed
    std::vector<char> pinned(V, 0);
    for (int lv : graph.leg_vertex) pinned[lv] = 1;
    long vertex_autos = 0;
    std::vector<int> image(V, -1);
    std::vector<char> used(V, 0);
    std::function<void(int)> rec = [&](int v) {
        if (v == V) {
            ++vertex_autos;
            return;
        }
        for (int u = 0; u < V; ++u) {
            if (used[u] || color[u] != color[v]) continue;
            if (pinned[v] && u != v) continue;
            if (graph.genus[u] != graph.genus[v] || graph.loops[u] != graph.loops[v]) continue;
            bool ok = true;
            for (int w = 0; w < v && ok; ++w)
                if (graph.cross[u][image[w]] != graph.cross[v][w]) ok = false;
            if (!ok) continue;
            image[v] = u;
            used[u] = 1;
            rec(v + 1);
            used[u] = 0;
            image[v] = -1;
        }
    };
    rec(0);
    Integer order(vertex_autos);
    for (int v = 0; v < V; ++v) order *= pow2(graph.loops[v]) * factorial(graph.loops[v]);
    for (int u = 0; u < V; ++u)
        for (int v = u + 1; v < V; ++v) order *= factorial(graph.cross[u][v]);
    return order;
}

// One line per graph:
//   g n V E S T | genera | edges as vertex-index pairs | legs as vertex indices | aut_order
inline std::string graph_to_line(const StableGraph& graph) {
    GraphClass c = classify(graph);
    std::ostringstream os;
    os << graph.total_genus() << ' ' << graph.num_legs() << ' ' << c.vertices << ' ' << c.edges
       << ' ' << c.self_edges << ' ' << c.simple_edges << " |";
    for (int v = 0; v < graph.num_vertices(); ++v) os << ' ' << graph.genus[v];
    os << " |";
    for (const auto& [u, v] : graph.edge_list()) os << ' ' << u << '-' << v;
    os << " |";
    for (int lv : graph.leg_vertex) os << ' ' << lv;
    os << " | " << automorphism_order(graph).get_str();
    return os.str();
}

inline StableGraph graph_from_line(const std::string& line) {
    std::vector<std::string> sections;
    std::string cur;
    std::istringstream ss(line);
    std::string tok;
    sections.push_back("");
    while (ss >> tok) {
        if (tok == "|")
            sections.push_back("");
        else
            sections.back() += tok + " ";
    }
    if (sections.size() != 5) throw std::invalid_argument("graph_from_line: expected 5 sections");
    auto ints = [](const std::string& s) {
        std::vector<long> out;
        std::istringstream is(s);
        long v;
        while (is >> v) out.push_back(v);
        return out;
    };
    auto head = ints(sections[0]);
    if (head.size() != 6) throw std::invalid_argument("graph_from_line: bad header");
    int V = static_cast<int>(head[2]);
    StableGraph graph;
    auto genera = ints(sections[1]);
    if (static_cast<int>(genera.size()) != V) throw std::invalid_argument("graph_from_line: bad genera");
    graph.genus.assign(genera.begin(), genera.end());
    graph.loops.assign(V, 0);
    graph.cross.assign(V, std::vector<int>(V, 0));
    std::istringstream es(sections[2]);
    while (es >> tok) {
        auto dash = tok.find('-');
        int u = std::stoi(tok.substr(0, dash));
        int v = std::stoi(tok.substr(dash + 1));
        if (u == v)
            ++graph.loops[u];
        else {
            ++graph.cross[u][v];
            ++graph.cross[v][u];
        }
    }
    for (long lv : ints(sections[3])) graph.leg_vertex.push_back(static_cast<int>(lv));
    graph.validate();
    if (graph.total_genus() != head[0] || graph.num_legs() != head[1])
        throw std::invalid_argument("graph_from_line: header mismatch");
    return graph;
}

}  // namespace mvq

#endif
