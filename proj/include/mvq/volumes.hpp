#ifndef MVQ_VOLUMES_HPP
#define MVQ_VOLUMES_HPP

#include <map>
#include <tuple>

#include "mvq/correlators.hpp"
#include "mvq/distribution.hpp"
#include "mvq/edge_polynomial.hpp"
#include "mvq/enumeration.hpp"
#include "mvq/graph_enum.hpp"
#include "mvq/pi_graded.hpp"
#include "mvq/stable_graph.hpp"
#include "mvq/zeta.hpp"

namespace mvq {

// Bound m on the number of bands of squares per cylinder; m = infinity sums
// over all positive integers.
struct Bands {
    long value = 0;  // 0 encodes infinity

    static Bands infinite() { return Bands{0}; }
    static Bands finite(long m) {
        if (m < 1) throw std::invalid_argument("Bands: finite bound must be >= 1");
        return Bands{m};
    }
    bool is_finite() const { return value > 0; }
};

// N_{g,n}(b_1,...,b_n) = sum_{|d| = 3g-3+n} <tau_d> / (2^{5g-6+2n} d!) b^{2d}.
inline EdgePolynomial local_polynomial(int g, int n) {
    if (!stable_pair(g, n) || n < 1)
        throw std::invalid_argument("local_polynomial: unstable (g,n)");
    const int dim = 3 * g - 3 + n;
    const Integer scale = pow2(5 * g - 6 + 2 * n);
    EdgePolynomial poly(n);
    std::vector<int> exps(n);
    for_each_composition(dim, n, [&](const std::vector<int>& d) {
        Rational val = correlator(g, d);
        if (val == 0) return;
        Integer den = scale;
        for (int di : d) den *= factorial(di);
        for (int i = 0; i < n; ++i) exps[i] = 2 * d[i];
        poly.add_term(exps, val * rational(1, den));
    });
    return poly;
}

namespace detail {

// Local polynomial of a vertex shape: genus gv, `loop_vars` loop edges (two
// slots each), `single_vars` simple half-edges (one slot each) and `legs`
// marked points pinned to zero. Variables are ordered loops first. Cached:
// vertex shapes repeat heavily across a graph census.
inline const EdgePolynomial& vertex_shape_polynomial(int gv, int loop_vars, int single_vars,
                                                     int legs) {
    using Key = std::tuple<int, int, int, int>;
    static std::map<Key, EdgePolynomial> cache;
    static std::mutex mu;
    Key key{gv, loop_vars, single_vars, legs};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const int edge_slots = 2 * loop_vars + single_vars;
    const int nv = edge_slots + legs;
    const int dim = 3 * gv - 3 + nv;
    const Integer scale = pow2(5 * gv - 6 + 2 * nv);
    EdgePolynomial poly(loop_vars + single_vars);
    std::vector<int> ckey(nv, 0);
    std::vector<int> exps;
    for_each_composition(dim, edge_slots, [&](const std::vector<int>& d) {
        for (int i = 0; i < edge_slots; ++i) ckey[i] = d[i];  // legs stay 0
        Rational val = correlator(gv, ckey);
        if (val == 0) return;
        Integer den = scale;
        for (int di : d) den *= factorial(di);
        exps.assign(loop_vars + single_vars, 0);
        for (int i = 0; i < edge_slots; ++i) {
            int var = (i < 2 * loop_vars) ? i / 2 : loop_vars + (i - 2 * loop_vars);
            exps[var] += 2 * d[i];
        }
        poly.add_term(exps, val * rational(1, den));
    });
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(poly)).first->second;
}

// N_{g_v, n_v}(b_v) with the slots of vertex v wired to the edges of the
// graph: a loop feeds its variable into two slots, a cross edge into one,
// legs contribute zero.
inline EdgePolynomial vertex_polynomial(const StableGraph& graph, int v,
                                        const std::vector<std::pair<int, int>>& edges) {
    // local variables: this vertex's loops first, then its cross-edge ends,
    // both in edge_list order
    std::vector<int> loop_edges, single_edges;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        auto [a, b] = edges[e];
        if (a == v && b == v)
            loop_edges.push_back(e);
        else if (a == v || b == v)
            single_edges.push_back(e);
    }
    const EdgePolynomial& local = vertex_shape_polynomial(
        graph.genus[v], static_cast<int>(loop_edges.size()),
        static_cast<int>(single_edges.size()), graph.legs_at(v));
    EdgePolynomial poly(static_cast<int>(edges.size()));
    std::vector<int> exps;
    for (const auto& [le, c] : local.terms()) {
        exps.assign(edges.size(), 0);
        for (std::size_t i = 0; i < loop_edges.size(); ++i) exps[loop_edges[i]] = le[i];
        for (std::size_t i = 0; i < single_edges.size(); ++i)
            exps[single_edges[i]] = le[loop_edges.size() + i];
        poly.add_term(exps, c);
    }
    return poly;
}

}  // namespace detail

// P_Gamma: homogeneous of degree 6g-6+2n-E (the zeta image lands in pi-grade
// 6g-6+2n), with every edge exponent odd.
inline EdgePolynomial graph_polynomial(const StableGraph& graph) {
    graph.validate();
    const int g = graph.total_genus();
    const int n = graph.num_legs();
    const auto edges = graph.edge_list();
    EdgePolynomial poly = EdgePolynomial::constant(static_cast<int>(edges.size()), 1);
    for (int v = 0; v < graph.num_vertices(); ++v)
        poly = poly * detail::vertex_polynomial(graph, v, edges);
    poly.shift_all_exponents();  // prod over edges of b_e
    Rational pref =
        rational(pow2(6 * g - 5 + 2 * n) * factorial(4 * g - 4 + n),
                 factorial(6 * g - 7 + 2 * n) * pow2(graph.num_vertices() - 1) *
                     automorphism_order(graph));
    poly *= pref;
    return poly;
}

namespace detail {

// m! zeta(m+1) reduced coefficients, cached by exponent m (odd).
inline Rational zeta_edge_factor(int m) {
    if (m < 1) throw std::invalid_argument("apply_zeta: exponent must be >= 1");
    static std::vector<Rational> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= m) {
        int e = static_cast<int>(cache.size());
        cache.push_back(e >= 1 && e % 2 == 1 ? Rational(factorial(e)) * zeta_even_coeff(e + 1)
                                             : Rational(0));
    }
    if (m % 2 == 0) throw std::invalid_argument("apply_zeta: even exponent needs odd zeta");
    return cache[m];
}

// m! zeta_bound(m+1), cached per band bound.
inline Rational zeta_m_edge_factor(long bound, int m) {
    if (m < 1) throw std::invalid_argument("apply_zeta: exponent must be >= 1");
    static std::map<long, std::vector<Rational>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& vec = cache[bound];
    while (static_cast<int>(vec.size()) <= m) {
        int e = static_cast<int>(vec.size());
        vec.push_back(e >= 1 ? Rational(factorial(e)) * partial_zeta(bound, e + 1) : Rational(0));
    }
    return vec[m];
}

}  // namespace detail

// Z operator: each monomial prod b_e^{m_e} maps to prod m_e! zeta(m_e + 1).
// All exponents must be odd and >= 1.
inline PiGraded apply_zeta(const EdgePolynomial& poly) {
    std::map<int, Rational> acc;
    for (const auto& [exps, coeff] : poly.terms()) {
        Rational term = coeff;
        int grade = 0;
        for (int m : exps) {
            term *= detail::zeta_edge_factor(m);
            grade += m + 1;
        }
        auto [it, inserted] = acc.emplace(grade, term);
        if (!inserted) it->second += term;
    }
    return PiGraded::from_map(std::move(acc));
}

// Bounded-band variant: zeta_m in place of zeta, giving an exact rational.
inline Rational apply_zeta(const EdgePolynomial& poly, long m) {
    if (m < 1) throw std::invalid_argument("apply_zeta: m must be >= 1");
    Rational acc(0);
    for (const auto& [exps, coeff] : poly.terms()) {
        Rational term = coeff;
        for (int e : exps) term *= detail::zeta_m_edge_factor(m, e);
        acc += term;
    }
    return acc;
}

// Y(H) operator: prod b_e^{m_e} maps to prod m_e! / H_e^{m_e+1}; the value is
// the volume contribution of square-tiled surfaces with cylinder decomposition
// (Gamma, H).
inline Rational cylinder_contribution(const EdgePolynomial& poly, const std::vector<long>& bands) {
    if (static_cast<int>(bands.size()) != poly.num_vars())
        throw std::invalid_argument("cylinder_contribution: |H| != number of edges");
    for (long h : bands)
        if (h < 1) throw std::invalid_argument("cylinder_contribution: H_i must be >= 1");
    Rational acc(0);
    for (const auto& [exps, coeff] : poly.terms()) {
        Rational term = coeff;
        for (std::size_t i = 0; i < exps.size(); ++i)
            term *= rational(factorial(exps[i]), int_pow(bands[i], exps[i] + 1));
        acc += term;
    }
    return acc;
}

inline Rational cylinder_contribution(const StableGraph& graph, const std::vector<long>& bands) {
    return cylinder_contribution(graph_polynomial(graph), bands);
}

struct VolumeBreakdown {
    int g = 0;
    int n = 0;
    std::vector<std::pair<StableGraph, PiGraded>> by_graph;
    PiGraded total;
    std::map<int, PiGraded> upsilon_v;                       // by |V|
    std::map<std::pair<int, int>, PiGraded> upsilon_ve;      // by (|V|, |E|)
    std::map<std::tuple<int, int, int>, PiGraded> upsilon_vst;  // by (|V|, S, T)
};

// Vol Q_{g,n} = sum over stable graphs of Z(P_Gamma), with the Upsilon
// groupings by vertex count, edge count and self/simple edge split.
inline VolumeBreakdown masur_veech_volume(int g, int n, std::size_t max_graphs = 1000000) {
    VolumeBreakdown out;
    out.g = g;
    out.n = n;
    auto graphs = enumerate_stable_graphs(g, n, max_graphs);
    for (const auto& graph : graphs) {
        PiGraded vol = apply_zeta(graph_polynomial(graph));
        GraphClass c = classify(graph);
        out.total += vol;
        out.upsilon_v[c.vertices] += vol;
        out.upsilon_ve[{c.vertices, c.edges}] += vol;
        out.upsilon_vst[{c.vertices, c.self_edges, c.simple_edges}] += vol;
        out.by_graph.emplace_back(graph, std::move(vol));
    }
    return out;
}

// p_g(k): probability that a random multicurve on genus g has k components,
// i.e. the k-edge share of the total volume; exact rationals, k = 1..3g-3.
inline Distribution component_distribution(const VolumeBreakdown& breakdown) {
    int kmax = 3 * breakdown.g - 3 + breakdown.n;
    std::vector<PiGraded> by_edges(kmax + 1);
    for (const auto& [graph, vol] : breakdown.by_graph) by_edges[graph.num_edges()] += vol;
    std::vector<Rational> masses;
    for (int k = 1; k <= kmax; ++k) {
        if (by_edges[k].is_zero()) {
            masses.push_back(0);
            continue;
        }
        auto r = by_edges[k].exact_ratio(breakdown.total);
        if (!r) throw std::logic_error("component_distribution: grades do not cancel");
        masses.push_back(*r);
    }
    while (!masses.empty() && masses.back() == 0) masses.pop_back();
    return Distribution::exact(std::move(masses));
}

inline Distribution component_distribution(int g, std::size_t max_graphs = 1000000) {
    if (g < 2) throw std::invalid_argument("component_distribution: needs g >= 2");
    return component_distribution(masur_veech_volume(g, 0, max_graphs));
}

// Probability that the reduced multicurve separates, i.e. the mass of stable
// graphs with at least 2 vertices.
inline Rational separating_probability(const VolumeBreakdown& breakdown) {
    PiGraded sep;
    for (const auto& [v, vol] : breakdown.upsilon_v)
        if (v >= 2) sep += vol;
    if (sep.is_zero()) return 0;
    auto r = sep.exact_ratio(breakdown.total);
    if (!r) throw std::logic_error("separating_probability: grades do not cancel");
    return *r;
}

// The one-vertex stable graph with k loops and vertex genus g-k.
inline StableGraph petal_graph(int g, int k) {
    if (k < 1 || k > g) throw std::invalid_argument("petal_graph: needs 1 <= k <= g");
    StableGraph graph;
    graph.genus = {g - k};
    graph.loops = {k};
    graph.cross = {{0}};
    graph.validate();
    return graph;
}

namespace detail {

// Shared partition-indexed assembly of V_{m,k}(g); zeta_factor(D_j) supplies
// prod zeta_m(2 D_j + 2) in the chosen value ring.
template <class Ring, class ZetaFactor>
Ring single_vertex_sum(int g, int k, ZetaFactor&& zeta_factor) {
    if (k < 1 || k > g) throw std::invalid_argument("single_vertex_contribution: needs 1 <= k <= g");
    const int gv = g - k;
    const int total = 3 * g - 3 - k;
    const Rational pref = rational(factorial(4 * g - 4) * pow2(g + 1),
                                   factorial(6 * g - 7) * factorial(k));
    Ring acc{};
    for_each_partition(total, k, [&](const std::vector<int>& parts) {
        std::vector<int> D(parts);
        D.resize(k, 0);  // pad with zero parts
        // orderings of the padded multiset
        Integer mult = factorial(k);
        for (std::size_t i = 0, j = 0; i < D.size(); i = j) {
            for (j = i; j < D.size() && D[j] == D[i]; ++j) {}
            mult /= factorial(j - i);
        }
        // inner correlator sum over splittings of each D_j into an ordered
        // pair of indices
        Rational inner(0);
        std::vector<int> idx(2 * k, 0);
        std::vector<int> split(k, 0);
        for (;;) {
            for (int j = 0; j < k; ++j) {
                idx[2 * j] = split[j];
                idx[2 * j + 1] = D[j] - split[j];
            }
            Rational val = correlator(gv, idx);
            if (val != 0) {
                Integer num(1), den(1);
                for (int j = 0; j < k; ++j) {
                    num *= factorial(2 * D[j] + 1);
                    den *= factorial(idx[2 * j]) * factorial(idx[2 * j + 1]);
                }
                inner += val * rational(num, den);
            }
            int pos = k - 1;
            while (pos >= 0 && split[pos] == D[pos]) split[pos--] = 0;
            if (pos < 0) break;
            ++split[pos];
        }
        if (inner == 0) return;
        Ring term = zeta_factor(D);
        term *= inner * Rational(mult);
        acc += term;
    });
    acc *= pref;
    return acc;
}

}  // namespace detail

// V_{infinity,k}(g): total volume contribution of the k-loop single-vertex
// graph, via the partition-indexed fast path.
inline PiGraded single_vertex_contribution(int g, int k) {
    return detail::single_vertex_sum<PiGraded>(g, k, [&](const std::vector<int>& D) {
        PiGraded z(Rational(1));
        for (int dj : D) z *= zeta_even(2 * dj + 2);
        return z;
    });
}

// V_{m,k}(g) for a finite band bound m.
inline Rational single_vertex_contribution(int g, int k, long m) {
    return detail::single_vertex_sum<Rational>(g, k, [&](const std::vector<int>& D) {
        Rational z(1);
        for (int dj : D) z *= partial_zeta(m, 2 * dj + 2);
        return z;
    });
}

// Direct slow path: Y-sum over the petal graph (Z or zeta_m applied to its
// graph polynomial); used as the cross-check for the fast path.
inline PiGraded single_vertex_contribution_direct(int g, int k) {
    return apply_zeta(graph_polynomial(petal_graph(g, k)));
}
inline Rational single_vertex_contribution_direct(int g, int k, long m) {
    return apply_zeta(graph_polynomial(petal_graph(g, k)), m);
}

// q~_g(k) = V~_{infinity,k}(g) / V~_infinity(g), the single-vertex
// approximation with the correlators replaced by their ansatz values.
inline Rational qtilde_numerator_coeff(int g, int k) {
    // single-grade pi^{6g-6} value; returns the rational coefficient
    const Rational pref = rational(factorial(4 * g - 4) * pow2(g + 1),
                                   factorial(6 * g - 7) * factorial(k));
    const Rational bracket =
        rational(factorial(6 * g - 2 * k - 5) * pow2(3 * g - 6 + 2 * k),
                 factorial(g - k) * factorial(3 * g - 3 - k) * int_pow(3, g - k));
    const int total = 3 * g - 3 - k;
    Rational acc(0);
    for_each_partition(total, k, [&](const std::vector<int>& parts) {
        std::vector<int> D(parts);
        D.resize(k, 0);
        Integer mult = factorial(k);
        for (std::size_t i = 0, j = 0; i < D.size(); i = j) {
            for (j = i; j < D.size() && D[j] == D[i]; ++j) {}
            mult /= factorial(j - i);
        }
        Rational term(mult);
        for (int dj : D) term *= zeta_even_coeff(2 * dj + 2) / Rational(2 * (dj + 1));
        acc += term;
    });
    return pref * bracket * acc;
}

inline Distribution qtilde_distribution(int g) {
    if (g < 2) throw std::invalid_argument("qtilde_distribution: needs g >= 2");
    std::vector<Rational> coeffs;
    Rational total(0);
    for (int k = 1; k <= g; ++k) {
        coeffs.push_back(qtilde_numerator_coeff(g, k));
        total += coeffs.back();
    }
    for (auto& c : coeffs) c /= total;
    return Distribution::exact(std::move(coeffs));
}

// const_{g,n} = 2 (6g-6+2n) (4g-4+n)! 2^{4g-3+n}, the factor between volume
// contributions and Mirzakhani frequencies c(gamma).
inline Integer frequency_constant(int g, int n) {
    return Integer(2) * (6 * g - 6 + 2 * n) * factorial(4 * g - 4 + n) * pow2(4 * g - 3 + n);
}

inline PiGraded mirzakhani_frequency(const PiGraded& vol_gamma, int g, int n) {
    auto grade = vol_gamma.single_grade();
    if (!grade || *grade != 6 * g - 6 + 2 * n)
        throw std::invalid_argument("mirzakhani_frequency: value not in grade 6g-6+2n");
    return vol_gamma / Rational(frequency_constant(g, n));
}

}  // namespace mvq

#endif
