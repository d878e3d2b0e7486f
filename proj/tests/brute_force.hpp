#ifndef MVQ_TESTS_BRUTE_FORCE_HPP
#define MVQ_TESTS_BRUTE_FORCE_HPP

// Independent oracles for the test suites. These deliberately avoid the
// library's canonical forms: graphs are generated by unconstrained sweeps and
// grouped by exhaustive permutation isomorphism tests.

#include <algorithm>
#include <numeric>
#include <vector>

#include "mvq/stable_graph.hpp"

namespace mvq_tests {

inline bool isomorphic_by_brute_force(const mvq::StableGraph& a, const mvq::StableGraph& b) {
    int V = a.num_vertices();
    if (V != b.num_vertices() || a.num_legs() != b.num_legs()) return false;
    std::vector<int> perm(V);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int v = 0; v < V && ok; ++v)
            ok = a.genus[v] == b.genus[perm[v]] && a.loops[v] == b.loops[perm[v]];
        for (int u = 0; u < V && ok; ++u)
            for (int v = u + 1; v < V && ok; ++v)
                ok = a.cross[u][v] == b.cross[perm[u]][perm[v]];
        for (int i = 0; i < a.num_legs() && ok; ++i)
            ok = perm[a.leg_vertex[i]] == b.leg_vertex[i];
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Enumerate every labeled candidate (no symmetry shortcuts), keep the valid
// stable graphs, and count isomorphism classes by pairwise comparison.
inline std::vector<mvq::StableGraph> brute_force_stable_graphs(int g, int n) {
    std::vector<mvq::StableGraph> classes;
    int max_vertices = 2 * g - 2 + n;
    for (int V = 1; V <= max_vertices; ++V) {
        int pairs = V * (V - 1) / 2;
        std::vector<int> genus(V, 0);
        for (;;) {  // genus odometer, entries 0..g
            int gsum = std::accumulate(genus.begin(), genus.end(), 0);
            if (gsum <= g) {
                int E = g - gsum + V - 1;
                if (E >= 1 && E <= 3 * g - 3 + n) {
                    // loops odometer
                    std::vector<int> loops(V, 0);
                    for (;;) {
                        int S = std::accumulate(loops.begin(), loops.end(), 0);
                        if (S <= E) {
                            int T = E - S;
                            // cross-edge odometer over the upper triangle
                            std::vector<int> flat(std::max(pairs, 1), 0);
                            for (;;) {
                                int tsum = std::accumulate(flat.begin(), flat.begin() + pairs, 0);
                                if (tsum == T) {
                                    // legs odometer
                                    std::vector<int> legs(n, 0);
                                    for (;;) {
                                        mvq::StableGraph cand;
                                        cand.genus = genus;
                                        cand.loops = loops;
                                        cand.cross.assign(V, std::vector<int>(V, 0));
                                        int idx = 0;
                                        for (int u = 0; u < V; ++u)
                                            for (int v = u + 1; v < V; ++v) {
                                                cand.cross[u][v] = cand.cross[v][u] = flat[idx++];
                                            }
                                        cand.leg_vertex = legs;
                                        bool valid = cand.connected();
                                        for (int v = 0; v < V && valid; ++v)
                                            valid = 2 * cand.genus[v] - 2 + cand.valency(v) > 0;
                                        if (valid) {
                                            bool known = false;
                                            for (const auto& rep : classes)
                                                if (isomorphic_by_brute_force(cand, rep)) {
                                                    known = true;
                                                    break;
                                                }
                                            if (!known) classes.push_back(cand);
                                        }
                                        int p = n - 1;
                                        while (p >= 0 && legs[p] == V - 1) legs[p--] = 0;
                                        if (p < 0) break;
                                        ++legs[p];
                                    }
                                }
                                int p = pairs - 1;
                                while (p >= 0 && flat[p] == T) flat[p--] = 0;
                                if (p < 0) break;
                                ++flat[p];
                            }
                        }
                        int p = V - 1;
                        while (p >= 0 && loops[p] == E) loops[p--] = 0;
                        if (p < 0) break;
                        ++loops[p];
                    }
                }
            }
            int p = V - 1;
            while (p >= 0 && genus[p] == g) genus[p--] = 0;
            if (p < 0) break;
            ++genus[p];
        }
    }
    return classes;
}

}  // namespace mvq_tests

#endif
