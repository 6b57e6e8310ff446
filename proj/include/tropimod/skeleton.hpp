#pragma once

// Trivalent multigraphs: dual graphs of triangulations, skeleton extraction
// with edge-composition bookkeeping, brute-force canonical labeling,
// enumeration of trivalent graphs and chains, (loops, bi-edges, cut-edges)
// labels, planarity and the sprawling test.

#include "tropimod/exact.hpp"
#include "tropimod/triangulate.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace tropimod {

struct MultiGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // a <= b, sorted with multiplicity

    void normalize() {
        for (auto& e : edges)
            if (e.first > e.second) std::swap(e.first, e.second);
        std::sort(edges.begin(), edges.end());
    }
    int genus() const { return static_cast<int>(edges.size()) - n + 1; }
    int degree(int v) const {
        int d = 0;
        for (const auto& e : edges) {
            if (e.first == v) ++d;
            if (e.second == v) ++d;  // loops count twice
        }
        return d;
    }
    friend bool operator==(const MultiGraph&, const MultiGraph&) = default;
    friend auto operator<=>(const MultiGraph&, const MultiGraph&) = default;
};

inline bool is_connected(const MultiGraph& g) {
    if (g.n == 0) return false;
    std::vector<int> stack = {0};
    std::vector<bool> seen(g.n, false);
    seen[0] = true;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& e : g.edges) {
            int w = -1;
            if (e.first == v) w = e.second;
            else if (e.second == v)
                w = e.first;
            if (w >= 0 && !seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// ---- dual graph ----

inline MultiGraph dual_graph(const Triangulation& T) {
    MultiGraph g;
    g.n = static_cast<int>(T.tris.size());
    for (const auto& e : T.edges) g.edges.push_back({e.t1, e.t2});
    g.normalize();
    return g;
}

// ---- skeleton extraction ----
// Prune dual-graph leaves, then contract degree-2 nodes; each surviving
// skeleton edge records which interior edges of the triangulation compose it.

struct SkeletonMap {
    MultiGraph graph;
    std::vector<std::vector<int>> comp;  // aligned with graph.edges
};

inline SkeletonMap extract_skeleton(const Triangulation& T) {
    assert(T.poly->genus() >= 1);
    struct SE {
        int u, v;
        std::vector<int> comp;
        bool alive = true;
    };
    std::vector<SE> se;
    se.reserve(T.edges.size());
    for (std::size_t k = 0; k < T.edges.size(); ++k)
        se.push_back({T.edges[k].t1, T.edges[k].t2, {static_cast<int>(k)}, true});
    const int n = static_cast<int>(T.tris.size());
    std::vector<bool> node_alive(n, true);

    auto degree = [&](int v) {
        int d = 0;
        for (const SE& e : se)
            if (e.alive) {
                if (e.u == v) ++d;
                if (e.v == v) ++d;
            }
        return d;
    };

    // prune leaves
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (!node_alive[v] || degree(v) != 1) continue;
            for (SE& e : se)
                if (e.alive && (e.u == v || e.v == v)) e.alive = false;
            node_alive[v] = false;
            changed = true;
        }
    }
    // contract degree-2 nodes joined by two distinct edges
    changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (!node_alive[v] || degree(v) != 2) continue;
            int e1 = -1, e2 = -1;
            for (std::size_t i = 0; i < se.size(); ++i) {
                if (!se[i].alive) continue;
                if (se[i].u == v || se[i].v == v) {
                    if (e1 < 0)
                        e1 = static_cast<int>(i);
                    else
                        e2 = static_cast<int>(i);
                }
            }
            if (e2 < 0) continue;  // a loop at v: terminal genus-1 state
            const int w1 = se[e1].u == v ? se[e1].v : se[e1].u;
            const int w2 = se[e2].u == v ? se[e2].v : se[e2].u;
            SE merged;
            merged.u = w1;
            merged.v = w2;
            merged.comp = se[e1].comp;
            merged.comp.insert(merged.comp.end(), se[e2].comp.begin(), se[e2].comp.end());
            se[e1].alive = se[e2].alive = false;
            node_alive[v] = false;
            se.push_back(std::move(merged));
            changed = true;
        }
    }

    std::vector<int> relabel(n, -1);
    int m = 0;
    for (int v = 0; v < n; ++v)
        if (node_alive[v]) relabel[v] = m++;
    struct Rec {
        std::pair<int, int> e;
        std::vector<int> comp;
    };
    std::vector<Rec> recs;
    for (SE& e : se) {
        if (!e.alive) continue;
        int a = relabel[e.u], b = relabel[e.v];
        if (a > b) std::swap(a, b);
        std::sort(e.comp.begin(), e.comp.end());
        recs.push_back({{a, b}, std::move(e.comp)});
    }
    std::sort(recs.begin(), recs.end(),
              [](const Rec& x, const Rec& y) { return x.e < y.e || (x.e == y.e && x.comp < y.comp); });
    SkeletonMap S;
    S.graph.n = m;
    for (Rec& r : recs) {
        S.graph.edges.push_back(r.e);
        S.comp.push_back(std::move(r.comp));
    }
    assert(S.graph.genus() == T.poly->genus());
    return S;
}

// ---- canonical labeling ----
// Brute force over vertex relabelings, restricted to invariant-compatible
// assignments. Vertices are grouped by an isomorphism-invariant signature;
// permutations only shuffle inside groups, which keeps 8-vertex graphs cheap.

struct CanonicalForm {
    MultiGraph graph;                    // canonical representative
    std::vector<int> witness;            // original vertex -> canonical label
    std::vector<std::vector<int>> vertex_autos;  // automorphisms of `graph`
    long long aut_order = 1;             // vertex autos times parallel-edge swaps
    std::string key;                     // serialized canonical edge list
};

inline std::string graph_key(const MultiGraph& g) {
    std::string s = std::to_string(g.n) + ":";
    for (const auto& e : g.edges)
        s += std::to_string(e.first) + "-" + std::to_string(e.second) + ";";
    return s;
}

inline CanonicalForm canonical_form(const MultiGraph& g_in) {
    if (g_in.n > 10) throw unsupported_error("canonical_form: graph too large");
    MultiGraph g = g_in;
    g.normalize();
    const int n = g.n;

    std::vector<int> loops(n, 0);
    std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
    for (const auto& e : g.edges) {
        if (e.first == e.second)
            ++loops[e.first];
        else {
            ++mult[e.first][e.second];
            ++mult[e.second][e.first];
        }
    }

    // color refinement to a stable partition; final signatures order the
    // classes canonically
    std::vector<std::string> sig(n);
    std::vector<int> color(n, 0);
    for (int round = 0; round <= n; ++round) {
        for (int v = 0; v < n; ++v) {
            std::vector<int> neigh;
            for (int w = 0; w < n; ++w)
                for (int m = 0; m < mult[v][w]; ++m) neigh.push_back(color[w]);
            std::sort(neigh.begin(), neigh.end());
            sig[v] = std::to_string(color[v]) + "|" + std::to_string(loops[v]) + "|";
            for (int c : neigh) sig[v] += std::to_string(c) + ",";
        }
        std::vector<std::string> uniq(sig.begin(), sig.end());
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<int> next(n);
        for (int v = 0; v < n; ++v)
            next[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) -
                                       uniq.begin());
        if (next == color) break;
        color = next;
    }

    // slot k must host a vertex of class slot_class[k]; classes are ordered
    // by signature
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    std::vector<std::string> slot_sig(n);
    for (int k = 0; k < n; ++k) slot_sig[k] = sig[order[k]];

    // Branch and bound over slot assignments, minimizing the sequence of
    // per-slot back-edge blocks (denser-earlier compares smaller). The best
    // form is kept as a prefix that strictly improving branches truncate and
    // rewrite; completions that never wrote are automorphism ties.
    std::vector<std::vector<int>> best_blocks;
    std::vector<int> slot_vertex(n, -1), vertex_slot(n, -1);
    std::vector<std::vector<int>> best_perms;
    bool pending_reset = false;  // a strictly smaller form was written

    auto cmp_block = [](const std::vector<int>& a, const std::vector<int>& b) {
        const std::size_t m = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < m; ++i)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        if (a.size() == b.size()) return 0;
        return a.size() > b.size() ? -1 : 1;
    };

    std::function<void(int)> dfs = [&](int k) {
        if (k == n) {
            std::vector<int> perm(n);
            for (int s = 0; s < n; ++s) perm[slot_vertex[s]] = s;
            if (pending_reset) {
                best_perms.clear();
                pending_reset = false;
            }
            best_perms.push_back(std::move(perm));
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (vertex_slot[v] >= 0 || sig[v] != slot_sig[k]) continue;
            std::vector<int> block;
            for (int j = 0; j < k; ++j)
                for (int m = 0; m < mult[v][slot_vertex[j]]; ++m) block.push_back(j);
            for (int l = 0; l < loops[v]; ++l) block.push_back(k);
            if (static_cast<int>(best_blocks.size()) == k) {
                best_blocks.push_back(block);
                pending_reset = true;
            } else {
                const int c = cmp_block(block, best_blocks[k]);
                if (c > 0) continue;
                if (c < 0) {
                    best_blocks.resize(k);
                    best_blocks.push_back(block);
                    pending_reset = true;
                }
            }
            slot_vertex[k] = v;
            vertex_slot[v] = k;
            dfs(k + 1);
            vertex_slot[v] = -1;
            slot_vertex[k] = -1;
        }
    };
    dfs(0);

    CanonicalForm out;
    out.graph.n = n;
    for (int k = 0; k < n; ++k)
        for (int j : best_blocks[k]) out.graph.edges.push_back({std::min(j, k), k});
    out.graph.normalize();
    out.witness = best_perms.front();
    // autos of the canonical graph: compose each minimizing perm with the
    // inverse of the witness
    std::vector<int> inv(n);
    for (int v = 0; v < n; ++v) inv[out.witness[v]] = v;
    std::set<std::vector<int>> autos;
    for (const auto& p : best_perms) {
        std::vector<int> a(n);
        for (int c = 0; c < n; ++c) a[c] = p[inv[c]];
        autos.insert(std::move(a));
    }
    out.vertex_autos.assign(autos.begin(), autos.end());
    out.aut_order = static_cast<long long>(out.vertex_autos.size());
    const auto& ce = out.graph.edges;
    for (std::size_t i = 0; i < ce.size();) {
        std::size_t j = i;
        while (j < ce.size() && ce[j] == ce[i]) ++j;
        for (std::size_t m = 2; m <= j - i; ++m) out.aut_order *= static_cast<long long>(m);
        i = j;
    }
    out.key = graph_key(out.graph);
    return out;
}

// Full automorphism action on edge positions of the canonical graph:
// vertex automorphisms combined with arbitrary permutations inside each
// parallel class. Used to close moduli cones under graph symmetries.
inline std::vector<std::vector<int>> edge_perm_group(const CanonicalForm& cf) {
    const auto& edges = cf.graph.edges;
    const std::size_t E = edges.size();
    // parallel classes as index ranges
    std::vector<std::pair<std::size_t, std::size_t>> classes;
    for (std::size_t i = 0; i < E;) {
        std::size_t j = i;
        while (j < E && edges[j] == edges[i]) ++j;
        classes.push_back({i, j});
        i = j;
    }
    auto class_of = [&](std::pair<int, int> e) -> std::size_t {
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        assert(it != edges.end() && *it == e);
        return static_cast<std::size_t>(it - edges.begin());
    };
    std::set<std::vector<int>> group;
    for (const auto& va : cf.vertex_autos) {
        // base edge map: class -> class, order preserving inside
        std::vector<int> base(E);
        std::vector<std::size_t> fill(E, 0);
        for (const auto& [lo, hi] : classes) {
            std::pair<int, int> img = {va[edges[lo].first], va[edges[lo].second]};
            if (img.first > img.second) std::swap(img.first, img.second);
            const std::size_t tgt = class_of(img);
            for (std::size_t k = lo; k < hi; ++k) base[k] = static_cast<int>(tgt + (k - lo));
        }
        // compose with all within-class permutations of the target classes
        std::vector<std::vector<int>> maps = {base};
        for (const auto& [lo, hi] : classes) {
            if (hi - lo < 2) continue;
            std::vector<int> idx(hi - lo);
            std::iota(idx.begin(), idx.end(), 0);
            std::vector<std::vector<int>> grown;
            std::vector<int> perm_idx = idx;
            do {
                for (const auto& mcur : maps) {
                    std::vector<int> m2 = mcur;
                    for (std::size_t k = 0; k < m2.size(); ++k) {
                        const int pos = mcur[k];
                        if (pos >= static_cast<int>(lo) && pos < static_cast<int>(hi))
                            m2[k] = static_cast<int>(lo) + perm_idx[pos - static_cast<int>(lo)];
                    }
                    grown.push_back(std::move(m2));
                }
            } while (std::next_permutation(perm_idx.begin(), perm_idx.end()));
            maps = std::move(grown);
        }
        for (auto& m : maps) group.insert(std::move(m));
    }
    return {group.begin(), group.end()};
}

// ---- enumeration of connected leafless trivalent multigraphs ----

inline std::vector<MultiGraph> enumerate_trivalent(int g) {
    if (g < 2) throw unsupported_error("enumerate_trivalent needs g >= 2");
    const int n = 2 * g - 2;
    std::vector<MultiGraph> out;
    std::set<std::string> seen;
    std::vector<int> loops(n, 0), rem(n, 3);
    std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));

    std::function<void(int, int)> place = [&](int i, int j) {
        if (i == n) {
            MultiGraph g2;
            g2.n = n;
            for (int v = 0; v < n; ++v)
                for (int l = 0; l < loops[v]; ++l) g2.edges.push_back({v, v});
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    for (int m = 0; m < mult[a][b]; ++m) g2.edges.push_back({a, b});
            g2.normalize();
            if (!is_connected(g2)) return;
            CanonicalForm cf = canonical_form(g2);
            if (seen.insert(cf.key).second) out.push_back(cf.graph);
            return;
        }
        if (j == n) {
            if (rem[i] != 0) return;
            place(i + 1, i + 2);
            return;
        }
        const int cap = std::min(rem[i], rem[j]);
        for (int m = 0; m <= cap; ++m) {
            mult[i][j] = m;
            rem[i] -= m;
            rem[j] -= m;
            place(i, j + 1);
            rem[i] += m;
            rem[j] += m;
            mult[i][j] = 0;
        }
    };

    std::function<void(int)> pick_loops = [&](int v) {
        if (v == n) {
            place(0, 1);
            return;
        }
        for (int l = 0; l <= 1; ++l) {
            loops[v] = l;
            rem[v] = 3 - 2 * l;
            pick_loops(v + 1);
        }
    };
    if (n == 2) {
        // tiny case: also allow the double loop on one vertex? degree 3 is odd,
        // so at most one loop per vertex still holds.
    }
    pick_loops(0);
    std::sort(out.begin(), out.end());
    return out;
}

// ---- labels (loops, bi-edges, cut edges) ----

struct GraphLabel {
    int loops = 0, biedges = 0, cutedges = 0;
    std::string text;  // "(lbc)"
};

inline int count_components_without(const MultiGraph& g, int skip) {
    std::vector<int> comp(g.n, -1);
    int nc = 0;
    for (int v = 0; v < g.n; ++v) {
        if (v == skip || comp[v] >= 0) continue;
        comp[v] = nc;
        std::vector<int> stack = {v};
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (const auto& e : g.edges) {
                if (e.first == skip || e.second == skip) continue;
                int w = -1;
                if (e.first == u) w = e.second;
                else if (e.second == u)
                    w = e.first;
                if (w >= 0 && comp[w] < 0) {
                    comp[w] = nc;
                    stack.push_back(w);
                }
            }
        }
        ++nc;
    }
    return nc;
}

inline bool edge_is_bridge(const MultiGraph& g, std::size_t k) {
    const auto e = g.edges[k];
    if (e.first == e.second) return false;
    // parallel partner present?
    int mult = 0;
    for (const auto& f : g.edges)
        if (f == e) ++mult;
    if (mult > 1) return false;
    // connectivity without this one edge
    std::vector<int> stack = {e.first};
    std::vector<bool> seen(g.n, false);
    seen[e.first] = true;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            if (i == k) continue;
            const auto& f = g.edges[i];
            int w = -1;
            if (f.first == u) w = f.second;
            else if (f.second == u)
                w = f.first;
            if (w >= 0 && !seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return !seen[e.second];
}

inline GraphLabel label(const MultiGraph& g) {
    GraphLabel L;
    for (std::size_t i = 0; i < g.edges.size();) {
        std::size_t j = i;
        while (j < g.edges.size() && g.edges[j] == g.edges[i]) ++j;
        const std::size_t m = j - i;
        if (g.edges[i].first == g.edges[i].second)
            L.loops += static_cast<int>(m);
        else
            L.biedges += static_cast<int>(m * (m - 1) / 2);
        i = j;
    }
    for (std::size_t k = 0; k < g.edges.size(); ++k)
        if (edge_is_bridge(g, k)) ++L.cutedges;
    L.text = "(" + std::to_string(L.loops) + std::to_string(L.biedges) +
             std::to_string(L.cutedges) + ")";
    return L;
}

// ---- sprawling ----

inline bool is_sprawling(const MultiGraph& g) {
    for (int s = 0; s < g.n; ++s)
        if (g.n > 1 && count_components_without(g, s) == 3) return true;
    return false;
}

// ---- planarity ----
// Simplify, apply the Euler bound, then search exhaustively for K5 or K33
// subdivisions (graphs here have at most 10 vertices).

namespace detail {

struct SimpleGraph {
    int n = 0;
    std::vector<std::vector<bool>> adj;
};

inline SimpleGraph simplify(const MultiGraph& g) {
    SimpleGraph s;
    s.n = g.n;
    s.adj.assign(g.n, std::vector<bool>(g.n, false));
    for (const auto& e : g.edges)
        if (e.first != e.second) s.adj[e.first][e.second] = s.adj[e.second][e.first] = true;
    return s;
}

// Search internally-disjoint paths connecting required branch-vertex pairs,
// interior vertices drawn from the non-branch pool, each used at most once.
inline bool connect_pairs(const SimpleGraph& g, std::vector<std::pair<int, int>>& pairs,
                          std::size_t idx, std::vector<bool>& used) {
    if (idx == pairs.size()) return true;
    const auto [s, t] = pairs[idx];
    // DFS over paths from s to t through unused non-branch vertices
    std::vector<int> path;
    std::function<bool(int)> dfs = [&](int v) -> bool {
        if (g.adj[v][t]) {
            if (connect_pairs(g, pairs, idx + 1, used)) return true;
        }
        for (int w = 0; w < g.n; ++w) {
            if (!g.adj[v][w] || used[w] || w == t) continue;
            used[w] = true;
            if (dfs(w)) {
                used[w] = false;
                return true;
            }
            used[w] = false;
        }
        return false;
    };
    return dfs(s);
}

inline bool has_subdivision(const SimpleGraph& g, int k_parts_a, int k_parts_b) {
    // k_parts_b == 0: K_{k_parts_a} ; else K_{a,b}
    const int n = g.n;
    std::vector<int> branch;
    std::function<bool(int, int)> choose = [&](int from, int need) -> bool {
        if (need == 0) {
            std::vector<std::pair<int, int>> pairs;
            if (k_parts_b == 0) {
                for (std::size_t i = 0; i < branch.size(); ++i)
                    for (std::size_t j = i + 1; j < branch.size(); ++j)
                        pairs.push_back({branch[i], branch[j]});
            } else {
                for (int i = 0; i < k_parts_a; ++i)
                    for (int j = 0; j < k_parts_b; ++j)
                        pairs.push_back({branch[i], branch[k_parts_a + j]});
            }
            std::vector<bool> used(n, false);
            for (int b : branch) used[b] = true;
            return connect_pairs(g, pairs, 0, used);
        }
        for (int v = from; v < n; ++v) {
            branch.push_back(v);
            if (choose(v + 1, need - 1)) {
                branch.pop_back();
                return true;
            }
            branch.pop_back();
        }
        return false;
    };
    if (k_parts_b == 0) return choose(0, k_parts_a);
    // bipartite branch choice: unordered within parts; iterate part A then B
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> sel(k_parts_a + k_parts_b);
    std::function<bool(int, int)> chooseA = [&](int from, int need) -> bool {
        if (need == 0) {
            std::function<bool(int, int)> chooseB = [&](int fromB, int needB) -> bool {
                if (needB == 0) {
                    std::vector<std::pair<int, int>> pairs;
                    for (int i = 0; i < k_parts_a; ++i)
                        for (int j = 0; j < k_parts_b; ++j)
                            pairs.push_back({branch[i], branch[k_parts_a + j]});
                    std::vector<bool> used(n, false);
                    for (int b : branch) used[b] = true;
                    return connect_pairs(g, pairs, 0, used);
                }
                for (int v = fromB; v < n; ++v) {
                    if (std::find(branch.begin(), branch.begin() + k_parts_a, v) !=
                        branch.begin() + k_parts_a)
                        continue;
                    branch.push_back(v);
                    if (chooseB(v + 1, needB - 1)) {
                        branch.pop_back();
                        return true;
                    }
                    branch.pop_back();
                }
                return false;
            };
            return chooseB(0, k_parts_b);
        }
        for (int v = from; v < n; ++v) {
            branch.push_back(v);
            if (chooseA(v + 1, need - 1)) {
                branch.pop_back();
                return true;
            }
            branch.pop_back();
        }
        return false;
    };
    return chooseA(0, k_parts_a);
}

}  // namespace detail

inline bool is_planar(const MultiGraph& g_in) {
    detail::SimpleGraph g = detail::simplify(g_in);
    int m = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) m += g.adj[i][j];
    if (g.n < 5) return true;
    if (m > 3 * g.n - 6) return false;
    if (detail::has_subdivision(g, 5, 0)) return false;
    if (detail::has_subdivision(g, 3, 3)) return false;
    return true;
}

// Display label: "(lbc)", with the genus-4 honeycomb/K_{3,3} ambiguity
// resolved by planarity ("A" planar, "B" not).
inline std::string display_label(const MultiGraph& g) {
    GraphLabel L = label(g);
    std::string s = L.text;
    if (g.genus() == 4 && s == "(000)") s += is_planar(g) ? "A" : "B";
    return s;
}

// ---- chains ----
// Doubled path with end loops; each 4-valent node splits in two ways.

inline std::vector<MultiGraph> chains(int g) {
    if (g < 2) throw unsupported_error("chains need g >= 2");
    const int nodes = g - 1;
    std::vector<MultiGraph> out;
    std::set<std::string> seen;
    for (int mask = 0; mask < (1 << nodes); ++mask) {
        // node i becomes vertices 2i (side 0) and 2i+1 (side 1), joined by an edge
        MultiGraph G;
        G.n = 2 * nodes;
        auto plug = [&](int node, int group, int strand) -> int {
            // group 0 = left/loop-at-left, group 1 = right/loop-at-right
            const bool series = ((mask >> node) & 1) == 0;
            if (series) return 2 * node + group;
            return 2 * node + strand;
        };
        for (int i = 0; i < nodes; ++i) G.edges.push_back({2 * i, 2 * i + 1});
        if (nodes == 1) {
            // two loops at the single node
            for (int grp = 0; grp < 2; ++grp) G.edges.push_back({plug(0, grp, 0), plug(0, grp, 1)});
        } else {
            // left end loop at node 0 (group 0), right end loop at last (group 1)
            G.edges.push_back({plug(0, 0, 0), plug(0, 0, 1)});
            G.edges.push_back({plug(nodes - 1, 1, 0), plug(nodes - 1, 1, 1)});
            // doubled path edges between node i (group 1) and node i+1 (group 0)
            for (int i = 0; i + 1 < nodes; ++i)
                for (int strand = 0; strand < 2; ++strand)
                    G.edges.push_back({plug(i, 1, strand), plug(i + 1, 0, strand)});
        }
        G.normalize();
        CanonicalForm cf = canonical_form(G);
        if (seen.insert(cf.key).second) out.push_back(cf.graph);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- graph file format ----
// "vertices n", then one "u v" line per edge (loops "u u"), repeated lines
// for multiplicity.

inline void write_graph(std::ostream& os, const MultiGraph& g) {
    os << "vertices " << g.n << "\n";
    for (const auto& e : g.edges) os << e.first << " " << e.second << "\n";
}

inline MultiGraph read_graph(std::istream& is) {
    MultiGraph g;
    std::string line;
    while (std::getline(is, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) continue;
        if (tok == "vertices") {
            ss >> g.n;
        } else {
            std::pair<int, int> e;
            e.first = std::stoi(tok);
            ss >> e.second;
            g.edges.push_back(e);
        }
    }
    g.normalize();
    return g;
}

}  // namespace tropimod
