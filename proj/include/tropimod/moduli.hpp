#pragma once

// Moduli of smooth tropical plane curves: the edge-length maps lambda and
// kappa, moduli cones M_Delta = (kappa . lambda)(secondary cone), per-polygon
// censuses, dimension formulas, the genus-3 realizability predicates, the
// hyperelliptic transfer to the triangle E_{g+2}, and the merge step that
// assembles per-graph collections of maximal cones.

#include "tropimod/cone.hpp"
#include "tropimod/exact.hpp"
#include "tropimod/lattice.hpp"
#include "tropimod/parallel.hpp"
#include "tropimod/skeleton.hpp"
#include "tropimod/triangulate.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace tropimod {

// ---- lambda: heights to dual edge lengths (one row per interior edge) ----

inline IMat lambda_matrix(const Triangulation& T) { return flip_rows(T); }

// ---- skeleton in canonical coordinates ----

struct SkeletonCanon {
    CanonicalForm cf;
    std::vector<std::vector<int>> comp;  // per canonical edge position
};

inline SkeletonCanon canonicalize_skeleton(const SkeletonMap& S) {
    SkeletonCanon out;
    out.cf = canonical_form(S.graph);
    const auto& cedges = out.cf.graph.edges;
    out.comp.assign(cedges.size(), {});
    std::vector<bool> taken(cedges.size(), false);
    for (std::size_t k = 0; k < S.graph.edges.size(); ++k) {
        std::pair<int, int> img = {out.cf.witness[S.graph.edges[k].first],
                                   out.cf.witness[S.graph.edges[k].second]};
        if (img.first > img.second) std::swap(img.first, img.second);
        auto it = std::lower_bound(cedges.begin(), cedges.end(), img);
        std::size_t pos = static_cast<std::size_t>(it - cedges.begin());
        while (taken[pos]) ++pos;  // next free slot in the parallel class
        assert(pos < cedges.size() && cedges[pos] == img);
        taken[pos] = true;
        out.comp[pos] = S.comp[k];
    }
    return out;
}

// kappa: dual edge lengths to skeleton edge lengths (0/1 rows, canonical
// edge order).
inline IMat kappa_rows(const SkeletonCanon& sk, std::size_t n_interior_edges) {
    IMat rows(sk.comp.size(), IVec(n_interior_edges, 0));
    for (std::size_t e = 0; e < sk.comp.size(); ++e)
        for (int k : sk.comp[e]) rows[e][k] = 1;
    return rows;
}

inline IMat kappa_lambda(const Triangulation& T, const SkeletonCanon& sk) {
    const IMat lam = lambda_matrix(T);
    const std::size_t n = T.poly->points.size();
    IMat M(sk.comp.size(), IVec(n, 0));
    for (std::size_t e = 0; e < sk.comp.size(); ++e)
        for (int k : sk.comp[e])
            for (std::size_t j = 0; j < n; ++j) M[e][j] += lam[k][j];
    return M;
}

// Image of the pointed secondary cone under lambda restricted to the
// interior edges that survive into the skeleton (pruned tentacle edges
// carry no metric information).
inline Cone lambda_image_skeleton(const Triangulation& T, const SkeletonCanon& sk) {
    std::vector<int> used;
    for (const auto& c : sk.comp) used.insert(used.end(), c.begin(), c.end());
    std::sort(used.begin(), used.end());
    const IMat lam = lambda_matrix(T);
    IMat rows;
    rows.reserve(used.size());
    for (int k : used) rows.push_back(lam[k]);
    Cone sec = secondary_cone(T, true);
    return sec.image(rows);
}

// dim(M_Delta) without any ray enumeration: the pointed secondary cone of a
// regular triangulation is full-dimensional in the pinned subspace, so the
// image dimension is the rank of kappa.lambda with the pinned columns
// dropped.
inline int moduli_dim(const Triangulation& T, const SkeletonCanon& sk) {
    IMat M = kappa_lambda(T, sk);
    const auto& pin = T.tris.front();
    IMat R;
    R.reserve(M.size());
    for (const IVec& row : M) {
        IVec r;
        r.reserve(row.size() - 3);
        for (std::size_t j = 0; j < row.size(); ++j)
            if (static_cast<int>(j) != pin[0] && static_cast<int>(j) != pin[1] &&
                static_cast<int>(j) != pin[2])
                r.push_back(row[j]);
        R.push_back(std::move(r));
    }
    return rank_of(R);
}

// Full moduli cone in canonical skeleton coordinates.
inline Cone moduli_cone(const Triangulation& T, const SkeletonCanon& sk) {
    Cone sec = secondary_cone(T, true);
    return sec.image(kappa_lambda(T, sk));
}

// ---- dimension formulas ----

inline int expected_dimension(int g) {
    assert(g >= 2);
    if (g == 2) return 3;
    if (g == 3) return 6;
    if (g == 7) return 16;
    return 2 * g + 1;
}

// Dimension of the honeycomb moduli cone from the interior hull alone.
// For a single interior point the skeleton is one cycle, a 1-dimensional
// moduli cone, which the counting formula does not cover.
inline int honeycomb_dimension(const LatticePolygon& P) {
    assert(P.genus() >= 1);
    if (P.genus() == 1) return 1;
    InteriorHull H = interior_hull(P);
    const int pts = static_cast<int>(H.points.size());
    int bd = 0, vt = 0;
    if (H.dim == 2) {
        bd = H.boundary_count;
        vt = H.vertex_count;
    } else {  // segment: everything lies on the boundary
        bd = pts;
        vt = 2;
    }
    return pts + bd + vt - 3;
}

inline int family_dimension_T(int d) {
    if (d < 4) throw std::invalid_argument("family_dimension_T needs d >= 4");
    return (d * d + 3 * d) / 2 - 8;
}

inline int family_dimension_R(int d, int e) {
    if (d < 3 || e < 3) throw std::invalid_argument("family_dimension_R needs d,e >= 3");
    return d * e + d + e - 6;
}

// ---- genus-3 realizability predicates ----
// Three-valued comparisons: with margin > 0 any comparison closer than the
// margin yields Marginal, which poisons the verdict; with margin 0 the
// evaluation is exact.

enum class TriBool { False, Marginal, True };

inline TriBool tri_and(TriBool a, TriBool b) {
    if (a == TriBool::False || b == TriBool::False) return TriBool::False;
    if (a == TriBool::Marginal || b == TriBool::Marginal) return TriBool::Marginal;
    return TriBool::True;
}

inline TriBool tri_or(TriBool a, TriBool b) {
    if (a == TriBool::True || b == TriBool::True) return TriBool::True;
    if (a == TriBool::Marginal || b == TriBool::Marginal) return TriBool::Marginal;
    return TriBool::False;
}

struct TriCmp {
    Rat eps;  // 0 = exact
    TriBool le(const Rat& a, const Rat& b) const {
        const Rat d = b - a;
        if (eps == 0) return d >= 0 ? TriBool::True : TriBool::False;
        if (d > eps) return TriBool::True;
        if (d < -eps) return TriBool::False;
        return TriBool::Marginal;
    }
    TriBool lt(const Rat& a, const Rat& b) const {
        const Rat d = b - a;
        if (eps == 0) return d > 0 ? TriBool::True : TriBool::False;
        if (d > eps) return TriBool::True;
        if (d < -eps) return TriBool::False;
        return TriBool::Marginal;
    }
    TriBool eq(const Rat& a, const Rat& b) const {
        const Rat d = b - a;
        if (d == 0) return TriBool::True;
        if (eps == 0) return TriBool::False;
        if (d > eps || d < -eps) return TriBool::False;
        return TriBool::Marginal;  // close to the hyperplane but not on it
    }
};

// Edge letters u,v,w,x,y,z for the five trivalent genus-3 graphs. The
// letter layout mirrors the usual drawings: (000) has inner triangle x,y,z
// and spokes u,v,w; (020) has parallel pairs {u,v},{y,z} and connectors
// w,x; (111) has loop y, bridge z, connectors w,x and parallel pair u,v;
// (212) has end loops u,z, bridges v,y and the middle pair w,x.
struct Genus3Graph {
    std::string name;
    std::array<std::pair<int, int>, 6> letters;  // u v w x y z
    MultiGraph graph;
    std::string canon_key;
    std::array<int, 6> canon_pos{};                 // letter -> canonical position
    std::vector<std::array<int, 6>> letter_autos;   // automorphisms acting on letters
};

inline const std::vector<Genus3Graph>& genus3_graphs() {
    static const std::vector<Genus3Graph> table = [] {
        std::vector<Genus3Graph> out;
        auto add = [&](std::string name, std::array<std::pair<int, int>, 6> letters) {
            Genus3Graph G;
            G.name = std::move(name);
            G.letters = letters;
            G.graph.n = 4;
            for (auto& e : letters) {
                if (e.first > e.second) std::swap(e.first, e.second);
                G.graph.edges.push_back(e);
            }
            G.graph.normalize();
            CanonicalForm cf = canonical_form(G.graph);
            G.canon_key = cf.key;
            const auto& cedges = cf.graph.edges;
            std::vector<bool> taken(cedges.size(), false);
            for (int i = 0; i < 6; ++i) {
                std::pair<int, int> img = {cf.witness[G.letters[i].first],
                                           cf.witness[G.letters[i].second]};
                if (img.first > img.second) std::swap(img.first, img.second);
                auto it = std::lower_bound(cedges.begin(), cedges.end(), img);
                std::size_t pos = static_cast<std::size_t>(it - cedges.begin());
                while (taken[pos]) ++pos;
                taken[pos] = true;
                G.canon_pos[i] = static_cast<int>(pos);
            }
            std::array<int, 6> inv_pos{};
            for (int i = 0; i < 6; ++i) inv_pos[G.canon_pos[i]] = i;
            for (const auto& sigma : edge_perm_group(cf)) {
                std::array<int, 6> a{};
                for (int i = 0; i < 6; ++i) a[i] = inv_pos[sigma[G.canon_pos[i]]];
                G.letter_autos.push_back(a);
            }
            std::sort(G.letter_autos.begin(), G.letter_autos.end());
            G.letter_autos.erase(std::unique(G.letter_autos.begin(), G.letter_autos.end()),
                                 G.letter_autos.end());
            out.push_back(std::move(G));
        };
        // vertices: see comments above
        add("(000)", {{{1, 3}, {0, 3}, {2, 3}, {0, 1}, {1, 2}, {0, 2}}});
        add("(020)", {{{0, 1}, {0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 3}}});
        add("(111)", {{{2, 3}, {2, 3}, {1, 2}, {1, 3}, {0, 0}, {0, 1}}});
        add("(212)", {{{0, 0}, {0, 1}, {1, 2}, {1, 2}, {2, 3}, {3, 3}}});
        add("(303)", {{{0, 0}, {1, 1}, {2, 2}, {0, 3}, {1, 3}, {2, 3}}});
        return out;
    }();
    return table;
}

inline const Genus3Graph* genus3_graph_by_name(const std::string& name) {
    for (const auto& G : genus3_graphs())
        if (G.name == name) return &G;
    return nullptr;
}

inline const Genus3Graph* genus3_graph_by_key(const std::string& canon_key) {
    for (const auto& G : genus3_graphs())
        if (G.canon_key == canon_key) return &G;
    return nullptr;
}

namespace detail {

// Conditions of the plane-quartic realizability theorem for one fixed
// letter assignment (no symmetry applied yet).
inline TriBool quartic_case(const std::string& name, const std::array<Rat, 6>& L,
                            const TriCmp& c) {
    const Rat &u = L[0], &v = L[1], &w = L[2], &x = L[3], &y = L[4], &z = L[5];
    if (name == "(000)") {
        const TriBool base = tri_and(
            tri_and(c.le(x, u), c.le(y, u)),
            tri_and(tri_and(c.le(x, v), c.le(z, v)), tri_and(c.le(y, w), c.le(z, w))));
        if (base == TriBool::False) return TriBool::False;
        // equality pattern: eq_u on max(x,y) etc.
        auto maxv = [](const Rat& a, const Rat& b) { return a >= b ? a : b; };
        const TriBool equ = c.eq(u, maxv(x, y));
        const TriBool eqv = c.eq(v, maxv(x, z));
        const TriBool eqw = c.eq(w, maxv(y, z));
        TriBool marg = TriBool::False;
        int n_eq = 0;
        for (TriBool t : {equ, eqv, eqw}) {
            if (t == TriBool::Marginal) marg = TriBool::Marginal;
            if (t == TriBool::True) ++n_eq;
        }
        if (marg == TriBool::Marginal) return tri_and(base, TriBool::Marginal);
        if (n_eq == 3) return TriBool::False;
        if (n_eq <= 1) return base;
        // exactly two equalities
        auto distinct = [&](const Rat& a, const Rat& b) { return a != b; };
        const bool xyz_distinct = distinct(x, y) && distinct(x, z) && distinct(y, z);
        if (xyz_distinct) {
            // the spoke joining the two shortest of x,y,z must be tight
            // x~y -> u, x~z -> v, y~z -> w
            const Rat mx = std::max({x, y, z});
            TriBool tight;
            if (x == mx)
                tight = eqw;  // shortest two are y,z
            else if (y == mx)
                tight = eqv;  // x,z
            else
                tight = equ;  // x,y
            if (tight == TriBool::True) return base;
        }
        // max attained exactly twice, connecting spoke not tight
        const Rat mx = std::max({x, y, z});
        const int n_max = (x == mx) + (y == mx) + (z == mx);
        if (n_max == 2) {
            TriBool tight;
            if (x == mx && y == mx) tight = equ;
            else if (x == mx && z == mx)
                tight = eqv;
            else
                tight = eqw;
            if (tight == TriBool::False) return base;
        }
        return TriBool::False;
    }
    if (name == "(020)") {
        const TriBool base = tri_and(c.le(v, u), c.le(y, z));
        const Rat lhs = w + (v >= y ? v : y);
        const TriBool main_le = c.le(lhs, x);
        if (base == TriBool::False || main_le == TriBool::False) return TriBool::False;
        const TriBool main_eq = c.eq(lhs, x);
        if (main_eq == TriBool::Marginal || base == TriBool::Marginal ||
            main_le == TriBool::Marginal)
            return TriBool::Marginal;
        if (main_eq == TriBool::False) return base;
        // boundary refinement: v=u implies v<y<z, y=z implies y<v<u
        TriBool ok = TriBool::True;
        const TriBool veq = c.eq(v, u), yeq = c.eq(y, z);
        if (veq == TriBool::Marginal || yeq == TriBool::Marginal) return TriBool::Marginal;
        if (veq == TriBool::True)
            ok = tri_and(ok, tri_and(c.lt(v, y), c.lt(y, z)));
        if (yeq == TriBool::True)
            ok = tri_and(ok, tri_and(c.lt(y, v), c.lt(v, u)));
        return tri_and(base, ok);
    }
    if (name == "(111)") {
        const TriBool wx = c.lt(w, x);
        if (wx == TriBool::False) return TriBool::False;
        const TriBool c1 = tri_and(c.eq(v + w, x), c.lt(v, u));
        const TriBool c2 =
            tri_and(tri_and(c.lt(v + w, x), c.le(x, v + 3 * w)), c.le(v, u));
        const TriBool c3 = tri_and(tri_and(c.lt(v + 3 * w, x), c.le(x, v + 4 * w)),
                                   tri_and(c.le(v, u), c.le(u, Rat(3) / 2 * v)));
        const TriBool c4 =
            tri_and(tri_and(c.lt(v + 3 * w, x), c.le(x, v + 4 * w)), c.eq(2 * v, u));
        const TriBool c5 =
            tri_and(tri_and(c.lt(v + 4 * w, x), c.le(x, v + 5 * w)), c.eq(v, u));
        return tri_and(wx, tri_or(tri_or(c1, c2), tri_or(c3, tri_or(c4, c5))));
    }
    if (name == "(212)") return tri_and(c.lt(w, x), c.le(x, 2 * w));
    return TriBool::False;  // (303) is sprawling
}

// Hyperelliptic counterpart (metric graphs from R_{4,2}).
inline TriBool hyper_case(const std::string& name, const std::array<Rat, 6>& L,
                          const TriCmp& c) {
    const Rat &u = L[0], &v = L[1], &w = L[2], &x = L[3], &y = L[4], &z = L[5];
    if (name == "(020)") {
        TriBool base = tri_and(tri_and(c.eq(w, x), c.le(v, u)),
                               tri_and(c.le(v, y), c.le(y, z)));
        if (base == TriBool::False) return TriBool::False;
        const TriBool d1 = c.lt(y, v + 2 * w);
        const TriBool d2 = tri_and(c.eq(y, v + 2 * w), c.lt(y, z));
        const TriBool d3 = tri_and(c.lt(y, v + 3 * w), c.le(u, 2 * v));
        const TriBool d4 = tri_and(tri_and(c.eq(y, v + 3 * w), c.le(u, 2 * v)), c.lt(y, z));
        const TriBool d5 = tri_and(c.lt(y, v + 4 * w), c.eq(u, v));
        const TriBool d6 = tri_and(tri_and(c.eq(y, v + 4 * w), c.eq(u, v)), c.lt(y, z));
        return tri_and(base,
                       tri_or(tri_or(d1, d2), tri_or(tri_or(d3, d4), tri_or(d5, d6))));
    }
    if (name == "(111)") {
        const Rat& mn = u <= v ? u : v;
        return tri_and(c.eq(w, x), c.le(mn, w));
    }
    if (name == "(212)") return c.eq(w, x);
    return TriBool::False;
}

}  // namespace detail

// Evaluates the realizability condition over all automorphism images of the
// letter assignment; `lengths` are in letter order u..z.
inline TriBool realizable_genus3_tri(const std::string& name, const std::array<Rat, 6>& lengths,
                                     const Rat& margin, bool hyperelliptic) {
    const Genus3Graph* G = genus3_graph_by_name(name);
    if (!G) throw std::invalid_argument("unknown genus-3 graph " + name);
    TriCmp cmp{margin};
    TriBool acc = TriBool::False;
    for (const auto& a : G->letter_autos) {
        std::array<Rat, 6> img;
        for (int i = 0; i < 6; ++i) img[a[i]] = lengths[i];
        const TriBool t = hyperelliptic ? detail::hyper_case(name, img, cmp)
                                        : detail::quartic_case(name, img, cmp);
        acc = tri_or(acc, t);
        if (acc == TriBool::True) return acc;
    }
    return acc;
}

inline bool realizable_genus3(const std::string& name, const std::array<Rat, 6>& lengths) {
    return realizable_genus3_tri(name, lengths, Rat(0), false) == TriBool::True;
}

inline bool realizable_genus3_hyp(const std::string& name, const std::array<Rat, 6>& lengths) {
    return realizable_genus3_tri(name, lengths, Rat(0), true) == TriBool::True;
}

// ---- hyperelliptic transfer ----
// Rebuilds a triangulation of the hyperelliptic triangle E_{g+2} that has
// the same moduli cone as the given triangulation of E_k.

namespace detail {

struct EdgeSet {
    std::set<std::pair<LatticePoint, LatticePoint>> edges;
    void add(LatticePoint a, LatticePoint b) {
        if (b < a) std::swap(a, b);
        edges.insert({a, b});
    }
    bool has(LatticePoint a, LatticePoint b) const {
        if (b < a) std::swap(a, b);
        return edges.count({a, b}) > 0;
    }
};

inline bool tri_has_edge(const Triangulation& T, LatticePoint a, LatticePoint b) {
    const auto& P = *T.poly;
    const int ia = P.index_of(a), ib = P.index_of(b);
    for (const auto& t : T.tris) {
        int hit = 0;
        for (int v : t) hit += (v == ia) + (v == ib);
        if (hit == 2) return true;
    }
    return false;
}

}  // namespace detail

inline Triangulation transfer_hyperelliptic(const Triangulation& T, LatticePolygon& out_polygon) {
    const LatticePolygon& P = *T.poly;
    const long long g = P.genus();
    assert(g >= 2);
    // identify k from the bottom edge length: E_k has (g+k, 0)
    long long xmax0 = 0;
    for (const LatticePoint& p : P.points)
        if (p.y == 0) xmax0 = std::max(xmax0, p.x);
    const long long k = xmax0 - g;
    assert(P == polygon_E(g, k) && "transfer expects a hyperelliptic polygon E_k");

    out_polygon = polygon_E(g, g + 2);
    detail::EdgeSet E;
    // polygon boundary
    for (long long m = 0; m <= 2 * g + 1; ++m) E.add({m, 0}, {m + 1, 0});
    E.add({0, 0}, {0, 1});
    E.add({0, 1}, {0, 2});
    E.add({0, 2}, {g + 1, 1});
    E.add({g + 1, 1}, {2 * g + 2, 0});
    // spokes from the apex
    for (long long i = 1; i <= g; ++i) E.add({0, 2}, {i, 1});
    // skeleton-shape edges
    for (long long i = 1; i + 1 <= g; ++i) {
        if (detail::tri_has_edge(T, {i, 1}, {i + 1, 1}))
            E.add({i, 1}, {i + 1, 1});
        else
            E.add({0, 2}, {2 * i + 1, 0});
    }
    // fans to the bottom edge with the same reciprocal slope differences
    std::vector<long long> fan_lo(g + 1), fan_hi(g + 1);
    for (long long i = 1; i <= g; ++i) {
        long long pL = 1 << 20, pR = -1, qL = 1 << 20, qR = -1;
        for (const LatticePoint& p : P.points) {
            if (p.y == 2 && detail::tri_has_edge(T, {i, 1}, p)) {
                pL = std::min(pL, p.x);
                pR = std::max(pR, p.x);
            }
            if (p.y == 0 && detail::tri_has_edge(T, {i, 1}, p)) {
                qL = std::min(qL, p.x);
                qR = std::max(qR, p.x);
            }
        }
        assert(pR >= 0 && qR >= 0 && "interior points see both horizontal edges");
        fan_lo[i] = pL + qL;  // 2i + a_i
        fan_hi[i] = pR + qR;  // 2i + b_i
        for (long long m = fan_lo[i]; m <= fan_hi[i]; ++m) E.add({i, 1}, {m, 0});
    }
    // left end: n = leftmost bottom point joined to (1,1)
    {
        const long long n = fan_lo[1];
        const bool left_edge = detail::tri_has_edge(T, {0, 1}, {1, 1});
        if (n == 0) {
            E.add({0, 1}, {1, 1});
        } else if (n >= 2) {
            E.add({0, 1}, {1, 1});
            for (long long m = 0; m <= n; ++m) E.add({0, 1}, {m, 0});
        } else if (left_edge) {
            E.add({0, 1}, {1, 1});
            E.add({0, 1}, {1, 0});
        } else {
            E.add({0, 2}, {1, 0});
            E.add({0, 1}, {1, 0});
        }
    }
    // right end, mirrored through (x,y) -> (2g+2-x-(g+1)y, y)
    {
        const long long np = fan_hi[g];
        const bool right_edge = detail::tri_has_edge(T, {g, 1}, {g + 1, 1});
        if (np == 2 * g + 2) {
            E.add({g + 1, 1}, {g, 1});
        } else if (np <= 2 * g) {
            E.add({g + 1, 1}, {g, 1});
            for (long long m = np; m <= 2 * g + 2; ++m) E.add({g + 1, 1}, {m, 0});
        } else if (right_edge) {
            E.add({g + 1, 1}, {g, 1});
            E.add({g + 1, 1}, {2 * g + 1, 0});
        } else {
            E.add({0, 2}, {2 * g + 1, 0});
            E.add({g + 1, 1}, {2 * g + 1, 0});
        }
    }
    // Faces: every unimodular triangle whose three edges are present is a
    // face (unimodular triangles contain no further lattice points).
    std::vector<std::array<int, 3>> tris;
    const auto& pts = out_polygon.points;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            if (!E.has(pts[a], pts[b])) continue;
            for (std::size_t c = b + 1; c < pts.size(); ++c) {
                if (std::abs(cross(pts[a], pts[b], pts[c])) != 1) continue;
                if (!E.has(pts[a], pts[c]) || !E.has(pts[b], pts[c])) continue;
                tris.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)});
            }
        }
    Triangulation out = build_triangulation(out_polygon, std::move(tris));
    assert(validate_triangulation(out) && "transfer must produce a unimodular triangulation");
    return out;
}

// ---- per-polygon census ----

struct ClassRecord {
    std::string key;        // canonical triangulation key
    bool regular = false;
    std::string graph_key;  // canonical skeleton key (regular classes only)
    int dim = -1;           // dim(M_Delta)
};

struct PolygonCensus {
    LatticePolygon polygon;
    std::vector<ClassRecord> classes;  // BFS order
    int regular_count = 0;
};

inline PolygonCensus census_polygon(const LatticePolygon& P, int jobs,
                                    const std::string& cache_dir = {},
                                    const std::function<void(std::string)>& log = {}) {
    PolygonCensus out;
    out.polygon = P;
    const std::string id = polygon_id(P);
    std::string cache_file;
    if (!cache_dir.empty()) {
        std::size_t h = std::hash<std::string>{}(id);
        cache_file = cache_dir + "/census-" + std::to_string(h) + ".txt";
        std::ifstream is(cache_file);
        if (is) {
            std::string line;
            if (std::getline(is, line) && line == "tropimod-census 1 " + id) {
                while (std::getline(is, line)) {
                    std::istringstream ss(line);
                    std::string hex, gk;
                    int reg = 0, dim = -1;
                    if (!(ss >> hex >> reg >> gk >> dim)) continue;
                    ClassRecord r;
                    r.key = detail::hex_decode(hex);
                    r.regular = reg != 0;
                    r.graph_key = gk == "-" ? "" : gk;
                    r.dim = dim;
                    out.classes.push_back(std::move(r));
                    out.regular_count += reg;
                }
                return out;
            }
        }
    }

    EnumerationOptions opt;
    opt.up_to_symmetry = true;
    if (!cache_dir.empty()) {
        std::size_t h = std::hash<std::string>{}(id);
        opt.checkpoint_path = cache_dir + "/enum-" + std::to_string(h) + ".ckpt";
    }
    if (log) opt.progress = [&](std::uint64_t n) { log("enumerated " + std::to_string(n)); };
    std::vector<std::string> keys = enumerate_keys(P, opt);
    if (log) log("classes: " + std::to_string(keys.size()));

    out.classes.resize(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t i) {
        ClassRecord r;
        r.key = keys[i];
        Triangulation T = build_triangulation(P, triples_from_key(keys[i]));
        if (is_regular(T)) {
            r.regular = true;
            SkeletonCanon sk = canonicalize_skeleton(extract_skeleton(T));
            r.graph_key = sk.cf.key;
            r.dim = moduli_dim(T, sk);
        }
        out.classes[i] = std::move(r);
    });
    for (const ClassRecord& r : out.classes) out.regular_count += r.regular;

    if (!cache_file.empty()) {
        std::ofstream os(cache_file + ".tmp");
        os << "tropimod-census 1 " << id << "\n";
        for (const ClassRecord& r : out.classes)
            os << detail::hex_encode(r.key) << " " << (r.regular ? 1 : 0) << " "
               << (r.graph_key.empty() ? "-" : r.graph_key) << " " << r.dim << "\n";
        os.close();
        std::rename((cache_file + ".tmp").c_str(), cache_file.c_str());
    }
    return out;
}

inline MultiGraph parse_graph_key(const std::string& key) {
    MultiGraph g;
    const std::size_t colon = key.find(':');
    g.n = std::stoi(key.substr(0, colon));
    std::size_t pos = colon + 1;
    while (pos < key.size()) {
        const std::size_t dash = key.find('-', pos);
        const std::size_t semi = key.find(';', dash);
        g.edges.push_back({std::stoi(key.substr(pos, dash - pos)),
                           std::stoi(key.substr(dash + 1, semi - dash - 1))});
        pos = semi + 1;
    }
    return g;
}

// Census table rows: (label, dim) -> class count, per graph.
struct CensusTable {
    // label -> dim -> count, plus per-label totals
    std::map<std::string, std::map<int, int>> rows;
    std::map<std::string, std::string> label_to_key;
    int total = 0;

    int count(const std::string& label, int dim) const {
        auto it = rows.find(label);
        if (it == rows.end()) return 0;
        auto jt = it->second.find(dim);
        return jt == it->second.end() ? 0 : jt->second;
    }
    int row_total(const std::string& label) const {
        auto it = rows.find(label);
        if (it == rows.end()) return 0;
        int s = 0;
        for (auto& [d, c] : it->second) s += c;
        return s;
    }
    int max_dim(const std::string& label) const {
        auto it = rows.find(label);
        if (it == rows.end() || it->second.empty()) return -1;
        return it->second.rbegin()->first;
    }
};

inline CensusTable census_table(const PolygonCensus& census) {
    CensusTable t;
    std::map<std::string, std::string> key_label;
    for (const ClassRecord& r : census.classes) {
        if (!r.regular) continue;
        auto it = key_label.find(r.graph_key);
        if (it == key_label.end()) {
            const std::string lbl = display_label(parse_graph_key(r.graph_key));
            it = key_label.insert({r.graph_key, lbl}).first;
            t.label_to_key[lbl] = r.graph_key;
        }
        ++t.rows[it->second][r.dim];
        ++t.total;
    }
    return t;
}

inline void write_census_tsv(std::ostream& os, const PolygonCensus& census) {
    os << "# tropimod census v1\n";
    os << "# polygon\t" << (census.polygon.name.empty() ? polygon_id(census.polygon)
                                                        : census.polygon.name)
       << "\n";
    os << "graph_label\tdim\tcount\n";
    CensusTable t = census_table(census);
    for (const auto& [label, row] : t.rows)
        for (const auto& [dim, count] : row)
            os << label << "\t" << dim << "\t" << count << "\n";
    os << "# summary\ttotal_regular\t" << t.total << "\n";
    for (const auto& [label, row] : t.rows)
        os << "# summary\t" << label << "\tmax_dim\t" << t.max_dim(label) << "\ttotal\t"
           << t.row_total(label) << "\n";
}

// ---- merged moduli spaces (per-graph maximal cones) ----

struct GraphCones {
    MultiGraph graph;
    std::vector<std::vector<int>> edge_group;  // automorphism action on coordinates
    std::vector<Cone> cones;                   // maximal cones, canonical coordinates
    int max_dim = 0;
};

struct ModuliSpaceCones {
    int g = 0;
    int ambient = 0;
    std::map<std::string, GraphCones> graphs;
};

inline IVec apply_edge_perm(const IVec& v, const std::vector<int>& perm) {
    IVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[perm[i]] = v[i];
    return out;
}

// Collects moduli cones for the regular classes of several censuses whose
// dim is at least `min_dim`, dedupes them, and keeps only cones maximal
// under inclusion modulo graph automorphisms.
inline ModuliSpaceCones build_moduli_cones(const std::vector<const PolygonCensus*>& sources,
                                           int g, int min_dim, int jobs) {
    ModuliSpaceCones space;
    space.g = g;
    space.ambient = g >= 2 ? 3 * g - 3 : 1;
    struct Item {
        const PolygonCensus* census;
        std::size_t index;
    };
    std::vector<Item> items;
    for (const PolygonCensus* c : sources)
        for (std::size_t i = 0; i < c->classes.size(); ++i)
            if (c->classes[i].regular && c->classes[i].dim >= min_dim)
                items.push_back({c, i});

    std::vector<std::optional<Cone>> cones(items.size());
    std::vector<std::string> gkeys(items.size());
    parallel_for(items.size(), jobs, [&](std::size_t i) {
        const ClassRecord& r = items[i].census->classes[items[i].index];
        Triangulation T =
            build_triangulation(items[i].census->polygon, triples_from_key(r.key));
        SkeletonCanon sk = canonicalize_skeleton(extract_skeleton(T));
        Cone c = moduli_cone(T, sk);
        cones[i] = std::move(c);
        gkeys[i] = r.graph_key;
    });

    // bucket by graph with dedup
    std::map<std::string, std::set<std::string>> seen;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const std::string& gk = gkeys[i];
        auto& bucket = space.graphs[gk];
        if (bucket.edge_group.empty()) {
            bucket.graph = parse_graph_key(gk);
            bucket.edge_group = edge_perm_group(canonical_form(bucket.graph));
        }
        Cone& c = *cones[i];
        const std::string key = c.v_key();
        if (seen[gk].insert(key).second) bucket.cones.push_back(std::move(c));
    }

    // maximality filter modulo automorphisms
    for (auto& [gk, bucket] : space.graphs) {
        std::vector<int> dims(bucket.cones.size());
        for (std::size_t i = 0; i < bucket.cones.size(); ++i) dims[i] = bucket.cones[i].dim();
        std::vector<std::size_t> order(bucket.cones.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return dims[a] > dims[b]; });
        std::vector<Cone> kept;
        std::vector<int> kept_dims;
        for (std::size_t oi : order) {
            Cone& c = bucket.cones[oi];
            c.ensure_v();
            bool contained = false;
            for (std::size_t kk = 0; kk < kept.size() && !contained; ++kk) {
                if (kept_dims[kk] < dims[oi]) continue;
                for (const auto& sigma : bucket.edge_group) {
                    bool all_in = true;
                    for (const IVec& r : c.rays) {
                        if (!kept[kk].contains(apply_edge_perm(r, sigma))) {
                            all_in = false;
                            break;
                        }
                    }
                    if (all_in) {
                        contained = true;
                        break;
                    }
                }
            }
            if (!contained) {
                kept.push_back(std::move(c));
                kept_dims.push_back(dims[oi]);
            }
        }
        bucket.cones = std::move(kept);
        bucket.max_dim = kept.empty() ? -1 : *std::max_element(kept_dims.begin(), kept_dims.end());
    }
    return space;
}

// Expand a graph bucket's cones by the automorphism group (used by volume
// and membership queries); dedupes images.
inline std::vector<Cone> orbit_closed_cones(GraphCones& bucket, int only_dim = -1) {
    std::vector<Cone> out;
    std::set<std::string> seen;
    for (Cone& c : bucket.cones) {
        if (only_dim >= 0 && c.dim() != only_dim) continue;
        c.ensure_v();
        for (const auto& sigma : bucket.edge_group) {
            IMat rays;
            rays.reserve(c.rays.size());
            for (const IVec& r : c.rays) rays.push_back(apply_edge_perm(r, sigma));
            Cone img = Cone::from_v(c.ambient, std::move(rays));
            img.minimize_v();
            const std::string key = img.v_key();
            if (seen.insert(key).second) out.push_back(std::move(img));
        }
    }
    return out;
}

// ---- assembled planar moduli summary ----

struct AssembleResult {
    int g = 0;
    int dim = 0;
    int realizable = 0, trivalent_total = 0;
    std::vector<std::pair<std::string, int>> polygon_dims;  // (name, dim M_P)
    std::set<std::string> realizable_graph_keys;
};

inline AssembleResult assemble_planar(int g, int jobs, const std::string& cache_dir = {},
                                      const std::function<void(std::string)>& log = {}) {
    AssembleResult res;
    res.g = g;
    PolygonClassification cls = classify_maximal_polygons(g);
    std::vector<LatticePolygon> sources = cls.maximal2d;
    sources.push_back(polygon_E(g, g + 2));
    for (const LatticePolygon& P : sources) {
        if (log) log("census " + P.name);
        PolygonCensus c = census_polygon(P, jobs, cache_dir, log);
        int dimP = 0;
        for (const ClassRecord& r : c.classes) {
            if (!r.regular) continue;
            dimP = std::max(dimP, r.dim);
            res.realizable_graph_keys.insert(r.graph_key);
        }
        res.polygon_dims.push_back({P.name, dimP});
        res.dim = std::max(res.dim, dimP);
    }
    res.realizable = static_cast<int>(res.realizable_graph_keys.size());
    res.trivalent_total = static_cast<int>(enumerate_trivalent(g).size());
    return res;
}

}  // namespace tropimod
