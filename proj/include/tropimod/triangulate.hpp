#pragma once

// Unimodular triangulations of a lattice polygon's point configuration:
// the lexicographic placing seed, bistellar flips, enumeration of all
// triangulations up to affine symmetry (breadth-first closure under flips),
// exact regularity decision by rational LP, and secondary cones.

#include "tropimod/cone.hpp"
#include "tropimod/exact.hpp"
#include "tropimod/lattice.hpp"
#include "tropimod/lp.hpp"

#include <array>
#include <cassert>
#include <cstdint>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace tropimod {

struct Triangulation {
    const LatticePolygon* poly = nullptr;
    std::vector<std::array<int, 3>> tris;  // sorted triples, sorted list

    struct IEdge {
        int a = 0, b = 0;      // edge endpoints (a < b), indices into poly->points
        int opp1 = 0, opp2 = 0;  // opposite vertices of the two adjacent triangles
        int t1 = 0, t2 = 0;      // adjacent triangle indices
    };
    std::vector<IEdge> edges;  // interior edges, sorted by (a, b)
};

inline Triangulation build_triangulation(const LatticePolygon& P,
                                         std::vector<std::array<int, 3>> tris) {
    Triangulation T;
    T.poly = &P;
    for (auto& t : tris) std::sort(t.begin(), t.end());
    std::sort(tris.begin(), tris.end());
    T.tris = std::move(tris);
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> inc;  // edge -> (tri, opp)
    for (std::size_t ti = 0; ti < T.tris.size(); ++ti) {
        const auto& t = T.tris[ti];
        inc[{t[0], t[1]}].push_back({static_cast<int>(ti), t[2]});
        inc[{t[0], t[2]}].push_back({static_cast<int>(ti), t[1]});
        inc[{t[1], t[2]}].push_back({static_cast<int>(ti), t[0]});
    }
    for (const auto& [e, v] : inc) {
        assert(v.size() <= 2);
        if (v.size() == 2)
            T.edges.push_back({e.first, e.second, v[0].second, v[1].second, v[0].first, v[1].first});
    }
    return T;
}

// Structural validation used by tests: unimodular tiles, full point usage,
// area count, Euler relation.
inline bool validate_triangulation(const Triangulation& T) {
    const LatticePolygon& P = *T.poly;
    std::vector<bool> used(P.points.size(), false);
    for (const auto& t : T.tris) {
        const LatticePoint &a = P.points[t[0]], &b = P.points[t[1]], &c = P.points[t[2]];
        if (std::abs(cross(a, b, c)) != 1) return false;
        used[t[0]] = used[t[1]] = used[t[2]] = true;
    }
    for (bool u : used)
        if (!u) return false;
    if (static_cast<long long>(T.tris.size()) != P.area2) return false;
    // 3T = 2E_int + E_boundary, with one boundary edge per boundary point.
    if (3 * T.tris.size() != 2 * T.edges.size() + static_cast<std::size_t>(P.boundary_count))
        return false;
    return true;
}

// ---- placing (pushing) triangulation ----
// Points are inserted in lexicographic order of `order`; each new point is
// joined to the strictly visible hull edges. Because every lattice point of
// the polygon participates, all triangles come out empty, hence unimodular.

inline std::vector<std::array<int, 3>> placing_triples(const std::vector<LatticePoint>& pts,
                                                       const std::vector<int>& order) {
    const std::size_t n = order.size();
    std::vector<std::array<int, 3>> tris;
    std::vector<int> hull;  // ccw cyclic
    std::size_t i = 0;
    std::vector<int> chain;
    for (; i < n; ++i) {
        const int p = order[i];
        if (chain.size() < 2) {
            chain.push_back(p);
            continue;
        }
        if (cross(pts[chain[0]], pts[chain[1]], pts[p]) == 0) {
            chain.push_back(p);  // chain stays collinear
            continue;
        }
        // first non-collinear point: fan over the chain
        for (std::size_t j = 0; j + 1 < chain.size(); ++j)
            tris.push_back({chain[j], chain[j + 1], p});
        if (cross(pts[chain[0]], pts[chain[1]], pts[p]) > 0) {
            hull = chain;
        } else {
            hull.assign(chain.rbegin(), chain.rend());
        }
        hull.push_back(p);
        ++i;
        break;
    }
    for (; i < n; ++i) {
        const int p = order[i];
        const std::size_t m = hull.size();
        std::vector<bool> vis(m, false);
        for (std::size_t j = 0; j < m; ++j)
            vis[j] = cross(pts[hull[j]], pts[hull[(j + 1) % m]], pts[p]) < 0;
        std::size_t s = m;
        for (std::size_t j = 0; j < m; ++j)
            if (vis[j] && !vis[(j + m - 1) % m]) {
                s = j;
                break;
            }
        assert(s < m && "new point must see the hull");
        std::vector<int> nh;
        std::size_t e = s;
        while (vis[e]) {
            tris.push_back({hull[e], hull[(e + 1) % m], p});
            e = (e + 1) % m;
        }
        // keep hull[s], insert p, continue from hull[e]
        nh.push_back(p);
        for (std::size_t j = e; j != s; j = (j + 1) % m) nh.push_back(hull[j]);
        nh.push_back(hull[s]);
        hull = std::move(nh);
    }
    return tris;
}

inline Triangulation placing_triangulation(const LatticePolygon& P) {
    std::vector<int> order(P.points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    return build_triangulation(P, placing_triples(P.points, order));
}

// Placing seed in a transformed coordinate frame; used to cross-check that
// the flip graph is connected independently of the starting triangulation.
inline Triangulation placing_triangulation_frame(const LatticePolygon& P, const AffineMap& f) {
    assert(std::abs(f.det()) == 1);
    std::vector<int> order(P.points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::vector<LatticePoint> img(P.points.size());
    for (std::size_t i = 0; i < P.points.size(); ++i) img[i] = f.apply(P.points[i]);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return img[a] < img[b]; });
    std::vector<std::array<int, 3>> tris = placing_triples(P.points, order);
    return build_triangulation(P, std::move(tris));
}

// ---- symmetries as point permutations ----

inline std::vector<std::vector<int>> symmetry_perms(const LatticePolygon& P) {
    std::vector<std::vector<int>> perms;
    for (const AffineMap& f : affine_symmetries(P)) {
        std::vector<int> perm(P.points.size());
        for (std::size_t i = 0; i < P.points.size(); ++i)
            perm[i] = P.index_of(f.apply(P.points[i]));
        perms.push_back(std::move(perm));
    }
    return perms;
}

// ---- canonical form of a triangulation under a symmetry group ----
// Key = lexicographically smallest flattened triple list over the group.

inline std::string triangulation_key(const std::vector<std::array<int, 3>>& tris) {
    std::string k;
    k.reserve(tris.size() * 3);
    for (const auto& t : tris)
        for (int v : t) k.push_back(static_cast<char>(v));
    return k;
}

inline std::string canonical_key(const std::vector<std::array<int, 3>>& tris,
                                 const std::vector<std::vector<int>>& perms) {
    std::string best;
    std::vector<std::array<int, 3>> mapped(tris.size());
    for (const auto& perm : perms) {
        for (std::size_t i = 0; i < tris.size(); ++i) {
            std::array<int, 3> t = {perm[tris[i][0]], perm[tris[i][1]], perm[tris[i][2]]};
            std::sort(t.begin(), t.end());
            mapped[i] = t;
        }
        std::sort(mapped.begin(), mapped.end());
        std::string k = triangulation_key(mapped);
        if (best.empty() || k < best) best = std::move(k);
    }
    return best;
}

inline std::vector<std::array<int, 3>> triples_from_key(const std::string& key) {
    std::vector<std::array<int, 3>> tris(key.size() / 3);
    for (std::size_t i = 0; i < tris.size(); ++i)
        tris[i] = {static_cast<int>(static_cast<unsigned char>(key[3 * i])),
                   static_cast<int>(static_cast<unsigned char>(key[3 * i + 1])),
                   static_cast<int>(static_cast<unsigned char>(key[3 * i + 2]))};
    return tris;
}

// ---- bistellar flips ----

inline bool flippable(const Triangulation& T, std::size_t k) {
    const auto& pts = T.poly->points;
    const Triangulation::IEdge& e = T.edges[k];
    const long long s1 = cross(pts[e.opp1], pts[e.opp2], pts[e.a]);
    const long long s2 = cross(pts[e.opp1], pts[e.opp2], pts[e.b]);
    return (s1 > 0 && s2 < 0) || (s1 < 0 && s2 > 0);
}

inline Triangulation flip(const Triangulation& T, std::size_t k) {
    const Triangulation::IEdge& e = T.edges[k];
    std::vector<std::array<int, 3>> tris;
    tris.reserve(T.tris.size());
    for (std::size_t i = 0; i < T.tris.size(); ++i)
        if (static_cast<int>(i) != e.t1 && static_cast<int>(i) != e.t2) tris.push_back(T.tris[i]);
    tris.push_back({e.opp1, e.opp2, e.a});
    tris.push_back({e.opp1, e.opp2, e.b});
    return build_triangulation(*T.poly, std::move(tris));
}

inline std::vector<Triangulation> flips(const Triangulation& T) {
    std::vector<Triangulation> out;
    for (std::size_t k = 0; k < T.edges.size(); ++k)
        if (flippable(T, k)) out.push_back(flip(T, k));
    return out;
}

// ---- flip form (the linear inequality attached to an interior edge) ----
// For edge {b,c} with opposite vertices a and d, writing d as the affine
// combination alpha*a + beta*b + gamma*c gives the lower-hull condition
//   h(d) - alpha h(a) - beta h(b) - gamma h(c) >= 0,
// an integer vector because both adjacent triangles are unimodular. Its
// value at h equals the lattice length of the dual tropical edge.

inline IVec flip_row(const Triangulation& T, const Triangulation::IEdge& e) {
    const auto& pts = T.poly->points;
    const LatticePoint &A = pts[e.opp1], &B = pts[e.a], &C = pts[e.b], &D = pts[e.opp2];
    const long long d0 = cross(A, B, C);  // +-1
    const long long beta_n = cross(A, D, C), gamma_n = cross(A, B, D);
    const long beta = static_cast<long>(beta_n / d0), gamma = static_cast<long>(gamma_n / d0);
    const long alpha = 1 - beta - gamma;
    assert(beta_n % d0 == 0 && gamma_n % d0 == 0);
    assert(alpha < 0 && "opposite vertices must straddle the edge");
    IVec row(pts.size(), 0);
    row[e.opp2] += 1;
    row[e.opp1] -= alpha;
    row[e.a] -= beta;
    row[e.b] -= gamma;
    return row;
}

inline IMat flip_rows(const Triangulation& T) {
    IMat rows;
    rows.reserve(T.edges.size());
    for (const auto& e : T.edges) rows.push_back(flip_row(T, e));
    return rows;
}

// ---- regularity ----
// Exact LP: maximize a common slack t with every flip form >= t, heights in
// [-1,1], t <= 1. The triangulation is regular iff the optimum is positive;
// the optimal heights are a witness.

inline std::optional<QVec> is_regular(const Triangulation& T) {
    const std::size_t n = T.poly->points.size();
    const IMat rows = flip_rows(T);
    const std::size_t nv = 2 * n + 1;  // h+, h-, t
    std::vector<QVec> A;
    QVec b;
    for (const IVec& r : rows) {
        QVec a(nv, Rat(0));
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = Rat(-r[i]);
            a[n + i] = Rat(r[i]);
        }
        a[2 * n] = 1;
        A.push_back(std::move(a));
        b.push_back(Rat(0));
    }
    for (std::size_t i = 0; i < 2 * n; ++i) {
        QVec a(nv, Rat(0));
        a[i] = 1;
        A.push_back(std::move(a));
        b.push_back(Rat(1));
    }
    {
        QVec a(nv, Rat(0));
        a[2 * n] = 1;
        A.push_back(std::move(a));
        b.push_back(Rat(1));
    }
    QVec c(nv, Rat(0));
    c[2 * n] = 1;
    LpResult res = lp_max(c, A, b);
    assert(res.status == LpStatus::Optimal);
    if (res.value <= 0) return std::nullopt;
    QVec h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = res.x[i] - res.x[n + i];
    return h;
}

// ---- secondary cone ----
// One flip inequality per interior edge; in pointed mode the heights of the
// three vertices of the lexicographically first triangle are pinned to zero,
// which kills the affine lineality Lin(A).

inline Cone secondary_cone(const Triangulation& T, bool pointed = true) {
    const int n = static_cast<int>(T.poly->points.size());
    IMat eqs;
    if (pointed) {
        for (int v : T.tris.front()) {
            IVec e(n, 0);
            e[v] = 1;
            eqs.push_back(std::move(e));
        }
    }
    return Cone::from_h(n, flip_rows(T), std::move(eqs));
}

// ---- enumeration ----
// Breadth-first closure under flips from the placing seed, one canonical
// key per symmetry orbit. Optionally checkpoints (visited set + frontier)
// so that the hours-scale runs can resume.

namespace detail {

inline std::string hex_encode(const std::string& s) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * s.size());
    for (unsigned char c : s) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    }
    return out;
}

inline std::string hex_decode(const std::string& s) {
    auto val = [](char c) { return c <= '9' ? c - '0' : c - 'a' + 10; };
    std::string out;
    out.reserve(s.size() / 2);
    for (std::size_t i = 0; i + 1 < s.size(); i += 2)
        out.push_back(static_cast<char>((val(s[i]) << 4) | val(s[i + 1])));
    return out;
}

}  // namespace detail

struct EnumerationOptions {
    bool up_to_symmetry = true;
    std::vector<std::array<int, 3>> seed;  // empty: lexicographic placing seed
    std::string checkpoint_path;       // empty: no checkpointing
    std::size_t checkpoint_every = 20000;
    std::function<void(std::uint64_t)> progress;  // called with class count
};

inline std::string polygon_id(const LatticePolygon& P) {
    std::string id;
    for (const LatticePoint& p : canonical_polygon_key(P))
        id += std::to_string(p.x) + "," + std::to_string(p.y) + ";";
    return id;
}

// Returns the canonical keys of all unimodular triangulation classes in
// deterministic BFS order.
inline std::vector<std::string> enumerate_keys(const LatticePolygon& P,
                                               const EnumerationOptions& opt = {}) {
    std::vector<std::vector<int>> perms;
    if (opt.up_to_symmetry)
        perms = symmetry_perms(P);
    else
        perms = {[&] {
            std::vector<int> id(P.points.size());
            for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
            return id;
        }()};

    const std::string header = "tropimod-checkpoint 1 " + polygon_id(P) +
                               (opt.up_to_symmetry ? " sym" : " nosym");
    std::vector<std::string> order;
    std::unordered_set<std::string> visited;
    std::deque<std::string> frontier;

    auto save = [&](bool complete) {
        if (opt.checkpoint_path.empty()) return;
        std::ofstream os(opt.checkpoint_path + ".tmp");
        os << header << "\n" << (complete ? "complete" : "partial") << "\n";
        for (const std::string& k : order) os << "v " << detail::hex_encode(k) << "\n";
        for (const std::string& k : frontier) os << "f " << detail::hex_encode(k) << "\n";
        os.close();
        std::rename((opt.checkpoint_path + ".tmp").c_str(), opt.checkpoint_path.c_str());
    };

    bool resumed = false;
    if (!opt.checkpoint_path.empty()) {
        std::ifstream is(opt.checkpoint_path);
        if (is) {
            std::string line;
            if (std::getline(is, line) && line == header) {
                std::string state;
                std::getline(is, state);
                while (std::getline(is, line)) {
                    if (line.size() < 3) continue;
                    const std::string key = detail::hex_decode(line.substr(2));
                    if (line[0] == 'v') {
                        order.push_back(key);
                        visited.insert(key);
                    } else if (line[0] == 'f') {
                        frontier.push_back(key);
                    }
                }
                resumed = true;
                if (state == "complete") return order;
            }
        }
    }
    if (!resumed) {
        Triangulation seed =
            opt.seed.empty() ? placing_triangulation(P) : build_triangulation(P, opt.seed);
        std::string k0 = canonical_key(seed.tris, perms);
        visited.insert(k0);
        order.push_back(k0);
        frontier.push_back(std::move(k0));
    }

    std::uint64_t since_save = 0;
    while (!frontier.empty()) {
        const std::string key = std::move(frontier.front());
        frontier.pop_front();
        Triangulation T = build_triangulation(P, triples_from_key(key));
        for (std::size_t k = 0; k < T.edges.size(); ++k) {
            if (!flippable(T, k)) continue;
            Triangulation N = flip(T, k);
            std::string nk = canonical_key(N.tris, perms);
            if (visited.insert(nk).second) {
                order.push_back(nk);
                frontier.push_back(std::move(nk));
                if (opt.progress && order.size() % 1000 == 0) opt.progress(order.size());
                if (++since_save >= opt.checkpoint_every) {
                    since_save = 0;
                    save(false);
                }
            }
        }
    }
    save(true);
    return order;
}

// Convenience stream matching the spec surface: triangulations up to
// symmetry (or not), optionally only the regular ones.
inline std::vector<Triangulation> enumerate_unimodular(const LatticePolygon& P,
                                                       bool up_to_symmetry,
                                                       bool regular_only) {
    EnumerationOptions opt;
    opt.up_to_symmetry = up_to_symmetry;
    std::vector<Triangulation> out;
    for (const std::string& k : enumerate_keys(P, opt)) {
        Triangulation T = build_triangulation(P, triples_from_key(k));
        if (regular_only && !is_regular(T)) continue;
        out.push_back(std::move(T));
    }
    return out;
}

// ---- honeycomb triangulation ----
// Slices H_{a,b,c,d} by the vertical, horizontal and diagonal lattice lines;
// every cell is a unit triangle.

inline Triangulation honeycomb_triangulation(const LatticePolygon& P, long long a, long long b,
                                             long long c, long long d) {
    std::vector<std::array<int, 3>> tris;
    auto idx = [&](long long x, long long y) { return P.index_of({x, y}); };
    for (long long x = 0; x < a; ++x) {
        for (long long y = 0; y < b; ++y) {
            const long long s = x + y;
            if (s >= c && s + 1 <= d)  // lower-left triangle of the cell
                tris.push_back({idx(x, y), idx(x + 1, y), idx(x, y + 1)});
            if (s + 1 >= c && s + 2 <= d)  // upper-right triangle
                tris.push_back({idx(x + 1, y), idx(x, y + 1), idx(x + 1, y + 1)});
        }
    }
    return build_triangulation(P, std::move(tris));
}

struct HoneycombPair {
    LatticePolygon polygon;
    std::vector<std::array<int, 3>> triples;
};

inline HoneycombPair honeycomb_pair(long long a, long long b, long long c, long long d) {
    HoneycombPair hp;
    hp.polygon = polygon_H(a, b, c, d);
    Triangulation T = honeycomb_triangulation(hp.polygon, a, b, c, d);
    hp.triples = T.tris;
    return hp;
}

// ---- triangulation file format ----
// Header "polygon <family spec or vertex list>", then one "i j k" triple
// per line, indices into the lexicographically sorted point list.

inline void write_triangulation(std::ostream& os, const Triangulation& T) {
    const LatticePolygon& P = *T.poly;
    if (!P.name.empty()) {
        os << "polygon " << P.name << "\n";
    } else {
        os << "polygon";
        for (const LatticePoint& v : P.vertices) os << " " << v.x << " " << v.y;
        os << "\n";
    }
    for (const auto& t : T.tris) os << t[0] << " " << t[1] << " " << t[2] << "\n";
}

inline std::pair<LatticePolygon, std::vector<std::array<int, 3>>> read_triangulation_raw(
    std::istream& is) {
    std::string line;
    LatticePolygon P;
    bool have_poly = false;
    std::vector<std::array<int, 3>> tris;
    while (std::getline(is, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) continue;
        if (tok == "polygon") {
            std::vector<std::string> rest;
            std::string w;
            while (ss >> w) rest.push_back(w);
            if (auto fam = parse_family_spec(rest)) {
                P = *fam;
            } else {
                std::vector<LatticePoint> pts;
                for (std::size_t i = 0; i + 1 < rest.size(); i += 2)
                    pts.push_back({std::stoll(rest[i]), std::stoll(rest[i + 1])});
                P = make_polygon(std::move(pts));
            }
            have_poly = true;
        } else {
            std::array<int, 3> t;
            t[0] = std::stoi(tok);
            ss >> t[1] >> t[2];
            tris.push_back(t);
        }
    }
    if (!have_poly) throw std::invalid_argument("triangulation file missing polygon header");
    return {std::move(P), std::move(tris)};
}

}  // namespace tropimod
