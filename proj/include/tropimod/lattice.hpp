#pragma once

// Lattice polygons and their point configurations: convex hulls over Z^2,
// interior hulls, genus, the named polygon families (T_d, R_{d,e},
// honeycombs H_{a,b,c,d}, hyperelliptic E_k), lattice equivalence, and the
// curated maximal-polygon lists for genus 3..6.

#include "tropimod/exact.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tropimod {

struct LatticePoint {
    long long x = 0, y = 0;
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

inline long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Convex hull, counterclockwise, no collinear points kept as vertices.
inline std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<LatticePoint> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;  // ccw
}

struct LatticePolygon {
    std::vector<LatticePoint> vertices;  // ccw, convex position
    std::vector<LatticePoint> points;    // all lattice points, lex sorted
    int boundary_count = 0, interior_count = 0;
    long long area2 = 0;  // twice the Euclidean area
    std::string name;     // optional family tag, e.g. "T 4"

    int genus() const { return interior_count; }

    int index_of(const LatticePoint& p) const {
        auto it = std::lower_bound(points.begin(), points.end(), p);
        assert(it != points.end() && *it == p);
        return static_cast<int>(it - points.begin());
    }

    // 1 = strict interior, 0 = boundary, -1 = outside
    int side(const LatticePoint& p) const {
        bool on_edge = false;
        const std::size_t n = vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            const long long c = cross(vertices[i], vertices[(i + 1) % n], p);
            if (c < 0) return -1;
            if (c == 0) on_edge = true;
        }
        return on_edge ? 0 : 1;
    }

    friend bool operator==(const LatticePolygon& a, const LatticePolygon& b) {
        return a.vertices == b.vertices;
    }
};

inline LatticePolygon make_polygon(std::vector<LatticePoint> pts, std::string name = {}) {
    LatticePolygon P;
    P.vertices = convex_hull(std::move(pts));
    P.name = std::move(name);
    if (P.vertices.size() < 3) throw std::invalid_argument("polygon is not 2-dimensional");
    const std::size_t n = P.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const LatticePoint &a = P.vertices[i], &b = P.vertices[(i + 1) % n];
        P.area2 += a.x * b.y - a.y * b.x;
    }
    assert(P.area2 > 0);
    long long xmin = P.vertices[0].x, xmax = xmin, ymin = P.vertices[0].y, ymax = ymin;
    for (const LatticePoint& v : P.vertices) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    for (long long x = xmin; x <= xmax; ++x) {
        for (long long y = ymin; y <= ymax; ++y) {
            const int s = P.side({x, y});
            if (s < 0) continue;
            P.points.push_back({x, y});
            if (s == 0)
                ++P.boundary_count;
            else
                ++P.interior_count;
        }
    }
    std::sort(P.points.begin(), P.points.end());
    // Pick's theorem keeps the scan honest.
    assert(P.area2 == 2 * P.interior_count + P.boundary_count - 2);
    return P;
}

// ---- named families ----

inline LatticePolygon polygon_T(long long d) {
    if (d < 1) throw std::invalid_argument("T_d needs d >= 1");
    return make_polygon({{0, 0}, {0, d}, {d, 0}}, "T " + std::to_string(d));
}

inline LatticePolygon polygon_R(long long d, long long e) {
    if (d < 1 || e < 1) throw std::invalid_argument("R_{d,e} needs d,e >= 1");
    return make_polygon({{0, 0}, {d, 0}, {0, e}, {d, e}},
                        "R " + std::to_string(d) + " " + std::to_string(e));
}

inline LatticePolygon polygon_H(long long a, long long b, long long c, long long d) {
    const bool ok = 0 <= c && c <= a && c <= b && a <= d && b <= d && d <= a + b;
    if (!ok) throw std::invalid_argument("honeycomb parameters must satisfy 0<=c<=a,b<=d<=a+b");
    std::vector<LatticePoint> pts;
    for (long long x = 0; x <= a; ++x)
        for (long long y = 0; y <= b; ++y)
            if (c <= x + y && x + y <= d) pts.push_back({x, y});
    return make_polygon(std::move(pts), "H " + std::to_string(a) + " " + std::to_string(b) +
                                            " " + std::to_string(c) + " " + std::to_string(d));
}

// Hyperelliptic polygon E_k of genus g: conv{(0,0),(0,2),(g+k,0),(g+2-k,2)};
// the repeated vertex at k = g+2 collapses to a triangle.
inline LatticePolygon polygon_E(long long g, long long k) {
    if (g < 2 || k < 1 || k > g + 2) throw std::invalid_argument("E_k^(g) needs g>=2, 1<=k<=g+2");
    return make_polygon({{0, 0}, {0, 2}, {g + k, 0}, {g + 2 - k, 2}},
                        "E " + std::to_string(g) + " " + std::to_string(k));
}

// ---- interior hull ----

struct InteriorHull {
    int dim = -1;  // -1 empty, 0 point, 1 segment, 2 polygon
    std::vector<LatticePoint> hull_vertices;  // ccw for dim 2, endpoints for dim 1
    std::vector<LatticePoint> points;         // all interior lattice points, lex sorted
    int boundary_count = 0;                   // lattice points on the hull boundary
    int vertex_count = 0;
};

inline InteriorHull interior_hull(const LatticePolygon& P) {
    InteriorHull H;
    for (const LatticePoint& p : P.points)
        if (P.side(p) > 0) H.points.push_back(p);
    if (H.points.empty()) return H;
    std::vector<LatticePoint> hull = convex_hull(H.points);
    if (hull.size() == 1) {
        H.dim = 0;
        H.hull_vertices = hull;
        H.vertex_count = 1;
        H.boundary_count = 1;
        return H;
    }
    if (hull.size() == 2) {  // collinear interiors collapse to the 2 extremes
        H.dim = 1;
        H.hull_vertices = hull;
        H.vertex_count = 2;
        H.boundary_count = static_cast<int>(H.points.size());
        return H;
    }
    H.dim = 2;
    H.hull_vertices = hull;
    H.vertex_count = static_cast<int>(hull.size());
    LatticePolygon Q = make_polygon(H.points);
    H.boundary_count = Q.boundary_count;
    return H;
}

// ---- maximal polygon from a 2-dimensional interior hull ----
// Relax every facet a.x <= c of the hull to a.x <= c+1; if the resulting
// region has integral vertices it is the unique maximal polygon with this
// interior hull, otherwise no lattice polygon has this interior.

inline std::optional<LatticePolygon> maximal_polygon(const InteriorHull& hull) {
    if (hull.dim != 2) throw std::invalid_argument("maximal_polygon needs a 2-dimensional hull");
    const std::vector<LatticePoint>& V = hull.hull_vertices;
    const std::size_t n = V.size();
    struct Facet {
        long long a, b, c;  // a x + b y <= c
    };
    std::vector<Facet> fac;
    for (std::size_t i = 0; i < n; ++i) {
        const LatticePoint &v = V[i], &w = V[(i + 1) % n];
        long long a = w.y - v.y, b = v.x - w.x;  // outward normal of ccw edge
        const long long g = std::abs(std::gcd(a, b));
        a /= g;
        b /= g;
        fac.push_back({a, b, a * v.x + b * v.y + 1});
    }
    // Vertices of the relaxed region: pairwise line intersections that
    // satisfy every inequality (handles facets going redundant).
    std::vector<LatticePoint> verts;
    for (std::size_t i = 0; i < fac.size(); ++i) {
        for (std::size_t j = i + 1; j < fac.size(); ++j) {
            const long long det = fac[i].a * fac[j].b - fac[j].a * fac[i].b;
            if (det == 0) continue;
            const long long xn = fac[i].c * fac[j].b - fac[j].c * fac[i].b;
            const long long yn = fac[i].a * fac[j].c - fac[j].a * fac[i].c;
            bool feas = true;
            for (const Facet& f : fac) {
                // f.a*(xn/det)+f.b*(yn/det) <= f.c, scaled by |det|
                const long long lhs = f.a * xn + f.b * yn;
                if ((det > 0 && lhs > f.c * det) || (det < 0 && lhs < f.c * det)) {
                    feas = false;
                    break;
                }
            }
            if (!feas) continue;
            if (xn % det != 0 || yn % det != 0) return std::nullopt;  // NotRealizable
            verts.push_back({xn / det, yn / det});
        }
    }
    LatticePolygon P = make_polygon(std::move(verts));
    // The relaxation must reproduce the hull as its interior.
    InteriorHull check = interior_hull(P);
    assert(check.points == hull.points);
    return P;
}

// ---- Scott's inequality ----

inline bool scott_check(const LatticePolygon& P) {
    assert(P.genus() >= 1);
    return P.boundary_count <= 2 * P.genus() + 7;
}

// ---- affine unimodular maps and lattice equivalence ----

struct AffineMap {
    long long m00 = 1, m01 = 0, m10 = 0, m11 = 1, tx = 0, ty = 0;
    LatticePoint apply(const LatticePoint& p) const {
        return {m00 * p.x + m01 * p.y + tx, m10 * p.x + m11 * p.y + ty};
    }
    long long det() const { return m00 * m11 - m01 * m10; }
};

// Map determined by three point correspondences, if integral and unimodular.
inline std::optional<AffineMap> map_from_triples(const LatticePoint v[3], const LatticePoint w[3]) {
    const long long vx1 = v[1].x - v[0].x, vy1 = v[1].y - v[0].y;
    const long long vx2 = v[2].x - v[0].x, vy2 = v[2].y - v[0].y;
    const long long wx1 = w[1].x - w[0].x, wy1 = w[1].y - w[0].y;
    const long long wx2 = w[2].x - w[0].x, wy2 = w[2].y - w[0].y;
    const long long det = vx1 * vy2 - vx2 * vy1;
    if (det == 0) return std::nullopt;
    // M * [v1-v0 | v2-v0] = [w1-w0 | w2-w0]
    const long long a_n = wx1 * vy2 - wx2 * vy1, b_n = wx2 * vx1 - wx1 * vx2;
    const long long c_n = wy1 * vy2 - wy2 * vy1, d_n = wy2 * vx1 - wy1 * vx2;
    if (a_n % det || b_n % det || c_n % det || d_n % det) return std::nullopt;
    AffineMap f;
    f.m00 = a_n / det;
    f.m01 = b_n / det;
    f.m10 = c_n / det;
    f.m11 = d_n / det;
    if (std::abs(f.det()) != 1) return std::nullopt;
    f.tx = w[0].x - (f.m00 * v[0].x + f.m01 * v[0].y);
    f.ty = w[0].y - (f.m10 * v[0].x + f.m11 * v[0].y);
    return f;
}

inline bool maps_points_onto(const AffineMap& f, const std::vector<LatticePoint>& from,
                             const std::vector<LatticePoint>& to) {
    std::vector<LatticePoint> img;
    img.reserve(from.size());
    for (const LatticePoint& p : from) img.push_back(f.apply(p));
    std::sort(img.begin(), img.end());
    return img == to;
}

// All candidate maps sending the vertex cycle of P to the vertex cycle of Q.
inline std::vector<AffineMap> equivalence_maps(const LatticePolygon& P, const LatticePolygon& Q) {
    std::vector<AffineMap> out;
    const std::size_t n = P.vertices.size();
    if (n != Q.vertices.size() || P.area2 != Q.area2 || P.points.size() != Q.points.size())
        return out;
    const LatticePoint v[3] = {P.vertices[0], P.vertices[1 % n], P.vertices[2 % n]};
    for (std::size_t j = 0; j < n; ++j) {
        for (int dir : {1, -1}) {
            const LatticePoint w[3] = {Q.vertices[j], Q.vertices[(j + n + dir) % n],
                                       Q.vertices[(j + 2 * (n + dir)) % n]};
            auto f = map_from_triples(v, w);
            if (!f) continue;
            if (maps_points_onto(*f, P.points, Q.points)) out.push_back(*f);
        }
    }
    return out;
}

inline std::optional<AffineMap> lattice_equivalent(const LatticePolygon& P,
                                                   const LatticePolygon& Q) {
    std::vector<AffineMap> maps = equivalence_maps(P, Q);
    if (maps.empty()) return std::nullopt;
    return maps.front();
}

inline std::vector<AffineMap> affine_symmetries(const LatticePolygon& P) {
    return equivalence_maps(P, P);
}

// Canonical representative of the lattice-equivalence class: for each
// directed edge pair (orientation included) map the edge direction to e1,
// reduce the following edge by the unique Hermite shear, then take the
// lexicographically smallest sorted vertex list with lexmin at the origin.
inline std::vector<LatticePoint> canonical_polygon_key(const LatticePolygon& P) {
    const std::size_t n = P.vertices.size();
    std::vector<LatticePoint> best;
    for (std::size_t i = 0; i < n; ++i) {
        for (int dir : {1, -1}) {
            const LatticePoint v0 = P.vertices[i];
            const LatticePoint v1 = P.vertices[(i + n + dir) % n];
            const LatticePoint v2 = P.vertices[(i + 2 * (n + dir)) % n];
            long long px = v1.x - v0.x, py = v1.y - v0.y;
            const long long g = std::abs(std::gcd(px, py));
            px /= g;
            py /= g;
            // unimodular M0 with M0*(px,py) = (1,0)
            long long a, b;
            {
                long long old_r = px, r = py, old_s = 1, s = 0, old_t = 0, t = 1;
                while (r != 0) {
                    const long long q = old_r / r;
                    std::swap(old_r -= q * r, r);
                    std::swap(old_s -= q * s, s);
                    std::swap(old_t -= q * t, t);
                }
                if (old_r < 0) {
                    old_s = -old_s;
                    old_t = -old_t;
                }
                a = old_s;
                b = old_t;
            }
            AffineMap f;
            f.m00 = a;
            f.m01 = b;
            f.m10 = -py;
            f.m11 = px;
            // force the next edge upward (covers reflections)
            LatticePoint e2 = f.apply({v2.x, v2.y});
            LatticePoint e0 = f.apply(v0);
            if (e2.y - e0.y < 0) {
                f.m10 = -f.m10;
                f.m11 = -f.m11;
                e2 = f.apply(v2);
                e0 = f.apply(v0);
            }
            const long long h = e2.y - e0.y;
            assert(h > 0);
            // Hermite shear: 0 <= (x-offset of next edge) < h
            long long xoff = e2.x - e0.x;
            long long shear = -(xoff >= 0 ? xoff / h : -((-xoff + h - 1) / h));
            AffineMap s;
            s.m00 = 1;
            s.m01 = shear;
            s.m10 = 0;
            s.m11 = 1;
            std::vector<LatticePoint> img;
            img.reserve(n);
            for (const LatticePoint& p : P.vertices) img.push_back(s.apply(f.apply(p)));
            std::sort(img.begin(), img.end());
            const LatticePoint o = img.front();
            for (LatticePoint& p : img) {
                p.x -= o.x;
                p.y -= o.y;
            }
            if (best.empty() || img < best) best = std::move(img);
        }
    }
    return best;
}

// ---- curated maximal polygons ----

struct PolygonClassification {
    std::vector<LatticePolygon> maximal2d;     // 2-dimensional interior hull
    std::vector<LatticePolygon> hyperelliptic; // E_1 .. E_{g+2}
};

inline std::vector<LatticePolygon> maximal_polygons_2d(int g) {
    auto tri = [](std::vector<LatticePoint> v, std::string nm) {
        return make_polygon(std::move(v), std::move(nm));
    };
    switch (g) {
        case 3:
            return {polygon_T(4)};
        case 4:
            return {polygon_R(3, 3), tri({{0, 0}, {0, 3}, {6, 0}}, "Q4 2"),
                    tri({{0, 2}, {2, 4}, {4, 0}}, "Q4 3")};
        case 5:
            return {tri({{0, 0}, {0, 4}, {4, 2}}, "Q5 1"),
                    tri({{2, 0}, {5, 0}, {0, 5}, {0, 2}}, "Q5 2"),
                    tri({{2, 0}, {4, 2}, {2, 4}, {0, 2}}, "Q5 3"),
                    tri({{0, 0}, {0, 2}, {2, 0}, {4, 4}}, "Q5 4")};
        case 6:
            return {polygon_T(5), tri({{0, 0}, {0, 7}, {3, 0}, {3, 1}}, "Q6 2"), polygon_R(3, 4),
                    tri({{0, 0}, {0, 4}, {2, 0}, {4, 2}}, "Q6 4")};
        default:
            throw unsupported_error("maximal polygon classification implemented for 3 <= g <= 6");
    }
}

inline PolygonClassification classify_maximal_polygons(int g) {
    PolygonClassification out;
    if (g >= 3 && g <= 6) out.maximal2d = maximal_polygons_2d(g);
    else if (g != 2)
        throw unsupported_error("classify_maximal_polygons supports 2 <= g <= 6");
    for (long long k = 1; k <= g + 2; ++k) out.hyperelliptic.push_back(polygon_E(g, k));
    // Validate the curated list: right genus, maximal, pairwise inequivalent.
    for (const LatticePolygon& P : out.maximal2d) {
        assert(P.genus() == g);
        InteriorHull H = interior_hull(P);
        assert(H.dim == 2);
        auto M = maximal_polygon(H);
        assert(M && M->points == P.points && "curated polygon is not maximal");
    }
    for (std::size_t i = 0; i < out.maximal2d.size(); ++i)
        for (std::size_t j = i + 1; j < out.maximal2d.size(); ++j)
            assert(!lattice_equivalent(out.maximal2d[i], out.maximal2d[j]));
    return out;
}

// ---- polygon file format ----
// Either a named family ("T 4", "R 3 3", "H 5 4 2 5", "E 3 5" meaning E g k)
// or one "x y" vertex per line, counterclockwise. '#' starts a comment.

inline std::optional<LatticePolygon> parse_family_spec(const std::vector<std::string>& tok) {
    if (tok.empty()) return std::nullopt;
    auto num = [&](std::size_t i) { return std::stoll(tok[i]); };
    if (tok[0] == "T" && tok.size() == 2) return polygon_T(num(1));
    if (tok[0] == "R" && tok.size() == 3) return polygon_R(num(1), num(2));
    if (tok[0] == "H" && tok.size() == 5) return polygon_H(num(1), num(2), num(3), num(4));
    if (tok[0] == "E" && tok.size() == 3) return polygon_E(num(1), num(2));
    return std::nullopt;
}

inline LatticePolygon read_polygon(std::istream& is) {
    std::vector<LatticePoint> pts;
    std::vector<std::string> first_tokens;
    std::string line;
    bool first_content = true;
    while (std::getline(is, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        std::vector<std::string> tok;
        std::string w;
        while (ss >> w) tok.push_back(w);
        if (tok.empty()) continue;
        if (first_content) {
            first_content = false;
            if (auto fam = parse_family_spec(tok)) return *fam;
        }
        if (tok.size() != 2) throw std::invalid_argument("polygon file: expected 'x y' per line");
        pts.push_back({std::stoll(tok[0]), std::stoll(tok[1])});
    }
    return make_polygon(std::move(pts));
}

inline void write_polygon(std::ostream& os, const LatticePolygon& P) {
    if (!P.name.empty()) os << "# " << P.name << "\n";
    for (const LatticePoint& v : P.vertices) os << v.x << " " << v.y << "\n";
}

}  // namespace tropimod
