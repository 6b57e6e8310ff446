#pragma once

// Probability-of-realizability machinery: a counter-based RNG, uniform
// sampling of the standard simplex with exact dyadic coordinates, Monte
// Carlo membership ratios against unions of cones, and exact volumes of
// such unions via inclusion-exclusion with vertex enumeration and
// simplicial decomposition.

#include "tropimod/cone.hpp"
#include "tropimod/exact.hpp"
#include "tropimod/linalg.hpp"
#include "tropimod/parallel.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace tropimod {

// ---- counter-based RNG (splitmix64 over seed + counter) ----

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t rng_at(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64(seed + counter * 0x9E3779B97F4A7C15ull);
}

// Uniform sample from the standard simplex {x >= 0, sum = 1} with m
// coordinates: sorted uniform dyadics and their gaps. Coordinates are exact
// rationals with denominator 2^53, returned as integer numerators.
inline std::vector<std::int64_t> sample_simplex_ints(int m, std::uint64_t seed,
                                                     std::uint64_t sample_index) {
    constexpr std::int64_t kDen = 1ll << 53;
    std::vector<std::int64_t> cuts(m - 1);
    const std::uint64_t base = sample_index * static_cast<std::uint64_t>(m - 1);
    for (int j = 0; j + 1 < m; ++j)
        cuts[j] = static_cast<std::int64_t>(rng_at(seed, base + j) >> 11);
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::int64_t> out(m);
    std::int64_t prev = 0;
    for (int j = 0; j + 1 < m; ++j) {
        out[j] = cuts[j] - prev;
        prev = cuts[j];
    }
    out[m - 1] = kDen - prev;
    return out;
}

// Public surface: point on the dim-dimensional standard simplex (dim+1
// coordinates summing to one).
inline QVec sample_simplex(int dim, std::uint64_t seed, std::uint64_t sample_index = 0) {
    if (dim < 1) throw std::invalid_argument("sample_simplex needs dim >= 1");
    const auto ints = sample_simplex_ints(dim + 1, seed, sample_index);
    QVec out(ints.size());
    const Rat den(Int(1) << 53);
    for (std::size_t i = 0; i < ints.size(); ++i) out[i] = Rat(static_cast<long>(ints[i])) / den;
    return out;
}

// ---- fast membership of integer points in unions of cones ----

struct FastCone {
    // inequality rows in int64 (facet coefficients are small); equations too
    std::vector<std::vector<std::int64_t>> ineqs, eqs;
};

inline FastCone fast_cone(Cone& c) {
    c.ensure_h();
    FastCone f;
    auto conv = [](const IMat& rows) {
        std::vector<std::vector<std::int64_t>> out;
        for (const IVec& r : rows) {
            std::vector<std::int64_t> o(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (!r[i].fits_slong_p()) throw unsupported_error("cone coefficients too large");
                o[i] = r[i].get_si();
            }
            out.push_back(std::move(o));
        }
        return out;
    };
    f.ineqs = conv(c.ineqs);
    f.eqs = conv(c.eqs);
    return f;
}

inline bool fast_contains(const FastCone& f, const std::vector<std::int64_t>& p) {
    for (const auto& e : f.eqs) {
        __int128 s = 0;
        for (std::size_t i = 0; i < p.size(); ++i) s += static_cast<__int128>(e[i]) * p[i];
        if (s != 0) return false;
    }
    for (const auto& a : f.ineqs) {
        __int128 s = 0;
        for (std::size_t i = 0; i < p.size(); ++i) s += static_cast<__int128>(a[i]) * p[i];
        if (s < 0) return false;
    }
    return true;
}

// Monte Carlo fraction of simplex points lying in the union of the cones.
inline double mc_union_fraction(std::vector<Cone>& cones, int ambient, std::uint64_t samples,
                                std::uint64_t seed, int jobs, double* ci95 = nullptr) {
    std::vector<FastCone> fast;
    fast.reserve(cones.size());
    for (Cone& c : cones) fast.push_back(fast_cone(c));
    const int chunks = jobs > 0 ? 4 * jobs : 4;
    std::vector<std::uint64_t> hits(chunks, 0);
    parallel_for(chunks, jobs, [&](std::size_t chunk) {
        const std::uint64_t lo = samples * chunk / chunks, hi = samples * (chunk + 1) / chunks;
        std::uint64_t h = 0;
        for (std::uint64_t s = lo; s < hi; ++s) {
            const auto p = sample_simplex_ints(ambient, seed, s);
            for (const FastCone& f : fast) {
                if (fast_contains(f, p)) {
                    ++h;
                    break;
                }
            }
        }
        hits[chunk] = h;
    });
    const std::uint64_t total = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
    const double p = samples ? static_cast<double>(total) / static_cast<double>(samples) : 0.0;
    if (ci95) *ci95 = samples ? 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)) : 0.0;
    return p;
}

// ---- exact polytope volume ----
// The polytope is given by homogeneous cone rows intersected with the
// standard simplex; we chart away the last coordinate, enumerate vertices
// through the homogenization cone, and triangulate recursively.

namespace volume_detail {

struct ChartRow {
    QVec c;  // c . y + t >= 0
    Rat t;
};

// rows: homogeneous inequalities in R^m. Chart: y in R^{m-1},
// x = (y, 1 - sum y).
inline std::vector<ChartRow> chart_rows(const IMat& cone_rows, int m) {
    std::vector<ChartRow> rows;
    for (const IVec& a : cone_rows) {
        ChartRow r;
        r.c.assign(m - 1, Rat(0));
        for (int j = 0; j + 1 < m; ++j) r.c[j] = Rat(a[j] - a[m - 1]);
        r.t = Rat(a[m - 1]);
        rows.push_back(std::move(r));
    }
    // simplex facets
    for (int j = 0; j + 1 < m; ++j) {
        ChartRow r;
        r.c.assign(m - 1, Rat(0));
        r.c[j] = 1;
        r.t = 0;
        rows.push_back(std::move(r));
    }
    ChartRow last;
    last.c.assign(m - 1, Rat(-1));
    last.t = 1;
    rows.push_back(std::move(last));
    return rows;
}

inline std::vector<QVec> polytope_vertices(const std::vector<ChartRow>& rows, int d) {
    // homogenize: variables (y, s); rows c.y + t s >= 0; s >= 0
    IMat in;
    for (const ChartRow& r : rows) {
        QVec full = r.c;
        full.push_back(r.t);
        in.push_back(clear_denominators(full));
    }
    {
        IVec s(d + 1, 0);
        s[d] = 1;
        in.push_back(std::move(s));
    }
    auto [rays, lin] = dd_h_to_v(d + 1, in, {});
    assert(lin.empty());
    std::vector<QVec> verts;
    for (const IVec& r : rays) {
        if (r[d] == 0) continue;  // recession direction: cannot happen, simplex is bounded
        assert(r[d] > 0);
        QVec v(d);
        for (int j = 0; j < d; ++j) v[j] = Rat(r[j]) / Rat(r[d]);
        verts.push_back(std::move(v));
    }
    return verts;
}

inline int affine_rank(const std::vector<QVec>& pts, const std::vector<int>& idx) {
    if (idx.size() <= 1) return 0;
    QMat rows;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        QVec r(pts[idx[0]].size());
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = pts[idx[i]][j] - pts[idx[0]][j];
        rows.push_back(std::move(r));
    }
    return rank_of(rows);
}

// Recursive simplicial decomposition of a face given by its vertex subset.
inline void triangulate_face(const std::vector<QVec>& pts, const std::vector<ChartRow>& rows,
                             const std::vector<int>& face, int face_dim,
                             std::vector<std::vector<int>>& simplices) {
    if (static_cast<int>(face.size()) == face_dim + 1) {
        simplices.push_back(face);
        return;
    }
    const int apex = face.front();
    std::set<std::vector<int>> facets;
    for (const ChartRow& r : rows) {
        std::vector<int> sub;
        bool apex_on = false;
        for (int vi : face) {
            Rat v = r.t;
            for (std::size_t j = 0; j < r.c.size(); ++j) v += r.c[j] * pts[vi][j];
            if (v == 0) {
                sub.push_back(vi);
                if (vi == apex) apex_on = true;
            }
        }
        if (apex_on || static_cast<int>(sub.size()) < face_dim) continue;
        if (sub.size() == face.size()) continue;  // row tight on the whole face
        if (affine_rank(pts, sub) != face_dim - 1) continue;
        facets.insert(std::move(sub));
    }
    for (const auto& f : facets) {
        std::vector<std::vector<int>> sub_simplices;
        triangulate_face(pts, rows, f, face_dim - 1, sub_simplices);
        for (auto& s : sub_simplices) {
            s.push_back(apex);
            simplices.push_back(std::move(s));
        }
    }
}

inline Rat simplex_volume(const std::vector<QVec>& pts, const std::vector<int>& s, int d) {
    QMat M(d, QVec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) M[i][j] = pts[s[i + 1]][j] - pts[s[0]][j];
    // determinant by elimination
    Rat det = 1;
    for (int c = 0; c < d; ++c) {
        int pivot = -1;
        for (int r = c; r < d; ++r)
            if (M[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Rat(0);
        if (pivot != c) {
            std::swap(M[pivot], M[c]);
            det = -det;
        }
        det *= M[c][c];
        const Rat inv = 1 / M[c][c];
        for (int r = c + 1; r < d; ++r) {
            if (M[r][c] == 0) continue;
            const Rat f = M[r][c] * inv;
            for (int j = c; j < d; ++j) M[r][j] -= f * M[c][j];
        }
    }
    if (det < 0) det = -det;
    Rat fact = 1;
    for (int i = 2; i <= d; ++i) fact *= i;
    return det / fact;
}

// Euclidean chart volume of {cone rows >= 0} intersected with the simplex.
inline Rat chart_volume(const IMat& cone_rows, int m) {
    const int d = m - 1;
    std::vector<ChartRow> rows = chart_rows(cone_rows, m);
    std::vector<QVec> verts = polytope_vertices(rows, d);
    if (static_cast<int>(verts.size()) < d + 1) return Rat(0);
    std::vector<int> all(verts.size());
    std::iota(all.begin(), all.end(), 0);
    if (affine_rank(verts, all) < d) return Rat(0);
    std::vector<std::vector<int>> simplices;
    triangulate_face(verts, rows, all, d, simplices);
    Rat vol = 0;
    for (const auto& s : simplices) vol += simplex_volume(verts, s, d);
    return vol;
}

}  // namespace volume_detail

// Normalized volume (fraction of the simplex) of the union of the cones,
// by inclusion-exclusion with zero-volume pruning.
inline Rat exact_union_volume(std::vector<Cone>& cones, int ambient,
                              std::size_t budget = std::size_t{1} << 20) {
    std::vector<IMat> rows(cones.size());
    for (std::size_t i = 0; i < cones.size(); ++i) {
        cones[i].minimize_h();
        rows[i] = cones[i].ineqs;
        for (const IVec& e : cones[i].eqs) {
            rows[i].push_back(e);
            IVec neg(e.size());
            for (std::size_t j = 0; j < e.size(); ++j) neg[j] = -e[j];
            rows[i].push_back(std::move(neg));
        }
    }
    Rat total = 0;
    std::size_t nodes = 0;
    std::function<void(std::size_t, const IMat&, int)> dfs = [&](std::size_t start,
                                                                 const IMat& acc, int sign) {
        for (std::size_t i = start; i < cones.size(); ++i) {
            if (++nodes > budget)
                throw unsupported_error("inclusion-exclusion budget exceeded");
            IMat cur = acc;
            cur.insert(cur.end(), rows[i].begin(), rows[i].end());
            const Rat v = volume_detail::chart_volume(cur, ambient);
            if (v == 0) continue;  // all supersets vanish too
            total += sign * v;
            dfs(i + 1, cur, -sign);
        }
    };
    dfs(0, {}, 1);
    // normalize by the simplex volume 1/(ambient-1)!
    Rat fact = 1;
    for (int i = 2; i <= ambient - 1; ++i) fact *= i;
    return total * fact;
}

}  // namespace tropimod
