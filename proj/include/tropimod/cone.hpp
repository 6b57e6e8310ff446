#pragma once

// Exact convex polyhedral cones over the rationals with both representations:
//   H: { x : ineqs . x >= 0, eqs . x = 0 }
//   V: cone(rays) + span(lineality)
// Conversion in both directions runs the incremental double description
// method on integer vectors; rays stay primitive throughout.

#include "tropimod/exact.hpp"
#include "tropimod/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace tropimod {

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline void bit_set(Bits& b, std::size_t i) { b[i >> 6] |= (std::uint64_t{1} << (i & 63)); }

inline Bits bits_and(const Bits& a, const Bits& b) {
    Bits r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
    return r;
}

inline bool bits_subset(const Bits& a, const Bits& b) {  // a subset of b
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

inline IMat normalized_rows(IMat rows) {
    IMat out;
    for (IVec& r : rows) {
        if (is_zero(r)) continue;
        make_primitive(r);
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

// Double description: H-representation to minimal V-representation.
// Returns {extreme rays (primitive, sorted), lineality basis}.
inline std::pair<IMat, IMat> dd_h_to_v(int ambient, const IMat& ineqs_in, const IMat& eqs_in) {
    IMat ineqs = detail::normalized_rows(ineqs_in);
    IMat eqs = detail::normalized_rows(eqs_in);

    IMat stack = eqs;
    stack.insert(stack.end(), ineqs.begin(), ineqs.end());
    IMat lineality = kernel_basis(stack, ambient);

    IMat eqs2 = eqs;
    eqs2.insert(eqs2.end(), lineality.begin(), lineality.end());
    IMat K = kernel_basis(eqs2, ambient);  // basis of the pointed slice
    const std::size_t s = K.size();
    if (s == 0) return {{}, span_canonical(lineality)};

    // Project inequalities onto the slice.
    IMat B;
    for (const IVec& a : ineqs) {
        IVec row(s);
        for (std::size_t j = 0; j < s; ++j) row[j] = dot(a, K[j]);
        if (is_zero(row)) continue;
        make_primitive(row);
        B.push_back(std::move(row));
    }
    std::sort(B.begin(), B.end());
    B.erase(std::unique(B.begin(), B.end()), B.end());
    assert(rank_of(B) == static_cast<int>(s) && "cone slice is not pointed");

    // Greedy selection of s independent rows for the simplicial start.
    std::vector<std::size_t> order;
    {
        QMat acc;
        std::vector<std::size_t> sel;
        for (std::size_t i = 0; i < B.size() && sel.size() < s; ++i) {
            QMat trial = acc;
            trial.push_back(QVec());
            trial.back().reserve(s);
            for (const Int& x : B[i]) trial.back().emplace_back(x);
            if (rank_of(trial) > static_cast<int>(acc.size())) {
                acc = std::move(trial);
                row_echelon(acc);
                sel.push_back(i);
            }
        }
        std::vector<bool> used(B.size(), false);
        for (std::size_t i : sel) used[i] = true;
        order = sel;
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < B.size(); ++i)
            if (!used[i]) rest.push_back(i);
        std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
            int nz_a = 0, nz_b = 0;
            for (const Int& x : B[a]) nz_a += (x != 0);
            for (const Int& x : B[b]) nz_b += (x != 0);
            if (nz_a != nz_b) return nz_a < nz_b;
            return B[a] < B[b];
        });
        order.insert(order.end(), rest.begin(), rest.end());
    }

    const std::size_t nbits = (B.size() + 63) / 64;
    struct Ray {
        IVec v;
        detail::Bits tight;
    };
    std::vector<Ray> rays;

    // Initial simplicial cone from the first s rows of `order`.
    {
        QMat M(s, QVec(s));
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) M[i][j] = Rat(B[order[i]][j]);
        QMat Minv = inverse(std::move(M));
        for (std::size_t j = 0; j < s; ++j) {
            QVec col(s);
            for (std::size_t i = 0; i < s; ++i) col[i] = Minv[i][j];
            Ray r;
            r.v = clear_denominators(col);
            r.tight.assign(nbits, 0);
            for (std::size_t i = 0; i < s; ++i)
                if (i != j) detail::bit_set(r.tight, i);
            rays.push_back(std::move(r));
        }
    }

    // Insert the remaining inequalities one at a time.
    for (std::size_t step = s; step < order.size(); ++step) {
        const IVec& a = B[order[step]];
        std::vector<Int> val(rays.size());
        bool any_neg = false;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i].v);
            if (val[i] < 0) any_neg = true;
        }
        if (!any_neg) {
            for (std::size_t i = 0; i < rays.size(); ++i)
                if (val[i] == 0) detail::bit_set(rays[i].tight, step);
            continue;
        }
        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (val[i] < 0) continue;
            Ray r = rays[i];
            if (val[i] == 0) detail::bit_set(r.tight, step);
            next.push_back(std::move(r));
        }
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (val[p] <= 0) continue;
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (val[q] >= 0) continue;
                detail::Bits common = detail::bits_and(rays[p].tight, rays[q].tight);
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size(); ++r) {
                    if (r == p || r == q) continue;
                    if (detail::bits_subset(common, rays[r].tight)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                Ray nr;
                nr.v.resize(s);
                for (std::size_t j = 0; j < s; ++j)
                    nr.v[j] = val[p] * rays[q].v[j] - val[q] * rays[p].v[j];
                make_primitive(nr.v);
                assert(!is_zero(nr.v));
                nr.tight = std::move(common);
                detail::bit_set(nr.tight, step);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
    }

    // Lift back into ambient coordinates.
    IMat out;
    out.reserve(rays.size());
    for (const Ray& r : rays) {
        IVec x(ambient, 0);
        for (std::size_t j = 0; j < s; ++j)
            for (int i = 0; i < ambient; ++i) x[i] += r.v[j] * K[j][i];
        make_primitive(x);
        out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    return {std::move(out), span_canonical(lineality)};
}

// V-representation to minimal H-representation via duality.
// Returns {facet inequalities, implicit equations}.
inline std::pair<IMat, IMat> dd_v_to_h(int ambient, const IMat& rays, const IMat& lin) {
    return dd_h_to_v(ambient, rays, lin);
}

struct Cone {
    int ambient = 0;
    IMat ineqs, eqs;  // H-representation
    IMat rays, lin;   // V-representation
    bool have_h = false, have_v = false;
    bool h_minimal = false, v_minimal = false;

    static Cone from_h(int ambient, IMat ineqs, IMat eqs = {}) {
        Cone c;
        c.ambient = ambient;
        c.ineqs = std::move(ineqs);
        c.eqs = std::move(eqs);
        c.have_h = true;
        return c;
    }

    static Cone from_v(int ambient, IMat rays, IMat lin = {}) {
        Cone c;
        c.ambient = ambient;
        for (IVec& r : rays) make_primitive(r);
        c.rays = std::move(rays);
        c.lin = std::move(lin);
        c.have_v = true;
        return c;
    }

    void ensure_v() {
        if (have_v) return;
        auto [r, l] = dd_h_to_v(ambient, ineqs, eqs);
        rays = std::move(r);
        lin = std::move(l);
        have_v = true;
        v_minimal = true;
    }

    void ensure_h() {
        if (have_h) return;
        auto [in, eq] = dd_v_to_h(ambient, rays, lin);
        ineqs = std::move(in);
        eqs = std::move(eq);
        have_h = true;
        h_minimal = true;
    }

    void minimize_v() {
        if (have_v && v_minimal) return;
        if (!have_v) {
            ensure_v();
            return;
        }
        auto [in, eq] = dd_v_to_h(ambient, rays, lin);
        auto [r, l] = dd_h_to_v(ambient, in, eq);
        ineqs = std::move(in);
        eqs = std::move(eq);
        rays = std::move(r);
        lin = std::move(l);
        have_h = have_v = h_minimal = v_minimal = true;
    }

    void minimize_h() {
        if (have_h && h_minimal) return;
        if (!have_v) ensure_v();
        auto [in, eq] = dd_v_to_h(ambient, rays, lin);
        ineqs = std::move(in);
        eqs = std::move(eq);
        have_h = true;
        h_minimal = true;
    }

    int dim() {
        ensure_v();
        IMat gen = rays;
        gen.insert(gen.end(), lin.begin(), lin.end());
        return rank_of(gen);
    }

    template <typename VecT>
    bool contains(const VecT& p) {
        ensure_h();
        for (const IVec& e : eqs)
            if (row_value(e, p) != 0) return false;
        for (const IVec& a : ineqs)
            if (row_value(a, p) < 0) return false;
        return true;
    }

    // Relative interior membership: equations tight, facets strict.
    template <typename VecT>
    bool contains_relint(const VecT& p) {
        minimize_h();
        for (const IVec& e : eqs)
            if (row_value(e, p) != 0) return false;
        for (const IVec& a : ineqs)
            if (row_value(a, p) <= 0) return false;
        return true;
    }

    bool contains_cone(Cone& d) {
        ensure_h();
        d.ensure_v();
        for (const IVec& r : d.rays) {
            for (const IVec& e : eqs)
                if (dot(e, r) != 0) return false;
            for (const IVec& a : ineqs)
                if (dot(a, r) < 0) return false;
        }
        for (const IVec& l : d.lin) {
            for (const IVec& e : eqs)
                if (dot(e, l) != 0) return false;
            for (const IVec& a : ineqs)
                if (dot(a, l) != 0) return false;
        }
        return true;
    }

    // Image under an integer linear map (rows of the target space), returned
    // with both representations minimal.
    Cone image(const IMat& map_rows) {
        ensure_v();
        const int target = static_cast<int>(map_rows.size());
        IMat r2, l2;
        for (const IVec& r : rays) {
            IVec y = apply_rows(map_rows, r);
            if (!is_zero(y)) r2.push_back(std::move(y));
        }
        for (const IVec& l : lin) {
            IVec y = apply_rows(map_rows, l);
            if (!is_zero(y)) l2.push_back(std::move(y));
        }
        Cone c = Cone::from_v(target, std::move(r2), std::move(l2));
        c.minimize_v();
        return c;
    }

    // Canonical key of the cone as a set (requires minimal V-representation).
    std::string v_key() {
        minimize_v();
        std::string key = std::to_string(ambient);
        for (const IVec& r : rays) {
            key += "|r ";
            key += vec_to_string(r);
        }
        for (const IVec& l : lin) {
            key += "|l ";
            key += vec_to_string(l);
        }
        return key;
    }

private:
    static Int row_value(const IVec& row, const IVec& p) { return dot(row, p); }
    static Rat row_value(const IVec& row, const QVec& p) { return dotq(row, p); }
};

inline bool cones_equal(Cone& a, Cone& b) {
    if (a.ambient != b.ambient) return false;
    return a.contains_cone(b) && b.contains_cone(a);
}

// ---- cone file format ----
// Sections: "AMBIENT n", then INEQUALITIES / EQUATIONS / RAYS / LINEALITY,
// each followed by one integer vector per line. '#' starts a comment.

inline void write_cone(std::ostream& os, Cone& c) {
    os << "AMBIENT " << c.ambient << "\n";
    auto dump = [&os](const char* name, const IMat& rows) {
        if (rows.empty()) return;
        os << name << "\n";
        for (const IVec& r : rows) os << vec_to_string(r) << "\n";
    };
    if (c.have_h) {
        dump("INEQUALITIES", c.ineqs);
        dump("EQUATIONS", c.eqs);
    }
    if (c.have_v) {
        dump("RAYS", c.rays);
        dump("LINEALITY", c.lin);
    }
}

inline Cone read_cone(std::istream& is) {
    int ambient = -1;
    IMat ineqs, eqs, rays, lin;
    IMat* current = nullptr;
    std::string line;
    while (std::getline(is, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) continue;
        if (tok == "AMBIENT") {
            ss >> ambient;
        } else if (tok == "INEQUALITIES") {
            current = &ineqs;
        } else if (tok == "EQUATIONS") {
            current = &eqs;
        } else if (tok == "RAYS") {
            current = &rays;
        } else if (tok == "LINEALITY") {
            current = &lin;
        } else {
            if (!current || ambient < 0) throw unsupported_error("malformed cone file");
            IVec row;
            row.emplace_back(tok);
            std::string w;
            while (ss >> w) row.emplace_back(w);
            if (static_cast<int>(row.size()) != ambient)
                throw unsupported_error("cone row has wrong length");
            current->push_back(std::move(row));
        }
    }
    if (ambient < 0) throw unsupported_error("cone file missing AMBIENT");
    if (!rays.empty() || !lin.empty()) {
        Cone c = Cone::from_v(ambient, std::move(rays), std::move(lin));
        if (!ineqs.empty() || !eqs.empty()) {
            c.ineqs = std::move(ineqs);
            c.eqs = std::move(eqs);
            c.have_h = true;
        }
        return c;
    }
    return Cone::from_h(ambient, std::move(ineqs), std::move(eqs));
}

}  // namespace tropimod
