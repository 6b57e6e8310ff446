#include "tropimod/triangulate.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <random>
#include <set>

using namespace tropimod;

namespace {

// Independent brute-force oracle for tiny configurations: all sets of area2
// unimodular triangles with pairwise disjoint interiors. Disjoint area plus
// full area is an exact tiling, and unimodular tiles use every lattice point.
int brute_force_count(const LatticePolygon& P) {
    const auto& pts = P.points;
    std::vector<std::array<LatticePoint, 3>> cand;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
            for (std::size_t c = b + 1; c < pts.size(); ++c) {
                const long long cr = cross(pts[a], pts[b], pts[c]);
                if (std::abs(cr) != 1) continue;
                if (cr > 0)
                    cand.push_back({pts[a], pts[b], pts[c]});
                else
                    cand.push_back({pts[a], pts[c], pts[b]});
            }
    // interiors disjoint iff some edge line of one separates the other
    auto disjoint = [](const std::array<LatticePoint, 3>& A, const std::array<LatticePoint, 3>& B) {
        for (int side = 0; side < 2; ++side) {
            const auto &S = side ? B : A, &T = side ? A : B;
            for (int e = 0; e < 3; ++e) {
                bool sep = true;
                for (const LatticePoint& v : T)
                    if (cross(S[e], S[(e + 1) % 3], v) > 0) sep = false;
                if (sep) return true;
            }
        }
        return false;
    };
    const std::size_t n = cand.size();
    std::vector<std::vector<bool>> ok(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) ok[i][j] = disjoint(cand[i], cand[j]);
    const std::size_t need = static_cast<std::size_t>(P.area2);
    int count = 0;
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (chosen.size() == need) {
            ++count;
            return;
        }
        if (idx == n || n - idx < need - chosen.size()) return;
        rec(idx + 1);
        for (std::size_t c : chosen)
            if (!ok[c][idx]) return;
        chosen.push_back(idx);
        rec(idx + 1);
        chosen.pop_back();
    };
    rec(0);
    return count;
}

int orbit_stabilizer_size(const LatticePolygon& P, const std::string& key) {
    const auto perms = symmetry_perms(P);
    const auto tris = triples_from_key(key);
    int stab = 0;
    for (const auto& perm : perms) {
        std::vector<std::array<int, 3>> mapped(tris.size());
        for (std::size_t i = 0; i < tris.size(); ++i) {
            std::array<int, 3> t = {perm[tris[i][0]], perm[tris[i][1]], perm[tris[i][2]]};
            std::sort(t.begin(), t.end());
            mapped[i] = t;
        }
        std::sort(mapped.begin(), mapped.end());
        if (mapped == tris) ++stab;
    }
    return stab;
}

}  // namespace

TEST_CASE("placing triangulations are valid") {
    for (const LatticePolygon& P : {polygon_T(3), polygon_T(4), polygon_R(3, 3), polygon_E(3, 5),
                                    polygon_H(5, 4, 2, 5), polygon_E(2, 4)}) {
        Triangulation T = placing_triangulation(P);
        CHECK(validate_triangulation(T));
    }
}

TEST_CASE("unit square flips") {
    auto sq = make_polygon({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    Triangulation T = placing_triangulation(sq);
    REQUIRE(T.edges.size() == 1);
    auto F = flips(T);
    REQUIRE(F.size() == 1);
    CHECK(F[0].tris != T.tris);
    // involution
    auto FF = flips(F[0]);
    REQUIRE(FF.size() == 1);
    CHECK(FF[0].tris == T.tris);
}

TEST_CASE("honeycomb triangulation of T_3: flippable edges = parallelogram edges") {
    auto P = polygon_T(3);
    Triangulation T = honeycomb_triangulation(P, 3, 3, 0, 3);
    CHECK(validate_triangulation(T));
    CHECK(T.tris.size() == 9);
    int flippable_count = 0, parallelogram_count = 0;
    for (std::size_t k = 0; k < T.edges.size(); ++k) {
        if (flippable(T, k)) ++flippable_count;
        const auto& e = T.edges[k];
        const auto &A = P.points[e.opp1], &B = P.points[e.a], &C = P.points[e.b],
                   &D = P.points[e.opp2];
        if (A.x + D.x == B.x + C.x && A.y + D.y == B.y + C.y) ++parallelogram_count;
    }
    CHECK(flippable_count == parallelogram_count);
}

TEST_CASE("enumeration matches a brute-force oracle on tiny polygons") {
    auto sq = make_polygon({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    EnumerationOptions nosym;
    nosym.up_to_symmetry = false;
    CHECK(enumerate_keys(sq, nosym).size() == 2);
    CHECK(brute_force_count(sq) == 2);

    auto strip = polygon_R(2, 1);
    CHECK(enumerate_keys(strip, nosym).size() == static_cast<std::size_t>(brute_force_count(strip)));

    auto t2 = polygon_T(2);
    CHECK(enumerate_keys(t2, nosym).size() == static_cast<std::size_t>(brute_force_count(t2)));
}

TEST_CASE("affine symmetry groups") {
    CHECK(affine_symmetries(polygon_T(4)).size() == 6);
    CHECK(affine_symmetries(polygon_R(3, 3)).size() == 8);
    CHECK(affine_symmetries(polygon_R(4, 2)).size() == 4);
    const std::size_t q42 = affine_symmetries(make_polygon({{0, 0}, {0, 3}, {6, 0}})).size();
    CHECK((q42 == 1 || q42 == 2));
    CHECK(affine_symmetries(polygon_E(3, 5)).size() == 2);
    // group property: closed under composition
    auto syms = affine_symmetries(polygon_T(4));
    auto apply = [](const AffineMap& f, const AffineMap& g) {
        AffineMap h;
        h.m00 = f.m00 * g.m00 + f.m01 * g.m10;
        h.m01 = f.m00 * g.m01 + f.m01 * g.m11;
        h.m10 = f.m10 * g.m00 + f.m11 * g.m10;
        h.m11 = f.m10 * g.m01 + f.m11 * g.m11;
        h.tx = f.m00 * g.tx + f.m01 * g.ty + f.tx;
        h.ty = f.m10 * g.tx + f.m11 * g.ty + f.ty;
        return h;
    };
    auto same = [](const AffineMap& a, const AffineMap& b) {
        return a.m00 == b.m00 && a.m01 == b.m01 && a.m10 == b.m10 && a.m11 == b.m11 &&
               a.tx == b.tx && a.ty == b.ty;
    };
    for (const auto& f : syms)
        for (const auto& g : syms) {
            const AffineMap h = apply(f, g);
            bool found = false;
            for (const auto& s : syms) found = found || same(h, s);
            CHECK(found);
        }
}

TEST_CASE("flip-graph connectivity is seed independent") {
    std::mt19937 rng(2024);
    for (const LatticePolygon& P : {polygon_T(3), polygon_R(2, 2)}) {
        EnumerationOptions base;
        const std::size_t expect = enumerate_keys(P, base).size();
        for (int trial = 0; trial < 3; ++trial) {
            AffineMap f;
            // random unimodular frame
            std::uniform_int_distribution<int> c(-2, 2);
            do {
                f.m00 = c(rng);
                f.m01 = c(rng);
                f.m10 = c(rng);
                f.m11 = c(rng);
            } while (std::abs(f.det()) != 1);
            f.tx = c(rng);
            f.ty = c(rng);
            Triangulation seed = placing_triangulation_frame(P, f);
            REQUIRE(validate_triangulation(seed));
            EnumerationOptions opt;
            opt.seed = seed.tris;
            CHECK(enumerate_keys(P, opt).size() == expect);
        }
    }
}

TEST_CASE("orbit counting: no-symmetry count equals sum of orbit sizes") {
    for (const LatticePolygon& P : {polygon_T(3), polygon_R(2, 2)}) {
        EnumerationOptions sym, nosym;
        nosym.up_to_symmetry = false;
        const auto classes = enumerate_keys(P, sym);
        const std::size_t all = enumerate_keys(P, nosym).size();
        const std::size_t group = symmetry_perms(P).size();
        std::size_t sum = 0;
        for (const std::string& k : classes) sum += group / orbit_stabilizer_size(P, k);
        CHECK(sum == all);
    }
}

TEST_CASE("regularity of the unit square and honeycombs") {
    auto sq = make_polygon({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    EnumerationOptions nosym;
    nosym.up_to_symmetry = false;
    for (const std::string& k : enumerate_keys(sq, nosym)) {
        Triangulation T = build_triangulation(sq, triples_from_key(k));
        auto w = is_regular(T);
        REQUIRE(w);
        for (const IVec& row : flip_rows(T)) CHECK(dotq(row, *w) > 0);
    }
    // honeycomb triangulations carry the certificate h(x,y) = x^2 + xy + y^2
    for (auto [a, b, c, d] : std::vector<std::array<long long, 4>>{
             {3, 3, 0, 3}, {5, 4, 2, 5}, {3, 3, 0, 6}}) {
        auto P = polygon_H(a, b, c, d);
        Triangulation T = honeycomb_triangulation(P, a, b, c, d);
        QVec h(P.points.size());
        for (std::size_t i = 0; i < P.points.size(); ++i) {
            const auto& p = P.points[i];
            h[i] = Rat(static_cast<long>(p.x * p.x + p.x * p.y + p.y * p.y));
        }
        for (const IVec& row : flip_rows(T)) CHECK(dotq(row, h) > 0);
        CHECK(is_regular(T).has_value());
    }
}

TEST_CASE("secondary cone of the unit square") {
    auto sq = make_polygon({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    Triangulation T = placing_triangulation(sq);
    // diagonal (0,1)-(1,0): inequality h00 + h11 - h01 - h10 >= 0
    REQUIRE(T.edges.size() == 1);
    const IVec row = flip_row(T, T.edges[0]);
    CHECK(row == IVec{1, -1, -1, 1});
    Cone sec = secondary_cone(T, true);
    CHECK(sec.dim() == 1);  // |A| - 3
    Cone unpointed = secondary_cone(T, false);
    CHECK(unpointed.dim() == 4);
    unpointed.ensure_v();
    CHECK(unpointed.lin.size() == 3);  // Lin(A)
}

TEST_CASE("pointed secondary cone of a T_4 triangulation is 12-dimensional") {
    auto P = polygon_T(4);
    Triangulation T = placing_triangulation(P);
    Cone sec = secondary_cone(T, true);
    CHECK(sec.dim() == 12);
    // lambda is nonnegative on all rays of the secondary cone
    sec.ensure_v();
    const IMat lam = flip_rows(T);
    for (const IVec& r : sec.rays)
        for (const IVec& row : lam) CHECK(dot(row, r) >= 0);
}

TEST_CASE("checkpointing is resumable") {
    auto P = polygon_T(3);
    EnumerationOptions plain;
    const auto expect = enumerate_keys(P, plain);

    const std::string path = "/tmp/tropimod_test_ckpt.txt";
    std::remove(path.c_str());
    EnumerationOptions with_ck;
    with_ck.checkpoint_path = path;
    with_ck.checkpoint_every = 5;
    CHECK(enumerate_keys(P, with_ck) == expect);
    // a completed checkpoint reloads without recomputation
    CHECK(enumerate_keys(P, with_ck) == expect);

    // a partial checkpoint (seed only) resumes to the same set
    {
        Triangulation seed = placing_triangulation(P);
        const std::string k0 = canonical_key(seed.tris, symmetry_perms(P));
        std::ofstream os(path);
        os << "tropimod-checkpoint 1 " << polygon_id(P) << " sym\npartial\n";
        os << "v " << detail::hex_encode(k0) << "\n";
        os << "f " << detail::hex_encode(k0) << "\n";
    }
    auto resumed = enumerate_keys(P, with_ck);
    std::set<std::string> a(resumed.begin(), resumed.end()), b(expect.begin(), expect.end());
    CHECK(a == b);
    std::remove(path.c_str());
}

TEST_CASE("triangulation file io") {
    auto P = polygon_T(3);
    Triangulation T = placing_triangulation(P);
    std::stringstream ss;
    write_triangulation(ss, T);
    auto [Q, tris] = read_triangulation_raw(ss);
    CHECK(Q == P);
    Triangulation T2 = build_triangulation(Q, tris);
    CHECK(T2.tris == T.tris);
}
