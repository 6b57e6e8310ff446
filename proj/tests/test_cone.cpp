#include "tropimod/cone.hpp"
#include "tropimod/lp.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace tropimod;

namespace {

Cone random_h_cone(std::mt19937& rng, int dim, int rows, bool with_eq) {
    std::uniform_int_distribution<int> coef(-3, 3);
    IMat ineqs, eqs;
    for (int i = 0; i < rows; ++i) {
        IVec r(dim);
        for (int j = 0; j < dim; ++j) r[j] = coef(rng);
        ineqs.push_back(std::move(r));
    }
    if (with_eq) {
        IVec e(dim);
        for (int j = 0; j < dim; ++j) e[j] = coef(rng);
        eqs.push_back(std::move(e));
    }
    return Cone::from_h(dim, std::move(ineqs), std::move(eqs));
}

IVec random_point(std::mt19937& rng, int dim, int lo = -6, int hi = 6) {
    std::uniform_int_distribution<int> c(lo, hi);
    IVec p(dim);
    for (int j = 0; j < dim; ++j) p[j] = c(rng);
    return p;
}

// LP feasibility oracle: is p a nonnegative combination of rays plus a free
// combination of lineality generators?
bool lp_member(const IMat& rays, const IMat& lin, const IVec& p) {
    const int dim = static_cast<int>(p.size());
    const std::size_t nv = rays.size() + 2 * lin.size();
    std::vector<QVec> A;
    QVec b;
    for (int r = 0; r < dim; ++r) {
        QVec row(nv, Rat(0));
        for (std::size_t i = 0; i < rays.size(); ++i) row[i] = Rat(rays[i][r]);
        for (std::size_t i = 0; i < lin.size(); ++i) {
            row[rays.size() + 2 * i] = Rat(lin[i][r]);
            row[rays.size() + 2 * i + 1] = Rat(-lin[i][r]);
        }
        QVec neg(nv);
        for (std::size_t j = 0; j < nv; ++j) neg[j] = -row[j];
        A.push_back(std::move(row));
        b.push_back(Rat(p[r]));
        A.push_back(std::move(neg));
        b.push_back(Rat(-p[r]));
    }
    return lp_max(QVec(nv, Rat(0)), A, b).status == LpStatus::Optimal;
}

}  // namespace

TEST_CASE("simplex solves textbook programs") {
    // max x + y st x <= 2, y <= 3
    auto r = lp_max({Rat(1), Rat(1)}, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {Rat(2), Rat(3)});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == 5);
    // unbounded
    auto u = lp_max({Rat(1)}, {{Rat(-1)}}, {Rat(0)});
    CHECK(u.status == LpStatus::Unbounded);
    // infeasible: x <= -1 with x >= 0
    auto inf = lp_max({Rat(1)}, {{Rat(1)}}, {Rat(-1)});
    CHECK(inf.status == LpStatus::Infeasible);
    // phase-1 needed but feasible: x >= 1, x <= 2
    auto f = lp_max({Rat(1)}, {{Rat(-1)}, {Rat(1)}}, {Rat(-1), Rat(2)});
    REQUIRE(f.status == LpStatus::Optimal);
    CHECK(f.value == 2);
}

TEST_CASE("double description on simple cones") {
    Cone orthant = Cone::from_h(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    orthant.ensure_v();
    CHECK(orthant.rays.size() == 3);
    CHECK(orthant.lin.empty());
    CHECK(orthant.dim() == 3);

    Cone half = Cone::from_h(2, {{1, 0}});
    half.ensure_v();
    CHECK(half.rays.size() == 1);
    CHECK(half.lin.size() == 1);
    CHECK(half.dim() == 2);

    Cone ray = Cone::from_v(2, {{1, 1}});
    ray.ensure_h();
    Cone literal = Cone::from_h(2, {{1, 0}}, {{1, -1}});
    CHECK(cones_equal(ray, literal));

    Cone quad = Cone::from_v(2, {{1, 0}, {0, 1}});
    quad.ensure_h();
    Cone orth2 = Cone::from_h(2, {{1, 0}, {0, 1}});
    CHECK(cones_equal(quad, orth2));
}

TEST_CASE("round-trip equivalence on random cones") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 3 + trial % 3;
        Cone c = random_h_cone(rng, dim, 3 + trial % 5, trial % 4 == 0);
        Cone c2 = c;  // keep the raw H-form
        c2.ensure_v();
        Cone rt = Cone::from_v(dim, c2.rays, c2.lin);
        rt.ensure_h();
        for (int k = 0; k < 50; ++k) {
            IVec p = random_point(rng, dim);
            CHECK(c.contains(p) == rt.contains(p));
        }
    }
}

TEST_CASE("membership agrees with an LP feasibility oracle") {
    std::mt19937 rng(999);
    for (int trial = 0; trial < 8; ++trial) {
        const int dim = 3 + trial % 2;
        Cone c = random_h_cone(rng, dim, 4 + trial % 3, trial % 3 == 0);
        c.ensure_v();
        int inside = 0;
        for (int k = 0; k < 1000; ++k) {
            IVec p = random_point(rng, dim);
            const bool mem = c.contains(p);
            inside += mem;
            REQUIRE(mem == lp_member(c.rays, c.lin, p));
        }
        INFO("inside count " << inside);
    }
}

TEST_CASE("double description output is insertion-order independent") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 20; ++trial) {
        Cone c = random_h_cone(rng, 4, 6, false);
        Cone d = c;
        std::shuffle(d.ineqs.begin(), d.ineqs.end(), rng);
        c.ensure_v();
        d.ensure_v();
        CHECK(c.rays == d.rays);
        CHECK(c.lin == d.lin);
    }
}

TEST_CASE("facets are tight on enough independent rays") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 25; ++trial) {
        Cone c = random_h_cone(rng, 4, 5 + trial % 3, false);
        c.ensure_v();
        const int d = c.dim();
        if (d < 2) continue;
        Cone m = c;
        m.minimize_h();
        for (const IVec& f : m.ineqs) {
            IMat tight = m.lin;
            for (const IVec& r : m.rays)
                if (dot(f, r) == 0) tight.push_back(r);
            CHECK(rank_of(tight) >= d - 1);
        }
    }
}

TEST_CASE("image respects composition") {
    std::mt19937 rng(31415);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int trial = 0; trial < 15; ++trial) {
        Cone c = random_h_cone(rng, 4, 5, false);
        IMat L(3, IVec(4)), K(2, IVec(3));
        for (auto& row : L)
            for (auto& x : row) x = coef(rng);
        for (auto& row : K)
            for (auto& x : row) x = coef(rng);
        IMat KL(2, IVec(4, 0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 3; ++k) KL[i][j] += K[i][k] * L[k][j];
        Cone a = c.image(KL);
        Cone b = c.image(L).image(K);
        CHECK(cones_equal(a, b));
    }
}

TEST_CASE("containment basics") {
    Cone orthant = Cone::from_h(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(orthant.contains(IVec{1, 2, 3}));
    CHECK(!orthant.contains(IVec{-1, 2, 3}));
    Cone copy = orthant;
    CHECK(orthant.contains_cone(copy));
    Cone img = orthant.image(IMat{{1, 1, 1}});
    CHECK(img.dim() == 1);
    img.ensure_v();
    CHECK(img.rays == IMat{{1}});
}

TEST_CASE("relative interior membership") {
    Cone orthant = Cone::from_h(2, {{1, 0}, {0, 1}});
    CHECK(orthant.contains_relint(IVec{1, 1}));
    CHECK(!orthant.contains_relint(IVec{0, 1}));
    CHECK(orthant.contains(IVec{0, 1}));
}

TEST_CASE("cone file io") {
    Cone c = Cone::from_h(3, {{1, 0, 0}, {0, 1, -1}}, {{0, 1, 1}});
    c.ensure_v();
    std::stringstream ss;
    write_cone(ss, c);
    Cone d = read_cone(ss);
    CHECK(cones_equal(c, d));
}
