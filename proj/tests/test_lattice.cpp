#include "tropimod/lattice.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace tropimod;

namespace {

// Independent oracle: scan the bounding box and classify points against the
// given vertex list with fresh cross products.
struct ScanCounts {
    int total = 0, interior = 0, boundary = 0;
};

ScanCounts scan_polygon(const std::vector<LatticePoint>& ccw_vertices) {
    long long xmin = ccw_vertices[0].x, xmax = xmin, ymin = ccw_vertices[0].y, ymax = ymin;
    for (const auto& v : ccw_vertices) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    ScanCounts c;
    const std::size_t n = ccw_vertices.size();
    for (long long x = xmin; x <= xmax; ++x)
        for (long long y = ymin; y <= ymax; ++y) {
            bool outside = false, on_edge = false;
            for (std::size_t i = 0; i < n; ++i) {
                const auto &a = ccw_vertices[i], &b = ccw_vertices[(i + 1) % n];
                const long long cr = (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x);
                if (cr < 0) outside = true;
                if (cr == 0) on_edge = true;
            }
            if (outside) continue;
            ++c.total;
            if (on_edge)
                ++c.boundary;
            else
                ++c.interior;
        }
    return c;
}

}  // namespace

TEST_CASE("lattice point counts match the brute-force scan") {
    auto T4 = polygon_T(4);
    ScanCounts c = scan_polygon(T4.vertices);
    CHECK(c.total == 15);
    CHECK(c.interior == 3);
    CHECK(static_cast<int>(T4.points.size()) == c.total);
    CHECK(T4.interior_count == c.interior);
    CHECK(T4.boundary_count == c.boundary);

    auto unit = make_polygon({{0, 0}, {1, 0}, {0, 1}});
    CHECK(unit.points.size() == 3);
    CHECK(unit.interior_count == 0);

    auto H = polygon_H(5, 4, 2, 5);
    ScanCounts ch = scan_polygon(H.vertices);
    CHECK(ch.total == 17);
    CHECK(ch.interior == 5);
    CHECK(static_cast<int>(H.points.size()) == 17);
    CHECK(H.genus() == 5);
}

TEST_CASE("genus examples") {
    CHECK(polygon_T(4).genus() == 3);
    CHECK(polygon_H(5, 4, 2, 5).genus() == 5);
    CHECK(make_polygon({{0, 0}, {1, 0}, {0, 1}, {1, 1}}).genus() == 0);
}

TEST_CASE("honeycomb closed formulas against scans for all parameters <= 8") {
    for (long long a = 1; a <= 8; ++a)
        for (long long b = 1; b <= 8; ++b)
            for (long long c = 0; c <= std::min(a, b); ++c)
                for (long long d = std::max(a, b); d <= a + b; ++d) {
                    // skip degenerate regions (segments/points)
                    const long long tri_count = 2 * a * d + 2 * b * d - a * a - b * b - c * c - d * d;
                    if (tri_count <= 0) continue;
                    auto H = polygon_H(a, b, c, d);
                    const long long sq = a * a + b * b + c * c + d * d;
                    const long long lin = a + b - c + d;
                    REQUIRE((sq - lin) % 2 == 0);
                    const long long total = (2 * (a * d + b * d) - sq + lin + 2) / 2;
                    const long long interior = (2 * (a * d + b * d) - sq - lin + 2) / 2;
                    REQUIRE(static_cast<long long>(H.points.size()) == total);
                    REQUIRE(static_cast<long long>(H.interior_count) == interior);
                    REQUIRE(H.area2 == tri_count);  // 2*area = number of unit triangles
                }
}

TEST_CASE("Pick consistency for assorted polygons") {
    for (const LatticePolygon& P :
         {polygon_T(3), polygon_T(5), polygon_R(3, 3), polygon_E(3, 5), polygon_H(4, 4, 2, 6)})
        CHECK(P.area2 == 2 * P.interior_count + P.boundary_count - 2);
}

TEST_CASE("interior hulls") {
    InteriorHull h1 = interior_hull(polygon_T(4));
    REQUIRE(h1.dim == 2);
    CHECK(h1.hull_vertices == std::vector<LatticePoint>{{1, 1}, {2, 1}, {1, 2}});

    InteriorHull h2 = interior_hull(polygon_E(3, 5));
    REQUIRE(h2.dim == 1);
    CHECK(h2.points == std::vector<LatticePoint>{{1, 1}, {2, 1}, {3, 1}});
    CHECK(h2.hull_vertices == std::vector<LatticePoint>{{1, 1}, {3, 1}});

    InteriorHull h3 = interior_hull(polygon_H(5, 4, 2, 5));
    REQUIRE(h3.dim == 2);
    CHECK(h3.points.size() == 5);
    CHECK(h3.vertex_count == 4);       // (2,2) sits on the edge (1,3)-(3,1)
    CHECK(h3.boundary_count == 5);
    CHECK(h3.points == std::vector<LatticePoint>{{1, 2}, {1, 3}, {2, 1}, {2, 2}, {3, 1}});
}

TEST_CASE("maximal polygon relaxation") {
    // the unit triangle of interior points gives T_4
    auto hull = interior_hull(polygon_T(4));
    auto M = maximal_polygon(hull);
    REQUIRE(M);
    CHECK(*M == polygon_T(4));

    // the square gives R_{3,3}
    auto sq = interior_hull(polygon_R(3, 3));
    auto M2 = maximal_polygon(sq);
    REQUIRE(M2);
    CHECK(*M2 == polygon_R(3, 3));

    // neither of these genus-5 triangles is an interior hull of anything
    for (auto verts : {std::vector<LatticePoint>{{1, 1}, {1, 4}, {2, 1}},
                       std::vector<LatticePoint>{{1, 1}, {2, 4}, {3, 2}}}) {
        LatticePolygon Q = make_polygon(verts);
        InteriorHull h;
        h.dim = 2;
        h.hull_vertices = Q.vertices;
        h.points = Q.points;
        CHECK(!maximal_polygon(h));
    }
}

TEST_CASE("named families") {
    CHECK(polygon_H(3, 3, 0, 6) == polygon_R(3, 3));
    CHECK(polygon_E(3, 5) == make_polygon({{0, 0}, {0, 2}, {8, 0}}));
    CHECK_THROWS_AS(polygon_H(1, 1, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(polygon_E(3, 6), std::invalid_argument);
    CHECK_THROWS_AS(polygon_T(0), std::invalid_argument);
}

TEST_CASE("Scott bound") {
    auto T4 = polygon_T(4);
    CHECK(T4.boundary_count == 12);
    CHECK(scott_check(T4));
    auto E35 = polygon_E(3, 5);
    CHECK(scott_check(E35));
    auto T3 = polygon_T(3);
    CHECK(T3.boundary_count == 9);  // attains 2g+7 for g = 1
    CHECK(T3.boundary_count == 2 * T3.genus() + 7);
    CHECK(scott_check(T3));
}

TEST_CASE("lattice equivalence") {
    auto T4 = polygon_T(4);
    // image of T_4 under (x,y) -> (y,x) + (1,0)
    std::vector<LatticePoint> img;
    for (const auto& v : T4.vertices) img.push_back({v.y + 1, v.x});
    auto Q = make_polygon(img);
    auto w = lattice_equivalent(T4, Q);
    REQUIRE(w);
    CHECK(maps_points_onto(*w, T4.points, Q.points));

    CHECK(!lattice_equivalent(T4, polygon_R(3, 3)));

    auto Q43 = make_polygon({{0, 2}, {2, 4}, {4, 0}});
    CHECK(!lattice_equivalent(Q43, T4));
    CHECK(canonical_polygon_key(Q43) != canonical_polygon_key(T4));
    CHECK(canonical_polygon_key(T4) == canonical_polygon_key(Q));
}

TEST_CASE("curated maximal polygon lists") {
    CHECK(classify_maximal_polygons(3).maximal2d.size() == 1);
    CHECK(classify_maximal_polygons(4).maximal2d.size() == 3);
    CHECK(classify_maximal_polygons(5).maximal2d.size() == 4);
    CHECK(classify_maximal_polygons(6).maximal2d.size() == 4);
    CHECK(classify_maximal_polygons(2).maximal2d.empty());
    CHECK(classify_maximal_polygons(2).hyperelliptic.size() == 4);
    CHECK_THROWS_AS(classify_maximal_polygons(7), unsupported_error);
}

TEST_CASE("polygon file io") {
    std::stringstream ss;
    write_polygon(ss, polygon_T(4));
    auto P = read_polygon(ss);
    CHECK(P == polygon_T(4));

    std::stringstream fam("H 5 4 2 5\n");
    CHECK(read_polygon(fam) == polygon_H(5, 4, 2, 5));
}
