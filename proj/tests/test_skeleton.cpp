#include "tropimod/skeleton.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace tropimod;

namespace {

MultiGraph theta() {
    MultiGraph g;
    g.n = 2;
    g.edges = {{0, 1}, {0, 1}, {0, 1}};
    return g;
}

MultiGraph dumbbell() {
    MultiGraph g;
    g.n = 2;
    g.edges = {{0, 0}, {0, 1}, {1, 1}};
    return g;
}

MultiGraph k4() {
    MultiGraph g;
    g.n = 4;
    g.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    return g;
}

MultiGraph k5() {
    MultiGraph g;
    g.n = 5;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) g.edges.push_back({i, j});
    return g;
}

MultiGraph k33() {
    MultiGraph g;
    g.n = 6;
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) g.edges.push_back({i, j});
    return g;
}

}  // namespace

TEST_CASE("dual graphs") {
    auto sq = make_polygon({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    Triangulation Tsq = placing_triangulation(sq);
    MultiGraph d = dual_graph(Tsq);
    CHECK(d.n == 2);
    CHECK(d.edges.size() == 1);

    auto t3 = polygon_T(3);
    CHECK(dual_graph(honeycomb_triangulation(t3, 3, 3, 0, 3)).n == 9);

    auto t4 = polygon_T(4);
    CHECK(dual_graph(placing_triangulation(t4)).n == 16);
}

TEST_CASE("skeletons of genus-2 triangulations are theta or dumbbell") {
    auto P = polygon_E(2, 4);  // conv{(0,0),(0,2),(6,0)}
    const std::string tkey = canonical_form(theta()).key;
    const std::string dkey = canonical_form(dumbbell()).key;
    bool saw_theta = false, saw_dumbbell = false;
    for (const std::string& k : enumerate_keys(P, {})) {
        Triangulation T = build_triangulation(P, triples_from_key(k));
        SkeletonMap S = extract_skeleton(T);
        REQUIRE(S.graph.genus() == 2);
        REQUIRE(is_connected(S.graph));
        for (int v = 0; v < S.graph.n; ++v) REQUIRE(S.graph.degree(v) == 3);
        // composition lists: nonempty, pairwise disjoint
        std::set<int> seen;
        for (const auto& c : S.comp) {
            REQUIRE(!c.empty());
            for (int e : c) REQUIRE(seen.insert(e).second);
        }
        const std::string key = canonical_form(S.graph).key;
        saw_theta = saw_theta || key == tkey;
        saw_dumbbell = saw_dumbbell || key == dkey;
    }
    CHECK(saw_theta);
    CHECK(saw_dumbbell);
}

TEST_CASE("genus-1 skeleton is a single loop") {
    auto t3 = polygon_T(3);
    Triangulation T = honeycomb_triangulation(t3, 3, 3, 0, 3);
    SkeletonMap S = extract_skeleton(T);
    CHECK(S.graph.n == 1);
    REQUIRE(S.graph.edges.size() == 1);
    CHECK(S.graph.edges[0] == std::pair<int, int>{0, 0});
    REQUIRE(S.comp.size() == 1);
    CHECK(S.comp[0].size() == 6);  // the hexagon around the interior point
}

TEST_CASE("honeycomb skeleton of H_{5,4,2,5}") {
    auto P = polygon_H(5, 4, 2, 5);
    Triangulation T = honeycomb_triangulation(P, 5, 4, 2, 5);
    SkeletonMap S = extract_skeleton(T);
    CHECK(S.graph.genus() == 5);
    CHECK(S.graph.n == 8);
    std::multiset<std::size_t> sizes;
    std::size_t total = 0;
    for (const auto& c : S.comp) {
        sizes.insert(c.size());
        total += c.size();
    }
    // 24 interior edges, one on a pruned tentacle
    CHECK(T.edges.size() == 24);
    CHECK(total == 23);
    CHECK(sizes == std::multiset<std::size_t>{1, 1, 1, 1, 1, 1, 1, 2, 3, 3, 4, 4});
}

TEST_CASE("canonical form and automorphism orders") {
    CHECK(canonical_form(k4()).aut_order == 24);
    CHECK(canonical_form(theta()).aut_order == 12);  // 2 vertex swaps x S_3 on edges
    CHECK(canonical_form(dumbbell()).aut_order == 2);
    // (020): two parallel pairs joined by two single edges
    MultiGraph g020;
    g020.n = 4;
    g020.edges = {{0, 1}, {0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 3}};
    CHECK(canonical_form(g020).aut_order == 16);
    CHECK_THROWS_AS(canonical_form([] {
                        MultiGraph g;
                        g.n = 11;
                        return g;
                    }()),
                    unsupported_error);
}

TEST_CASE("canonical form is isomorphism invariant") {
    std::mt19937 rng(5150);
    for (MultiGraph g : {theta(), dumbbell(), k4(), k33()}) {
        const std::string key = canonical_form(g).key;
        std::vector<int> perm(g.n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int trial = 0; trial < 1000; ++trial) {
            std::shuffle(perm.begin(), perm.end(), rng);
            MultiGraph h;
            h.n = g.n;
            for (auto e : g.edges) h.edges.push_back({perm[e.first], perm[e.second]});
            h.normalize();
            REQUIRE(canonical_form(h).key == key);
        }
    }
}

TEST_CASE("trivalent graph counts", "[counts]") {
    CHECK(enumerate_trivalent(2).size() == 2);
    CHECK(enumerate_trivalent(3).size() == 5);
    CHECK(enumerate_trivalent(4).size() == 17);
}

TEST_CASE("genus-3 labels") {
    auto graphs = enumerate_trivalent(3);
    std::set<std::string> labels;
    for (const auto& g : graphs) labels.insert(label(g).text);
    CHECK(labels == std::set<std::string>{"(000)", "(020)", "(111)", "(212)", "(303)"});
}

TEST_CASE("genus-4 labels, planarity, sprawling") {
    auto graphs = enumerate_trivalent(4);
    std::set<std::string> labels;
    int nonplanar = 0;
    std::set<std::string> sprawling_labels;
    for (const auto& g : graphs) {
        labels.insert(display_label(g));
        if (!is_planar(g)) ++nonplanar;
        if (is_sprawling(g)) sprawling_labels.insert(label(g).text);
    }
    CHECK(labels.size() == 17);
    CHECK(nonplanar == 1);  // K_{3,3} alone
    CHECK(sprawling_labels == std::set<std::string>{"(213)", "(314)", "(405)"});
    CHECK(labels.count("(000)A") == 1);
    CHECK(labels.count("(000)B") == 1);
}

TEST_CASE("genus-5 planarity and sprawling counts") {
    auto graphs = enumerate_trivalent(5);
    REQUIRE(graphs.size() == 71);
    int nonplanar = 0, sprawling = 0, both = 0;
    for (const auto& g : graphs) {
        const bool np = !is_planar(g);
        const bool sp = is_sprawling(g);
        nonplanar += np;
        sprawling += sp;
        both += np && sp;
    }
    CHECK(nonplanar == 4);
    CHECK(sprawling == 15);
    CHECK(both == 0);
}

TEST_CASE("planarity basics") {
    CHECK(is_planar(k4()));
    CHECK(!is_planar(k5()));
    CHECK(!is_planar(k33()));
    CHECK(is_planar(theta()));
}

TEST_CASE("sprawling basics") {
    MultiGraph g303;
    g303.n = 4;
    g303.edges = {{0, 0}, {1, 1}, {2, 2}, {0, 3}, {1, 3}, {2, 3}};
    CHECK(is_sprawling(g303));
    CHECK(!is_sprawling(theta()));
    CHECK(!is_sprawling(k4()));
}

TEST_CASE("chains") {
    auto c3 = chains(3);
    std::set<std::string> l3;
    for (const auto& g : c3) l3.insert(label(g).text);
    CHECK(l3 == std::set<std::string>{"(020)", "(111)", "(212)"});

    auto c4 = chains(4);
    std::set<std::string> l4;
    for (const auto& g : c4) l4.insert(label(g).text);
    CHECK(l4 == std::set<std::string>{"(020)", "(021)", "(111)", "(122)", "(202)", "(223)"});

    CHECK(chains(5).size() == 10);  // 2^3 + 2^1
    CHECK(chains(2).size() == 2);

    // chains are trivalent genus-g graphs
    auto all3 = enumerate_trivalent(3);
    std::set<std::string> keys;
    for (const auto& g : all3) keys.insert(canonical_form(g).key);
    for (const auto& g : c3) CHECK(keys.count(canonical_form(g).key) == 1);
}

TEST_CASE("graph file io") {
    std::stringstream ss;
    write_graph(ss, dumbbell());
    MultiGraph g = read_graph(ss);
    CHECK(g == dumbbell());
}
