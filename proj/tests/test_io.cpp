#include "doctest.h"
#include "oracles.hpp"
#include "treelab/io.hpp"
#include "treelab/tree.hpp"

using namespace treelab;

namespace {

Tree path_n(int n) {
    if (n == 1) return Tree::single();
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return Tree::from_edge_list(es);
}

struct CapGuard {
    int saved = max_order();
    ~CapGuard() { set_max_order(saved); }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("graph6 known vectors") {
    CHECK(to_graph6(path_n(4)) == "Ch");
    auto k13 = Tree::from_edge_list({{0, 1}, {0, 2}, {0, 3}});
    CHECK(to_graph6(k13) == "Cs");
    CHECK(to_graph6(Tree::single()) == "@");
    CHECK(to_graph6(path_n(2)) == "A_");
}

TEST_CASE("graph6 parse known vectors") {
    auto t = from_graph6("Ch");
    CHECK(t.order() == 4);
    CHECK(is_path(t));
    auto s = from_graph6("Cs");
    CHECK(s.order() == 4);
    CHECK(is_star(s));
    CHECK(from_graph6(">>graph6<<Ch").order() == 4);
    CHECK(from_graph6("Ch\n").order() == 4);
    CHECK(from_graph6("@").order() == 1);
}

TEST_CASE("graph6 round trip preserves labels, n <= 8") {
    for (int n = 1; n <= 8; ++n)
        for (const auto& t : oracles::free_trees_coded(n)) {
            auto back = from_graph6(to_graph6(t));
            CHECK(back == t);
        }
}

TEST_CASE("graph6 long-form order encoding") {
    CapGuard guard;
    set_max_order(200);
    for (int n : {63, 64, 100, 150}) {
        auto t = path_n(n);
        auto s = to_graph6(t);
        CHECK(s[0] == '~');
        CHECK(from_graph6(s) == t);
    }
}

TEST_CASE("graph6 rejects damaged input") {
    CHECK_THROWS_AS(from_graph6(""), ParseError);
    CHECK_THROWS_AS(from_graph6("C"), ParseError);        // order 4 needs a data byte
    CHECK_THROWS_AS(from_graph6("Chh"), ParseError);      // trailing bytes
    CHECK_THROWS_AS(from_graph6("C h"), ParseError);      // byte below 63
    CHECK_THROWS_AS(from_graph6("~~????"), ParseError);   // >18-bit order form
}

TEST_CASE("graph6 rejects non-trees") {
    CHECK_THROWS_AS(from_graph6("Bw"), CycleDetected);    // triangle
    CHECK_THROWS_AS(from_graph6("B?"), Disconnected);     // 3 isolated vertices
    CHECK_THROWS_AS(from_graph6("A?"), Disconnected);     // 2 isolated vertices
    CHECK_THROWS_AS(from_graph6("C`"), Disconnected);     // two disjoint edges
}

TEST_CASE("edge list text") {
    auto t = parse_edge_list_text("0 1\n1 2\n");
    CHECK(t.order() == 3);
    auto u = parse_edge_list_text("# comment\n\n0 1\n1 2   # tail comment\n");
    CHECK(u.order() == 3);
    CHECK_THROWS_AS(parse_edge_list_text("0\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list_text("0 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list_text("0 -1\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list_text(""), EmptyInput);
    CHECK_THROWS_AS(parse_edge_list_text("0 1\n0 1\n"), DuplicateEdge);

    for (int n = 1; n <= 8; ++n)
        for (const auto& t8 : oracles::free_trees_coded(n)) {
            if (n == 1) continue;
            CHECK(parse_edge_list_text(to_edge_list_text(t8)) == t8);
        }
}

TEST_CASE("dot output") {
    auto d = to_dot(path_n(3));
    CHECK(d.find("graph") != std::string::npos);
    CHECK(d.find("0 -- 1") != std::string::npos);
    CHECK(d.find("1 -- 2") != std::string::npos);
    CHECK(to_dot(Tree::single()).find("0;") != std::string::npos);
}

}  // TEST_SUITE
