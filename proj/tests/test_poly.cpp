#include <doctest.h>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "treelab/poly.hpp"
#include "treelab/tree.hpp"

using namespace treelab;

namespace {

Tree path_n(int n) {
    if (n == 1) return Tree::single();
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return Tree::from_edge_list(e);
}

Tree star_n(int leaves) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
    return Tree::from_edge_list(e);
}

std::vector<Int> coeffs(std::vector<long> v) { return std::vector<Int>(v.begin(), v.end()); }

struct CapGuard {
    int saved = max_order();
    explicit CapGuard(int cap) { set_max_order(cap); }
    ~CapGuard() { set_max_order(saved); }
};

// Independent oracle for subtrees constrained to contain a vertex set:
// iterate over all 2^n subsets, keep the connected ones.
struct ConstrainedBrute {
    Int count = 0, total = 0;
};

ConstrainedBrute brute_containing(const Tree& t, const std::vector<int>& must) {
    int n = t.order();
    REQUIRE(n <= 16);
    ConstrainedBrute out;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        bool ok = true;
        for (int v : must)
            if (!(mask >> v & 1)) ok = false;
        if (!ok) continue;
        int start = -1, popcount = 0;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) {
                start = v;
                ++popcount;
            }
        std::vector<int> stack{start};
        std::uint32_t seen = 1u << start;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : t.neighbors(v))
                if ((mask >> u & 1) && !(seen >> u & 1)) {
                    seen |= 1u << u;
                    ++reached;
                    stack.push_back(u);
                }
        }
        if (reached == popcount) {
            out.count += 1;
            out.total += popcount;
        }
    }
    return out;
}

std::vector<int> random_connected_subset(std::mt19937_64& rng, const Tree& t, int size) {
    std::uniform_int_distribution<int> pick_start(0, t.order() - 1);
    std::set<int> in{pick_start(rng)};
    std::vector<int> frontier;
    auto refresh = [&] {
        frontier.clear();
        for (int v : in)
            for (int u : t.neighbors(v))
                if (!in.count(u)) frontier.push_back(u);
    };
    while (static_cast<int>(in.size()) < size) {
        refresh();
        std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
        in.insert(frontier[pick(rng)]);
    }
    return std::vector<int>(in.begin(), in.end());
}

// Identify the root of q with vertex u of p; q's other vertices get fresh ids.
Tree glue_trees(const Tree& p, int u, const Tree& q, int root) {
    std::vector<std::pair<int, int>> e = p.edges();
    std::vector<int> remap(q.order());
    int next = p.order();
    for (int v = 0; v < q.order(); ++v) remap[v] = (v == root) ? u : next++;
    for (auto [a, b] : q.edges()) e.push_back({remap[a], remap[b]});
    return Tree::from_edge_list(e);
}

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("brute force reproduces hand counts on tiny trees") {
    CHECK(brute_force_polynomial(Tree::single()).a == coeffs({0, 1}));
    CHECK(brute_force_polynomial(path_n(2)).a == coeffs({0, 2, 1}));
    CHECK(brute_force_polynomial(path_n(3)).a == coeffs({0, 3, 2, 1}));
    CHECK(brute_force_polynomial(path_n(4)).a == coeffs({0, 4, 3, 2, 1}));
    CHECK(brute_force_polynomial(star_n(3)).a == coeffs({0, 4, 3, 3, 1}));

    SUBCASE("star identities") {
        for (int m = 1; m <= 10; ++m) {
            SubtreePoly p = brute_force_polynomial(star_n(m));
            Int two_m = Int(1) << m;
            CHECK(p.value_at_one() == two_m + m);
            CHECK(p.derivative_at_one() == two_m + m * (Int(1) << (m - 1)) + m);
        }
    }
}

TEST_CASE("brute force refuses past the cap") {
    CHECK_THROWS_AS(brute_force_polynomial(path_n(6), 20), CapExceeded);
    CHECK_NOTHROW(brute_force_polynomial(path_n(6), 21));
    CHECK_THROWS_AS(brute_force_polynomial(star_n(25)), CapExceeded);
}

TEST_CASE("dp polynomial agrees with brute force") {
    for (int n = 1; n <= 9; ++n)
        for (const Tree& t : oracles::free_trees_coded(n)) {
            SubtreePoly dp = subtree_polynomial(t);
            SubtreePoly bf = brute_force_polynomial(t);
            CHECK(dp.a == bf.a);
            CHECK(dp.order() == n);
            CHECK(dp.a[0] == 0);
            CHECK(dp.a[1] == n);
            CHECK(dp.a[n] == 1);
            if (n >= 2) CHECK(dp.a[n - 1] == leaf_count(t));
        }

    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 60; ++trial) {
        Tree t = oracles::random_tree(rng, 10 + trial % 7);
        CHECK(subtree_polynomial(t).a == brute_force_polynomial(t).a);
    }
}

TEST_CASE("value dp agrees with the polynomial") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 80; ++trial) {
        Tree t = oracles::random_tree(rng, 2 + trial % 39);
        SubtreePoly p = subtree_polynomial(t);
        CountTotal ct = subtree_count_total(t);
        CHECK(ct.count == p.value_at_one());
        CHECK(ct.total == p.derivative_at_one());
    }
}

TEST_CASE("frozen small examples") {
    SubtreePoly claw = subtree_polynomial(star_n(3));
    CHECK(claw.a == coeffs({0, 4, 3, 3, 1}));
    CHECK(claw.value_at_one() == 11);
    CHECK(claw.derivative_at_one() == 23);
    CHECK(mean(star_n(3)) == Rational(23, 11));

    // centers of two three-vertex paths joined by an edge
    Tree h = Tree::from_edge_list({{0, 1}, {0, 2}, {3, 4}, {3, 5}, {0, 3}});
    CountTotal ct = subtree_count_total(h);
    CHECK(ct.count == 28);
    CHECK(ct.total == 84);
    CHECK(mean(h) == Rational(3));
    CHECK(mean(h) == mean_of(ct));

    SubtreePoly hub = local_subtree_polynomial(star_n(12), 0);
    CHECK(hub.value_at_one() == Int(1) << 12);
    CHECK(hub.at == 0);
    CHECK(hub.kind == PolyKind::Local);

    CHECK(mean(path_n(5)) == Rational(7, 3));
}

TEST_CASE("local polynomial matches rerooted sweep") {
    std::mt19937_64 rng(99);
    auto check_tree = [](const Tree& t) {
        std::vector<CountTotal> locals = local_count_totals(t);
        REQUIRE(locals.size() == static_cast<std::size_t>(t.order()));
        Int count_sum = 0;
        for (int v = 0; v < t.order(); ++v) {
            SubtreePoly lp = local_subtree_polynomial(t, v);
            CHECK(lp.a[0] == 0);
            CHECK(lp.a[1] == 1);
            CHECK(lp.value_at_one() == locals[v].count);
            CHECK(lp.derivative_at_one() == locals[v].total);
            count_sum += locals[v].count;
        }
        // every subtree is seen once per vertex it contains
        CHECK(count_sum == subtree_count_total(t).total);
    };
    for (int n = 1; n <= 8; ++n)
        for (const Tree& t : oracles::free_trees_coded(n)) check_tree(t);
    for (int trial = 0; trial < 25; ++trial) check_tree(oracles::random_tree(rng, 12 + trial));
}

TEST_CASE("path closed forms") {
    CapGuard guard(256);
    for (int n = 1; n <= 200; ++n) {
        Tree p = path_n(n);
        CountTotal ct = subtree_count_total(p);
        CHECK(ct.count == Int(n) * (n + 1) / 2);
        CHECK(ct.total == Int(n) * (n + 1) * (n + 2) / 6);
        Rational expected(n + 2, 3);
        expected.canonicalize();
        CHECK(mean(p) == expected);
    }
    Tree p9 = path_n(9);
    std::vector<CountTotal> locals = local_count_totals(p9);
    for (int s = 1; s <= 9; ++s) {
        CHECK(locals[s - 1].count == s * (9 - s + 1));
        CHECK(locals[s - 1].total == Int(s) * (9 - s + 1) * 10 / 2);
    }
}

TEST_CASE("mean comparisons and bounds") {
    std::mt19937_64 rng(41);
    auto check_tree = [](const Tree& t) {
        int n = t.order();
        Rational m = mean(t);
        Rational d = density(t);
        CHECK(d == m / n);
        CHECK(d > Rational(1, 3));
        if (n >= 3) CHECK(m < Rational(2 * n - leaf_count(t), 2));
        for (int v = 0; v < n; ++v) {
            Rational lv = local_mean(t, v);
            if (n == 1)
                CHECK(lv == m);
            else
                CHECK(m < lv);
            CHECK(lv <= 2 * m);
        }
    };
    for (int n = 1; n <= 8; ++n)
        for (const Tree& t : oracles::free_trees_coded(n)) check_tree(t);
    for (int trial = 0; trial < 20; ++trial) check_tree(oracles::random_tree(rng, 15 + trial));

    SUBCASE("exact comparison helper") {
        CountTotal a = subtree_count_total(path_n(4));
        CountTotal b = subtree_count_total(star_n(3));
        CHECK(compare_means(a, a) == 0);
        CHECK(compare_means(a, b) == -compare_means(b, a));
        CHECK((compare_means(a, b) < 0) == (mean_of(a) < mean_of(b)));
    }
}

TEST_CASE("mean over subtrees containing a set") {
    SUBCASE("against exhaustive enumeration") {
        std::mt19937_64 rng(4242);
        for (int n = 2; n <= 8; ++n)
            for (const Tree& t : oracles::free_trees_coded(n))
                for (int v = 0; v < n; ++v) {
                    CHECK(mean_containing(t, {v}) == local_mean(t, v));
                    for (int u : t.neighbors(v)) {
                        if (u < v) continue;
                        ConstrainedBrute cb = brute_containing(t, {v, u});
                        CHECK(mean_containing(t, {v, u}) == mean_of(CountTotal{cb.count, cb.total}));
                    }
                }
        for (int trial = 0; trial < 40; ++trial) {
            Tree t = oracles::random_tree(rng, 9 + trial % 6);
            std::uniform_int_distribution<int> size(1, t.order());
            std::vector<int> h = random_connected_subset(rng, t, size(rng));
            ConstrainedBrute cb = brute_containing(t, h);
            CHECK(mean_containing(t, h) == mean_of(CountTotal{cb.count, cb.total}));
        }
    }

    SUBCASE("strict growth with the set, bounded step") {
        std::mt19937_64 rng(555);
        for (int trial = 0; trial < 40; ++trial) {
            Tree t = oracles::random_tree(rng, 6 + trial % 15);
            std::uniform_int_distribution<int> size(2, t.order());
            int s = size(rng);
            std::vector<int> big = random_connected_subset(rng, t, s);
            // shrink to a connected subset by peeling induced leaves
            std::vector<int> small = big;
            std::uniform_int_distribution<int> target(1, s - 1);
            int keep = target(rng);
            while (static_cast<int>(small.size()) > keep) {
                std::set<int> in(small.begin(), small.end());
                for (int v : small) {
                    int inside = 0;
                    for (int u : t.neighbors(v)) inside += in.count(u);
                    if (inside <= 1 && static_cast<int>(small.size()) > keep) {
                        in.erase(v);
                        small.assign(in.begin(), in.end());
                        break;
                    }
                }
            }
            Rational mr = mean_containing(t, small);
            Rational ms = mean_containing(t, big);
            CHECK(mr < ms);
            CHECK(ms <= mr + Rational(static_cast<int>(big.size() - small.size()), 2));
        }
    }

    SUBCASE("whole tree and error cases") {
        Tree p5 = path_n(5);
        std::vector<int> all{0, 1, 2, 3, 4};
        CHECK(mean_containing(p5, all) == Rational(5));
        CHECK_THROWS_AS(mean_containing(p5, {}), std::invalid_argument);
        CHECK_THROWS_AS(mean_containing(p5, {1, 1}), std::invalid_argument);
        CHECK_THROWS_AS(mean_containing(p5, {5}), std::invalid_argument);
        CHECK_THROWS_AS(mean_containing(p5, {0, 2}), NotConnected);
        CHECK_THROWS_AS(mean_containing(star_n(4), {1, 2}), NotConnected);
    }
}

TEST_CASE("contraction") {
    Tree p4 = path_n(4);
    auto [t, rep] = contract(p4, {1, 2});
    CHECK(t.order() == 3);
    CHECK(rep == 1);
    CHECK(is_path(t));

    auto [k1, r1] = contract(p4, {0, 1, 2, 3});
    CHECK(k1.order() == 1);
    CHECK(r1 == 0);

    auto [s, rs] = contract(star_n(4), {0, 3});
    CHECK(s.order() == 4);
    CHECK(is_star(s));
    CHECK(s.degree(rs) == 3);

    CHECK_THROWS_AS(contract(p4, {0, 3}), NotConnected);
    CHECK_THROWS_AS(contract(p4, {}), std::invalid_argument);
}

TEST_CASE("gluing composition") {
    Tree p3 = path_n(3);
    Tree k2 = path_n(2);
    SubtreePoly p3g = subtree_polynomial(p3);
    SubtreePoly k2g = subtree_polynomial(k2);
    SubtreePoly k2l = local_subtree_polynomial(k2, 0);

    SubtreePoly at_middle = glue_polynomials(p3g, local_subtree_polynomial(p3, 1), k2g, k2l);
    CHECK(at_middle.a == coeffs({0, 4, 3, 3, 1}));
    SubtreePoly at_end = glue_polynomials(p3g, local_subtree_polynomial(p3, 0), k2g, k2l);
    CHECK(at_end.a == coeffs({0, 4, 3, 2, 1}));

    SUBCASE("matches direct construction") {
        std::mt19937_64 rng(31337);
        for (int trial = 0; trial < 120; ++trial) {
            Tree p = oracles::random_tree(rng, 2 + trial % 9);
            Tree q = oracles::random_tree(rng, 2 + (trial / 3) % 9);
            std::uniform_int_distribution<int> pu(0, p.order() - 1), qv(0, q.order() - 1);
            int u = pu(rng), v = qv(rng);
            SubtreePoly glued =
                glue_polynomials(subtree_polynomial(p), local_subtree_polynomial(p, u),
                                 subtree_polynomial(q), local_subtree_polynomial(q, v));
            CHECK(glued.a == subtree_polynomial(glue_trees(p, u, q, v)).a);
        }
    }

    SUBCASE("rejects malformed input") {
        SubtreePoly bad_local{PolyKind::Local, 0, coeffs({1, 1, 0})};
        CHECK_THROWS_AS(glue_polynomials(k2g, bad_local, k2g, k2l), DivisibilityViolated);
        CHECK_THROWS_AS(glue_polynomials(p3g, k2l, k2g, k2l), std::invalid_argument);
    }
}

TEST_CASE("fixed width count agrees with exact") {
    std::mt19937_64 rng(1212);
    auto check_tree = [](const Tree& t) {
        CountTotal exact = subtree_count_total(t);
        CountTotal64 fast = subtree_count_total_small(t);
        CHECK(Int(static_cast<long>(fast.count)) == exact.count);
        CHECK(Int(static_cast<long>(fast.total)) == exact.total);
    };
    for (int n = 1; n <= 9; ++n)
        for (const Tree& t : oracles::free_trees_coded(n)) check_tree(t);
    for (int trial = 0; trial < 40; ++trial) check_tree(oracles::random_tree(rng, 10 + trial % 15));
    check_tree(path_n(32));
    check_tree(star_n(31));

    CHECK_THROWS_AS(subtree_count_total_small(path_n(33)), CapExceeded);

    SUBCASE("comparisons match exact arithmetic") {
        std::vector<Tree> pool;
        for (int trial = 0; trial < 12; ++trial) pool.push_back(oracles::random_tree(rng, 24));
        pool.push_back(star_n(23));
        pool.push_back(path_n(24));
        for (const Tree& a : pool)
            for (const Tree& b : pool)
                CHECK(compare_means(subtree_count_total_small(a), subtree_count_total_small(b)) ==
                      compare_means(subtree_count_total(a), subtree_count_total(b)));
    }
}

TEST_CASE("decimal rendering rounds half to even") {
    CHECK(to_decimal_string(Rational(7, 3), 12) == "2.333333333333");
    CHECK(to_decimal_string(Rational(-7, 3), 12) == "-2.333333333333");
    CHECK(to_decimal_string(Rational(3), 12) == "3.000000000000");
    CHECK(to_decimal_string(Rational(1, 2), 0) == "0");
    CHECK(to_decimal_string(Rational(3, 2), 0) == "2");
    CHECK(to_decimal_string(Rational(5, 2), 0) == "2");
    CHECK(to_decimal_string(Rational(7, 2), 0) == "4");
    CHECK(to_decimal_string(Rational(1, 8), 2) == "0.12");
    CHECK(to_decimal_string(Rational(3, 8), 2) == "0.38");
    CHECK(to_decimal_string(Rational(-1, 800), 2) == "0.00");
    CHECK(to_decimal_string(Rational(1999, 2000), 3) == "1.000");
    CHECK(to_decimal_string(Rational(23, 11), 6) == "2.090909");
    CHECK_THROWS_AS(to_decimal_string(Rational(1), -1), std::invalid_argument);
}

}  // TEST_SUITE
