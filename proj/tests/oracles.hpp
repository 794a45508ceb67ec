#pragma once

// Test-only oracles, deliberately independent of the library's algorithms:
// labeled-tree enumeration via Pruefer sequences, permutation-based
// isomorphism, and seeded random trees. Everything here is brute force.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "treelab/tree.hpp"

namespace oracles {

// Decodes a Pruefer sequence of length n-2 into the edge list of a labeled
// tree on 0..n-1. For n <= 2 the sequence is empty.
inline std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int n) {
    std::vector<int> deg(n, 1);
    for (int v : seq) ++deg[v];
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1) leaves.insert(v);
    std::vector<std::pair<int, int>> edges;
    for (int v : seq) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
        if (--deg[v] == 1) leaves.insert(v);
    }
    int a = *leaves.begin(), b = *leaves.rbegin();
    edges.emplace_back(a, b);
    return edges;
}

inline treelab::Tree tree_from_prufer(const std::vector<int>& seq, int n) {
    if (n == 1) return treelab::Tree::single();
    return treelab::Tree::from_edge_list(prufer_decode(seq, n));
}

// True iff some vertex bijection maps a onto b. Exponential; intended for
// n <= 9.
inline bool isomorphic_brute(const treelab::Tree& a, const treelab::Tree& b) {
    int n = a.order();
    if (n != b.order()) return false;
    std::vector<int> da(n), db(n);
    for (int v = 0; v < n; ++v) da[v] = a.degree(v);
    for (int v = 0; v < n; ++v) db[v] = b.degree(v);
    {
        auto sa = da, sb = db;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) ok = da[v] == db[perm[v]];
        for (int u = 0; u < n && ok; ++u)
            for (int v : a.neighbors(u)) {
                if (u > v) continue;
                const auto& nb = b.neighbors(perm[u]);
                if (std::find(nb.begin(), nb.end(), perm[v]) == nb.end()) {
                    ok = false;
                    break;
                }
            }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// All free trees of order n, one representative per isomorphism class, found
// by enumerating every Pruefer sequence and deduplicating with the brute
// isomorphism test against the representatives found so far. O(n^(n-2))
// decodes times permutation tests; usable for n <= 7. Memoized.
inline const std::vector<treelab::Tree>& free_trees_brute(int n) {
    static std::map<int, std::vector<treelab::Tree>> memo;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::vector<treelab::Tree> reps;
    if (n <= 2) {
        reps.push_back(n == 1 ? treelab::Tree::single()
                              : treelab::Tree::from_edge_list({{0, 1}}));
        return memo.emplace(n, std::move(reps)).first->second;
    }
    std::vector<int> seq(n - 2, 0);
    while (true) {
        auto t = tree_from_prufer(seq, n);
        bool known = false;
        for (const auto& r : reps)
            if (isomorphic_brute(t, r)) {
                known = true;
                break;
            }
        if (!known) reps.push_back(t);
        int i = n - 3;
        while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
        if (i < 0) break;
        ++seq[i];
    }
    return memo.emplace(n, std::move(reps)).first->second;
}

// All free trees of order n via Pruefer enumeration, deduplicated by the
// library's canonical code. Independent of the library's *generators* (every
// labeled tree is visited), but trusts canonical_code, which is itself
// validated against isomorphic_brute. Usable for n <= 9. Memoized.
inline const std::vector<treelab::Tree>& free_trees_coded(int n) {
    static std::map<int, std::vector<treelab::Tree>> memo;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::vector<treelab::Tree> reps;
    if (n <= 2) {
        reps.push_back(n == 1 ? treelab::Tree::single()
                              : treelab::Tree::from_edge_list({{0, 1}}));
        return memo.emplace(n, std::move(reps)).first->second;
    }
    std::set<std::string> seen;
    std::vector<int> seq(n - 2, 0);
    while (true) {
        auto t = tree_from_prufer(seq, n);
        if (seen.insert(treelab::canonical_code(t).bytes).second) reps.push_back(t);
        int i = n - 3;
        while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
        if (i < 0) break;
        ++seq[i];
    }
    return memo.emplace(n, std::move(reps)).first->second;
}

inline treelab::Tree random_tree(std::mt19937_64& rng, int n) {
    if (n == 1) return treelab::Tree::single();
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> seq(std::max(0, n - 2));
    for (int& v : seq) v = pick(rng);
    return tree_from_prufer(seq, n);
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

// Unique path between two vertices, inclusive.
inline std::vector<int> tree_path(const treelab::Tree& t, int u, int v) {
    std::vector<int> par(t.order(), -2);
    std::vector<int> stack{u};
    par[u] = -1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : t.neighbors(x))
            if (par[y] == -2) {
                par[y] = x;
                stack.push_back(y);
            }
    }
    std::vector<int> path;
    for (int x = v; x != -1; x = par[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace oracles
