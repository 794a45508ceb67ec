#pragma once

// Exact subtree-count machinery: global and local subtree polynomials via the
// rooted product recurrence, value-level count/total evaluation with an
// all-vertices rerooting pass, means as exact rationals, the gluing
// composition, and an independent brute-force oracle.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "treelab/tree.hpp"

namespace treelab {

using Int = mpz_class;
using Rational = mpq_class;

struct NotConnected : TreeError {
    using TreeError::TreeError;
};
struct CapExceeded : TreeError {
    using TreeError::TreeError;
};
struct DivisibilityViolated : TreeError {
    using TreeError::TreeError;
};

enum class PolyKind { Global, Local };

// Coefficients of a subtree generating polynomial: a[k] counts the subtrees
// on exactly k vertices (a[0] is always 0). Global polynomials count all
// subtrees; Local ones count subtrees containing the vertex `at`.
struct SubtreePoly {
    PolyKind kind = PolyKind::Global;
    int at = -1;
    std::vector<Int> a;

    int order() const { return static_cast<int>(a.size()) - 1; }
    Int value_at_one() const;       // number of subtrees
    Int derivative_at_one() const;  // total order over all subtrees
    bool operator==(const SubtreePoly& o) const { return a == o.a; }
};

SubtreePoly subtree_polynomial(const Tree& t);
SubtreePoly local_subtree_polynomial(const Tree& t, int v);

// Number of subtrees and total order, without coefficient vectors. Much
// cheaper than the full polynomial; this is what the searches run on.
struct CountTotal {
    Int count, total;
};
CountTotal subtree_count_total(const Tree& t);

// Local (count, total) at every vertex in one O(sum deg^2) rerooting sweep.
std::vector<CountTotal> local_count_totals(const Tree& t);

// -1, 0, 1 as a's mean compares to b's; exact cross multiplication.
int compare_means(const CountTotal& a, const CountTotal& b);

Rational mean_of(const CountTotal& ct);
Rational mean(const Tree& t);
Rational local_mean(const Tree& t, int v);
Rational density(const Tree& t);

// Mean order of the subtrees containing every vertex of h, computed by
// contracting h to a point and shifting the local mean by |h|-1.
Rational mean_containing(const Tree& t, const std::vector<int>& h);

// The tree obtained by contracting the connected vertex set h to a single
// vertex; returns the contracted tree and the id of the merged vertex.
std::pair<Tree, int> contract(const Tree& t, const std::vector<int>& h);

inline constexpr std::uint64_t kBruteForceCap = 1u << 20;

// Explicit connected-subgraph enumeration (grow from each root with a
// vertex-order rule so each subtree is counted once). Refuses when the tree
// has more than `cap` subtrees.
SubtreePoly brute_force_polynomial(const Tree& t, std::uint64_t cap = kBruteForceCap);

// Composes the subtree polynomial of the tree obtained by identifying the
// local vertex of (Qg, Ql) with the local vertex of (Pg, Pl):
// result = Pg - Pl + Qg - Ql + Pl*Ql/x.
SubtreePoly glue_polynomials(const SubtreePoly& p_global, const SubtreePoly& p_local,
                             const SubtreePoly& q_global, const SubtreePoly& q_local);

// Overflow-free only for n <= 32; the searches assert that bound.
struct CountTotal64 {
    std::int64_t count = 0, total = 0;
};
CountTotal64 subtree_count_total_small(const Tree& t);
int compare_means(const CountTotal64& a, const CountTotal64& b);

// Exact decimal rendering, round half to even at `places` digits.
std::string to_decimal_string(const Rational& q, int places);

}  // namespace treelab
