#pragma once

// Named tree families: constructors, closed-form subtree counts, the exact
// difference polynomials comparing neighbouring family members, and the
// coefficient-bound checks backing the asymptotic arguments.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "treelab/poly.hpp"
#include "treelab/tree.hpp"

namespace treelab {

struct InvalidSpec : TreeError {
    using TreeError::TreeError;
};

struct PathSpec {
    int n;
};
struct StarSpec {
    int n;  // order, hub plus n-1 leaves
};
struct BalancedAsterSpec {
    int n;
    int limbs;
};
struct BatonSpec {
    int s;  // leaves on each hub
    int t;  // interior path order; 0 joins the hubs by an edge
};
struct DdsSpec {
    int n, r, s;  // order, leaves at each end; interior order n-r-s-2 >= 1
};
struct BridgeSpec {
    int s;  // arm length of each end path P_{2s+1}
    int t;  // interior path order
};
struct StickmanSpec {
    int p, q;                // orders of the two end paths, both >= 3
    int attach_p, attach_q;  // 1-indexed internal positions on each path
    int interior;            // order of the joining path, 0 for a direct edge
};
struct GluedSpec {
    Tree q;
    int v;         // vertex of q identified with a path vertex
    int path_len;  // order of the host path
    int position;  // 1-indexed position along the path
};
struct CaterpillarSpec {
    std::vector<int> leaves_per_spine;
};

using FamilySpec = std::variant<PathSpec, StarSpec, BalancedAsterSpec, BatonSpec, DdsSpec,
                                BridgeSpec, StickmanSpec, GluedSpec, CaterpillarSpec>;

Tree build(const FamilySpec& spec);
int spec_order(const FamilySpec& spec);
std::string spec_name(const FamilySpec& spec);

// Compact CLI grammar: `path:9`, `star:7`, `aster:n=10,l=3`, `baton:s=5,t=12`,
// `dds:n=20,r=4,s=6`, `bridge:s=3,t=7`, `stickman:p=4,q=5,ap=2,aq=3,h=1`,
// `caterpillar:5.1.0.0.5`.
FamilySpec parse_family_spec(const std::string& text);

Tree make_path(int n);
Tree make_star(int n);
Tree make_balanced_aster(int n, int limbs);
Tree make_baton(int s, int t);
Tree make_dds(int n, int r, int s);  // accepts interior order 0, unlike DdsSpec
Tree make_bridge(int s, int t);
Tree make_stickman(int p, int q, int attach_p, int attach_q, int interior);
Tree make_glued(const Tree& q, int v, int path_len, int position);
Tree make_caterpillar(const std::vector<int>& leaves_per_spine);

// Census of the subtrees of D_n(s, 2m-s) split by how many hub vertices they
// contain: a/a_bar cover the s-independent part (no hub, both hubs), b/b_bar
// the subtrees containing exactly one hub.
struct CensusBreakdown {
    Int a, a_bar, b, b_bar;
};

struct ClosedFormCounts {
    Int count, total;
    std::optional<CensusBreakdown> breakdown;
    Rational mean() const;
};

ClosedFormCounts path_counts(int n);
ClosedFormCounts path_local_counts(int n, int s);  // position s in 1..n
ClosedFormCounts dds_counts(int n, int m, int s);  // D_n(s, 2m-s), with breakdown
ClosedFormCounts baton_counts(int n, int s);       // D_n(s, s)
ClosedFormCounts bridge_counts(int s, int t);      // B(s, t)

// Cross-multiplied mean differences; each is positive exactly when the first
// member of the pair has the larger mean subtree order.
Int baton_difference(int n, int s);        // D_n(s+1,s+1) vs D_n(s,s)
Int bridge_difference_up(int n, int s);    // B_n(s+1) vs B_n(s), order n+2
Int bridge_difference_down(int n, int s);  // B_n(s-1) vs B_n(s)
Int dds_difference(int n, int m, int s);   // D_n(m,m) vs D_n(s,2m-s)

enum class DifferenceFamily { BatonF, BridgeG, BridgeH, DdsH };

struct DiffCoeffs {
    Rational c0, c1, c2, c3, c4;
};

// Printed coefficient functions of the quartic-in-n difference forms. DdsH has
// no such form (its closed shape is the factorization checked below) and is
// rejected here.
DiffCoeffs difference_coefficients(DifferenceFamily family, int s);

// Evaluates the quartic with the sign pattern the family uses. Agrees exactly
// with the definitional Int differences above.
Rational evaluate_difference(DifferenceFamily family, int n, int s);

// The factor g_{n,m}(s) with h_{n,m}(s) = 2^{-s} (n-2m-1) (2^m-2^s)^2 g_{n,m}(s).
Rational dds_difference_factor(int n, int m, int s);

struct CoefficientBoundReport {
    int s_max = 0;
    bool all_hold = false;
    std::vector<std::pair<int, int>> violations;  // (item 1..10, s)
    Rational c3_at_s1;                            // outside item (vii)'s stated range
};
CoefficientBoundReport check_coefficient_bounds(int s_max);

}  // namespace treelab
