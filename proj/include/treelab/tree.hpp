#pragma once

// Free trees on dense vertex ids 0..n-1, validated at construction, plus the
// structural decompositions the rest of the library is built on: centers,
// leaves, twigs, stems, limbs and cores, limb profiles, family classification,
// and an isomorphism-invariant canonical code.

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace treelab {

// Validation failures raised while building or decomposing trees.
struct TreeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyInput : TreeError {
    using TreeError::TreeError;
};
struct DuplicateEdge : TreeError {
    using TreeError::TreeError;
};
struct CycleDetected : TreeError {
    using TreeError::TreeError;
};
struct Disconnected : TreeError {
    using TreeError::TreeError;
};
// Raised by operations that are undefined on paths (core, limb profile).
struct IsAPath : TreeError {
    using TreeError::TreeError;
};
struct OrderCapExceeded : TreeError {
    using TreeError::TreeError;
};

// Upper bound on the order of any Tree instance. Closed-form evaluations do
// not build trees and are unaffected. The setter is meant for process startup
// (tests, CLI flag or TREELAB_MAX_ORDER); it is not synchronized.
int max_order() noexcept;
void set_max_order(int cap);

// A connected acyclic graph on vertices 0..n-1, immutable once built.
// Neighbor lists are sorted ascending, so traversals are deterministic.
class Tree {
  public:
    // The one-vertex tree.
    static Tree single();

    // Builds and fully validates a tree from an edge list. Vertex ids must
    // cover 0..n-1 where n-1 is the largest id mentioned.
    static Tree from_edge_list(const std::vector<std::pair<int, int>>& edges);

    int order() const noexcept { return n_; }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }

    // A leaf is a vertex of degree at most 1, so K1's vertex is a leaf.
    bool is_leaf(int v) const { return degree(v) <= 1; }

    // All edges as (min,max) pairs in lexicographic order.
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const Tree& other) const { return adj_ == other.adj_; }

  private:
    explicit Tree(std::vector<std::vector<int>> adj);
    int n_ = 0;
    std::vector<std::vector<int>> adj_;
};

std::vector<int> leaves(const Tree& t);
int leaf_count(const Tree& t);

// Vertices of minimum eccentricity; always 1 or 2 of them, adjacent when 2.
std::vector<int> center(const Tree& t);

// Number of edges on a longest path.
int diameter(const Tree& t);

// Vertices of degree >= 2 with at least deg-1 leaf neighbors.
std::vector<int> twigs(const Tree& t);

// The tree induced on the non-leaf vertices, with a dense relabeling that
// preserves the relative order of the surviving ids. Empty exactly when
// every vertex is a leaf, i.e. n <= 2.
std::optional<Tree> stem(const Tree& t);

bool is_path(const Tree& t);
bool is_star(const Tree& t);
bool is_caterpillar(const Tree& t);
// At most one vertex of degree exceeding 2; paths are degenerate asters.
bool is_aster(const Tree& t);
// No vertex of degree 2.
bool is_series_reduced(const Tree& t);
// Limb orders at each core vertex differ by at most 1. Paths, which have no
// core, count as locally balanced by convention.
bool is_locally_balanced(const Tree& t);

struct Classification {
    bool is_path = false;
    bool is_caterpillar = false;
    bool is_aster = false;
    bool is_series_reduced = false;
    bool is_locally_balanced = false;
    int leaf_count = 0;
    int twig_count = 0;
};
Classification classify(const Tree& t);

// Isomorphism-invariant encoding: the nested-parentheses code of the tree
// rooted at its center, children ordered lexicographically. With two centers,
// the two half codes (severing the center edge) are concatenated in the
// lexicographically smaller orientation. Two trees get equal codes iff they
// are isomorphic.
struct CanonicalCode {
    std::string bytes;
    auto operator<=>(const CanonicalCode&) const = default;
};

CanonicalCode canonical_code(const Tree& t);
bool is_isomorphic(const Tree& a, const Tree& b);

// Code of the tree rooted at a chosen vertex; equal across root-preserving
// isomorphisms only.
std::string rooted_code(const Tree& t, int root);

// Decomposition of a non-path tree into its core (what remains after
// deleting every limb, a limb being a maximal path that contains a leaf and
// no vertex of degree > 2) and the limbs hanging off each core vertex.
//
// The core keeps a dense relabeling that preserves id order; source_labels
// maps core ids back to the input tree. theta lists the core's vertex ids in
// a deterministic, label-independent order (breadth-first from the core's
// canonical root, children in rooted-code order). limb_orders, degrees() and
// weights() are all aligned with theta.
struct LimbProfile {
    Tree core;
    std::vector<int> source_labels;
    std::vector<int> theta;
    std::vector<std::vector<int>> limb_orders;  // per theta slot, descending

    int limb_degree(int slot) const { return static_cast<int>(limb_orders.at(slot).size()); }
    int limb_weight(int slot) const;
    std::vector<int> degrees() const;
    std::vector<int> weights() const;
    int total_weight() const;
    bool locally_balanced() const;

    // limb_orders re-indexed by core vertex id instead of theta slot.
    std::vector<std::vector<int>> orders_by_core_id() const;
};

LimbProfile limb_profile(const Tree& t);
Tree core_of(const Tree& t);

// Orders of all limbs, flattened and sorted descending; empty for paths.
// Linear, unlike the full profile, which orders the core's vertices.
std::vector<int> all_limb_orders(const Tree& t);

// Builds the tree obtained by attaching, to each vertex v of `core`, one
// pendant path per entry of limb_orders[v] with that many vertices. The
// inverse of limb_profile up to isomorphism whenever the profile is
// realizable (every vertex with deg(core) + limbs <= 2 would melt into a
// limb or path, so round-trips need core leaves to carry >= 2 limbs).
Tree attach_limbs(const Tree& core, const std::vector<std::vector<int>>& limb_orders);

// Relabels vertices by perm (new id of v = perm[v]); perm must be a
// permutation of 0..n-1.
Tree relabel(const Tree& t, const std::vector<int>& perm);

}  // namespace treelab

template <>
struct std::hash<treelab::CanonicalCode> {
    std::size_t operator()(const treelab::CanonicalCode& c) const noexcept {
        return std::hash<std::string>{}(c.bytes);
    }
};
