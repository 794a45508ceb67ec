#pragma once

// Exhaustive optimal-tree searches with exact tie handling, closed-form
// argmax scans for the parametric families, and the verification suites
// that exercise the library's structural results over exhaustive and
// randomized grids.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treelab/enumerate.hpp"
#include "treelab/poly.hpp"
#include "treelab/tree.hpp"

namespace treelab {

// Raised when a (core, limb weight, limb degree) profile cannot be realized
// as a tree whose core is the given one.
struct InfeasibleProfile : TreeError {
    using TreeError::TreeError;
};

// One maximizer found by a search: identity, a representative edge list,
// and the structural summary reported for winners. limb_orders flattens the
// orders of all limbs, sorted descending; empty for paths, which have none.
struct WinnerInfo {
    CanonicalCode code;
    std::vector<std::pair<int, int>> edges;
    Classification shape;
    std::vector<int> limb_orders;
    CountTotal stats;
};

// Result of an argmax search over one family at one order. argmax holds
// every maximizer (sorted by canonical code), each attaining exactly
// mean_value; runner_up is the largest mean strictly below it, absent when
// the family has a single member.
struct SearchReport {
    std::string family;
    int n = 0;
    std::vector<std::pair<std::string, std::string>> params;
    std::uint64_t examined = 0;
    std::vector<WinnerInfo> argmax;
    Rational mean_value;
    std::optional<Rational> runner_up;
    double wall_seconds = 0.0;
};

// Argmax over a closed-form one-parameter scan; s lists every tied
// maximizer ascending. examined counts the evaluated parameter values.
struct ClosedFormArgmax {
    std::vector<int> s;
    Rational mean_value;
    std::optional<Rational> runner_up;
    std::uint64_t examined = 0;
};

// Outcome of one verification suite. failed == 0 exactly when
// first_counterexample is absent; notes carry informational findings that
// are reported without being asserted.
struct Counterexample {
    std::string check;
    std::vector<std::pair<std::string, std::string>> params;
    std::string details;
    std::optional<std::string> graph6;
};

struct VerificationReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> grid;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::optional<Counterexample> first_counterexample;
    std::vector<std::pair<std::string, std::string>> notes;
    double wall_seconds = 0.0;

    bool ok() const { return failed == 0; }
};

// Overrides for suite grids; unset fields fall back to each suite's
// default. n selects an exact order where a suite supports it (the dp
// oracle), n_max / s_max bound ranges, instances and seed drive the
// randomized suites.
struct SuiteConfig {
    std::optional<int> n;
    std::optional<int> n_max;
    std::optional<int> s_max;
    std::optional<int> instances;
    std::optional<std::uint64_t> seed;
};

// Searches.

// Structural summary of one tree, in the form reported for search winners.
WinnerInfo describe_winner(const Tree& t);

// Drains the stream and returns its exact argmax set. Uses an overflow-safe
// int64 fast path for orders up to 32 and arbitrary precision beyond.
SearchReport optimal_stream(TreeStream stream);

// Argmax over the family at order n. AllTrees, Caterpillars, Asters and
// BalancedAsters run the exhaustive stream; Batons and Bridges scan their
// closed-form means and build only the winners, so large orders stay cheap.
// Family::Dds needs a leaf count, use optimal_dds.
SearchReport optimal(Family family, int n);

// Argmax over subdivided double stars of order n with the given number of
// leaves.
SearchReport optimal_dds(int n, int leaf_count);

// Combines two partial reports for the same family and order, as produced
// by disjoint shards: means compared exactly, argmax unioned on ties,
// examined counts added. Associative, so any merge order agrees.
SearchReport merge_reports(const SearchReport& a, const SearchReport& b);

// Runs `threads` disjoint shard searches concurrently and merges them in
// shard order; the result equals the unsharded search.
SearchReport optimal_sharded(Family family, int n, int threads);

// Argmax of the mean over batons D_n(s, s), s = 1..(n-2)/2, n >= 4. Scans
// closed forms; prunes the tail beyond the first s whose mean provably
// dominates all larger s, falling back to the full scan when the pruning
// witness fails.
ClosedFormArgmax optimal_baton_s(int n);

// Argmax of the mean over bridges B(s, n-4s), s = 1..n/4, n >= 4 (members
// have order n + 2). Full scan in 64-bit arithmetic with 128-bit compares.
ClosedFormArgmax optimal_bridge_s(int n);

// Verification building blocks.

// All trees obtained from t by picking a leaf w, walking to the nearest
// vertex v of degree >= 3, and moving one v-edge (v,u), with u off w's
// limb, to (u,w). Throws IsAPath when no degree-3 vertex exists.
std::vector<Tree> standard_one_associates(const Tree& t);

// Asserts that at least one such move strictly lowers the mean subtree
// order of t. Throws IsAPath for paths.
VerificationReport verify_associate(const Tree& t);

// Evaluates every applicable exact bound on one tree: the local-mean
// sandwich, the leaf and twig bounds, the limb-weight identity and bound,
// the stem count and stem mean bounds, the path minimum, and the density
// floor. Bounds whose hypotheses fail are skipped, not failed.
VerificationReport bound_suite(const Tree& t);

// Enumerates every limb-order assignment with the given per-vertex limb
// weights and degrees (indexed by core vertex id) and asserts the locally
// balanced assignment is the strict argmax. Throws InfeasibleProfile when
// the profile cannot produce a tree with this core.
VerificationReport verify_locally_balanced(const Tree& core, const std::vector<int>& weights,
                                           const std::vector<int>& degrees);

// Suite drivers. Each returns a full report; defaults match the published
// grids. run_suite dispatches on the public suite ids.
VerificationReport verify_dp_oracle(const SuiteConfig& cfg = {});
VerificationReport verify_gluing_random(const SuiteConfig& cfg = {});
VerificationReport verify_associates_exhaustive(const SuiteConfig& cfg = {});
VerificationReport verify_bounds_corpus(const SuiteConfig& cfg = {});
VerificationReport verify_balanced_assignments(const SuiteConfig& cfg = {});
VerificationReport verify_balanced_dds_grid(const SuiteConfig& cfg = {});
VerificationReport verify_central_attachment(const SuiteConfig& cfg = {});
VerificationReport verify_caterpillar_witness(const SuiteConfig& cfg = {});
VerificationReport verify_leaf_twig_caps(const SuiteConfig& cfg = {});
VerificationReport verify_dds_factor_grid(const SuiteConfig& cfg = {});
VerificationReport verify_baton_coefficient_grid(const SuiteConfig& cfg = {});

// Window scans used by the acceptance checks; not part of the suite
// registry. The baton window asserts the argmax lies strictly between
// 2log2(n)-2 and 2log2(n)+1 for every n in [n_lo, n_hi]. The bridge window
// asserts the upper bound s^3 < n^2 for every n, reports (without
// asserting) the smallest threshold from which the k=2 lower bound holds,
// and checks that batons beat bridges of equal order up to order 1000.
VerificationReport verify_baton_window(int n_lo, int n_hi);
VerificationReport verify_bridge_window(int n_lo, int n_hi);

// Public suite ids, in display order.
std::vector<std::string> suite_ids();

// Runs the suite with the given id; throws InvalidSpec for unknown ids.
VerificationReport run_suite(const std::string& suite_id, const SuiteConfig& cfg = {});

}  // namespace treelab
