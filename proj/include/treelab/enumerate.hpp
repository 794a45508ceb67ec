#pragma once

// Lazy streams that yield each isomorphism class of a tree family exactly
// once. The stream over all free trees combines canonical rooted level
// sequences with a centroid split; caterpillars and the parametric families
// walk their natural parameter spaces directly. Every stream can be sharded
// into disjoint slices for multi-process runs.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "treelab/families.hpp"
#include "treelab/tree.hpp"

namespace treelab {

enum class Family {
    AllTrees,
    Caterpillars,
    Asters,
    BalancedAsters,
    Batons,
    Bridges,
    Dds,
};

// Lowercase token used by the CLI and in reports ("trees", "caterpillars",
// "asters", "balanced-asters", "batons", "bridges", "dds").
std::string family_name(Family family);
std::optional<Family> family_from_name(const std::string& token);

// Slice selector for parallel runs: a stream with shard {k, K} yields exactly
// the trees at global stream positions congruent to k mod K, so the K shards
// partition the unsharded stream.
struct Shard {
    int index = 0;
    int of = 1;
};

namespace detail {
// Iteration cursor that can skip cheaply: advance() steps the internal state
// without building a Tree, so sharded consumers pay construction cost only
// for their own slice. current() is valid after advance() returned true.
struct Generator {
    virtual ~Generator() = default;
    virtual bool advance() = 0;
    virtual Tree current() const = 0;
};
}  // namespace detail

// Single-consumer stream over one family at one order. Generation order is
// deterministic: two streams built with the same arguments yield identical
// sequences regardless of when or where they run.
class TreeStream {
  public:
    TreeStream(Family family, int n, Shard shard, std::unique_ptr<detail::Generator> gen);

    // The next tree of this shard, or nullopt once the stream is exhausted.
    std::optional<Tree> next();

    Family family() const noexcept { return family_; }
    int order() const noexcept { return n_; }
    const Shard& shard() const noexcept { return shard_; }

    // Global stream positions examined and trees yielded to this shard.
    std::uint64_t seen() const noexcept { return seen_; }
    std::uint64_t yielded() const noexcept { return yielded_; }

  private:
    Family family_;
    int n_;
    Shard shard_;
    std::unique_ptr<detail::Generator> gen_;
    std::uint64_t seen_ = 0;
    std::uint64_t yielded_ = 0;
    bool exhausted_ = false;
};

// All free trees of order n. Unicentroidal trees come first, in successor
// order of the level sequence of the tree rooted at its centroid; for even n
// the bicentroidal trees follow as pairs of half trees, the first half in
// successor order and the second half running from the first half's current
// sequence onward. Throws InvalidSpec for n < 1 and OrderCapExceeded for
// n > max_order().
TreeStream free_trees(int n, Shard shard = {});

// All caterpillars of order n: spine length ascending, leaf distributions
// along the spine in lexicographic order, each mirror pair represented by
// its lexicographically smaller vector. End spine vertices carry at least
// one leaf, which pins the spine to the stem and makes the representation
// unique up to reversal.
TreeStream caterpillars(int n, Shard shard = {});

// Parametric families at order n.
//   Asters:         the path first, then one aster per partition of n - 1
//                   into at least three limbs, partitions in reverse
//                   lexicographic order.
//   BalancedAsters: the path, then the balanced aster with l limbs for
//                   l = 3..n-1.
//   Batons:         D_n(s, s) for s = 1..(n-2)/2 ascending; needs n >= 4.
//   Bridges:        B(s, n-2-4s) for s = 1..(n-2)/4 ascending; needs n >= 6.
// AllTrees and Caterpillars dispatch to the dedicated streams above; Dds
// needs a leaf count and lives in dds_stream. Throws InvalidSpec when the
// family has no member of order n.
TreeStream family_stream(Family family, int n, Shard shard = {});

// Subdivided double stars of order n with the given (even, positive) number
// of leaves: D_n(s, 2m - s) for s = 1..m ascending, one representative per
// mirror pair. Requires n >= leaf_count + 2.
TreeStream dds_stream(int n, int leaf_count, Shard shard = {});

}  // namespace treelab
