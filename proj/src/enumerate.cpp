#include "treelab/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

namespace treelab {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InvalidSpec(what); }

// Canonical level sequence of a rooted tree on m vertices: depths in
// preorder, root at depth 1, children of every vertex visited in
// non-increasing order of their own sequences. Enumeration starts at the
// path [1, 2, ..., m] and each step moves to the lexicographic predecessor;
// the star [1, 2, 2, ..., 2] is last.
struct LevelSeq {
    std::vector<int> depth;

    void reset(int m) {
        depth.resize(m);
        std::iota(depth.begin(), depth.end(), 1);
    }

    bool step() {
        int m = static_cast<int>(depth.size());
        int p = m - 1;
        while (p >= 0 && depth[p] <= 2) --p;
        if (p < 0) return false;
        int q = p - 1;
        while (depth[q] != depth[p] - 1) --q;
        for (int i = p; i < m; ++i) depth[i] = depth[i - (p - q)];
        return true;
    }

    // Order of the largest subtree hanging off the root.
    int max_root_branch() const {
        int best = 0;
        int run = 0;
        for (std::size_t i = 1; i < depth.size(); ++i) {
            if (depth[i] == 2) {
                best = std::max(best, run);
                run = 1;
            } else {
                ++run;
            }
        }
        return std::max(best, run);
    }

    // Appends the encoded tree's edges on vertex ids offset..offset+m-1,
    // preorder position i becoming id offset+i; the root is offset.
    void append_edges(std::vector<std::pair<int, int>>& out, int offset) const {
        std::vector<int> last(depth.size() + 1, -1);
        last[1] = offset;
        for (std::size_t i = 1; i < depth.size(); ++i) {
            int d = depth[i];
            out.emplace_back(last[d - 1], offset + static_cast<int>(i));
            last[d] = offset + static_cast<int>(i);
        }
    }
};

// Free trees of order n. A free tree has one centroid or two adjacent ones;
// rooting at the centroid (or splitting the centroid edge) makes the rooted
// encodings a complete system of representatives, so no cross-check against
// previously yielded trees is needed.
class FreeTreeGen final : public detail::Generator {
  public:
    explicit FreeTreeGen(int n) : n_(n) {
        if (n_ == 1) {
            phase_ = Phase::Single;
            return;
        }
        cap_ = n_ % 2 == 0 ? n_ / 2 - 1 : (n_ - 1) / 2;
        uni_.reset(n_);
        phase_ = Phase::Uni;
        uni_fresh_ = true;
    }

    bool advance() override {
        for (;;) {
            switch (phase_) {
                case Phase::Single:
                    phase_ = Phase::Done;
                    return true;
                case Phase::Uni: {
                    bool have = uni_fresh_;
                    uni_fresh_ = false;
                    if (!have) have = uni_.step();
                    while (have) {
                        if (uni_.max_root_branch() <= cap_) return true;
                        have = uni_.step();
                    }
                    if (n_ % 2 == 0) {
                        outer_.reset(n_ / 2);
                        inner_ = outer_;
                        bi_fresh_ = true;
                        phase_ = Phase::Bi;
                    } else {
                        phase_ = Phase::Done;
                    }
                    break;
                }
                case Phase::Bi:
                    if (bi_fresh_) {
                        bi_fresh_ = false;
                        return true;
                    }
                    if (inner_.step()) return true;
                    if (outer_.step()) {
                        inner_ = outer_;
                        return true;
                    }
                    phase_ = Phase::Done;
                    break;
                case Phase::Done:
                    return false;
            }
        }
    }

    Tree current() const override {
        if (n_ == 1) return Tree::single();
        std::vector<std::pair<int, int>> edges;
        edges.reserve(n_ - 1);
        if (phase_ == Phase::Uni) {
            uni_.append_edges(edges, 0);
        } else {
            int m = n_ / 2;
            outer_.append_edges(edges, 0);
            inner_.append_edges(edges, m);
            edges.emplace_back(0, m);
        }
        return Tree::from_edge_list(edges);
    }

  private:
    enum class Phase { Single, Uni, Bi, Done };

    int n_;
    int cap_ = 0;
    Phase phase_ = Phase::Done;
    LevelSeq uni_;
    bool uni_fresh_ = false;
    LevelSeq outer_;
    LevelSeq inner_;
    bool bi_fresh_ = false;
};

// Caterpillars of order n as leaf-count vectors over the spine. The spine is
// the stem, so for spine length k >= 2 both end entries are at least 1 and
// the entries sum to n - k; spine length 1 is the star. A vector is emitted
// only when it is lexicographically no larger than its reversal.
class CaterpillarGen final : public detail::Generator {
  public:
    explicit CaterpillarGen(int n) : n_(n), k_max_(n >= 3 ? n - 2 : 1) {}

    bool advance() override {
        for (;;) {
            if (k_ > k_max_) return false;
            bool have = fresh_ ? first_composition() : next_composition();
            fresh_ = false;
            if (!have) {
                ++k_;
                fresh_ = true;
                continue;
            }
            if (!std::lexicographical_compare(c_.rbegin(), c_.rend(), c_.begin(), c_.end()))
                return true;
        }
    }

    Tree current() const override { return make_caterpillar(c_); }

  private:
    bool first_composition() {
        total_ = n_ - k_;
        low_.assign(k_, 0);
        if (k_ >= 2) low_.front() = low_.back() = 1;
        c_ = low_;
        int slack = total_ - std::accumulate(low_.begin(), low_.end(), 0);
        if (slack < 0) return false;
        c_.back() += slack;
        return true;
    }

    bool next_composition() {
        for (int j = k_ - 2; j >= 0; --j) {
            int prefix = 0;
            for (int i = 0; i < j; ++i) prefix += c_[i];
            int mins = 0;
            for (int i = j + 1; i + 1 < k_; ++i) mins += low_[i];
            int last = total_ - prefix - (c_[j] + 1) - mins;
            if (last >= low_[k_ - 1]) {
                ++c_[j];
                for (int i = j + 1; i + 1 < k_; ++i) c_[i] = low_[i];
                c_[k_ - 1] = last;
                return true;
            }
        }
        return false;
    }

    int n_;
    int k_max_;
    int k_ = 1;
    int total_ = 0;
    bool fresh_ = true;
    std::vector<int> low_;
    std::vector<int> c_;
};

// Reverse lexicographic partition successor on a non-increasing part vector.
bool next_partition(std::vector<int>& parts) {
    int j = static_cast<int>(parts.size()) - 1;
    int ones = 0;
    while (j >= 0 && parts[j] == 1) {
        ++ones;
        --j;
    }
    if (j < 0) return false;
    int v = parts[j] - 1;
    parts.resize(j + 1);
    parts[j] = v;
    int rest = ones + 1;
    while (rest >= v) {
        parts.push_back(v);
        rest -= v;
    }
    if (rest > 0) parts.push_back(rest);
    return true;
}

// Asters of order n: the path, then one aster per partition of n - 1 into at
// least three limb orders.
class AsterGen final : public detail::Generator {
  public:
    explicit AsterGen(int n) : n_(n) {}

    bool advance() override {
        if (path_pending_) {
            path_pending_ = false;
            on_path_ = true;
            return true;
        }
        on_path_ = false;
        if (n_ < 4) return false;
        for (;;) {
            if (fresh_) {
                fresh_ = false;
                parts_ = {n_ - 1};
            } else if (!next_partition(parts_)) {
                return false;
            }
            if (parts_.size() >= 3) return true;
        }
    }

    Tree current() const override {
        if (on_path_) return make_path(n_);
        return attach_limbs(Tree::single(), {parts_});
    }

  private:
    int n_;
    bool path_pending_ = true;
    bool on_path_ = false;
    bool fresh_ = true;
    std::vector<int> parts_;
};

// One tree per integer parameter in [first, last].
class RangeGen final : public detail::Generator {
  public:
    RangeGen(int first, int last, std::function<Tree(int)> build)
        : next_(first), last_(last), build_(std::move(build)) {}

    bool advance() override {
        if (next_ > last_) return false;
        cur_ = next_++;
        return true;
    }

    Tree current() const override { return build_(cur_); }

  private:
    int next_;
    int last_;
    int cur_ = 0;
    std::function<Tree(int)> build_;
};

void check_order(int n) {
    if (n < 1) bad("stream order must be positive");
    if (n > max_order())
        throw OrderCapExceeded("stream order " + std::to_string(n) + " exceeds cap " +
                               std::to_string(max_order()));
}

}  // namespace

std::string family_name(Family family) {
    switch (family) {
        case Family::AllTrees: return "trees";
        case Family::Caterpillars: return "caterpillars";
        case Family::Asters: return "asters";
        case Family::BalancedAsters: return "balanced-asters";
        case Family::Batons: return "batons";
        case Family::Bridges: return "bridges";
        case Family::Dds: return "dds";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& token) {
    for (Family f : {Family::AllTrees, Family::Caterpillars, Family::Asters,
                     Family::BalancedAsters, Family::Batons, Family::Bridges, Family::Dds})
        if (family_name(f) == token) return f;
    return std::nullopt;
}

TreeStream::TreeStream(Family family, int n, Shard shard, std::unique_ptr<detail::Generator> gen)
    : family_(family), n_(n), shard_(shard), gen_(std::move(gen)) {
    if (shard_.of < 1 || shard_.index < 0 || shard_.index >= shard_.of)
        bad("shard index must lie in [0, of)");
}

std::optional<Tree> TreeStream::next() {
    if (exhausted_) return std::nullopt;
    while (gen_->advance()) {
        std::uint64_t pos = seen_++;
        if (pos % static_cast<std::uint64_t>(shard_.of) ==
            static_cast<std::uint64_t>(shard_.index)) {
            ++yielded_;
            return gen_->current();
        }
    }
    exhausted_ = true;
    return std::nullopt;
}

TreeStream free_trees(int n, Shard shard) {
    check_order(n);
    return TreeStream(Family::AllTrees, n, shard, std::make_unique<FreeTreeGen>(n));
}

TreeStream caterpillars(int n, Shard shard) {
    check_order(n);
    return TreeStream(Family::Caterpillars, n, shard, std::make_unique<CaterpillarGen>(n));
}

TreeStream family_stream(Family family, int n, Shard shard) {
    check_order(n);
    switch (family) {
        case Family::AllTrees:
            return free_trees(n, shard);
        case Family::Caterpillars:
            return caterpillars(n, shard);
        case Family::Asters:
            return TreeStream(family, n, shard, std::make_unique<AsterGen>(n));
        case Family::BalancedAsters:
            return TreeStream(
                family, n, shard,
                std::make_unique<RangeGen>(2, std::max(2, n - 1), [n](int l) {
                    return l == 2 ? make_path(n) : make_balanced_aster(n, l);
                }));
        case Family::Batons:
            if (n < 4) bad("batons need order at least 4");
            return TreeStream(family, n, shard,
                              std::make_unique<RangeGen>(1, (n - 2) / 2, [n](int s) {
                                  return make_baton(s, n - 2 * s - 2);
                              }));
        case Family::Bridges:
            if (n < 6) bad("bridges need order at least 6");
            return TreeStream(family, n, shard,
                              std::make_unique<RangeGen>(1, (n - 2) / 4, [n](int s) {
                                  return make_bridge(s, n - 2 - 4 * s);
                              }));
        case Family::Dds:
            bad("dds streams need a leaf count; use dds_stream");
    }
    bad("unknown family");
}

TreeStream dds_stream(int n, int leaf_count, Shard shard) {
    check_order(n);
    if (leaf_count < 2 || leaf_count % 2 != 0) bad("dds leaf count must be even and positive");
    int m = leaf_count / 2;
    if (n < leaf_count + 2) bad("dds of order " + std::to_string(n) + " cannot carry " +
                                std::to_string(leaf_count) + " leaves");
    return TreeStream(Family::Dds, n, shard, std::make_unique<RangeGen>(1, m, [n, m](int s) {
                          return make_dds(n, s, 2 * m - s);
                      }));
}

}  // namespace treelab
