#include "treelab/tree.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <queue>

namespace treelab {

namespace {

std::atomic<int> g_max_order{64};

int find_root(std::vector<int>& parent, int v) {
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    return v;
}

}  // namespace

int max_order() noexcept { return g_max_order.load(std::memory_order_relaxed); }

void set_max_order(int cap) {
    if (cap < 1) throw std::invalid_argument("max order cap must be at least 1");
    g_max_order.store(cap, std::memory_order_relaxed);
}

Tree::Tree(std::vector<std::vector<int>> adj) : n_(static_cast<int>(adj.size())), adj_(std::move(adj)) {
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

Tree Tree::single() { return Tree(std::vector<std::vector<int>>(1)); }

Tree Tree::from_edge_list(const std::vector<std::pair<int, int>>& edges) {
    if (edges.empty())
        throw EmptyInput("empty edge list (the one-vertex tree is Tree::single())");
    int max_id = 0;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0) throw TreeError("negative vertex id in edge list");
        max_id = std::max({max_id, u, v});
    }
    const int n = max_id + 1;
    if (n > max_order())
        throw OrderCapExceeded("tree order " + std::to_string(n) + " exceeds cap " +
                               std::to_string(max_order()));
    std::vector<std::vector<int>> adj(n);
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (auto [u, v] : edges) {
        if (u == v)
            throw CycleDetected("self-loop at vertex " + std::to_string(u));
        if (std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end())
            throw DuplicateEdge("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        int ru = find_root(parent, u), rv = find_root(parent, v);
        if (ru == rv)
            throw CycleDetected("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                ") closes a cycle");
        parent[ru] = rv;
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (int v = 0; v < n; ++v)
        if (find_root(parent, v) != find_root(parent, 0))
            throw Disconnected("vertex " + std::to_string(v) + " not connected to vertex 0");
    return Tree(std::move(adj));
}

std::vector<std::pair<int, int>> Tree::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(n_ > 0 ? n_ - 1 : 0);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::vector<int> leaves(const Tree& t) {
    std::vector<int> out;
    for (int v = 0; v < t.order(); ++v)
        if (t.is_leaf(v)) out.push_back(v);
    return out;
}

int leaf_count(const Tree& t) { return static_cast<int>(leaves(t).size()); }

std::vector<int> center(const Tree& t) {
    const int n = t.order();
    if (n <= 2) {
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        return all;
    }
    std::vector<int> deg(n);
    std::vector<char> removed(n, 0);
    std::vector<int> layer;
    for (int v = 0; v < n; ++v) {
        deg[v] = t.degree(v);
        if (deg[v] == 1) layer.push_back(v);
    }
    int remaining = n;
    while (remaining > 2) {
        remaining -= static_cast<int>(layer.size());
        std::vector<int> next;
        for (int v : layer) {
            removed[v] = 1;
            for (int u : t.neighbors(v))
                if (!removed[u] && --deg[u] == 1) next.push_back(u);
        }
        layer = std::move(next);
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (!removed[v]) out.push_back(v);
    return out;
}

namespace {

std::pair<int, int> bfs_farthest(const Tree& t, int src) {
    std::vector<int> dist(t.order(), -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    int far = src;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (dist[v] > dist[far]) far = v;
        for (int u : t.neighbors(v))
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
    }
    return {far, dist[far]};
}

}  // namespace

int diameter(const Tree& t) {
    auto [u, d0] = bfs_farthest(t, 0);
    (void)d0;
    return bfs_farthest(t, u).second;
}

std::vector<int> twigs(const Tree& t) {
    std::vector<int> out;
    for (int v = 0; v < t.order(); ++v) {
        int d = t.degree(v);
        if (d < 2) continue;
        int leaf_nb = 0;
        for (int u : t.neighbors(v))
            if (t.is_leaf(u)) ++leaf_nb;
        if (leaf_nb >= d - 1) out.push_back(v);
    }
    return out;
}

std::optional<Tree> stem(const Tree& t) {
    std::vector<int> keep;
    for (int v = 0; v < t.order(); ++v)
        if (!t.is_leaf(v)) keep.push_back(v);
    if (keep.empty()) return std::nullopt;
    if (keep.size() == 1) return Tree::single();
    std::vector<int> new_id(t.order(), -1);
    for (size_t i = 0; i < keep.size(); ++i) new_id[keep[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : t.edges())
        if (new_id[u] >= 0 && new_id[v] >= 0) es.emplace_back(new_id[u], new_id[v]);
    return Tree::from_edge_list(es);
}

bool is_path(const Tree& t) {
    for (int v = 0; v < t.order(); ++v)
        if (t.degree(v) > 2) return false;
    return true;
}

bool is_star(const Tree& t) {
    int internal = 0;
    for (int v = 0; v < t.order(); ++v)
        if (t.degree(v) >= 2) ++internal;
    return internal <= 1;
}

bool is_caterpillar(const Tree& t) {
    auto s = stem(t);
    return !s || is_path(*s);
}

bool is_aster(const Tree& t) {
    int big = 0;
    for (int v = 0; v < t.order(); ++v)
        if (t.degree(v) > 2) ++big;
    return big <= 1;
}

bool is_series_reduced(const Tree& t) {
    for (int v = 0; v < t.order(); ++v)
        if (t.degree(v) == 2) return false;
    return true;
}

namespace {

// Walks every limb from its leaf to the first vertex of degree >= 3,
// marking limb vertices and collecting each limb's order at its anchor.
struct LimbWalk {
    std::vector<char> on_limb;
    std::vector<std::vector<int>> anchor_orders;
};

LimbWalk walk_limbs(const Tree& t) {
    const int n = t.order();
    LimbWalk walk{std::vector<char>(n, 0), std::vector<std::vector<int>>(n)};
    for (int leaf = 0; leaf < n; ++leaf) {
        if (!t.is_leaf(leaf)) continue;
        int prev = -1, cur = leaf, count = 0;
        while (t.degree(cur) <= 2) {
            walk.on_limb[cur] = 1;
            ++count;
            int next = -1;
            for (int u : t.neighbors(cur))
                if (u != prev) next = u;
            prev = cur;
            cur = next;
        }
        walk.anchor_orders[cur].push_back(count);
    }
    return walk;
}

}  // namespace

bool is_locally_balanced(const Tree& t) {
    if (is_path(t)) return true;
    for (const auto& orders : walk_limbs(t).anchor_orders) {
        if (orders.empty()) continue;
        auto [lo, hi] = std::minmax_element(orders.begin(), orders.end());
        if (*hi - *lo > 1) return false;
    }
    return true;
}

std::vector<int> all_limb_orders(const Tree& t) {
    if (is_path(t)) return {};
    std::vector<int> out;
    for (const auto& orders : walk_limbs(t).anchor_orders)
        out.insert(out.end(), orders.begin(), orders.end());
    std::sort(out.rbegin(), out.rend());
    return out;
}

Classification classify(const Tree& t) {
    Classification c;
    c.is_path = is_path(t);
    c.is_caterpillar = is_caterpillar(t);
    c.is_aster = is_aster(t);
    c.is_series_reduced = is_series_reduced(t);
    c.is_locally_balanced = is_locally_balanced(t);
    c.leaf_count = leaf_count(t);
    c.twig_count = static_cast<int>(twigs(t).size());
    return c;
}

namespace {

// Iterative post-order assembly; deep paths stay off the call stack. The
// scratch vectors persist across calls and are reset only on the visited
// slots, so a call costs the subtree size, not the tree size.
std::string subtree_code(const Tree& t, int v, int parent) {
    thread_local std::vector<int> par;
    thread_local std::vector<std::string> code;
    if (static_cast<int>(par.size()) < t.order()) {
        par.resize(t.order(), -2);
        code.resize(t.order());
    }
    std::vector<int> order{v};
    par[v] = parent;
    for (std::size_t head = 0; head < order.size(); ++head) {
        int w = order[head];
        for (int u : t.neighbors(w))
            if (u != par[w]) {
                par[u] = w;
                order.push_back(u);
            }
    }
    std::vector<std::string> kids;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int w = *it;
        kids.clear();
        for (int u : t.neighbors(w))
            if (u != par[w]) kids.push_back(std::move(code[u]));
        std::sort(kids.begin(), kids.end());
        std::string out = "(";
        for (auto& k : kids) out += k;
        out += ")";
        code[w] = std::move(out);
    }
    std::string result = std::move(code[v]);
    for (int w : order) {
        par[w] = -2;
        code[w].clear();
    }
    return result;
}

}  // namespace

std::string rooted_code(const Tree& t, int root) { return subtree_code(t, root, -1); }

CanonicalCode canonical_code(const Tree& t) {
    auto c = center(t);
    if (c.size() == 1) return {rooted_code(t, c[0])};
    std::string a = subtree_code(t, c[0], c[1]);
    std::string b = subtree_code(t, c[1], c[0]);
    return {a + b <= b + a ? a + b : b + a};
}

bool is_isomorphic(const Tree& a, const Tree& b) {
    return a.order() == b.order() && canonical_code(a) == canonical_code(b);
}

int LimbProfile::limb_weight(int slot) const {
    int w = 0;
    for (int o : limb_orders.at(slot)) w += o;
    return w;
}

std::vector<int> LimbProfile::degrees() const {
    std::vector<int> out;
    out.reserve(limb_orders.size());
    for (size_t i = 0; i < limb_orders.size(); ++i) out.push_back(limb_degree(static_cast<int>(i)));
    return out;
}

std::vector<int> LimbProfile::weights() const {
    std::vector<int> out;
    out.reserve(limb_orders.size());
    for (size_t i = 0; i < limb_orders.size(); ++i) out.push_back(limb_weight(static_cast<int>(i)));
    return out;
}

int LimbProfile::total_weight() const {
    int w = 0;
    for (size_t i = 0; i < limb_orders.size(); ++i) w += limb_weight(static_cast<int>(i));
    return w;
}

bool LimbProfile::locally_balanced() const {
    for (const auto& orders : limb_orders) {
        if (orders.empty()) continue;
        auto [lo, hi] = std::minmax_element(orders.begin(), orders.end());
        if (*hi - *lo > 1) return false;
    }
    return true;
}

std::vector<std::vector<int>> LimbProfile::orders_by_core_id() const {
    std::vector<std::vector<int>> out(core.order());
    for (size_t slot = 0; slot < theta.size(); ++slot) out[theta[slot]] = limb_orders[slot];
    return out;
}

LimbProfile limb_profile(const Tree& t) {
    if (is_path(t)) throw IsAPath("a path has no core");
    const int n = t.order();
    const LimbWalk walk = walk_limbs(t);
    const std::vector<std::vector<int>>& anchor_orders = walk.anchor_orders;
    std::vector<int> core_vertices;
    for (int v = 0; v < n; ++v)
        if (!walk.on_limb[v]) core_vertices.push_back(v);
    std::vector<int> core_id(n, -1);
    for (size_t i = 0; i < core_vertices.size(); ++i) core_id[core_vertices[i]] = static_cast<int>(i);

    Tree core = [&] {
        if (core_vertices.size() == 1) return Tree::single();
        std::vector<std::pair<int, int>> es;
        for (auto [u, v] : t.edges())
            if (core_id[u] >= 0 && core_id[v] >= 0) es.emplace_back(core_id[u], core_id[v]);
        return Tree::from_edge_list(es);
    }();

    // Canonical root: the center, breaking a two-center tie toward the half
    // with the smaller rooted code (then the smaller id, which only matters
    // for symmetric cores).
    auto cc = center(core);
    int root = cc[0];
    if (cc.size() == 2) {
        std::string a = subtree_code(core, cc[0], cc[1]);
        std::string b = subtree_code(core, cc[1], cc[0]);
        root = a < b ? cc[0] : (b < a ? cc[1] : std::min(cc[0], cc[1]));
    }
    std::vector<int> theta;
    theta.reserve(core.order());
    std::vector<char> seen(core.order(), 0);
    std::queue<int> q;
    q.push(root);
    seen[root] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        theta.push_back(v);
        std::vector<int> fresh;
        for (int u : core.neighbors(v))
            if (!seen[u]) fresh.push_back(u);
        // Codes decide the order only between siblings; chains skip them.
        if (fresh.size() > 1) {
            std::vector<std::pair<std::string, int>> kids;
            kids.reserve(fresh.size());
            for (int u : fresh) kids.emplace_back(subtree_code(core, u, v), u);
            std::sort(kids.begin(), kids.end());
            for (std::size_t i = 0; i < fresh.size(); ++i) fresh[i] = kids[i].second;
        }
        for (int u : fresh) {
            seen[u] = 1;
            q.push(u);
        }
    }

    LimbProfile p{std::move(core), {}, std::move(theta), {}};
    p.source_labels.reserve(core_vertices.size());
    for (int v : core_vertices) p.source_labels.push_back(v);
    p.limb_orders.resize(p.theta.size());
    for (size_t slot = 0; slot < p.theta.size(); ++slot) {
        auto orders = anchor_orders[core_vertices[p.theta[slot]]];
        std::sort(orders.rbegin(), orders.rend());
        p.limb_orders[slot] = std::move(orders);
    }
    return p;
}

Tree core_of(const Tree& t) { return limb_profile(t).core; }

Tree attach_limbs(const Tree& core, const std::vector<std::vector<int>>& limb_orders) {
    if (limb_orders.size() != static_cast<size_t>(core.order()))
        throw std::invalid_argument("limb_orders must have one entry per core vertex");
    std::vector<std::pair<int, int>> es = core.edges();
    int next = core.order();
    for (int v = 0; v < core.order(); ++v) {
        for (int len : limb_orders[v]) {
            if (len < 1) throw std::invalid_argument("limb order must be positive");
            int prev = v;
            for (int i = 0; i < len; ++i) {
                es.emplace_back(prev, next);
                prev = next++;
            }
        }
    }
    if (es.empty()) return Tree::single();
    return Tree::from_edge_list(es);
}

Tree relabel(const Tree& t, const std::vector<int>& perm) {
    if (perm.size() != static_cast<size_t>(t.order()))
        throw std::invalid_argument("permutation size mismatch");
    std::vector<char> hit(t.order(), 0);
    for (int p : perm) {
        if (p < 0 || p >= t.order() || hit[p]) throw std::invalid_argument("not a permutation");
        hit[p] = 1;
    }
    if (t.order() == 1) return Tree::single();
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : t.edges()) es.emplace_back(perm[u], perm[v]);
    return Tree::from_edge_list(es);
}

}  // namespace treelab
