#include "treelab/poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace treelab {
namespace {

using Poly = std::vector<Int>;

Poly convolve(const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

void add_into(Poly& acc, const Poly& p) {
    if (acc.size() < p.size()) acc.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += p[i];
}

// Vertices in BFS order from root, plus the parent of each vertex (-1 at the
// root). Processing the order in reverse visits children before parents.
struct Rooting {
    std::vector<int> order, parent;
};

Rooting root_at(const Tree& t, int root) {
    Rooting r;
    r.parent.assign(t.order(), -1);
    r.order.reserve(t.order());
    r.order.push_back(root);
    r.parent[root] = root;
    for (std::size_t head = 0; head < r.order.size(); ++head) {
        int v = r.order[head];
        for (int u : t.neighbors(v))
            if (r.parent[u] == -1) {
                r.parent[u] = v;
                r.order.push_back(u);
            }
    }
    r.parent[root] = -1;
    return r;
}

// g[v] = x * prod over children (1 + g[child]), for the given rooting.
std::vector<Poly> rooted_polys(const Tree& t, const Rooting& r) {
    std::vector<Poly> g(t.order());
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
        int v = *it;
        Poly prod{1};
        for (int u : t.neighbors(v)) {
            if (u == r.parent[v]) continue;
            Poly child = g[u];
            child[0] += 1;
            prod = convolve(prod, child);
        }
        Poly& gv = g[v];
        gv.assign(prod.size() + 1, 0);
        for (std::size_t i = 0; i < prod.size(); ++i) gv[i + 1] = prod[i];
    }
    return g;
}

Int exact_div(const Int& num, const Int& den) {
    Int q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

void check_vertex(const Tree& t, int v) {
    if (v < 0 || v >= t.order()) throw std::invalid_argument("vertex id out of range");
}

}  // namespace

Int SubtreePoly::value_at_one() const {
    Int s = 0;
    for (const Int& c : a) s += c;
    return s;
}

Int SubtreePoly::derivative_at_one() const {
    Int s = 0;
    for (std::size_t k = 1; k < a.size(); ++k) s += Int(k) * a[k];
    return s;
}

SubtreePoly subtree_polynomial(const Tree& t) {
    Rooting r = root_at(t, 0);
    std::vector<Poly> g = rooted_polys(t, r);
    Poly phi;
    for (const Poly& gv : g) add_into(phi, gv);
    phi.resize(t.order() + 1, 0);
    return SubtreePoly{PolyKind::Global, -1, std::move(phi)};
}

SubtreePoly local_subtree_polynomial(const Tree& t, int v) {
    check_vertex(t, v);
    Rooting r = root_at(t, v);
    Poly gv = rooted_polys(t, r)[v];
    gv.resize(t.order() + 1, 0);
    return SubtreePoly{PolyKind::Local, v, std::move(gv)};
}

CountTotal subtree_count_total(const Tree& t) {
    Rooting r = root_at(t, 0);
    int n = t.order();
    std::vector<Int> c(n), w(n);
    CountTotal out{0, 0};
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
        int v = *it;
        c[v] = 1;
        for (int u : t.neighbors(v))
            if (u != r.parent[v]) c[v] *= 1 + c[u];
        w[v] = c[v];
        for (int u : t.neighbors(v))
            if (u != r.parent[v]) w[v] += w[u] * exact_div(c[v], 1 + c[u]);
        out.count += c[v];
        out.total += w[v];
    }
    return out;
}

std::vector<CountTotal> local_count_totals(const Tree& t) {
    int n = t.order();
    Rooting r = root_at(t, 0);

    // f_in[v][i], g_in[v][i]: subtree count and total order in the component
    // of neighbors(v)[i] after removing the edge to v, over subtrees that
    // contain that neighbor.
    std::vector<std::vector<Int>> f_in(n), g_in(n);
    auto slot = [&](int v, int u) {
        const auto& nb = t.neighbors(v);
        return std::lower_bound(nb.begin(), nb.end(), u) - nb.begin();
    };
    for (int v = 0; v < n; ++v) {
        f_in[v].assign(t.neighbors(v).size(), 0);
        g_in[v].assign(t.neighbors(v).size(), 0);
    }

    std::vector<Int> c(n), w(n);
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
        int v = *it;
        c[v] = 1;
        for (int u : t.neighbors(v))
            if (u != r.parent[v]) c[v] *= 1 + c[u];
        w[v] = c[v];
        for (int u : t.neighbors(v))
            if (u != r.parent[v]) w[v] += w[u] * exact_div(c[v], 1 + c[u]);
        if (r.parent[v] != -1) {
            int p = r.parent[v];
            f_in[p][slot(p, v)] = c[v];
            g_in[p][slot(p, v)] = w[v];
        }
    }

    // Top-down: by the time v is processed its parent-side entry is filled,
    // so K_v spans all neighbors and the values for each child follow by
    // exact division.
    for (int v : r.order) {
        const auto& nb = t.neighbors(v);
        Int kv = 1;
        for (const Int& f : f_in[v]) kv *= 1 + f;
        for (std::size_t i = 0; i < nb.size(); ++i) {
            int u = nb[i];
            if (u == r.parent[v]) continue;
            Int f_down = exact_div(kv, 1 + f_in[v][i]);
            Int g_down = f_down;
            for (std::size_t j = 0; j < nb.size(); ++j) {
                if (j == i || g_in[v][j] == 0) continue;
                g_down += g_in[v][j] * exact_div(f_down, 1 + f_in[v][j]);
            }
            f_in[u][slot(u, v)] = std::move(f_down);
            g_in[u][slot(u, v)] = std::move(g_down);
        }
    }

    std::vector<CountTotal> out(n);
    for (int v = 0; v < n; ++v) {
        Int kv = 1;
        for (const Int& f : f_in[v]) kv *= 1 + f;
        Int total = kv;
        for (std::size_t i = 0; i < f_in[v].size(); ++i)
            if (g_in[v][i] != 0) total += g_in[v][i] * exact_div(kv, 1 + f_in[v][i]);
        out[v] = CountTotal{std::move(kv), std::move(total)};
    }
    return out;
}

int compare_means(const CountTotal& a, const CountTotal& b) {
    Int lhs = a.total * b.count;
    Int rhs = b.total * a.count;
    return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

Rational mean_of(const CountTotal& ct) {
    Rational q(ct.total, ct.count);
    q.canonicalize();
    return q;
}

Rational mean(const Tree& t) { return mean_of(subtree_count_total(t)); }

Rational local_mean(const Tree& t, int v) {
    check_vertex(t, v);
    Rooting r = root_at(t, v);
    int n = t.order();
    std::vector<Int> c(n), w(n);
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
        int x = *it;
        c[x] = 1;
        for (int u : t.neighbors(x))
            if (u != r.parent[x]) c[x] *= 1 + c[u];
        w[x] = c[x];
        for (int u : t.neighbors(x))
            if (u != r.parent[x]) w[x] += w[u] * exact_div(c[x], 1 + c[u]);
    }
    return mean_of(CountTotal{c[v], w[v]});
}

Rational density(const Tree& t) {
    Rational d = mean(t) / t.order();
    d.canonicalize();
    return d;
}

std::pair<Tree, int> contract(const Tree& t, const std::vector<int>& h) {
    if (h.empty()) throw std::invalid_argument("contract: empty vertex set");
    std::vector<char> in_h(t.order(), 0);
    for (int v : h) {
        check_vertex(t, v);
        if (in_h[v]) throw std::invalid_argument("contract: duplicate vertex in set");
        in_h[v] = 1;
    }

    // The induced subgraph must be connected for the contraction to be a tree.
    std::vector<int> stack{h[0]};
    std::vector<char> seen(t.order(), 0);
    seen[h[0]] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : t.neighbors(v))
            if (in_h[u] && !seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
    }
    if (reached != h.size()) throw NotConnected("contract: vertex set does not induce a connected subgraph");

    int rep = *std::min_element(h.begin(), h.end());
    std::vector<int> dense(t.order(), -1);
    int next = 0;
    for (int v = 0; v < t.order(); ++v)
        if (!in_h[v] || v == rep) dense[v] = next++;
    auto mapped = [&](int v) { return in_h[v] ? dense[rep] : dense[v]; };

    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : t.edges()) {
        if (in_h[u] && in_h[v]) continue;
        edges.push_back({mapped(u), mapped(v)});
    }
    if (edges.empty()) return {Tree::single(), 0};
    return {Tree::from_edge_list(edges), dense[rep]};
}

Rational mean_containing(const Tree& t, const std::vector<int>& h) {
    auto [contracted, rep] = contract(t, h);
    Rational m = local_mean(contracted, rep) + Rational(static_cast<int>(h.size()) - 1);
    m.canonicalize();
    return m;
}

namespace {

// Connected-subgraph enumeration rooted at the minimum vertex: extension
// candidates are consumed left to right, and picking one permanently bans the
// candidates before it in that branch, so every subset is produced once.
void extend_subsets(const Tree& t, int root, std::vector<char>& state, int size,
                    const std::vector<int>& ext, std::vector<Int>& a) {
    a[size] += 1;
    for (std::size_t i = 0; i < ext.size(); ++i) {
        int v = ext[i];
        state[v] = 1;
        std::vector<int> next(ext.begin() + i + 1, ext.end());
        std::vector<int> fresh;
        for (int u : t.neighbors(v))
            if (u > root && state[u] == 0) {
                state[u] = 2;
                fresh.push_back(u);
                next.push_back(u);
            }
        extend_subsets(t, root, state, size + 1, next, a);
        for (int u : fresh) state[u] = 0;
        state[v] = 3;  // banned for the rest of this branch
    }
    for (int v : ext)
        if (state[v] == 3) state[v] = 2;
}

}  // namespace

SubtreePoly brute_force_polynomial(const Tree& t, std::uint64_t cap) {
    Int estimate = subtree_count_total(t).count;
    if (estimate > Int(static_cast<unsigned long>(cap)))
        throw CapExceeded("brute force refused: " + estimate.get_str() + " subtrees exceeds cap " +
                          std::to_string(cap));

    int n = t.order();
    std::vector<Int> a(n + 1, 0);
    // state: 0 untouched, 1 in subset, 2 queued as candidate, 3 banned
    std::vector<char> state(n, 0);
    for (int root = 0; root < n; ++root) {
        std::fill(state.begin(), state.end(), 0);
        state[root] = 1;
        std::vector<int> ext;
        for (int u : t.neighbors(root))
            if (u > root) {
                state[u] = 2;
                ext.push_back(u);
            }
        extend_subsets(t, root, state, 1, ext, a);
    }
    return SubtreePoly{PolyKind::Global, -1, std::move(a)};
}

SubtreePoly glue_polynomials(const SubtreePoly& p_global, const SubtreePoly& p_local,
                             const SubtreePoly& q_global, const SubtreePoly& q_local) {
    if (p_global.order() != p_local.order() || q_global.order() != q_local.order())
        throw std::invalid_argument("glue: global/local polynomial orders disagree");
    if (p_global.order() < 1 || q_global.order() < 1)
        throw std::invalid_argument("glue: polynomials must have positive order");

    Poly prod = convolve(p_local.a, q_local.a);
    if (prod[0] != 0 || (prod.size() > 1 && prod[1] != 0))
        throw DivisibilityViolated("glue: local product not divisible by x with zero remainder");

    int n = p_global.order() + q_global.order() - 1;
    Poly out(n + 1, 0);
    for (std::size_t k = 2; k < prod.size(); ++k) out[k - 1] += prod[k];
    for (int k = 0; k <= p_global.order(); ++k) out[k] += p_global.a[k] - p_local.a[k];
    for (int k = 0; k <= q_global.order(); ++k) out[k] += q_global.a[k] - q_local.a[k];
    return SubtreePoly{PolyKind::Global, -1, std::move(out)};
}

CountTotal64 subtree_count_total_small(const Tree& t) {
    if (t.order() > 32) throw CapExceeded("fixed-width count requires order <= 32");
    Rooting r = root_at(t, 0);
    int n = t.order();
    std::vector<std::int64_t> c(n), w(n);
    CountTotal64 out;
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
        int v = *it;
        std::int64_t cv = 1;
        for (int u : t.neighbors(v))
            if (u != r.parent[v]) cv *= 1 + c[u];
        std::int64_t wv = cv;
        for (int u : t.neighbors(v))
            if (u != r.parent[v]) wv += w[u] * (cv / (1 + c[u]));
        c[v] = cv;
        w[v] = wv;
        out.count += cv;
        out.total += wv;
    }
    return out;
}

int compare_means(const CountTotal64& a, const CountTotal64& b) {
    __int128 lhs = static_cast<__int128>(a.total) * b.count;
    __int128 rhs = static_cast<__int128>(b.total) * a.count;
    return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

std::string to_decimal_string(const Rational& q, int places) {
    if (places < 0) throw std::invalid_argument("negative decimal places");
    Int num = q.get_num(), den = q.get_den();
    if (den < 0) {
        den = -den;
        num = -num;
    }
    bool negative = num < 0;
    if (negative) num = -num;

    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    Int shifted = num * scale;
    Int digits = shifted / den;
    Int rem = shifted - digits * den;
    int c = cmp(2 * rem, den);
    if (c > 0 || (c == 0 && mpz_odd_p(digits.get_mpz_t())))
        digits += 1;

    Int ip = digits / scale;
    Int frac = digits - ip * scale;
    std::string out = ip.get_str();
    if (places > 0) {
        std::string f = frac.get_str();
        out += "." + std::string(places - f.size(), '0') + f;
    }
    if (negative && digits != 0) out.insert(out.begin(), '-');
    return out;
}

}  // namespace treelab
