#include "treelab/families.hpp"

#include <gmp.h>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace treelab {
namespace {

Int binom(long n, unsigned long k) {
    if (n < 0) throw InvalidSpec("negative binomial argument");
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), k);
    return r;
}

Int pow2(int k) { return Int(1) << k; }

Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

void append_chain(std::vector<std::pair<int, int>>& edges, int from, int first, int count) {
    int prev = from;
    for (int i = 0; i < count; ++i) {
        edges.push_back({prev, first + i});
        prev = first + i;
    }
}

[[noreturn]] void bad(const std::string& what) { throw InvalidSpec(what); }

}  // namespace

Tree make_path(int n) {
    if (n < 1) bad("path: order must be at least 1");
    if (n == 1) return Tree::single();
    std::vector<std::pair<int, int>> e;
    append_chain(e, 0, 1, n - 1);
    return Tree::from_edge_list(e);
}

Tree make_star(int n) {
    if (n < 1) bad("star: order must be at least 1");
    if (n == 1) return Tree::single();
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) e.push_back({0, i});
    return Tree::from_edge_list(e);
}

Tree make_balanced_aster(int n, int limbs) {
    if (n == 1) {
        if (limbs != 0) bad("aster: a single vertex has no limbs");
        return Tree::single();
    }
    if (n < 1) bad("aster: order must be at least 1");
    if (limbs < 1 || limbs > n - 1) bad("aster: limb count must lie in [1, n-1]");
    int base = (n - 1) / limbs, extra = (n - 1) % limbs;
    std::vector<std::pair<int, int>> e;
    int next = 1;
    for (int i = 0; i < limbs; ++i) {
        int len = base + (i < extra ? 1 : 0);
        append_chain(e, 0, next, len);
        next += len;
    }
    return Tree::from_edge_list(e);
}

Tree make_baton(int s, int t) {
    if (s < 1) bad("baton: each hub needs at least one leaf");
    if (t < 0) bad("baton: interior path order must be non-negative");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < s; ++i) e.push_back({0, 2 + i});
    for (int i = 0; i < s; ++i) e.push_back({1, 2 + s + i});
    if (t == 0) {
        e.push_back({0, 1});
    } else {
        append_chain(e, 0, 2 + 2 * s, t);
        e.push_back({2 + 2 * s + t - 1, 1});
    }
    return Tree::from_edge_list(e);
}

Tree make_dds(int n, int r, int s) {
    if (r < 1 || s < 1) bad("dds: both ends need at least one leaf");
    int interior = n - r - s - 2;
    if (interior < 0) bad("dds: order too small for the requested leaves");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < r; ++i) e.push_back({0, 2 + i});
    for (int i = 0; i < s; ++i) e.push_back({1, 2 + r + i});
    if (interior == 0) {
        e.push_back({0, 1});
    } else {
        append_chain(e, 0, 2 + r + s, interior);
        e.push_back({n - 1, 1});
    }
    return Tree::from_edge_list(e);
}

Tree make_bridge(int s, int t) {
    if (s < 1) bad("bridge: arm length must be at least 1");
    if (t < 0) bad("bridge: interior path order must be non-negative");
    std::vector<std::pair<int, int>> e;
    append_chain(e, 0, 2, s);
    append_chain(e, 0, 2 + s, s);
    append_chain(e, 1, 2 + 2 * s, s);
    append_chain(e, 1, 2 + 3 * s, s);
    if (t == 0) {
        e.push_back({0, 1});
    } else {
        append_chain(e, 0, 2 + 4 * s, t);
        e.push_back({2 + 4 * s + t - 1, 1});
    }
    return Tree::from_edge_list(e);
}

Tree make_stickman(int p, int q, int attach_p, int attach_q, int interior) {
    if (p < 3 || q < 3) bad("stickman: both end paths need order at least 3");
    if (attach_p < 2 || attach_p > p - 1) bad("stickman: attachment on the first path must be internal");
    if (attach_q < 2 || attach_q > q - 1) bad("stickman: attachment on the second path must be internal");
    if (interior < 0) bad("stickman: interior path order must be non-negative");
    std::vector<std::pair<int, int>> e;
    append_chain(e, 0, 1, p - 1);
    append_chain(e, p, p + 1, q - 1);
    int a = attach_p - 1, b = p + attach_q - 1;
    if (interior == 0) {
        e.push_back({a, b});
    } else {
        append_chain(e, a, p + q, interior);
        e.push_back({p + q + interior - 1, b});
    }
    return Tree::from_edge_list(e);
}

Tree make_glued(const Tree& q, int v, int path_len, int position) {
    if (path_len < 1) bad("glued: path order must be at least 1");
    if (position < 1 || position > path_len) bad("glued: position must lie in [1, path_len]");
    if (v < 0 || v >= q.order()) bad("glued: root vertex out of range");
    if (q.order() == 1) return make_path(path_len);
    std::vector<std::pair<int, int>> e;
    append_chain(e, 0, 1, path_len - 1);
    std::vector<int> remap(q.order());
    int next = path_len;
    for (int u = 0; u < q.order(); ++u) remap[u] = (u == v) ? position - 1 : next++;
    for (auto [a, b] : q.edges()) e.push_back({remap[a], remap[b]});
    return Tree::from_edge_list(e);
}

Tree make_caterpillar(const std::vector<int>& leaves_per_spine) {
    if (leaves_per_spine.empty()) bad("caterpillar: spine must be non-empty");
    for (int c : leaves_per_spine)
        if (c < 0) bad("caterpillar: leaf counts must be non-negative");
    int k = static_cast<int>(leaves_per_spine.size());
    if (k == 1 && leaves_per_spine[0] == 0) return Tree::single();
    std::vector<std::pair<int, int>> e;
    append_chain(e, 0, 1, k - 1);
    int next = k;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < leaves_per_spine[i]; ++j) e.push_back({i, next++});
    return Tree::from_edge_list(e);
}

Tree build(const FamilySpec& spec) {
    return std::visit(
        [](const auto& s) -> Tree {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PathSpec>) return make_path(s.n);
            if constexpr (std::is_same_v<T, StarSpec>) return make_star(s.n);
            if constexpr (std::is_same_v<T, BalancedAsterSpec>) return make_balanced_aster(s.n, s.limbs);
            if constexpr (std::is_same_v<T, BatonSpec>) return make_baton(s.s, s.t);
            if constexpr (std::is_same_v<T, DdsSpec>) {
                if (s.n - s.r - s.s - 2 < 1) bad("dds: interior path order must be at least 1");
                return make_dds(s.n, s.r, s.s);
            }
            if constexpr (std::is_same_v<T, BridgeSpec>) return make_bridge(s.s, s.t);
            if constexpr (std::is_same_v<T, StickmanSpec>)
                return make_stickman(s.p, s.q, s.attach_p, s.attach_q, s.interior);
            if constexpr (std::is_same_v<T, GluedSpec>)
                return make_glued(s.q, s.v, s.path_len, s.position);
            if constexpr (std::is_same_v<T, CaterpillarSpec>)
                return make_caterpillar(s.leaves_per_spine);
        },
        spec);
}

int spec_order(const FamilySpec& spec) {
    return std::visit(
        [](const auto& s) -> int {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PathSpec>) return s.n;
            if constexpr (std::is_same_v<T, StarSpec>) return s.n;
            if constexpr (std::is_same_v<T, BalancedAsterSpec>) return s.n;
            if constexpr (std::is_same_v<T, BatonSpec>) return 2 * s.s + s.t + 2;
            if constexpr (std::is_same_v<T, DdsSpec>) return s.n;
            if constexpr (std::is_same_v<T, BridgeSpec>) return 4 * s.s + s.t + 2;
            if constexpr (std::is_same_v<T, StickmanSpec>) return s.p + s.q + s.interior;
            if constexpr (std::is_same_v<T, GluedSpec>) return s.path_len + s.q.order() - 1;
            if constexpr (std::is_same_v<T, CaterpillarSpec>)
                return static_cast<int>(s.leaves_per_spine.size()) +
                       std::accumulate(s.leaves_per_spine.begin(), s.leaves_per_spine.end(), 0);
        },
        spec);
}

std::string spec_name(const FamilySpec& spec) {
    switch (spec.index()) {
        case 0: return "path";
        case 1: return "star";
        case 2: return "aster";
        case 3: return "baton";
        case 4: return "dds";
        case 5: return "bridge";
        case 6: return "stickman";
        case 7: return "glued";
        default: return "caterpillar";
    }
}

namespace {

int parse_int(const std::string& s) {
    std::size_t used = 0;
    int v;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        bad("family spec: expected an integer, got '" + s + "'");
    }
    if (used != s.size()) bad("family spec: trailing characters in integer '" + s + "'");
    return v;
}

std::vector<std::pair<std::string, int>> parse_kv(const std::string& body) {
    std::vector<std::pair<std::string, int>> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) bad("family spec: expected key=value, got '" + item + "'");
        out.push_back({item.substr(0, eq), parse_int(item.substr(eq + 1))});
    }
    return out;
}

int take(std::vector<std::pair<std::string, int>>& kv, const std::string& key) {
    for (auto it = kv.begin(); it != kv.end(); ++it)
        if (it->first == key) {
            int v = it->second;
            kv.erase(it);
            return v;
        }
    bad("family spec: missing parameter '" + key + "'");
}

}  // namespace

FamilySpec parse_family_spec(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) bad("family spec: expected 'name:params', got '" + text + "'");
    std::string name = text.substr(0, colon), body = text.substr(colon + 1);

    if (name == "path") return PathSpec{parse_int(body)};
    if (name == "star") return StarSpec{parse_int(body)};
    if (name == "caterpillar") {
        std::vector<int> counts;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, '.')) counts.push_back(parse_int(item));
        if (counts.empty()) bad("family spec: caterpillar needs at least one spine count");
        return CaterpillarSpec{std::move(counts)};
    }

    auto kv = parse_kv(body);
    auto done = [&kv, &text] {
        if (!kv.empty()) bad("family spec: unknown parameter '" + kv.front().first + "' in '" + text + "'");
    };
    if (name == "aster") {
        int n = take(kv, "n"), l = take(kv, "l");
        done();
        return BalancedAsterSpec{n, l};
    }
    if (name == "baton") {
        int s = take(kv, "s"), t = take(kv, "t");
        done();
        return BatonSpec{s, t};
    }
    if (name == "dds") {
        int n = take(kv, "n"), r = take(kv, "r"), s = take(kv, "s");
        done();
        return DdsSpec{n, r, s};
    }
    if (name == "bridge") {
        int s = take(kv, "s"), t = take(kv, "t");
        done();
        return BridgeSpec{s, t};
    }
    if (name == "stickman") {
        int p = take(kv, "p"), q = take(kv, "q");
        int ap = take(kv, "ap"), aq = take(kv, "aq"), h = take(kv, "h");
        done();
        return StickmanSpec{p, q, ap, aq, h};
    }
    if (name == "glued") bad("family spec: glued carries a tree argument and has no string form");
    bad("family spec: unknown family '" + name + "'");
}

Rational ClosedFormCounts::mean() const {
    Rational m(total, count);
    m.canonicalize();
    return m;
}

ClosedFormCounts path_counts(int n) {
    if (n < 1) bad("path: order must be at least 1");
    return {binom(n + 1, 2), binom(n + 2, 3), std::nullopt};
}

ClosedFormCounts path_local_counts(int n, int s) {
    if (n < 1) bad("path: order must be at least 1");
    if (s < 1 || s > n) bad("path: position must lie in [1, n]");
    Int count = Int(s) * (n - s + 1);
    Int total = count * (n + 1) / 2;
    return {std::move(count), std::move(total), std::nullopt};
}

ClosedFormCounts dds_counts(int n, int m, int s) {
    if (m < 1) bad("dds census: m must be at least 1");
    if (s < 1 || s > 2 * m - 1) bad("dds census: s must lie in [1, 2m-1]");
    if (n < 2 * m + 2) bad("dds census: order must be at least 2m+2");
    Int a = 2 * m + binom(n - 2 * m - 1, 2) + pow2(2 * m);
    Int a_bar = 2 * m + binom(n - 2 * m, 3) + Int(n - m) * pow2(2 * m);
    Int b = Int(n - 2 * m - 1) * (pow2(s) + pow2(2 * m - s));
    Int b_bar =
        Int(n - 2 * m - 1) * (Int(n - 2 * m + s) * pow2(s) + Int(n - s) * pow2(2 * m - s)) / 2;
    ClosedFormCounts out{a + b, a_bar + b_bar, CensusBreakdown{a, a_bar, b, b_bar}};
    return out;
}

ClosedFormCounts baton_counts(int n, int s) {
    if (s < 1) bad("baton: each hub needs at least one leaf");
    if (n < 2 * s + 2) bad("baton: order must be at least 2s+2");
    Int count = 2 * s + binom(n - 2 * s - 1, 2) + 2 * Int(n - 2 * s - 1) * pow2(s) + pow2(2 * s);
    Int total = 2 * s + binom(n - 2 * s, 3) + Int(n - 2 * s - 1) * (n - s) * pow2(s) +
                Int(n - s) * pow2(2 * s);
    return {std::move(count), std::move(total), std::nullopt};
}

ClosedFormCounts bridge_counts(int s, int t) {
    if (s < 1) bad("bridge: arm length must be at least 1");
    if (t < 0) bad("bridge: interior path order must be non-negative");
    Int sq = Int(s + 1) * (s + 1);
    Int count = 4 * binom(s + 1, 2) + binom(t + 1, 2) + 2 * sq * (t + 1) + sq * sq;
    Int total = 4 * binom(s + 2, 3) + binom(t + 2, 3) + Int(2 * s + t + 2) * sq * ((t + 1) + sq);
    return {std::move(count), std::move(total), std::nullopt};
}

Int baton_difference(int n, int s) {
    if (s < 1 || n < 2 * (s + 1) + 2) bad("baton difference: need order at least 2s+4");
    ClosedFormCounts lo = baton_counts(n, s), hi = baton_counts(n, s + 1);
    return hi.total * lo.count - lo.total * hi.count;
}

Int bridge_difference_up(int n, int s) {
    if (s < 1 || n < 4 * (s + 1)) bad("bridge difference: need n at least 4s+4");
    ClosedFormCounts lo = bridge_counts(s, n - 4 * s), hi = bridge_counts(s + 1, n - 4 * (s + 1));
    return hi.total * lo.count - lo.total * hi.count;
}

Int bridge_difference_down(int n, int s) {
    if (s < 2 || n < 4 * s) bad("bridge difference: need s at least 2 and n at least 4s");
    ClosedFormCounts at = bridge_counts(s, n - 4 * s), down = bridge_counts(s - 1, n - 4 * (s - 1));
    return down.total * at.count - at.total * down.count;
}

Int dds_difference(int n, int m, int s) {
    ClosedFormCounts balanced = dds_counts(n, m, m), skew = dds_counts(n, m, s);
    return balanced.total * skew.count - skew.total * balanced.count;
}

namespace {

DiffCoeffs baton_f_coeffs(long s) {
    Rational p(pow2(static_cast<int>(s)));
    Rational p2 = p * p, p3 = p2 * p, p4 = p3 * p;
    DiffCoeffs c;
    c.c4 = frac(1, 6) * p - frac(1, 6);
    c.c3 = p2 - frac(5 * s + 14, 6) * p + frac(4, 3) * Rational(s + 1);
    c.c2 = 2 * p3 - frac(9 * s + 16, 2) * p2 + frac(6 * s * s + 84 * s + 59, 6) * p -
           frac(24 * s * s + 60 * s + 23, 6);
    c.c1 = Rational(6 * s + 8) * p3 - frac(12 * s * s + 71 * s + 42, 2) * p2 -
           frac(4 * s * s * s - 156 * s * s - 347 * s - 106, 6) * p -
           frac(16 * s * s * s + 72 * s * s + 82 * s + 14, 3);
    c.c0 = 4 * p4 - Rational(4 * s * s + 18 * s + 14) * p3 +
           Rational(2 * s * s * s + 33 * s * s + 60 * s + 18) * p2 +
           frac(4 * s * s * s * s - 44 * s * s * s - 199 * s * s - 208 * s - 30, 3) * p +
           frac(8 * s * s * s * s + 56 * s * s * s + 118 * s * s + 82 * s + 6, 3);
    return c;
}

DiffCoeffs bridge_g_coeffs(int s) {
    Rational s1{Int(s)};
    Rational s2 = s1 * s1, s3 = s2 * s1, s4 = s3 * s1, s5 = s4 * s1, s6 = s5 * s1;
    Rational s7 = s6 * s1, s8 = s7 * s1;
    DiffCoeffs c;
    c.c4 = s1 / 3 + frac(1, 6);
    c.c3 = frac(4, 3) * s3 + s2 + frac(11, 3) * s1 + frac(5, 3);
    c.c2 = 2 * s5 + 2 * s3 - 6 * s2 + frac(17, 3) * s1 + frac(23, 6);
    c.c1 = 14 * s6 + 40 * s5 + 66 * s4 + frac(160, 3) * s3 + 57 * s2 + frac(59, 3) * s1 + frac(5, 3);
    c.c0 = 2 * s8 - 8 * s7 - 32 * s6 - 28 * s5 + 32 * s4 + 64 * s3 + 76 * s2 + 38 * s1 + 8;
    return c;
}

DiffCoeffs bridge_h_coeffs(int s) {
    Rational s1{Int(s)};
    Rational s2 = s1 * s1, s3 = s2 * s1, s4 = s3 * s1, s5 = s4 * s1, s6 = s5 * s1;
    Rational s7 = s6 * s1, s8 = s7 * s1;
    DiffCoeffs c;
    c.c0 = 2 * s8 - 24 * s7 + 80 * s6 - 116 * s5 + 112 * s4 - 96 * s3 + 100 * s2 - 70 * s1 + 20;
    c.c1 = 14 * s6 - 44 * s5 + 76 * s4 - frac(272, 3) * s3 + 103 * s2 - frac(247, 3) * s1 +
           frac(77, 3);
    c.c2 = 2 * s5 - 10 * s4 + 22 * s3 - 32 * s2 + frac(101, 3) * s1 - frac(71, 6);
    c.c3 = frac(4, 3) * s3 - 3 * s2 + frac(17, 3) * s1 - frac(7, 3);
    c.c4 = s1 / 3 - frac(1, 6);
    return c;
}

}  // namespace

DiffCoeffs difference_coefficients(DifferenceFamily family, int s) {
    if (s < 1) bad("difference coefficients: s must be at least 1");
    switch (family) {
        case DifferenceFamily::BatonF: return baton_f_coeffs(s);
        case DifferenceFamily::BridgeG: return bridge_g_coeffs(s);
        case DifferenceFamily::BridgeH: return bridge_h_coeffs(s);
        case DifferenceFamily::DdsH: break;
    }
    bad("difference coefficients: the balanced-vs-skew difference has no quartic form; use dds_difference_factor");
}

Rational evaluate_difference(DifferenceFamily family, int n, int s) {
    DiffCoeffs c = difference_coefficients(family, s);
    Rational nn{Int(n)};
    Rational n2 = nn * nn, n3 = n2 * nn, n4 = n3 * nn;
    if (family == DifferenceFamily::BridgeH)
        return c.c0 + c.c1 * nn - c.c2 * n2 - c.c3 * n3 - c.c4 * n4;
    return c.c4 * n4 + c.c3 * n3 + c.c2 * n2 - c.c1 * nn - c.c0;
}

Rational dds_difference_factor(int n, int m, int s) {
    if (m < 2 || s < 1 || s > m - 1) bad("dds factor: s must lie in [1, m-1]");
    if (n < 2 * m + 2) bad("dds factor: order must be at least 2m+2");
    CensusBreakdown cb = *dds_counts(n, m, s).breakdown;
    Rational pm(pow2(m)), ps(pow2(s));
    Rational gap = pm - ps;
    Rational bracket = Rational(Int(n - s)) + 2 * (m - s) * ps / gap;
    Int tail = Int(n - 2 * m - 1) * (m - s);
    return Rational(cb.a_bar) - frac(1, 2) * bracket * Rational(cb.a) -
           Rational(tail) * (pm + ps) / gap * pm;
}

CoefficientBoundReport check_coefficient_bounds(int s_max) {
    CoefficientBoundReport report;
    report.s_max = s_max;
    report.c3_at_s1 = baton_f_coeffs(1).c3;
    for (int s = 1; s <= s_max; ++s) {
        DiffCoeffs c = baton_f_coeffs(s);
        Rational p(pow2(s)), p2 = p * p, p3 = p2 * p, p4 = p3 * p;
        auto item = [&](int id, bool holds) {
            if (!holds) report.violations.push_back({id, s});
        };
        item(1, c.c4 < frac(1, 6) * p);
        item(2, c.c3 < p2);
        item(3, c.c2 < 2 * p3);
        item(4, c.c1 < Rational(6 * s + 8) * p3);
        item(5, c.c0 < 4 * p4);
        item(6, c.c4 > 0);
        if (s >= 2) item(7, c.c3 > 0);
        if (s >= 7) item(8, c.c2 > frac(5, 3) * p3);
        if (s >= 5) item(9, c.c1 > 0);
        if (s >= 10) item(10, c.c0 > frac(19, 6) * p4);
    }
    report.all_hold = report.violations.empty();
    return report;
}

}  // namespace treelab
