#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "treelab/families.hpp"
#include "treelab/lab.hpp"

namespace treelab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Temporarily lifts the order cap while the library builds winner trees of
// a closed-form family; restored on scope exit.
struct CapRaise {
    int saved;
    explicit CapRaise(int need) : saved(max_order()) {
        if (need > saved) set_max_order(need);
    }
    ~CapRaise() { set_max_order(saved); }
};

Rational ratio(const Int& num, const Int& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

void sort_winners(std::vector<WinnerInfo>& winners) {
    std::sort(winners.begin(), winners.end(),
              [](const WinnerInfo& a, const WinnerInfo& b) { return a.code < b.code; });
}

std::optional<Rational> max_rational(const std::optional<Rational>& a,
                                     const std::optional<Rational>& b) {
    if (!a) return b;
    if (!b) return a;
    return cmp(*a, *b) >= 0 ? a : b;
}

int compare_counts(const ClosedFormCounts& a, const ClosedFormCounts& b) {
    Int lhs = a.total * b.count;
    Int rhs = b.total * a.count;
    return cmp(lhs, rhs) > 0 ? 1 : (cmp(lhs, rhs) < 0 ? -1 : 0);
}

ClosedFormArgmax scan_means(int s_lo, int s_hi,
                            const std::function<ClosedFormCounts(int)>& counts_at) {
    ClosedFormArgmax am;
    std::optional<ClosedFormCounts> best, runner;
    for (int s = s_lo; s <= s_hi; ++s) {
        ClosedFormCounts ct = counts_at(s);
        ++am.examined;
        if (!best) {
            best = ct;
            am.s = {s};
            continue;
        }
        int c = compare_counts(ct, *best);
        if (c > 0) {
            runner = best;
            best = ct;
            am.s = {s};
        } else if (c == 0) {
            am.s.push_back(s);
        } else if (!runner || compare_counts(ct, *runner) > 0) {
            runner = ct;
        }
    }
    if (!best) throw InvalidSpec("empty scan range");
    am.mean_value = best->mean();
    if (runner) am.runner_up = runner->mean();
    return am;
}

// Report skeleton for a closed-form scan: winners are built explicitly (the
// only trees this path ever constructs), everything else copies over.
SearchReport report_from_scan(Family family, int n, const ClosedFormArgmax& am,
                              const std::function<Tree(int)>& build_winner) {
    SearchReport rep;
    rep.family = family_name(family);
    rep.n = n;
    rep.examined = am.examined;
    rep.mean_value = am.mean_value;
    rep.runner_up = am.runner_up;
    rep.params.emplace_back("scan", "closed-form");
    CapRaise guard(n);
    for (int s : am.s) rep.argmax.push_back(describe_winner(build_winner(s)));
    sort_winners(rep.argmax);
    return rep;
}

struct Counts64 {
    std::int64_t count = 0, total = 0;
};

int compare_counts64(const Counts64& a, const Counts64& b) {
    __int128 lhs = static_cast<__int128>(a.total) * b.count;
    __int128 rhs = static_cast<__int128>(b.total) * a.count;
    return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

std::int64_t choose2(std::int64_t m) { return m * (m - 1) / 2; }
std::int64_t choose3(std::int64_t m) { return m * (m - 1) * (m - 2) / 6; }

Counts64 bridge_counts64(std::int64_t s, std::int64_t t) {
    std::int64_t sp = s + 1, tp = t + 1;
    std::int64_t sp2 = sp * sp;
    Counts64 ct;
    ct.count = 4 * choose2(sp) + choose2(tp) + 2 * sp2 * tp + sp2 * sp2;
    ct.total = 4 * choose3(sp + 1) + choose3(tp + 1) + (2 * s + t + 2) * sp2 * (tp + sp2);
    return ct;
}

}  // namespace

WinnerInfo describe_winner(const Tree& t) {
    WinnerInfo w;
    w.code = canonical_code(t);
    w.edges = t.edges();
    w.shape = classify(t);
    w.stats = subtree_count_total(t);
    w.limb_orders = all_limb_orders(t);
    return w;
}

SearchReport optimal_stream(TreeStream stream) {
    const auto t0 = Clock::now();
    SearchReport rep;
    rep.family = family_name(stream.family());
    rep.n = stream.order();
    std::vector<Tree> argmax;

    if (stream.order() <= 32) {
        CountTotal64 best{};
        std::optional<CountTotal64> runner;
        while (auto t = stream.next()) {
            CountTotal64 ct = subtree_count_total_small(*t);
            if (argmax.empty()) {
                best = ct;
                argmax.push_back(std::move(*t));
                continue;
            }
            int c = compare_means(ct, best);
            if (c > 0) {
                runner = best;
                best = ct;
                argmax.clear();
                argmax.push_back(std::move(*t));
            } else if (c == 0) {
                argmax.push_back(std::move(*t));
            } else if (!runner || compare_means(ct, *runner) > 0) {
                runner = ct;
            }
        }
        if (!argmax.empty()) rep.mean_value = ratio(Int(best.total), Int(best.count));
        if (runner) rep.runner_up = ratio(Int(runner->total), Int(runner->count));
    } else {
        CountTotal best{};
        std::optional<CountTotal> runner;
        while (auto t = stream.next()) {
            CountTotal ct = subtree_count_total(*t);
            if (argmax.empty()) {
                best = ct;
                argmax.push_back(std::move(*t));
                continue;
            }
            int c = compare_means(ct, best);
            if (c > 0) {
                runner = best;
                best = ct;
                argmax.clear();
                argmax.push_back(std::move(*t));
            } else if (c == 0) {
                argmax.push_back(std::move(*t));
            } else if (!runner || compare_means(ct, *runner) > 0) {
                runner = ct;
            }
        }
        if (!argmax.empty()) rep.mean_value = ratio(best.total, best.count);
        if (runner) rep.runner_up = ratio(runner->total, runner->count);
    }

    rep.examined = stream.yielded();
    for (const Tree& t : argmax) rep.argmax.push_back(describe_winner(t));
    sort_winners(rep.argmax);
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

SearchReport optimal(Family family, int n) {
    const auto t0 = Clock::now();
    switch (family) {
        case Family::Batons: {
            ClosedFormArgmax am = optimal_baton_s(n);
            SearchReport rep = report_from_scan(family, n, am,
                                                [n](int s) { return make_baton(s, n - 2 * s - 2); });
            rep.wall_seconds = seconds_since(t0);
            return rep;
        }
        case Family::Bridges: {
            if (n < 6) throw InvalidSpec("bridges need order at least 6");
            ClosedFormArgmax am = scan_means(
                1, (n - 2) / 4, [n](int s) { return bridge_counts(s, n - 2 - 4 * s); });
            SearchReport rep = report_from_scan(
                family, n, am, [n](int s) { return make_bridge(s, n - 2 - 4 * s); });
            rep.wall_seconds = seconds_since(t0);
            return rep;
        }
        case Family::Dds:
            throw InvalidSpec("dds searches need a leaf count; use optimal_dds");
        default:
            return optimal_stream(family_stream(family, n));
    }
}

SearchReport optimal_dds(int n, int leaf_count) {
    SearchReport rep = optimal_stream(dds_stream(n, leaf_count));
    rep.params.emplace_back("leaves", std::to_string(leaf_count));
    return rep;
}

SearchReport merge_reports(const SearchReport& a, const SearchReport& b) {
    if (a.family != b.family || a.n != b.n)
        throw InvalidSpec("cannot merge reports for different searches");
    if (a.argmax.empty() || b.argmax.empty()) {
        SearchReport out = a.argmax.empty() ? b : a;
        out.examined = a.examined + b.examined;
        out.wall_seconds = std::max(a.wall_seconds, b.wall_seconds);
        return out;
    }

    SearchReport out;
    out.family = a.family;
    out.n = a.n;
    out.params = a.params;
    out.examined = a.examined + b.examined;
    out.wall_seconds = std::max(a.wall_seconds, b.wall_seconds);

    int c = cmp(a.mean_value, b.mean_value);
    if (c == 0) {
        out.mean_value = a.mean_value;
        out.runner_up = max_rational(a.runner_up, b.runner_up);
        out.argmax = a.argmax;
        out.argmax.insert(out.argmax.end(), b.argmax.begin(), b.argmax.end());
        sort_winners(out.argmax);
        out.argmax.erase(std::unique(out.argmax.begin(), out.argmax.end(),
                                     [](const WinnerInfo& x, const WinnerInfo& y) {
                                         return x.code == y.code;
                                     }),
                         out.argmax.end());
    } else {
        const SearchReport& w = c > 0 ? a : b;
        const SearchReport& l = c > 0 ? b : a;
        out.mean_value = w.mean_value;
        out.argmax = w.argmax;
        out.runner_up = max_rational(w.runner_up, l.mean_value);
    }
    return out;
}

SearchReport optimal_sharded(Family family, int n, int threads) {
    if (threads < 1) threads = 1;
    if (family == Family::Batons || family == Family::Bridges) return optimal(family, n);
    if (family == Family::Dds) throw InvalidSpec("dds searches need a leaf count; use optimal_dds");
    if (threads == 1) return optimal_stream(family_stream(family, n));

    std::vector<SearchReport> parts(threads);
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int k = 0; k < threads; ++k) {
            pool.emplace_back([&, k] {
                try {
                    parts[k] = optimal_stream(family_stream(family, n, {k, threads}));
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    SearchReport rep = parts[0];
    for (int k = 1; k < threads; ++k) rep = merge_reports(rep, parts[k]);
    rep.params.emplace_back("threads", std::to_string(threads));
    return rep;
}

ClosedFormArgmax optimal_baton_s(int n) {
    if (n < 4) throw InvalidSpec("batons need order at least 4");
    const int s_hi = (n - 2) / 2;
    auto counts_at = [n](int s) { return baton_counts(n, s); };

    // Smallest s with 2^s >= n^2. Beyond it the leaf bound caps the mean at
    // n - s, so once the mean at s_hat exceeds n - s_hat - 1 no larger s can
    // win; the runner-up from the pruned scan is kept only when it clears
    // the same cap, otherwise the full scan settles it.
    const unsigned long long nsq = 1ull * n * n;
    const int s_hat = std::bit_width(nsq - 1);
    if (s_hat < s_hi) {
        ClosedFormCounts witness = baton_counts(n, s_hat);
        if (cmp(witness.total, Int(n - s_hat - 1) * witness.count) > 0) {
            ClosedFormArgmax am = scan_means(1, s_hat, counts_at);
            if (am.runner_up && cmp(*am.runner_up, Rational(n - s_hat - 1)) >= 0) return am;
        }
    }
    return scan_means(1, s_hi, counts_at);
}

ClosedFormArgmax optimal_bridge_s(int n) {
    if (n < 4) throw InvalidSpec("bridge scans need n at least 4");
    if (n > 20000) throw InvalidSpec("bridge scans support n up to 20000");

    ClosedFormArgmax am;
    std::optional<Counts64> best, runner;
    for (int s = 1; s <= n / 4; ++s) {
        Counts64 ct = bridge_counts64(s, n - 4 * s);
        ++am.examined;
        if (!best) {
            best = ct;
            am.s = {s};
            continue;
        }
        int c = compare_counts64(ct, *best);
        if (c > 0) {
            runner = best;
            best = ct;
            am.s = {s};
        } else if (c == 0) {
            am.s.push_back(s);
        } else if (!runner || compare_counts64(ct, *runner) > 0) {
            runner = ct;
        }
    }
    am.mean_value = ratio(Int(best->total), Int(best->count));
    if (runner) am.runner_up = ratio(Int(runner->total), Int(runner->count));
    return am;
}

}  // namespace treelab
