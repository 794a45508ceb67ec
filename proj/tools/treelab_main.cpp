// treelab: subtree statistics of trees, optimal-tree searches over named
// families, and the verification suites, behind one command-line tool.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "treelab/enumerate.hpp"
#include "treelab/families.hpp"
#include "treelab/io.hpp"
#include "treelab/lab.hpp"
#include "treelab/poly.hpp"
#include "treelab/report.hpp"
#include "treelab/tree.hpp"

namespace {

using namespace treelab;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidSpec("cannot open output file: " + path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void raise_cap_to(int n) {
    if (n > max_order()) set_max_order(n);
}

Shard parse_shard(const std::string& text) {
    int k = -1, of = -1;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d/%d%c", &k, &of, &extra) != 2 || of < 1 || k < 0 || k >= of)
        throw InvalidSpec("bad shard '" + text + "', expected k/K with 0 <= k < K");
    return Shard{k, of};
}

Family parse_family_token(const std::string& token) {
    if (auto f = family_from_name(token)) return *f;
    throw InvalidSpec("unknown family '" + token +
                      "' (trees, caterpillars, asters, balanced-asters, batons, bridges, dds)");
}

// Options shared by every report-emitting subcommand.
struct EmitOptions {
    std::string format;
    std::string output;
    bool deterministic = false;
    int places = 12;

    ReportOptions report() const {
        ReportOptions o;
        o.deterministic = deterministic;
        o.decimal_places = places;
        return o;
    }
};

void add_emit_options(CLI::App* cmd, EmitOptions& emit, const std::string& formats,
                      const std::string& default_format) {
    emit.format = default_format;
    cmd->add_option("--format", emit.format, "Output format (" + formats + ")")
        ->check(CLI::IsMember(CLI::detail::split(formats, '|')));
    cmd->add_option("-o,--output", emit.output, "Write output to this file instead of stdout");
    cmd->add_flag("--deterministic", emit.deterministic,
                  "Suppress the timestamp and zero wall-clock fields so identical runs "
                  "produce byte-identical output");
    cmd->add_option("--places", emit.places, "Decimal digits for display renderings")
        ->check(CLI::Range(1, 80));
}

std::string mean_line(const char* label, const Rational& q, int places) {
    std::string s = q.get_str();
    return std::string(label) + ": " + s + " = " + to_decimal_string(q, places) + "\n";
}

struct MeanArgs {
    std::string family;
    std::string graph6;
    std::string edges_file;
    bool with_poly = false;
    EmitOptions emit;
};

int run_mean(const MeanArgs& args) {
    std::string input_label;
    std::optional<Tree> tree;
    if (!args.family.empty()) {
        FamilySpec spec = parse_family_spec(args.family);
        raise_cap_to(spec_order(spec));
        tree = build(spec);
        input_label = args.family;
    } else if (!args.graph6.empty()) {
        tree = from_graph6(args.graph6);
        input_label = "graph6";
    } else if (!args.edges_file.empty()) {
        tree = parse_edge_list_text(read_file(args.edges_file));
        input_label = args.edges_file;
    } else {
        throw InvalidSpec("mean needs one of --family, --graph6, --edges");
    }

    const CountTotal ct = subtree_count_total(*tree);
    Rational mean_value(ct.total, ct.count);
    mean_value.canonicalize();
    Rational dens{mean_value / tree->order()};
    dens.canonicalize();

    if (args.emit.format == "json") {
        nlohmann::ordered_json o;
        o["report"] = "mean";
        o["input"] = input_label;
        o["n"] = tree->order();
        o["count"] = ct.count.get_str();
        o["total"] = ct.total.get_str();
        o["mean"] = nlohmann::ordered_json::parse(rational_json(mean_value, args.emit.places));
        o["density"] = nlohmann::ordered_json::parse(rational_json(dens, args.emit.places));
        if (args.with_poly)
            o["polynomial"] =
                nlohmann::ordered_json::parse(polynomial_json(subtree_polynomial(*tree)));
        write_output(o.dump(), args.emit.output);
        return kExitOk;
    }

    std::string out;
    out += "tree: " + input_label + "\n";
    out += "n: " + std::to_string(tree->order()) + "\n";
    out += "subtrees: " + ct.count.get_str() + "\n";
    out += "total_order: " + ct.total.get_str() + "\n";
    out += mean_line("mean", mean_value, args.emit.places);
    out += mean_line("density", dens, args.emit.places);
    if (args.with_poly) {
        SubtreePoly p = subtree_polynomial(*tree);
        out += "coeffs:";
        for (const Int& a : p.a) out += " " + a.get_str();
        out += "\n";
    }
    write_output(out, args.emit.output);
    return kExitOk;
}

std::string search_text(const SearchReport& rep, int places) {
    std::string out;
    out += "family: " + rep.family + "\n";
    out += "n: " + std::to_string(rep.n) + "\n";
    for (const auto& [k, v] : rep.params) out += k + ": " + v + "\n";
    out += "examined: " + std::to_string(rep.examined) + "\n";
    Rational m = rep.mean_value;
    out += mean_line("mean", m, places);
    if (rep.runner_up) out += mean_line("runner_up", *rep.runner_up, places);
    out += "winners: " + std::to_string(rep.argmax.size()) + "\n";
    for (std::size_t i = 0; i < rep.argmax.size(); ++i) {
        const WinnerInfo& w = rep.argmax[i];
        out += "  " + std::to_string(i + 1) + ": leaves " +
               std::to_string(w.shape.leaf_count) + ", twigs " +
               std::to_string(w.shape.twig_count) +
               (w.shape.is_caterpillar ? ", caterpillar" : "");
        if (!w.limb_orders.empty()) {
            out += ", limbs";
            for (int l : w.limb_orders) out += " " + std::to_string(l);
        }
        out += "\n";
    }
    return out;
}

void emit_search(const SearchReport& rep, const EmitOptions& emit) {
    std::string text;
    if (emit.format == "json")
        text = search_report_json(rep, emit.report());
    else if (emit.format == "csv")
        text = search_report_csv(rep, emit.report());
    else if (emit.format == "graph6")
        text = search_report_graph6(rep);
    else if (emit.format == "dot")
        text = search_report_dot(rep);
    else
        text = search_text(rep, emit.places);
    write_output(text, emit.output);
}

struct OptimalArgs {
    std::string family_token;
    int n = 0;
    int leaves = 0;
    int threads = 0;
    int search_cap = 24;
    std::string shard;
    EmitOptions emit;
};

int run_optimal(const OptimalArgs& args) {
    const Family family = parse_family_token(args.family_token);
    const bool closed_form = family == Family::Batons || family == Family::Bridges;
    if (!closed_form && args.n > args.search_cap)
        throw InvalidSpec("order " + std::to_string(args.n) +
                          " exceeds the exhaustive search cap " +
                          std::to_string(args.search_cap) + "; raise it with --search-cap");

    SearchReport rep;
    if (!args.shard.empty()) {
        if (closed_form)
            throw InvalidSpec("--shard applies to streamed families, not closed-form scans");
        const Shard shard = parse_shard(args.shard);
        rep = family == Family::Dds
                  ? optimal_stream(dds_stream(args.n, args.leaves, shard))
                  : optimal_stream(family_stream(family, args.n, shard));
        rep.params.emplace_back("shard", args.shard);
    } else if (family == Family::Dds) {
        if (args.leaves <= 0) throw InvalidSpec("family dds needs --leaves");
        rep = optimal_dds(args.n, args.leaves);
    } else if (!closed_form && args.threads != 1) {
        const int threads =
            args.threads > 0 ? args.threads
                             : std::max(1u, std::thread::hardware_concurrency());
        rep = optimal_sharded(family, args.n, threads);
    } else {
        rep = optimal(family, args.n);
    }
    emit_search(rep, args.emit);
    return kExitOk;
}

struct VerifyArgs {
    std::string suite;
    SuiteConfig cfg;
    std::optional<int> n, nmax, smax, instances;
    std::optional<std::uint64_t> seed;
    EmitOptions emit;
};

std::string verify_text(const VerificationReport& rep, const EmitOptions& emit) {
    std::string out;
    out += "suite: " + rep.suite + "\n";
    for (const auto& [k, v] : rep.grid) out += "grid " + k + ": " + v + "\n";
    out += "passed: " + std::to_string(rep.passed) + "\n";
    out += "failed: " + std::to_string(rep.failed) + "\n";
    if (rep.first_counterexample) {
        const Counterexample& ce = *rep.first_counterexample;
        out += "counterexample: " + ce.check;
        for (const auto& [k, v] : ce.params) out += " " + k + "=" + v;
        out += "\n  " + ce.details + "\n";
        if (ce.graph6) out += "  graph6: " + *ce.graph6 + "\n";
    }
    for (const auto& [k, v] : rep.notes) out += "note " + k + ": " + v + "\n";
    if (!emit.deterministic) {
        char wall[48];
        std::snprintf(wall, sizeof wall, "wall_seconds: %.3f\n", rep.wall_seconds);
        out += wall;
    }
    out += rep.ok() ? "result: pass\n" : "result: FAIL\n";
    return out;
}

int run_verify(VerifyArgs& args) {
    args.cfg.n = args.n;
    args.cfg.n_max = args.nmax;
    args.cfg.s_max = args.smax;
    args.cfg.instances = args.instances;
    args.cfg.seed = args.seed;
    const VerificationReport rep = run_suite(args.suite, args.cfg);
    std::string text;
    if (args.emit.format == "json")
        text = verification_report_json(rep, args.emit.report());
    else if (args.emit.format == "csv")
        text = verification_report_csv(rep, args.emit.report());
    else
        text = verify_text(rep, args.emit);
    write_output(text, args.emit.output);
    return rep.ok() ? kExitOk : kExitViolation;
}

struct EnumerateArgs {
    std::string family_token;
    int n = 0;
    int leaves = 0;
    std::string shard;
    std::string format = "graph6";
    std::string output;
};

int run_enumerate(const EnumerateArgs& args) {
    const Family family = parse_family_token(args.family_token);
    const Shard shard = args.shard.empty() ? Shard{} : parse_shard(args.shard);
    TreeStream stream = family == Family::Dds ? dds_stream(args.n, args.leaves, shard)
                                              : family_stream(family, args.n, shard);
    std::ostringstream out;
    std::uint64_t count = 0;
    while (auto t = stream.next()) {
        ++count;
        if (args.format == "graph6")
            out << to_graph6(*t) << '\n';
        else if (args.format == "edges")
            out << to_edge_list_text(*t) << '\n';
    }
    if (args.format == "count") out << count << '\n';
    write_output(out.str(), args.output);
    return kExitOk;
}

struct MergeArgs {
    std::vector<std::string> files;
    EmitOptions emit;
};

int run_merge(const MergeArgs& args) {
    // Per-slice shard tags would misdescribe the union; collect them into
    // one combined tag instead.
    std::string shards;
    auto load = [&shards](const std::string& path) {
        SearchReport rep = search_report_from_json(read_file(path));
        auto& params = rep.params;
        for (auto it = params.begin(); it != params.end();) {
            if (it->first == "shard") {
                shards += (shards.empty() ? "" : "+") + it->second;
                it = params.erase(it);
            } else {
                ++it;
            }
        }
        return rep;
    };
    SearchReport merged = load(args.files.front());
    for (std::size_t i = 1; i < args.files.size(); ++i)
        merged = merge_reports(merged, load(args.files[i]));
    if (!shards.empty()) merged.params.emplace_back("shards", shards);
    emit_search(merged, args.emit);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("TREELAB_MAX_ORDER")) {
        const int cap = std::atoi(env);
        if (cap > 0) set_max_order(cap);
    }

    CLI::App app{"Exact subtree statistics, optimal-tree searches and verification suites"};
    app.require_subcommand(1);
    int cap_flag = 0;
    app.add_option("--max-order", cap_flag,
                   "Raise the global order cap (also settable via TREELAB_MAX_ORDER)")
        ->check(CLI::PositiveNumber);

    MeanArgs mean_args;
    CLI::App* mean_cmd =
        app.add_subcommand("mean", "Subtree count, total order, mean and density of one tree");
    mean_cmd->add_option("--family", mean_args.family,
                         "Family spec, e.g. path:9, star:7, aster:n=10,l=3, baton:s=5,t=12, "
                         "dds:n=20,r=4,s=6, bridge:s=3,t=7, caterpillar:5.1.0.0.5");
    mean_cmd->add_option("--graph6", mean_args.graph6, "graph6 line");
    mean_cmd->add_option("--edges", mean_args.edges_file, "Edge-list file, one 'u v' per line");
    mean_cmd->add_flag("--poly", mean_args.with_poly, "Include the subtree polynomial");
    add_emit_options(mean_cmd, mean_args.emit, "text|json", "text");

    OptimalArgs optimal_args;
    CLI::App* optimal_cmd =
        app.add_subcommand("optimal", "Argmax of the mean subtree order over a family");
    optimal_cmd
        ->add_option("family", optimal_args.family_token,
                     "trees, caterpillars, asters, balanced-asters, batons, bridges or dds")
        ->required();
    optimal_cmd->add_option("n", optimal_args.n, "Tree order")->required()->check(
        CLI::PositiveNumber);
    optimal_cmd->add_option("--leaves", optimal_args.leaves, "Leaf count (family dds)");
    optimal_cmd->add_option("--threads", optimal_args.threads,
                            "Worker threads for streamed searches; 0 = all cores, default 0");
    optimal_cmd->add_option("--shard", optimal_args.shard,
                            "Search only slice k of K (format k/K) for multi-process runs");
    optimal_cmd->add_option("--search-cap", optimal_args.search_cap,
                            "Refuse streamed searches above this order (default 24)");
    add_emit_options(optimal_cmd, optimal_args.emit, "json|csv|graph6|dot|text", "json");

    VerifyArgs verify_args;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run one verification suite");
    std::string suite_list;
    for (const std::string& id : suite_ids())
        suite_list += (suite_list.empty() ? "" : ", ") + id;
    verify_cmd->add_option("suite", verify_args.suite, "Suite id: " + suite_list)->required();
    int n_opt = 0, nmax_opt = 0, smax_opt = 0, instances_opt = 0;
    std::uint64_t seed_opt = 0;
    CLI::Option* n_o = verify_cmd->add_option("--n", n_opt, "Exact order override");
    CLI::Option* nmax_o = verify_cmd->add_option("--nmax", nmax_opt, "Order-range override");
    CLI::Option* smax_o = verify_cmd->add_option("--smax", smax_opt, "Parameter-range override");
    CLI::Option* inst_o =
        verify_cmd->add_option("--instances", instances_opt, "Random-instance count override");
    CLI::Option* seed_o = verify_cmd->add_option("--seed", seed_opt, "Random seed override");
    add_emit_options(verify_cmd, verify_args.emit, "json|csv|text", "json");

    EnumerateArgs enum_args;
    CLI::App* enum_cmd = app.add_subcommand("enumerate", "Stream a family's members");
    enum_cmd->add_option("family", enum_args.family_token, "Family token, as for optimal")
        ->required();
    enum_cmd->add_option("n", enum_args.n, "Tree order")->required()->check(CLI::PositiveNumber);
    enum_cmd->add_option("--leaves", enum_args.leaves, "Leaf count (family dds)");
    enum_cmd->add_option("--shard", enum_args.shard, "Emit only slice k of K (format k/K)");
    enum_cmd->add_option("--format", enum_args.format, "Output format (graph6|edges|count)")
        ->check(CLI::IsMember({"graph6", "edges", "count"}));
    enum_cmd->add_option("-o,--output", enum_args.output, "Write to this file instead of stdout");

    MergeArgs merge_args;
    CLI::App* merge_cmd =
        app.add_subcommand("merge", "Merge search reports produced by disjoint shards");
    merge_cmd->add_option("files", merge_args.files, "JSON report files")
        ->required()
        ->expected(-1);
    add_emit_options(merge_cmd, merge_args.emit, "json|csv|graph6|dot|text", "json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (cap_flag > 0) set_max_order(cap_flag);

    try {
        if (app.got_subcommand(mean_cmd)) return run_mean(mean_args);
        if (app.got_subcommand(optimal_cmd)) return run_optimal(optimal_args);
        if (app.got_subcommand(verify_cmd)) {
            if (*n_o) verify_args.n = n_opt;
            if (*nmax_o) verify_args.nmax = nmax_opt;
            if (*smax_o) verify_args.smax = smax_opt;
            if (*inst_o) verify_args.instances = instances_opt;
            if (*seed_o) verify_args.seed = seed_opt;
            return run_verify(verify_args);
        }
        if (app.got_subcommand(enum_cmd)) return run_enumerate(enum_args);
        if (app.got_subcommand(merge_cmd)) return run_merge(merge_args);
    } catch (const TreeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
