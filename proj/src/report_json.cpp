#include "treelab/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <ctime>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treelab/io.hpp"

namespace treelab {

namespace {

using json = nlohmann::ordered_json;

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

Tree tree_from_winner(int n, const std::vector<std::pair<int, int>>& edges) {
    if (edges.empty() && n == 1) return Tree::single();
    return Tree::from_edge_list(edges);
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm parts{};
    gmtime_r(&now, &parts);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buf;
}

json rational_object(const Rational& q, int places) {
    json o = json::object();
    o["num"] = q.get_num().get_str();
    o["den"] = q.get_den().get_str();
    o["decimal"] = to_decimal_string(q, places);
    return o;
}

json pairs_object(const std::vector<std::pair<std::string, std::string>>& kv) {
    json o = json::object();
    for (const auto& [k, v] : kv) o[k] = v;
    return o;
}

json winner_object(const WinnerInfo& w, int n, const ReportOptions& opt) {
    json o = json::object();
    o["code"] = w.code.bytes;
    if (n <= opt.graph6_order_limit) {
        CapRaise guard(n);
        o["graph6"] = to_graph6(tree_from_winner(n, w.edges));
    } else {
        o["graph6"] = nullptr;
    }
    json edges = json::array();
    for (const auto& [u, v] : w.edges) edges.push_back(json::array({u, v}));
    o["edges"] = std::move(edges);
    o["count"] = w.stats.count.get_str();
    o["total"] = w.stats.total.get_str();
    o["leaf_count"] = w.shape.leaf_count;
    o["twig_count"] = w.shape.twig_count;
    o["is_path"] = w.shape.is_path;
    o["is_caterpillar"] = w.shape.is_caterpillar;
    o["is_aster"] = w.shape.is_aster;
    o["is_series_reduced"] = w.shape.is_series_reduced;
    o["is_locally_balanced"] = w.shape.is_locally_balanced;
    o["limb_orders"] = w.limb_orders;
    return o;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

void csv_row(std::string& out, const std::string& suite, const std::string& field,
             const std::string& value) {
    out += csv_cell(suite);
    out += ',';
    out += csv_cell(field);
    out += ',';
    out += csv_cell(value);
    out += '\n';
}

template <class T>
T field(const json& o, const char* key) {
    auto it = o.find(key);
    if (it == o.end()) throw ParseError(std::string("report field missing: ") + key);
    return it->template get<T>();
}

}  // namespace

std::string polynomial_json(const SubtreePoly& p) {
    json o = json::object();
    o["n"] = p.order();
    if (p.kind == PolyKind::Local) o["at"] = p.at;
    json coeffs = json::array();
    for (const Int& a : p.a) coeffs.push_back(a.get_str());
    o["coeffs"] = std::move(coeffs);
    return o.dump();
}

std::string rational_json(const Rational& q, int places) {
    return rational_object(q, places).dump();
}

std::string search_report_json(const SearchReport& rep, const ReportOptions& opt) {
    json o = json::object();
    o["report"] = "search";
    o["family"] = rep.family;
    o["n"] = rep.n;
    o["params"] = pairs_object(rep.params);
    o["examined"] = rep.examined;
    o["mean"] = rational_object(rep.mean_value, opt.decimal_places);
    o["runner_up"] =
        rep.runner_up ? rational_object(*rep.runner_up, opt.decimal_places) : json(nullptr);
    o["argmax_size"] = rep.argmax.size();
    json winners = json::array();
    for (const WinnerInfo& w : rep.argmax) winners.push_back(winner_object(w, rep.n, opt));
    o["argmax"] = std::move(winners);
    o["wall_seconds"] = opt.deterministic ? 0.0 : rep.wall_seconds;
    if (!opt.deterministic) o["timestamp"] = utc_timestamp();
    return o.dump();
}

std::string verification_report_json(const VerificationReport& rep, const ReportOptions& opt) {
    json o = json::object();
    o["report"] = "verification";
    o["suite"] = rep.suite;
    o["grid"] = pairs_object(rep.grid);
    o["passed"] = rep.passed;
    o["failed"] = rep.failed;
    o["ok"] = rep.ok();
    if (rep.first_counterexample) {
        const Counterexample& ce = *rep.first_counterexample;
        json c = json::object();
        c["check"] = ce.check;
        c["params"] = pairs_object(ce.params);
        c["details"] = ce.details;
        c["graph6"] = ce.graph6 ? json(*ce.graph6) : json(nullptr);
        o["first_counterexample"] = std::move(c);
    } else {
        o["first_counterexample"] = nullptr;
    }
    o["notes"] = pairs_object(rep.notes);
    o["wall_seconds"] = opt.deterministic ? 0.0 : rep.wall_seconds;
    if (!opt.deterministic) o["timestamp"] = utc_timestamp();
    return o.dump();
}

std::string search_report_csv(const SearchReport& rep, const ReportOptions& opt) {
    std::string out =
        "family,n,examined,winners,winner,code,mean_num,mean_den,mean_decimal,"
        "runner_up_decimal,leaf_count,twig_count,is_caterpillar,limb_orders\n";
    const std::string mean_num = rep.mean_value.get_num().get_str();
    const std::string mean_den = rep.mean_value.get_den().get_str();
    const std::string mean_dec = to_decimal_string(rep.mean_value, opt.decimal_places);
    const std::string runner =
        rep.runner_up ? to_decimal_string(*rep.runner_up, opt.decimal_places) : "";
    for (std::size_t i = 0; i < rep.argmax.size(); ++i) {
        const WinnerInfo& w = rep.argmax[i];
        std::string limbs;
        for (std::size_t j = 0; j < w.limb_orders.size(); ++j) {
            if (j) limbs += ' ';
            limbs += std::to_string(w.limb_orders[j]);
        }
        out += rep.family + ',' + std::to_string(rep.n) + ',' + std::to_string(rep.examined) +
               ',' + std::to_string(rep.argmax.size()) + ',' + std::to_string(i + 1) + ',' +
               csv_cell(w.code.bytes) + ',' + mean_num + ',' + mean_den + ',' + mean_dec + ',' +
               runner + ',' + std::to_string(w.shape.leaf_count) + ',' +
               std::to_string(w.shape.twig_count) + ',' +
               (w.shape.is_caterpillar ? "1" : "0") + ',' + limbs + '\n';
    }
    return out;
}

std::string verification_report_csv(const VerificationReport& rep, const ReportOptions& opt) {
    std::string out = "suite,field,value\n";
    csv_row(out, rep.suite, "passed", std::to_string(rep.passed));
    csv_row(out, rep.suite, "failed", std::to_string(rep.failed));
    csv_row(out, rep.suite, "ok", rep.ok() ? "1" : "0");
    for (const auto& [k, v] : rep.grid) csv_row(out, rep.suite, "grid." + k, v);
    for (const auto& [k, v] : rep.notes) csv_row(out, rep.suite, "note." + k, v);
    if (rep.first_counterexample) {
        const Counterexample& ce = *rep.first_counterexample;
        csv_row(out, rep.suite, "counterexample.check", ce.check);
        for (const auto& [k, v] : ce.params) csv_row(out, rep.suite, "counterexample." + k, v);
        csv_row(out, rep.suite, "counterexample.details", ce.details);
        if (ce.graph6) csv_row(out, rep.suite, "counterexample.graph6", *ce.graph6);
    }
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", opt.deterministic ? 0.0 : rep.wall_seconds);
    csv_row(out, rep.suite, "wall_seconds", wall);
    return out;
}

std::string search_report_graph6(const SearchReport& rep) {
    CapRaise guard(rep.n);
    std::string out;
    for (const WinnerInfo& w : rep.argmax) {
        out += to_graph6(tree_from_winner(rep.n, w.edges));
        out += '\n';
    }
    return out;
}

std::string search_report_dot(const SearchReport& rep) {
    CapRaise guard(rep.n);
    std::string out;
    for (const WinnerInfo& w : rep.argmax) out += to_dot(tree_from_winner(rep.n, w.edges));
    return out;
}

SearchReport search_report_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || field<std::string>(doc, "report") != "search")
            throw ParseError("not a search report document");
        SearchReport rep;
        rep.family = field<std::string>(doc, "family");
        rep.n = field<int>(doc, "n");
        const json params = field<json>(doc, "params");
        for (const auto& [k, v] : params.items())
            rep.params.emplace_back(k, v.get<std::string>());
        rep.examined = field<std::uint64_t>(doc, "examined");
        const json mean = field<json>(doc, "mean");
        rep.mean_value = ratio(Int(field<std::string>(mean, "num")),
                               Int(field<std::string>(mean, "den")));
        const json runner = field<json>(doc, "runner_up");
        if (!runner.is_null())
            rep.runner_up = ratio(Int(field<std::string>(runner, "num")),
                                  Int(field<std::string>(runner, "den")));
        CapRaise guard(rep.n);
        for (const json& wj : field<json>(doc, "argmax")) {
            std::vector<std::pair<int, int>> edges;
            for (const json& e : field<json>(wj, "edges"))
                edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
            WinnerInfo w = describe_winner(tree_from_winner(rep.n, edges));
            if (w.code.bytes != field<std::string>(wj, "code"))
                throw ParseError("winner edges do not reproduce the stored canonical code");
            if (w.stats.count.get_str() != field<std::string>(wj, "count") ||
                w.stats.total.get_str() != field<std::string>(wj, "total"))
                throw ParseError("winner edges do not reproduce the stored subtree counts");
            rep.argmax.push_back(std::move(w));
        }
        if (rep.argmax.empty()) throw ParseError("search report has an empty argmax");
        rep.wall_seconds = field<double>(doc, "wall_seconds");
        return rep;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed search report: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("malformed search report: ") + e.what());
    }
}

}  // namespace treelab
