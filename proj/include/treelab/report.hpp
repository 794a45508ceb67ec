#pragma once

// Serialization of polynomials and reports: JSON with a stable field order,
// one-line CSV summaries, and the inverse JSON parse used to merge reports
// produced by separate shard processes.

#include <string>

#include "treelab/lab.hpp"
#include "treelab/poly.hpp"

namespace treelab {

struct ReportOptions {
    // Suppresses the timestamp and zeroes wall-clock fields so identical
    // inputs produce byte-identical output.
    bool deterministic = false;
    int decimal_places = 12;
    // Winners at orders above this carry edges but no graph6 string, which
    // grows quadratically with the order.
    int graph6_order_limit = 2000;
};

// {"n": ..., "coeffs": [decimal strings]}; local polynomials add "at".
std::string polynomial_json(const SubtreePoly& p);

// {"num": ..., "den": ..., "decimal": ...} with exact num/den strings; the
// decimal is display-only, rounded half to even.
std::string rational_json(const Rational& q, int places = 12);

std::string search_report_json(const SearchReport& rep, const ReportOptions& opt = {});
std::string verification_report_json(const VerificationReport& rep, const ReportOptions& opt = {});

// One row per winner with the headline numbers; plottable as-is.
std::string search_report_csv(const SearchReport& rep, const ReportOptions& opt = {});

// Long key,value rows covering grid, counts, notes and the counterexample.
std::string verification_report_csv(const VerificationReport& rep, const ReportOptions& opt = {});

// Winners as graph6, one per line, argmax order.
std::string search_report_graph6(const SearchReport& rep);

// Winners as DOT digraph-free graphs, concatenated documents.
std::string search_report_dot(const SearchReport& rep);

// Parses a document produced by search_report_json. Winners are rebuilt
// from their edge lists and revalidated against the stored canonical codes
// and counts; throws ParseError on malformed input or a mismatch.
SearchReport search_report_from_json(const std::string& text);

}  // namespace treelab
