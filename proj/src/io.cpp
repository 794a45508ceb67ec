#include "treelab/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace treelab {

namespace {

void append_bits(std::string& out, unsigned long value, int bits) {
    for (int i = bits - 6; i >= 0; i -= 6)
        out += static_cast<char>(((value >> i) & 0x3f) + 63);
}

}  // namespace

std::string to_graph6(const Tree& t) {
    const int n = t.order();
    std::string out;
    if (n <= 62) {
        out += static_cast<char>(n + 63);
    } else {
        out += '~';
        append_bits(out, static_cast<unsigned long>(n), 18);
    }
    // Upper triangle x(i,j), i < j, in column-major order, packed into 6-bit
    // groups most significant bit first.
    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            const auto& nb = t.neighbors(i);
            bool adj = std::find(nb.begin(), nb.end(), j) != nb.end();
            acc = (acc << 1) | (adj ? 1 : 0);
            if (++nbits == 6) {
                out += static_cast<char>(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out += static_cast<char>((acc << (6 - nbits)) + 63);
    return out;
}

Tree from_graph6(std::string_view s) {
    constexpr std::string_view header = ">>graph6<<";
    if (s.substr(0, header.size()) == header) s.remove_prefix(header.size());
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
    if (s.empty()) throw ParseError("empty graph6 input");
    size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= s.size()) throw ParseError("truncated graph6 input");
        int c = static_cast<unsigned char>(s[pos++]);
        if (c < 63 || c > 126)
            throw ParseError("invalid graph6 byte at position " + std::to_string(pos - 1));
        return c - 63;
    };
    long n;
    if (s[0] != '~') {
        n = next();
    } else {
        ++pos;
        if (pos < s.size() && s[pos] == '~')
            throw ParseError("graph6 orders above 258047 not supported");
        long a = next(), b = next(), c = next();
        n = (a << 12) | (b << 6) | c;
    }
    if (n < 1) throw ParseError("graph6 graph has no vertices");
    std::vector<std::pair<int, int>> edges;
    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            if (nbits == 0) {
                acc = next();
                nbits = 6;
            }
            if (acc & (1 << (nbits - 1))) edges.emplace_back(i, j);
            --nbits;
        }
    }
    if (pos != s.size()) throw ParseError("trailing bytes after graph6 data");
    if (n == 1) {
        if (!edges.empty()) throw ParseError("order-1 graph6 with edges");
        return Tree::single();
    }
    if (edges.empty()) throw Disconnected("graph6 graph has no edges");
    // Edge ids reach n-1 only if vertex n-1 has an edge; from_edge_list would
    // otherwise under-count n, so check explicitly.
    bool last_seen = false;
    for (auto [u, v] : edges) last_seen |= (v == n - 1);
    if (!last_seen) throw Disconnected("vertex " + std::to_string(n - 1) + " is isolated");
    return Tree::from_edge_list(edges);
}

Tree parse_edge_list_text(std::string_view text) {
    std::vector<std::pair<int, int>> edges;
    int lineno = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(start, end - start));
        ++lineno;
        start = end + 1;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream iss(line);
        long u, v;
        if (!(iss >> u)) continue;  // blank or comment-only line
        if (!(iss >> v))
            throw ParseError("line " + std::to_string(lineno) + ": expected two vertex ids");
        std::string rest;
        if (iss >> rest)
            throw ParseError("line " + std::to_string(lineno) + ": trailing token '" + rest + "'");
        if (u < 0 || v < 0)
            throw ParseError("line " + std::to_string(lineno) + ": negative vertex id");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        if (end == text.size()) break;
    }
    if (edges.empty()) throw EmptyInput("no edges in edge-list input");
    return Tree::from_edge_list(edges);
}

std::string to_edge_list_text(const Tree& t) {
    std::string out;
    for (auto [u, v] : t.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

std::string to_dot(const Tree& t) {
    std::string out = "graph tree {\n  node [shape=circle];\n";
    if (t.order() == 1) out += "  0;\n";
    for (auto [u, v] : t.edges())
        out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace treelab
