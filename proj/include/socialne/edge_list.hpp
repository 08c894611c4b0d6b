#pragma once

// Plain-text edge lists:
//
//   n=5
//   4 1
//   4 3
//   ...
//
// One 1-based `u v` pair per line after the `n=<count>` header. Blank lines
// and lines starting with '#' are ignored.

#include <charconv>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "socialne/digraph.hpp"
#include "socialne/errors.hpp"

namespace socialne {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Whitespace-separated unsigned integers; false on any other token.
inline bool parse_uints(std::string_view s, std::vector<std::size_t>& out) {
    out.clear();
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
        if (pos == s.size()) break;
        std::size_t value = 0;
        const char* begin = s.data() + pos;
        const char* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || (ptr != end && *ptr != ' ' && *ptr != '\t')) return false;
        out.push_back(value);
        pos += static_cast<std::size_t>(ptr - begin);
    }
    return true;
}

} // namespace detail

inline Digraph parse_edge_list(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t n = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    std::vector<std::size_t> fields;

    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = detail::trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        if (!have_header) {
            if (!line.starts_with("n=") || !detail::parse_uints(line.substr(2), fields) ||
                fields.size() != 1 || fields[0] == 0) {
                throw ParseError(line_no, "expected header `n=<count>`, got `" + std::string(line) + "`");
            }
            n = fields[0];
            have_header = true;
            continue;
        }
        if (!detail::parse_uints(line, fields) || fields.size() != 2) {
            throw ParseError(line_no, "expected `u v`, got `" + std::string(line) + "`");
        }
        const std::size_t u = fields[0];
        const std::size_t v = fields[1];
        if (u < 1 || u > n || v < 1 || v > n) {
            throw ParseError(line_no, "node id out of range 1.." + std::to_string(n));
        }
        if (u == v) throw ParseError(line_no, "self-loop at node " + std::to_string(u));
        const Edge e{u - 1, v - 1};
        if (!seen.insert(e).second) {
            throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        }
        edges.push_back(e);
    }
    if (!have_header) throw ParseError(line_no + 1, "missing `n=<count>` header");
    return Digraph(n, std::move(edges));
}

inline std::string format_edge_list(const Digraph& g) {
    std::string out = "n=" + std::to_string(g.size()) + "\n";
    for (const Edge& e : g.edges()) {
        out += std::to_string(e.from + 1);
        out += ' ';
        out += std::to_string(e.to + 1);
        out += '\n';
    }
    return out;
}

} // namespace socialne
