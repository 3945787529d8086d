#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "flowdec/decomposition.hpp"

namespace flowdec {

/// Text form of a flow network: '#' header lines, the vertex count, then one
/// "tail head flow" line per edge in id order.
struct GraphFile {
  std::vector<std::string> comments;  // without the leading '#'
  FlowNetwork network;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::int64_t parse_int(std::string_view token, std::int64_t line, const char* what) {
  std::int64_t value = 0;
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range) {
    bool digits = !token.empty();
    for (std::size_t i = (token.front() == '-' ? 1 : 0); i < token.size(); ++i) digits = digits && std::isdigit(static_cast<unsigned char>(token[i]));
    if (digits) throw Error(Errc::IntegerOverflow, line, "line " + std::to_string(line) + ": " + what + " does not fit in 64 bits");
  }
  if (ec != std::errc() || end != token.data() + token.size())
    throw Error(Errc::ParseError, line, "line " + std::to_string(line) + ": bad " + what + " '" + std::string(token) + "'");
  return value;
}

inline std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

inline bool blank(std::string_view line) { return split_ws(line).empty(); }

}  // namespace detail

inline GraphFile parse_graph(std::string_view text) {
  GraphFile out{{}, FlowNetwork::unchecked(nullptr, {})};
  std::optional<int> n;
  std::vector<Edge> edges;
  Flow flow;
  std::int64_t number = 0;
  for (std::string_view line : detail::lines_of(text)) {
    ++number;
    if (!line.empty() && line.front() == '#') {
      std::string_view body = line.substr(1);
      if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
      out.comments.emplace_back(body);
      continue;
    }
    auto tokens = detail::split_ws(line);
    if (tokens.empty()) continue;
    if (!n) {
      if (tokens.size() != 1) throw Error(Errc::ParseError, number, "line " + std::to_string(number) + ": expected the vertex count");
      const auto count = detail::parse_int(tokens[0], number, "vertex count");
      if (count < 1 || count > std::numeric_limits<int>::max())
        throw Error(Errc::ParseError, number, "line " + std::to_string(number) + ": vertex count out of range");
      n = static_cast<int>(count);
      continue;
    }
    if (tokens.size() != 3)
      throw Error(Errc::ParseError, number, "line " + std::to_string(number) + ": expected 'tail head flow'");
    const auto tail = detail::parse_int(tokens[0], number, "tail");
    const auto head = detail::parse_int(tokens[1], number, "head");
    const auto f = detail::parse_int(tokens[2], number, "flow");
    if (tail < 0 || tail >= *n || head < 0 || head >= *n)
      throw Error(Errc::InvalidVertex, number, "line " + std::to_string(number) + ": vertex out of range");
    edges.push_back({static_cast<Vertex>(tail), static_cast<Vertex>(head)});
    flow.push_back(f);
  }
  if (!n) throw Error(Errc::ParseError, number, "missing vertex count");
  out.network = validate(MultiDag::build(*n, std::move(edges)), std::move(flow));
  return out;
}

inline std::string serialize_graph(const FlowNetwork& net, const std::vector<std::string>& comments = {}) {
  std::ostringstream os;
  for (const auto& c : comments) os << '#' << c << '\n';
  const MultiDag& g = net.graph();
  os << g.vertex_count() << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e) os << g.edge(e).tail << ' ' << g.edge(e).head << ' ' << net.flow(e) << '\n';
  return os.str();
}

/// "weight : e0,e1,...". Edge ids are checked against `g` when given; full
/// line comments and trailing "# ..." vertex walks are ignored.
inline Decomposition parse_decomposition(std::string_view text, const MultiDag* g = nullptr) {
  Decomposition d;
  std::int64_t number = 0;
  for (std::string_view line : detail::lines_of(text)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (detail::blank(line)) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw Error(Errc::ParseError, number, "line " + std::to_string(number) + ": expected 'weight : edges'");
    auto weight_tokens = detail::split_ws(line.substr(0, colon));
    if (weight_tokens.size() != 1) throw Error(Errc::ParseError, number, "line " + std::to_string(number) + ": expected one weight");
    WeightedPath p;
    p.weight = detail::parse_int(weight_tokens[0], number, "weight");
    auto rest = detail::split_ws(line.substr(colon + 1));
    if (rest.size() != 1) throw Error(Errc::ParseError, number, "line " + std::to_string(number) + ": expected comma-separated edge ids");
    std::string_view list = rest[0];
    std::size_t start = 0;
    while (true) {
      const auto comma = list.find(',', start);
      const auto token = list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      const auto e = detail::parse_int(token, number, "edge id");
      if (g && (e < 0 || e >= g->edge_count()))
        throw Error(Errc::UnknownEdge, number, "line " + std::to_string(number) + ": unknown edge id " + std::to_string(e));
      if (e < 0 || e > std::numeric_limits<EdgeId>::max())
        throw Error(Errc::UnknownEdge, number, "line " + std::to_string(number) + ": edge id out of range");
      p.edges.push_back(static_cast<EdgeId>(e));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    d.paths.push_back(std::move(p));
  }
  return d;
}

/// One line per path; with a graph, each line carries its vertex walk.
inline std::string serialize_decomposition(const Decomposition& d, const MultiDag* g = nullptr) {
  std::ostringstream os;
  for (const WeightedPath& p : d.paths) {
    os << p.weight << " : ";
    for (std::size_t i = 0; i < p.edges.size(); ++i) os << (i ? "," : "") << p.edges[i];
    if (g && !p.edges.empty()) {
      os << "  # " << g->edge(p.edges.front()).tail;
      for (EdgeId e : p.edges) os << ' ' << g->edge(e).head;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace flowdec
