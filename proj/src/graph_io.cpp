#include "cadjust/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace cadjust {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back(Token{line.substr(start, i - start), start + 1});
  }
  return out;
}

struct EdgeToken {
  std::string_view text;
  EdgeMark at_left;
  EdgeMark at_right;
};

constexpr EdgeToken kEdgeTokens[] = {
    {"->", EdgeMark::Tail, EdgeMark::Arrow},
    {"--", EdgeMark::Tail, EdgeMark::Tail},
    {"<->", EdgeMark::Arrow, EdgeMark::Arrow},
    {"o->", EdgeMark::Circle, EdgeMark::Arrow},
    {"o-o", EdgeMark::Circle, EdgeMark::Circle},
};

const EdgeToken* find_edge_token(std::string_view text) {
  for (const auto& t : kEdgeTokens) {
    if (t.text == text) return &t;
  }
  return nullptr;
}

void check_name(const Token& tok, std::size_t line) {
  if (!is_valid_node_name(tok.text)) {
    throw ParseError(line, tok.column, "invalid node name '" + std::string(tok.text) + "'");
  }
}

bool mark_legal(GraphClass cls, EdgeMark left, EdgeMark right) {
  const bool directed = left == EdgeMark::Tail && right == EdgeMark::Arrow;
  switch (cls) {
    case GraphClass::Dag:
      return directed;
    case GraphClass::Mpdag:
      return directed || (left == EdgeMark::Tail && right == EdgeMark::Tail);
    case GraphClass::Pag:
      return !(left == EdgeMark::Tail && right == EdgeMark::Tail);
  }
  return false;
}

}  // namespace

MixedGraph parse_graph(std::string_view text) {
  std::optional<GraphClass> cls;
  std::vector<std::string> nodes;
  std::vector<NamedEdge> edges;
  std::set<std::pair<std::string, std::string>> seen_pairs;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;

    if (!cls) {
      cls = graph_class_from_token(tokens[0].text);
      if (!cls) {
        throw ParseError(line_no, tokens[0].column,
                         "expected graph class 'dag', 'mpdag' or 'pag', got '" + std::string(tokens[0].text) + "'");
      }
      if (tokens.size() > 1) throw ParseError(line_no, tokens[1].column, "unexpected token after graph class");
      continue;
    }

    if (tokens[0].text == "node") {
      if (tokens.size() != 2) {
        throw ParseError(line_no, tokens.size() < 2 ? tokens[0].column : tokens[2].column,
                         "expected 'node <name>'");
      }
      check_name(tokens[1], line_no);
      nodes.emplace_back(tokens[1].text);
      continue;
    }

    if (tokens.size() != 3) {
      throw ParseError(line_no, tokens[0].column, "expected '<node> <edge> <node>' or 'node <name>'");
    }
    check_name(tokens[0], line_no);
    check_name(tokens[2], line_no);
    const EdgeToken* et = find_edge_token(tokens[1].text);
    if (!et) {
      throw ParseError(line_no, tokens[1].column, "unknown edge token '" + std::string(tokens[1].text) + "'");
    }
    if (!mark_legal(*cls, et->at_left, et->at_right)) {
      throw GraphError(GraphError::Kind::IllegalMark, "line " + std::to_string(line_no) + ": edge '" +
                                                          std::string(et->text) + "' not allowed in a " +
                                                          std::string(to_string(*cls)));
    }
    std::string a(tokens[0].text);
    std::string b(tokens[2].text);
    if (a == b) {
      throw GraphError(GraphError::Kind::SelfLoop, "line " + std::to_string(line_no) + ": self loop at '" + a + "'");
    }
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    if (!seen_pairs.insert(key).second) {
      throw GraphError(GraphError::Kind::DuplicateEdge, "line " + std::to_string(line_no) +
                                                            ": duplicate edge between '" + key.first + "' and '" +
                                                            key.second + "'");
    }
    edges.push_back(NamedEdge{std::move(a), std::move(b), et->at_left, et->at_right});
  }

  if (!cls) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing graph class header");
  return MixedGraph::create(*cls, std::move(nodes), edges);
}

std::string edge_line(const MixedGraph& g, const Edge& e) {
  const std::string& a = g.name(e.a);
  const std::string& b = g.name(e.b);
  const EdgeMark ma = e.mark_at_a;
  const EdgeMark mb = e.mark_at_b;
  using M = EdgeMark;
  if (ma == M::Tail && mb == M::Arrow) return a + " -> " + b;
  if (ma == M::Arrow && mb == M::Tail) return b + " -> " + a;
  if (ma == M::Tail && mb == M::Tail) return a + " -- " + b;
  if (ma == M::Arrow && mb == M::Arrow) return a + " <-> " + b;
  if (ma == M::Circle && mb == M::Arrow) return a + " o-> " + b;
  if (ma == M::Arrow && mb == M::Circle) return b + " o-> " + a;
  if (ma == M::Circle && mb == M::Circle) return a + " o-o " + b;
  throw GraphError(GraphError::Kind::IllegalMark, "edge " + a + " - " + b + " has no text form");
}

std::string serialize_graph(const MixedGraph& g) {
  std::string out(to_string(g.graph_class()));
  out += '\n';
  for (NodeIndex v = 0; v < g.size(); ++v) {
    if (g.neighbors(v).empty()) out += "node " + g.name(v) + '\n';
  }
  for (const Edge& e : g.edges()) out += edge_line(g, e) + '\n';
  return out;
}

MixedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

}  // namespace cadjust
