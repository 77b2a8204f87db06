#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cadjust/graph.hpp"

namespace cadjust {

/// Syntax error in graph text; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses the line-oriented graph format:
///
///     # comment
///     mpdag              <- header: dag | mpdag | pag
///     node V9            <- isolated node
///     A -> B             <- edge tokens: ->  --  <->  o->  o-o
///
/// Throws ParseError for syntax problems and GraphError when the graph
/// violates its class (duplicate edge, illegal mark, cycle, not Meek-closed).
MixedGraph parse_graph(std::string_view text);

/// Canonical text: header, isolated nodes in name order, then one line per
/// edge ordered by (smaller endpoint, larger endpoint).
std::string serialize_graph(const MixedGraph& g);

MixedGraph read_graph_file(const std::string& path);

/// Renders a single edge as it appears in the text format, e.g. "X o-> Y".
std::string edge_line(const MixedGraph& g, const Edge& e);

}  // namespace cadjust
