#pragma once

#include <string>
#include <string_view>

#include "bibliorank/csv.hpp"
#include "bibliorank/errors.hpp"
#include "bibliorank/graph.hpp"
#include "bibliorank/text.hpp"

namespace bibliorank {

namespace detail {

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace detail

inline std::string graph_to_dot(const WeightedGraph& g) {
  std::string out = "graph G {\n";
  for (const auto& n : g.nodes)
    out += "  " + detail::dot_quote(n.key) + " [weight=" + format_number(n.weight) + "];\n";
  for (const auto& e : g.edges)
    out += "  " + detail::dot_quote(g.nodes[e.a].key) + " -- " + detail::dot_quote(g.nodes[e.b].key) +
           " [weight=" + format_number(e.weight) + "];\n";
  out += "}\n";
  return out;
}

inline std::string graph_to_graphml(const WeightedGraph& g) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      "  <key id=\"w\" for=\"node\" attr.name=\"weight\" attr.type=\"double\"/>\n"
      "  <key id=\"ew\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
      "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    out += "    <node id=\"n" + std::to_string(i) + "\" label=\"" + detail::xml_escape(g.nodes[i].key) +
           "\"><data key=\"w\">" + format_number(g.nodes[i].weight) + "</data></node>\n";
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    out += "    <edge id=\"e" + std::to_string(i) + "\" source=\"n" + std::to_string(e.a) +
           "\" target=\"n" + std::to_string(e.b) + "\"><data key=\"ew\">" + format_number(e.weight) +
           "</data></edge>\n";
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

inline std::string graph_to_pajek(const WeightedGraph& g) {
  std::string out = "*Vertices " + std::to_string(g.nodes.size()) + "\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    out += std::to_string(i + 1) + " " + detail::dot_quote(g.nodes[i].key) + " " +
           format_number(g.nodes[i].weight) + "\n";
  out += "*Edges\n";
  for (const auto& e : g.edges)
    out += std::to_string(e.a + 1) + " " + std::to_string(e.b + 1) + " " + format_number(e.weight) + "\n";
  return out;
}

// Serialization format picked by file extension: .dot/.gv, .graphml/.xml,
// .net/.paj. Anything else is refused rather than guessed.
inline void write_graph_file(const WeightedGraph& g, const std::string& path) {
  auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : to_lower(path.substr(dot + 1));
  std::string content;
  if (ext == "dot" || ext == "gv") content = graph_to_dot(g);
  else if (ext == "graphml" || ext == "xml") content = graph_to_graphml(g);
  else if (ext == "net" || ext == "paj") content = graph_to_pajek(g);
  else throw ValidationError("unknown graph format for '" + path + "' (use .dot, .graphml, or .net)");
  write_file(path, content);
}

}  // namespace bibliorank
