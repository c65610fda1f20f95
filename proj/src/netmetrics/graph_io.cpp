#include <ostream>
#include <string_view>

#include "tenet/csv.hpp"
#include "tenet/netmetrics.hpp"

namespace tenet {

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
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

std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string sector_of(const SectorTaxonomy* taxonomy, const std::string& label) {
  if (taxonomy == nullptr) return {};
  return taxonomy->contains(label) ? taxonomy->at(label).sector : std::string{};
}

}  // namespace

void write_graphml(std::ostream& out, const AssetGraph& graph,
                   const std::vector<std::string>& labels, const SectorTaxonomy* taxonomy) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"ticker\" for=\"node\" attr.name=\"ticker\" attr.type=\"string\"/>\n"
      << "  <key id=\"sector\" for=\"node\" attr.name=\"sector\" attr.type=\"string\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
  if (graph.directed) {
    out << "  <key id=\"reciprocal\" for=\"edge\" attr.name=\"reciprocal\" "
           "attr.type=\"boolean\"/>\n";
  }
  out << "  <graph id=\"G\" edgedefault=\"" << (graph.directed ? "directed" : "undirected")
      << "\">\n";
  for (std::size_t node : graph.nodes) {
    const std::string& label = labels.at(node);
    out << "    <node id=\"n" << node << "\">\n"
        << "      <data key=\"ticker\">" << xml_escape(label) << "</data>\n";
    if (taxonomy != nullptr) {
      out << "      <data key=\"sector\">" << xml_escape(sector_of(taxonomy, label)) << "</data>\n";
    }
    out << "    </node>\n";
  }
  std::size_t id = 0;
  for (const auto& e : graph.edges) {
    out << "    <edge id=\"e" << id++ << "\" source=\"n" << e.from << "\" target=\"n" << e.to
        << "\">\n"
        << "      <data key=\"weight\">" << csv::format_double(e.weight) << "</data>\n";
    if (graph.directed) {
      out << "      <data key=\"reciprocal\">" << (e.reciprocal ? "true" : "false") << "</data>\n";
    }
    out << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_dot(std::ostream& out, const AssetGraph& graph, const std::vector<std::string>& labels,
               const SectorTaxonomy* taxonomy) {
  out << (graph.directed ? "digraph" : "graph") << " asset_graph {\n";
  for (std::size_t node : graph.nodes) {
    const std::string& label = labels.at(node);
    out << "  n" << node << " [label=" << dot_quote(label) << ", ticker=" << dot_quote(label);
    if (taxonomy != nullptr) out << ", sector=" << dot_quote(sector_of(taxonomy, label));
    out << "];\n";
  }
  const char* arrow = graph.directed ? " -> " : " -- ";
  for (const auto& e : graph.edges) {
    // Reciprocal pairs are drawn once, as a line without arrows.
    if (e.reciprocal && e.from > e.to) continue;
    out << "  n" << e.from << arrow << "n" << e.to << " [weight=" << csv::format_double(e.weight);
    if (graph.directed) {
      out << ", reciprocal=" << (e.reciprocal ? "true" : "false");
      if (e.reciprocal) out << ", dir=none";
    }
    out << "];\n";
  }
  out << "}\n";
}

}  // namespace tenet
