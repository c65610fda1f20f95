#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tenet/corpus.hpp"
#include "tenet/correlate.hpp"
#include "tenet/types.hpp"

namespace tenet {

struct DistanceMatrix {
  std::vector<Variable> variables;
  Matrix values;

  std::size_t size() const { return variables.size(); }
};

// d = sqrt(2 (1 - C)), in [0, 2].
DistanceMatrix correlation_distance(const CorrelationMatrix& corr);

struct TeDistance {
  DistanceMatrix distance;
  // Off-diagonal normalized values above 1 that were clamped.
  std::size_t clamped = 0;
};

// Mantegna distance applied to column-normalized S21, then symmetrized by
// keeping the smaller of d(i, j) and d(j, i).
TeDistance te_distance(const Matrix& normalized_s21, const std::vector<Variable>& variables);

// Row sums, self-term included.
Vector node_strength(const Matrix& matrix);
Vector node_strength(const CorrelationMatrix& corr);

struct InOutStrength {
  Vector in;   // column sums: everything flowing into j
  Vector out;  // row sums: everything leaving i
};

// Entry (i, j) is the weight of the edge i -> j.
InOutStrength in_out_node_strength(const Matrix& directed);

struct GraphEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  double weight = 0.0;
  // Directed graphs only: the opposite edge also passed the threshold.
  bool reciprocal = false;
};

// Threshold-filtered graph over matrix indices. Nodes are the indices that
// keep at least one edge, ascending; undirected edges have from < to.
struct AssetGraph {
  std::vector<std::size_t> nodes;
  std::vector<GraphEdge> edges;
  bool directed = false;
};

// Keeps edges with weight >= threshold, ignoring the diagonal.
AssetGraph asset_graph(const Matrix& matrix, double threshold, bool directed);

// Weakly connected components, largest first, ties by smallest member.
// Members are matrix indices, ascending.
std::vector<std::vector<std::size_t>> connected_components(const AssetGraph& graph);

// One index series per sector: the members' returns weighted by the leading
// eigenvector of their correlation matrix (sign chosen so its entries sum
// positive). Sectors appear in order of their first member in the panel.
ReturnPanel sector_index(const ReturnPanel& panel, const SectorTaxonomy& taxonomy);

// Leading eigenvector of a symmetric matrix with a positive entry sum.
Vector leading_eigenvector(const Matrix& symmetric);

// GraphML / DOT export. `labels` names every matrix index; the taxonomy, when
// given, adds a sector attribute per node.
void write_graphml(std::ostream& out, const AssetGraph& graph,
                   const std::vector<std::string>& labels,
                   const SectorTaxonomy* taxonomy = nullptr);
void write_dot(std::ostream& out, const AssetGraph& graph, const std::vector<std::string>& labels,
               const SectorTaxonomy* taxonomy = nullptr);

}  // namespace tenet
