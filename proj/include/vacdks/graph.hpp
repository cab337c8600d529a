#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vacdks {

using VertexId = std::int32_t;

// Sorted list of distinct vertex ids.
using VertexSet = std::vector<VertexId>;

// Raised by the file loaders. `line()` is 1-based, 0 when the error is not
// tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Edge {
  VertexId u;
  VertexId v;
  double w;
};

// Undirected simple graph with positive edge weights, stored as a symmetric
// CSR structure with sorted neighbor lists. Unweighted graphs keep no weight
// array; every stored edge then has weight 1.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Throws std::invalid_argument on self-loops, duplicate edges (in either
  // orientation), out-of-range ids, or non-positive weights. When `weighted`
  // is false the `w` fields are ignored.
  static WeightedGraph from_edges(VertexId n, std::span<const Edge> edges, bool weighted);

  VertexId num_vertices() const { return n_; }
  std::size_t num_edges() const { return m_; }
  bool is_weighted() const { return weighted_flag_; }

  // Largest edge weight; 1 for unweighted graphs with edges, 0 for m = 0.
  double max_weight() const { return w_max_; }

  std::size_t degree(VertexId v) const {
    return static_cast<std::size_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], degree(v)};
  }
  // Parallel to neighbors(v); empty for unweighted graphs.
  std::span<const double> neighbor_weights(VertexId v) const {
    if (weights_.empty()) return {};
    return {weights_.data() + offsets_[v], degree(v)};
  }

  // Weight of edge (u, v) or 0 when absent. O(log deg(u)).
  double weight(VertexId u, VertexId v) const;

  double weighted_degree(VertexId v) const;

  template <class Fn>
  void for_each_neighbor(VertexId v, Fn&& fn) const {
    const auto begin = offsets_[v];
    const auto end = offsets_[v + 1];
    if (weights_.empty()) {
      for (auto i = begin; i < end; ++i) fn(adjacency_[i], 1.0);
    } else {
      for (auto i = begin; i < end; ++i) fn(adjacency_[i], weights_[i]);
    }
  }

  // y = (A + diag * I) x. Each row is summed over neighbors in ascending id
  // order, then the diagonal term is added.
  void multiply(std::span<const double> x, std::span<double> y, double diag = 0.0) const;

  // Each undirected edge once, u < v, in (u, v) lexicographic order.
  std::vector<Edge> edge_list() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  VertexId n_ = 0;
  std::size_t m_ = 0;
  double w_max_ = 0.0;
  bool weighted_flag_ = false;
  std::vector<std::int64_t> offsets_{0};
  std::vector<VertexId> adjacency_;
  std::vector<double> weights_;
};

// Partition of the vertex set into groups C_0 .. C_{r-1}.
class AttributeAssignment {
 public:
  AttributeAssignment() = default;

  // labels[v] must lie in [0, num_groups). Groups may be empty.
  AttributeAssignment(std::vector<int> labels, int num_groups);

  static AttributeAssignment single_group(VertexId n);

  VertexId num_vertices() const { return static_cast<VertexId>(labels_.size()); }
  int num_groups() const { return static_cast<int>(groups_.size()); }
  int label(VertexId v) const { return labels_[v]; }
  const std::vector<int>& labels() const { return labels_; }
  const VertexSet& group(int i) const { return groups_[i]; }
  const std::vector<VertexSet>& groups() const { return groups_; }

  // Members of `s` falling in each group.
  std::vector<int> group_counts(std::span<const VertexId> s) const;

  friend bool operator==(const AttributeAssignment&, const AttributeAssignment&) = default;

 private:
  std::vector<int> labels_;
  std::vector<VertexSet> groups_;
};

// Sum of edge weights with both endpoints in `s`. Throws std::out_of_range
// for ids outside [0, n) and std::invalid_argument for repeated ids.
double induced_weight(const WeightedGraph& g, std::span<const VertexId> s);

// ---------------------------------------------------------------------------
// File formats
//
// Edge list: one edge per line, "u v" or "u v w", whitespace separated,
// 0-based ids, lines starting with '#' and blank lines ignored.
// Attributes: one "vertex group" pair per line, same conventions.

// The vertex count is max id + 1, raised to `min_vertices` when larger.
// Without `unweighted_default`, a line lacking a weight is a parse error.
// The graph is unweighted when no line carries an explicit weight.
WeightedGraph load_edge_list(const std::filesystem::path& path, bool unweighted_default,
                             VertexId min_vertices = 0);
WeightedGraph parse_edge_list(std::istream& in, bool unweighted_default,
                              VertexId min_vertices = 0);

// Group values are arbitrary integers, renumbered 0..r-1 in order of first
// appearance.
AttributeAssignment load_attributes(const std::filesystem::path& path, VertexId n);
AttributeAssignment parse_attributes(std::istream& in, VertexId n);

// Largest vertex id mentioned in an attribute file, plus one.
VertexId count_attribute_vertices(const std::filesystem::path& path);

void write_edge_list(std::ostream& out, const WeightedGraph& g);
void write_attributes(std::ostream& out, const AttributeAssignment& attr);

// ---------------------------------------------------------------------------
// Planted-clique generator

struct PlantedCliqueConfig {
  VertexId n = 0;
  double p = 0.0;
  int k = 0;
  int r = 1;
  bool weighted = false;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument when k > n, k % r != 0, or p outside [0, 1].
  void validate() const;
};

struct PlantedInstance {
  WeightedGraph graph;
  AttributeAssignment attributes;
  VertexSet planted;
};

// G(n, p) background, uniform group labels, and a clique on k/r vertices per
// group. Background weights are uniform on [0.8, 1) when weighted; clique
// edges always weigh 1. Identical output for identical configs.
PlantedInstance generate_planted_clique(const PlantedCliqueConfig& cfg);

}  // namespace vacdks
