#include "vacdks/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "vacdks/rng.hpp"

namespace vacdks {

WeightedGraph WeightedGraph::from_edges(VertexId n, std::span<const Edge> edges, bool weighted) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  WeightedGraph g;
  g.n_ = n;
  g.m_ = edges.size();
  g.weighted_flag_ = weighted;

  std::vector<std::int64_t> degree(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") out of range for n = " + std::to_string(n));
    }
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (weighted && !(e.w > 0.0)) {
      throw std::invalid_argument("non-positive weight on edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ")");
    }
    ++degree[e.u];
    ++degree[e.v];
  }

  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (VertexId v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  const auto nnz = static_cast<std::size_t>(g.offsets_[n]);
  g.adjacency_.resize(nnz);
  if (weighted) g.weights_.resize(nnz);

  std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : edges) {
    const auto a = cursor[e.u]++;
    const auto b = cursor[e.v]++;
    g.adjacency_[a] = e.v;
    g.adjacency_[b] = e.u;
    if (weighted) {
      g.weights_[a] = e.w;
      g.weights_[b] = e.w;
    }
  }
  cursor.clear();
  cursor.shrink_to_fit();

  std::vector<std::pair<VertexId, double>> scratch;
  for (VertexId v = 0; v < n; ++v) {
    auto* first = g.adjacency_.data() + g.offsets_[v];
    auto* last = g.adjacency_.data() + g.offsets_[v + 1];
    if (!std::is_sorted(first, last)) {
      if (weighted) {
        double* wfirst = g.weights_.data() + g.offsets_[v];
        scratch.clear();
        for (auto* it = first; it != last; ++it) scratch.emplace_back(*it, wfirst[it - first]);
        std::sort(scratch.begin(), scratch.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i < scratch.size(); ++i) {
          first[i] = scratch[i].first;
          wfirst[i] = scratch[i].second;
        }
      } else {
        std::sort(first, last);
      }
    }
    const auto* dup = std::adjacent_find(first, last);
    if (dup != last) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(std::min(v, *dup)) + ", " +
                                  std::to_string(std::max(v, *dup)) + ")");
    }
  }

  if (g.m_ > 0) {
    g.w_max_ = weighted ? *std::max_element(g.weights_.begin(), g.weights_.end()) : 1.0;
  }
  return g;
}

double WeightedGraph::weight(VertexId u, VertexId v) const {
  const auto nbrs = neighbors(u);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return 0.0;
  if (weights_.empty()) return 1.0;
  return weights_[offsets_[u] + (it - nbrs.begin())];
}

double WeightedGraph::weighted_degree(VertexId v) const {
  if (weights_.empty()) return static_cast<double>(degree(v));
  double sum = 0.0;
  for (double w : neighbor_weights(v)) sum += w;
  return sum;
}

void WeightedGraph::multiply(std::span<const double> x, std::span<double> y, double diag) const {
  if (weights_.empty()) {
    for (VertexId v = 0; v < n_; ++v) {
      double acc = 0.0;
      for (auto i = offsets_[v]; i < offsets_[v + 1]; ++i) acc += x[adjacency_[i]];
      y[v] = acc + diag * x[v];
    }
  } else {
    for (VertexId v = 0; v < n_; ++v) {
      double acc = 0.0;
      for (auto i = offsets_[v]; i < offsets_[v + 1]; ++i) acc += weights_[i] * x[adjacency_[i]];
      y[v] = acc + diag * x[v];
    }
  }
}

std::vector<Edge> WeightedGraph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (VertexId u = 0; u < n_; ++u) {
    for_each_neighbor(u, [&](VertexId v, double w) {
      if (u < v) out.push_back({u, v, w});
    });
  }
  return out;
}

AttributeAssignment::AttributeAssignment(std::vector<int> labels, int num_groups)
    : labels_(std::move(labels)), groups_(static_cast<std::size_t>(std::max(num_groups, 0))) {
  if (num_groups < 1) throw std::invalid_argument("at least one group is required");
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    const int label = labels_[v];
    if (label < 0 || label >= num_groups) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " has group " +
                                  std::to_string(label) + " outside [0, " +
                                  std::to_string(num_groups) + ")");
    }
    groups_[label].push_back(static_cast<VertexId>(v));
  }
}

AttributeAssignment AttributeAssignment::single_group(VertexId n) {
  return AttributeAssignment(std::vector<int>(static_cast<std::size_t>(n), 0), 1);
}

std::vector<int> AttributeAssignment::group_counts(std::span<const VertexId> s) const {
  std::vector<int> counts(groups_.size(), 0);
  for (VertexId v : s) {
    if (v < 0 || v >= num_vertices()) throw std::out_of_range("vertex id out of range");
    ++counts[labels_[v]];
  }
  return counts;
}

double induced_weight(const WeightedGraph& g, std::span<const VertexId> s) {
  std::vector<char> in_set(static_cast<std::size_t>(g.num_vertices()), 0);
  for (VertexId v : s) {
    if (v < 0 || v >= g.num_vertices()) {
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    }
    if (in_set[v]) throw std::invalid_argument("vertex " + std::to_string(v) + " repeated");
    in_set[v] = 1;
  }
  double total = 0.0;
  for (VertexId u : s) {
    g.for_each_neighbor(u, [&](VertexId v, double w) {
      if (u < v && in_set[v]) total += w;
    });
  }
  return total;
}

// ---------------------------------------------------------------------------
// Loaders

namespace {

struct LineTokens {
  std::string_view fields[4];
  int count = 0;
};

// Splits on spaces and tabs; more than three fields reports count 4.
LineTokens tokenize(std::string_view line) {
  LineTokens out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (out.count < 4) out.fields[out.count] = line.substr(i, j - i);
    ++out.count;
    i = j;
  }
  if (out.count > 4) out.count = 4;
  return out;
}

bool is_skippable(const LineTokens& t) { return t.count == 0 || t.fields[0].front() == '#'; }

template <class Int>
Int parse_int(std::string_view field, std::size_t line_no, const char* what) {
  Int value{};
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("line " + std::to_string(line_no) + ": invalid " + what + " '" +
                         std::string(field) + "'",
                     line_no);
  }
  return value;
}

double parse_weight(std::string_view field, std::size_t line_no) {
  // std::from_chars for double is unavailable in some libstdc++ builds.
  const std::string text(field);
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty() || !std::isfinite(value)) {
    throw ParseError("line " + std::to_string(line_no) + ": invalid weight '" + text + "'",
                     line_no);
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

WeightedGraph parse_edge_list(std::istream& in, bool unweighted_default, VertexId min_vertices) {
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  bool any_weight = false;
  VertexId max_id = -1;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto t = tokenize(line);
    if (is_skippable(t)) continue;
    if (t.count < 2 || t.count > 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'u v' or 'u v w'",
                       line_no);
    }
    const auto u = parse_int<VertexId>(t.fields[0], line_no, "vertex id");
    const auto v = parse_int<VertexId>(t.fields[1], line_no, "vertex id");
    if (u < 0 || v < 0) {
      throw ParseError("line " + std::to_string(line_no) + ": negative vertex id", line_no);
    }
    if (u == v) {
      throw ParseError("line " + std::to_string(line_no) + ": self-loop at vertex " +
                           std::to_string(u),
                       line_no);
    }
    double w = 1.0;
    if (t.count == 3) {
      w = parse_weight(t.fields[2], line_no);
      if (!(w > 0.0)) {
        throw ParseError("line " + std::to_string(line_no) + ": non-positive weight", line_no);
      }
      any_weight = true;
    } else if (!unweighted_default) {
      throw ParseError("line " + std::to_string(line_no) + ": missing weight", line_no);
    }
    edges.push_back({u, v, w});
    edge_lines.push_back(line_no);
    max_id = std::max({max_id, u, v});
  }

  // Duplicates are reported with the line of the second occurrence.
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto key = [&](std::size_t i) {
    return std::pair(std::min(edges[i].u, edges[i].v), std::max(edges[i].u, edges[i].v));
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ka = key(a);
    const auto kb = key(b);
    return ka != kb ? ka < kb : a < b;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (key(order[i]) == key(order[i - 1])) {
      const auto [a, b] = key(order[i]);
      const auto ln = edge_lines[order[i]];
      throw ParseError("line " + std::to_string(ln) + ": duplicate edge (" + std::to_string(a) +
                           ", " + std::to_string(b) + ")",
                       ln);
    }
  }

  const VertexId n = std::max(max_id + 1, min_vertices);
  return WeightedGraph::from_edges(n, edges, any_weight);
}

WeightedGraph load_edge_list(const std::filesystem::path& path, bool unweighted_default,
                             VertexId min_vertices) {
  auto in = open_input(path);
  return parse_edge_list(in, unweighted_default, min_vertices);
}

AttributeAssignment parse_attributes(std::istream& in, VertexId n) {
  constexpr int kUnlabeled = -1;
  std::vector<int> labels(static_cast<std::size_t>(n), kUnlabeled);
  std::unordered_map<long long, int> dense;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto t = tokenize(line);
    if (is_skippable(t)) continue;
    if (t.count != 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'vertex group'", line_no);
    }
    const auto v = parse_int<long long>(t.fields[0], line_no, "vertex id");
    const auto group = parse_int<long long>(t.fields[1], line_no, "group");
    if (v < 0 || v >= n) {
      throw ParseError("line " + std::to_string(line_no) + ": vertex " + std::to_string(v) +
                           " out of range [0, " + std::to_string(n) + ")",
                       line_no);
    }
    if (labels[v] != kUnlabeled) {
      throw ParseError("line " + std::to_string(line_no) + ": vertex " + std::to_string(v) +
                           " labeled twice",
                       line_no);
    }
    const auto [it, inserted] = dense.emplace(group, static_cast<int>(dense.size()));
    labels[v] = it->second;
  }

  for (VertexId v = 0; v < n; ++v) {
    if (labels[v] == kUnlabeled) {
      throw ParseError("vertex " + std::to_string(v) + " unlabeled", 0);
    }
  }
  return AttributeAssignment(std::move(labels), std::max<int>(1, static_cast<int>(dense.size())));
}

AttributeAssignment load_attributes(const std::filesystem::path& path, VertexId n) {
  auto in = open_input(path);
  return parse_attributes(in, n);
}

VertexId count_attribute_vertices(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  long long max_id = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = tokenize(line);
    if (is_skippable(t)) continue;
    if (t.count != 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'vertex group'", line_no);
    }
    max_id = std::max(max_id, parse_int<long long>(t.fields[0], line_no, "vertex id"));
  }
  if (max_id >= std::numeric_limits<VertexId>::max()) {
    throw ParseError("vertex id exceeds supported range", 0);
  }
  return static_cast<VertexId>(max_id + 1);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  char buffer[64];
  for (const auto& e : g.edge_list()) {
    out << e.u << ' ' << e.v;
    if (g.is_weighted()) {
      // Shortest representation that reads back to the same double.
      auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, e.w);
      out << ' ' << std::string_view(buffer, static_cast<std::size_t>(ptr - buffer));
    }
    out << '\n';
  }
}

void write_attributes(std::ostream& out, const AttributeAssignment& attr) {
  for (VertexId v = 0; v < attr.num_vertices(); ++v) out << v << ' ' << attr.label(v) << '\n';
}

// ---------------------------------------------------------------------------
// Generator

void PlantedCliqueConfig::validate() const {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (r < 1) throw std::invalid_argument("r must be positive");
  if (k < 0 || k > n) throw std::invalid_argument("k must lie in [0, n]");
  if (k % r != 0) throw std::invalid_argument("k must be divisible by r");
}

namespace {

constexpr VertexId kPairwiseLimit = 2000;

// Calls emit(u, v) with u < v for each pair kept with probability p.
template <class Emit>
void sample_gnp(VertexId n, double p, Rng& rng, Emit&& emit) {
  if (p <= 0.0 || n < 2) return;
  if (p >= 1.0) {
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v) emit(u, v);
    return;
  }
  if (n <= kPairwiseLimit) {
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v)
        if (rng.uniform01() < p) emit(u, v);
    return;
  }
  // Geometric skips over the pairs (w, v), w < v, ordered by v then w.
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double skip = std::floor(std::log1p(-rng.uniform01()) / log_q);
    w += 1 + static_cast<std::int64_t>(std::min(skip, 4.0e18));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) emit(static_cast<VertexId>(w), static_cast<VertexId>(v));
  }
}

}  // namespace

PlantedInstance generate_planted_clique(const PlantedCliqueConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);

  std::vector<int> labels(static_cast<std::size_t>(cfg.n));
  for (auto& label : labels) label = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.r)));
  // Number groups by first appearance, as the attribute reader does, so an
  // instance and its files agree on group ids.
  std::vector<int> rename(static_cast<std::size_t>(cfg.r), -1);
  int next = 0;
  for (auto& label : labels) {
    if (rename[label] < 0) rename[label] = next++;
    label = rename[label];
  }
  AttributeAssignment attributes(std::move(labels), cfg.r);

  const int per_group = cfg.k / cfg.r;
  VertexSet planted;
  planted.reserve(static_cast<std::size_t>(cfg.k));
  for (int i = 0; i < cfg.r; ++i) {
    VertexSet members = attributes.group(i);
    if (static_cast<int>(members.size()) < per_group) {
      throw std::invalid_argument("group " + std::to_string(i) + " received " +
                                  std::to_string(members.size()) + " vertices, fewer than k/r = " +
                                  std::to_string(per_group));
    }
    rng.shuffle(std::span<VertexId>(members));
    planted.insert(planted.end(), members.begin(), members.begin() + per_group);
  }
  std::sort(planted.begin(), planted.end());

  std::vector<char> in_clique(static_cast<std::size_t>(cfg.n), 0);
  for (VertexId v : planted) in_clique[v] = 1;

  std::vector<Edge> edges;
  const double expected = cfg.p * 0.5 * static_cast<double>(cfg.n) * (cfg.n - 1.0);
  edges.reserve(static_cast<std::size_t>(expected * 1.01) + 1024);
  sample_gnp(cfg.n, cfg.p, rng, [&](VertexId u, VertexId v) {
    // The weight is drawn for every sampled pair so the stream does not
    // depend on which pairs fall inside the clique.
    double w = 1.0;
    if (cfg.weighted) {
      // 0.8 + 0.2u can round up to 1.0 for u close to 1.
      w = std::min(rng.uniform(0.8, 1.0), std::nextafter(1.0, 0.0));
    }
    if (in_clique[u] && in_clique[v]) return;
    edges.push_back({u, v, w});
  });
  for (std::size_t a = 0; a < planted.size(); ++a)
    for (std::size_t b = a + 1; b < planted.size(); ++b) edges.push_back({planted[a], planted[b], 1.0});

  auto graph = WeightedGraph::from_edges(cfg.n, edges, cfg.weighted);
  return {std::move(graph), std::move(attributes), std::move(planted)};
}

}  // namespace vacdks
