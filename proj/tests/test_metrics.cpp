#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "vacdks/metrics.hpp"

using namespace vacdks;

namespace {

WeightedGraph complete(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
  return WeightedGraph::from_edges(n, edges, false);
}

// Top two singular values of A.
std::pair<double, double> singular_pair(const oracle::Dense& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::to_eigen(a));
  Eigen::VectorXd s = es.eigenvalues().cwiseAbs();
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return {s(0), s.size() > 1 ? s(1) : 0.0};
}

}  // namespace

TEST_CASE("normalized edge weight") {
  const auto inst = generate_planted_clique({100, 0.1, 9, 3, true, 2});
  CHECK(normalized_edge_weight(inst.graph, inst.planted) == 1.0);
  const auto g = WeightedGraph::from_edges(4, {}, false);
  CHECK(normalized_edge_weight(g, VertexSet{0, 1, 2}) == 0.0);

  const std::vector<Edge> edges{{0, 1, 2.0}, {1, 2, 1.0}};
  const auto w = WeightedGraph::from_edges(3, edges, true);
  CHECK(normalized_edge_weight(w, VertexSet{0, 1, 2}) == doctest::Approx(3.0 / (2.0 * 3.0)));
  CHECK_THROWS_AS(normalized_edge_weight(w, VertexSet{0}), std::invalid_argument);
}

TEST_CASE("group proportions") {
  std::vector<int> labels(20);
  for (int v = 0; v < 20; ++v) labels[v] = v % 2;
  const AttributeAssignment two(labels, 2);
  VertexSet s(20);
  std::iota(s.begin(), s.end(), 0);
  CHECK(group_proportions(two, s) == std::vector<double>{0.5, 0.5});

  const AttributeAssignment three({0, 0, 1, 2}, 3);
  CHECK(group_proportions(three, VertexSet{0, 1}) == std::vector<double>{1.0, 0.0, 0.0});
  CHECK_THROWS_AS(group_proportions(three, VertexSet{}), std::invalid_argument);
}

TEST_CASE("recovery check") {
  CHECK(recovery_check(VertexSet{1, 4, 7}, VertexSet{7, 1, 4}));
  CHECK_FALSE(recovery_check(VertexSet{1, 4, 7}, VertexSet{1, 4, 8}));
  CHECK_FALSE(recovery_check(VertexSet{1, 4, 7}, VertexSet{1, 4}));
}

TEST_CASE("bound: complete graph with k = n is tight") {
  const auto g = complete(6);
  const auto attr = AttributeAssignment::single_group(6);
  const auto r = upper_bound(g, ConstraintSpec(6, {0}, attr));
  CHECK(r.sigma1 == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(r.term_sigma1 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.bound == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.bound <= 1.0);
}

TEST_CASE("bound: empty graph") {
  const auto g = WeightedGraph::from_edges(5, {}, false);
  const auto attr = AttributeAssignment::single_group(5);
  const auto r = upper_bound(g, ConstraintSpec(3, {0}, attr));
  CHECK(r.bound == 0.0);
  CHECK(r.sigma1 == 0.0);
  CHECK(r.sigma2 == 0.0);
}

TEST_CASE("bound: repeated top singular value is flagged") {
  std::vector<Edge> edges;
  for (int base : {0, 4})
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v) edges.push_back({base + u, base + v, 1.0});
  const auto g = WeightedGraph::from_edges(8, edges, false);
  const auto attr = AttributeAssignment::single_group(8);
  const auto r = upper_bound(g, ConstraintSpec(4, {0}, attr));
  CHECK(r.degenerate_spectrum);
  CHECK(r.sigma2 >= 3.0 - 1e-6);
  CHECK(r.sigma1 >= r.sigma2);
}

TEST_CASE("bound: spectra match a dense solver and the bound dominates the optimum") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const auto inst = oracle::random_instance(rng, 3, 9, 3, trial % 2 == 0);
    const ConstraintSpec spec(inst.k, inst.mins, inst.attrs);
    const auto a = oracle::dense(inst.graph);
    const auto r = upper_bound(inst.graph, spec);
    const auto [s1, s2] = singular_pair(a);
    CHECK(r.sigma1 == doctest::Approx(s1).epsilon(1e-6));
    if (!r.degenerate_spectrum) CHECK(r.sigma2 == doctest::Approx(s2).epsilon(1e-6));
    CHECK(r.sigma1 >= r.sigma2);
    CHECK(r.sigma2 >= 0.0);
    CHECK(r.bound == std::min({r.term_trivial, r.term_rank1, r.term_sigma1}));
    CHECK(r.bound <= 1.0);

    const auto best = oracle::best_feasible(inst.graph.num_vertices(), inst.attrs.labels(),
                                            inst.mins, inst.k,
                                            [&](const VertexSet& s) { return oracle::induced(a, s); });
    const double w = oracle::max_weight(a);
    const double normalized = best.value / (w * inst.k * (inst.k - 1) / 2.0);
    CHECK(normalized <= r.bound + 1e-9);
  }
}
