#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zmod/graph.hpp"
#include "zmod/partition.hpp"
#include "zmod/random.hpp"

namespace zmod {

// A generated graph with its planted structure and named reference divisions.
struct LabeledGraph {
  std::string family;
  std::map<std::string, std::int64_t> params;
  Graph graph;
  std::optional<Partition> ground_truth;
  std::map<std::string, Partition> named_divisions;
};

namespace detail {

inline void add_clique(std::vector<std::pair<Vertex, Vertex>>& edges, Vertex first, std::size_t size) {
  for (Vertex i = 0; i < size; ++i)
    for (Vertex j = i + 1; j < size; ++j) edges.emplace_back(first + i, first + j);
}

}  // namespace detail

// q cliques K_p on a ring. Clique i holds vertices i*p .. i*p+p-1; its vertex 0
// is bridged to vertex 1 of clique i+1 (mod q).
inline LabeledGraph ring_of_cliques(std::size_t p, std::size_t q) {
  if (p < 3 || q < 2) throw std::invalid_argument("ring_of_cliques needs p >= 3 and q >= 2");
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(q * (1 + p * (p - 1) / 2));
  for (std::size_t i = 0; i < q; ++i) detail::add_clique(edges, i * p, p);
  for (std::size_t i = 0; i < q; ++i) edges.emplace_back(i * p, ((i + 1) % q) * p + 1);

  std::vector<std::size_t> clique(p * q);
  for (Vertex v = 0; v < clique.size(); ++v) clique[v] = v / p;

  LabeledGraph lg{"ring", {{"p", static_cast<std::int64_t>(p)}, {"q", static_cast<std::int64_t>(q)}},
                  build_graph(p * q, edges), Partition::from_labels(clique), {}};
  lg.named_divisions.emplace("C*", *lg.ground_truth);
  return lg;
}

// Groups consecutive cliques of a ring: group i spans the next s[i] cliques.
inline Partition ring_grouped_division(std::size_t p, std::size_t q, std::span<const std::size_t> sizes) {
  std::size_t total = 0;
  for (std::size_t s : sizes) {
    if (s == 0) throw std::invalid_argument("group sizes must be positive");
    total += s;
  }
  if (total != q) throw std::invalid_argument("group sizes must sum to the clique count");
  std::vector<std::size_t> group_of_clique;
  group_of_clique.reserve(q);
  for (std::size_t g = 0; g < sizes.size(); ++g) group_of_clique.insert(group_of_clique.end(), sizes[g], g);
  std::vector<std::size_t> labels(p * q);
  for (Vertex v = 0; v < labels.size(); ++v) labels[v] = group_of_clique[v / p];
  return Partition::from_labels(labels);
}

inline Partition ring_grouped_division(const LabeledGraph& ring, std::span<const std::size_t> sizes) {
  return ring_grouped_division(static_cast<std::size_t>(ring.params.at("p")),
                               static_cast<std::size_t>(ring.params.at("q")), sizes);
}

// Two cliques K_q (C1, C2) and two cliques K_p (C3, C4), p < q, joined in a
// cycle by four single edges: C1-C2, C2-C4, C4-C3, C3-C1. Vertex order is
// C1, C2, C3, C4.
inline LabeledGraph two_pairwise_cliques(std::size_t p, std::size_t q) {
  if (p < 3 || q <= p) throw std::invalid_argument("two_pairwise_cliques needs 3 <= p < q");
  const Vertex c1 = 0, c2 = q, c3 = 2 * q, c4 = 2 * q + p;
  std::vector<std::pair<Vertex, Vertex>> edges;
  detail::add_clique(edges, c1, q);
  detail::add_clique(edges, c2, q);
  detail::add_clique(edges, c3, p);
  detail::add_clique(edges, c4, p);
  // Port rule as in the ring: vertex 0 of one clique to vertex 1 of the next.
  edges.emplace_back(c1, c2 + 1);
  edges.emplace_back(c2, c4 + 1);
  edges.emplace_back(c4, c3 + 1);
  edges.emplace_back(c3, c1 + 1);

  const std::size_t n = 2 * (p + q);
  std::vector<std::size_t> four(n), three(n);
  for (Vertex v = 0; v < n; ++v) {
    four[v] = v < c2 ? 0 : v < c3 ? 1 : v < c4 ? 2 : 3;
    three[v] = four[v] == 3 ? 2 : four[v];
  }
  LabeledGraph lg{"twocliques", {{"p", static_cast<std::int64_t>(p)}, {"q", static_cast<std::int64_t>(q)}},
                  build_graph(n, edges), Partition::from_labels(four), {}};
  lg.named_divisions.emplace("C_A", *lg.ground_truth);
  lg.named_divisions.emplace("C_B", Partition::from_labels(three));
  return lg;
}

// Planted l-partition: n vertices in l equal consecutive groups; each
// same-group pair is an edge with probability p_in, each cross-group pair with
// probability p_out. Isolated vertices are kept.
inline LabeledGraph planted_partition(std::size_t n, std::size_t l, double p_in, double p_out,
                                      std::uint64_t seed) {
  if (l == 0 || n == 0 || n % l != 0) throw std::invalid_argument("group count must divide n");
  if (!(0.0 <= p_out && p_out < p_in && p_in <= 1.0))
    throw std::invalid_argument("need 0 <= p_out < p_in <= 1");
  const std::size_t group = n / l;

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::uint64_t attempt = 0; edges.empty(); ++attempt) {
    Rng rng(attempt == 0 ? seed : derive_seed(seed, attempt));
    std::bernoulli_distribution inside(p_in), across(p_out);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (u / group == v / group ? inside(rng) : across(rng)) edges.emplace_back(u, v);
  }

  std::vector<std::size_t> labels(n);
  for (Vertex v = 0; v < n; ++v) labels[v] = v / group;
  return LabeledGraph{"planted",
                      {{"n", static_cast<std::int64_t>(n)}, {"l", static_cast<std::int64_t>(l)}},
                      build_graph(n, edges), Partition::from_labels(labels), {}};
}

// State graph of the tower of Hanoi with d disks. A vertex is a string whose
// i-th character is the peg ('0'..'2') holding disk i (disk 0 smallest).
// Moving disk i is legal when no smaller disk sits on its source or target peg.
inline LabeledGraph hanoi_graph(std::size_t d) {
  if (d < 1 || d > 8) throw std::invalid_argument("hanoi_graph supports 1 <= d <= 8");
  std::size_t n = 1;
  for (std::size_t i = 0; i < d; ++i) n *= 3;

  std::vector<std::size_t> power(d, 1);
  for (std::size_t i = 1; i < d; ++i) power[i] = power[i - 1] * 3;
  auto peg = [&](std::size_t state, std::size_t disk) { return state / power[disk] % 3; };

  std::vector<std::string> labels(n);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < d; ++i) labels[s].push_back(static_cast<char>('0' + peg(s, i)));
    for (std::size_t disk = 0; disk < d; ++disk) {
      const std::size_t from = peg(s, disk);
      for (std::size_t to = 0; to < 3; ++to) {
        if (to == from) continue;
        bool blocked = false;
        for (std::size_t smaller = 0; smaller < disk && !blocked; ++smaller) {
          const std::size_t at = peg(s, smaller);
          blocked = at == from || at == to;
        }
        if (blocked) continue;
        const std::size_t t = s + (to * power[disk]) - (from * power[disk]);
        if (s < t) edges.emplace_back(s, t);
      }
    }
  }
  return LabeledGraph{"hanoi", {{"d", static_cast<std::int64_t>(d)}}, build_graph(n, edges, labels),
                      std::nullopt, {}};
}

}  // namespace zmod
