#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "zmod/graph.hpp"
#include "zmod/partition.hpp"

namespace zmod {

enum class Objective { modularity, z_modularity };

inline std::string_view to_string(Objective o) {
  return o == Objective::modularity ? "modularity" : "zmodularity";
}

// The two global sums every quality value depends on:
//   intra_edges   = sum over communities of m_C (edges inside C)
//   sq_degree_sum = sum over communities of D_C^2 (D_C = degree sum of C)
// Both are exact integers.
struct Aggregates {
  std::uint64_t intra_edges = 0;
  std::uint64_t sq_degree_sum = 0;

  friend bool operator==(const Aggregates&, const Aggregates&) = default;
};

// Probability that a degree-preserving random edge lands inside a community.
inline double null_probability(const Aggregates& a, std::uint64_t m) {
  const double two_m = 2.0 * static_cast<double>(m);
  return static_cast<double>(a.sq_degree_sum) / (two_m * two_m);
}

// Q = sum_C (m_C/m - (D_C/2m)^2)
inline double modularity(const Aggregates& a, std::uint64_t m) {
  return static_cast<double>(a.intra_edges) / static_cast<double>(m) - null_probability(a, m);
}

// Z = (sum_C m_C/m - p) / sqrt(p (1 - p)). The numerator is Q. At p = 1 (all
// degree in one community) Z is taken as its limit 0.
inline double z_modularity(const Aggregates& a, std::uint64_t m) {
  if (a.sq_degree_sum == 4 * m * m) return 0.0;
  const double p = null_probability(a, m);
  return modularity(a, m) / std::sqrt(p * (1.0 - p));
}

inline double evaluate(Objective o, const Aggregates& a, std::uint64_t m) {
  return o == Objective::modularity ? modularity(a, m) : z_modularity(a, m);
}

struct MoveDelta {
  double delta_q = 0.0;
  double delta_z = 0.0;
};

// Partition of a graph together with per-community edge and degree counts,
// updated incrementally as vertices move. Single owner; the graph is shared.
class QualityState {
 public:
  QualityState(const Graph& g, Partition p) : graph_(&g), partition_(std::move(p)) { rebuild(); }

  const Graph& graph() const noexcept { return *graph_; }
  const Partition& partition() const noexcept { return partition_; }
  std::uint64_t edge_count() const noexcept { return graph_->edge_count(); }

  std::uint64_t edges_within(Community c) const { return edges_within_[c]; }
  std::uint64_t degree_sum(Community c) const { return degree_sum_[c]; }
  const Aggregates& aggregates() const noexcept { return totals_; }

  double null_probability() const { return zmod::null_probability(totals_, edge_count()); }
  double modularity() const { return zmod::modularity(totals_, edge_count()); }
  double z_modularity() const { return zmod::z_modularity(totals_, edge_count()); }
  double value(Objective o) const { return evaluate(o, totals_, edge_count()); }

  // Aggregates after moving v into target (count() means a new community),
  // without changing the state. O(deg v).
  Aggregates preview_move(Vertex v, Community target) const {
    const Community source = partition_.community_of(v);
    if (target == source) return totals_;
    const auto [to_source, to_target] = links(v, source, target);
    const std::uint64_t d = graph_->degree(v);
    const std::uint64_t ds = degree_sum_[source];
    const std::uint64_t dt = target < degree_sum_.size() ? degree_sum_[target] : 0;
    Aggregates next = totals_;
    next.intra_edges = next.intra_edges - to_source + to_target;
    next.sq_degree_sum = next.sq_degree_sum - ds * ds - dt * dt + (ds - d) * (ds - d) + (dt + d) * (dt + d);
    return next;
  }

  MoveDelta apply_move(Vertex v, Community target) {
    const Community source = partition_.community_of(v);
    if (target == source) return {};
    const double q0 = modularity();
    const double z0 = z_modularity();

    const auto [to_source, to_target] = links(v, source, target);
    const std::uint64_t d = graph_->degree(v);
    if (target == edges_within_.size()) {
      edges_within_.push_back(0);
      degree_sum_.push_back(0);
    }
    const std::uint64_t ds = degree_sum_[source];
    const std::uint64_t dt = degree_sum_[target];
    totals_.intra_edges = totals_.intra_edges - to_source + to_target;
    totals_.sq_degree_sum =
        totals_.sq_degree_sum - ds * ds - dt * dt + (ds - d) * (ds - d) + (dt + d) * (dt + d);
    edges_within_[source] -= to_source;
    edges_within_[target] += to_target;
    degree_sum_[source] -= d;
    degree_sum_[target] += d;

    const Community vacated = partition_.move(v, target);
    if (vacated != npos) {
      edges_within_[vacated] = edges_within_.back();
      degree_sum_[vacated] = degree_sum_.back();
      edges_within_.pop_back();
      degree_sum_.pop_back();
    }
    return {modularity() - q0, z_modularity() - z0};
  }

  // Number of edges joining communities a and b. O(volume of the smaller).
  std::uint64_t edges_between(Community a, Community b) const {
    if (partition_.size_of(a) > partition_.size_of(b)) std::swap(a, b);
    std::uint64_t count = 0;
    for (Vertex u : partition_.members(a))
      for (Vertex w : graph_->neighbors(u))
        if (partition_.community_of(w) == b) ++count;
    return count;
  }

  Aggregates preview_merge(Community a, Community b) const {
    if (a == b) return totals_;
    Aggregates next = totals_;
    next.intra_edges += edges_between(a, b);
    next.sq_degree_sum += 2 * degree_sum_[a] * degree_sum_[b];
    return next;
  }

  // Moves every member of the smaller community into the larger one.
  void merge(Community a, Community b) {
    if (a == b) return;
    if (partition_.size_of(a) > partition_.size_of(b)) std::swap(a, b);
    std::vector<Vertex> moving(partition_.members(a).begin(), partition_.members(a).end());
    const Vertex anchor = partition_.members(b).front();
    for (Vertex v : moving) apply_move(v, partition_.community_of(anchor));
  }

  // Recomputes every counter from scratch and compares with the maintained
  // values.
  bool consistent() const {
    if (!partition_.valid()) return false;
    QualityState fresh(*graph_, partition_);
    return fresh.edges_within_ == edges_within_ && fresh.degree_sum_ == degree_sum_ &&
           fresh.totals_ == totals_;
  }

 private:
  std::pair<std::uint64_t, std::uint64_t> links(Vertex v, Community source, Community target) const {
    std::uint64_t to_source = 0, to_target = 0;
    for (Vertex w : graph_->neighbors(v)) {
      const Community c = partition_.community_of(w);
      if (c == source) ++to_source;
      else if (c == target) ++to_target;
    }
    return {to_source, to_target};
  }

  void rebuild() {
    const std::size_t k = partition_.count();
    edges_within_.assign(k, 0);
    degree_sum_.assign(k, 0);
    for (Vertex v = 0; v < graph_->vertex_count(); ++v) {
      const Community c = partition_.community_of(v);
      degree_sum_[c] += graph_->degree(v);
      for (Vertex w : graph_->neighbors(v))
        if (v < w && partition_.community_of(w) == c) ++edges_within_[c];
    }
    totals_ = {};
    for (Community c = 0; c < k; ++c) {
      totals_.intra_edges += edges_within_[c];
      totals_.sq_degree_sum += degree_sum_[c] * degree_sum_[c];
    }
  }

  const Graph* graph_;
  Partition partition_;
  std::vector<std::uint64_t> edges_within_;
  std::vector<std::uint64_t> degree_sum_;
  Aggregates totals_;
};

inline QualityState build_state(const Graph& g, Partition p) { return QualityState(g, std::move(p)); }

inline double modularity(const QualityState& s) { return s.modularity(); }
inline double z_modularity(const QualityState& s) { return s.z_modularity(); }

inline double modularity(const Graph& g, const Partition& p) { return QualityState(g, p).modularity(); }
inline double z_modularity(const Graph& g, const Partition& p) { return QualityState(g, p).z_modularity(); }

}  // namespace zmod
