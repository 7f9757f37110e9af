#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "zmod/error.hpp"

namespace zmod {

using Vertex = std::size_t;

// Immutable simple undirected graph. Vertices are dense indices 0..n-1, each
// carrying the external label it was read under.
class Graph {
 public:
  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }

  const std::string& label(Vertex v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  // Index of an external label, or vertex_count() when unknown.
  Vertex index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    return it == index_.end() ? vertex_count() : it->second;
  }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& a = adjacency_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  // Each undirected edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges_);
    for (Vertex u = 0; u < vertex_count(); ++u)
      for (Vertex v : adjacency_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  friend struct GraphBuilder;

  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Vertex> index_;
  std::size_t edges_ = 0;
};

struct BuildReport {
  std::size_t duplicates_collapsed = 0;
};

struct GraphBuilder {
  // Vertex indices follow first appearance of each label in the edge list.
  // Throws InputError on a self-loop or an empty edge set.
  static Graph build(std::span<const std::pair<std::string, std::string>> edges,
                     BuildReport* report = nullptr) {
    Graph g;
    auto intern = [&g](const std::string& label) {
      auto [it, inserted] = g.index_.try_emplace(label, g.labels_.size());
      if (inserted) {
        g.labels_.push_back(label);
        g.adjacency_.emplace_back();
      }
      return it->second;
    };

    for (const auto& [a, b] : edges) {
      if (a == b) throw InputError("self-loop on vertex '" + a + "'");
      Vertex u = intern(a);
      Vertex v = intern(b);
      g.adjacency_[u].push_back(v);
      g.adjacency_[v].push_back(u);
    }

    finish(g);
    if (report) report->duplicates_collapsed = edges.size() - g.edges_;
    return g;
  }

  static Graph from_indices(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                            std::span<const std::string> labels) {
    Graph g;
    g.adjacency_.resize(n);
    g.labels_.reserve(n);
    for (Vertex v = 0; v < n; ++v) {
      g.labels_.push_back(labels.empty() ? std::to_string(v) : labels[v]);
      if (!g.index_.emplace(g.labels_.back(), v).second)
        throw InputError("duplicate vertex label '" + g.labels_.back() + "'");
    }
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw InputError("edge endpoint out of range");
      if (u == v) throw InputError("self-loop on vertex '" + g.labels_[u] + "'");
      g.adjacency_[u].push_back(v);
      g.adjacency_[v].push_back(u);
    }
    finish(g);
    return g;
  }

 private:
  static std::size_t finish(Graph& g) {
    std::size_t stubs = 0;
    for (auto& list : g.adjacency_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      stubs += list.size();
    }
    g.edges_ = stubs / 2;
    if (g.edges_ == 0) throw InputError("graph has no edges");
    return g.edges_;
  }
};

inline Graph build_graph(std::span<const std::pair<std::string, std::string>> edges,
                         BuildReport* report = nullptr) {
  return GraphBuilder::build(edges, report);
}

// Graph over dense indices 0..n-1, used by the generators. Vertex v keeps index
// v (isolated vertices allowed); labels default to the decimal index.
inline Graph build_graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                         std::span<const std::string> labels = {}) {
  return GraphBuilder::from_indices(n, edges, labels);
}

// Whitespace-separated label pairs, one edge per line. Blank lines and lines
// whose first non-blank character is '#' are skipped.
inline Graph read_edge_list(std::istream& in, BuildReport* report = nullptr) {
  std::vector<std::pair<std::string, std::string>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream tokens(line);
    std::string a, b, extra;
    if (!(tokens >> a)) continue;
    if (a.front() == '#') continue;
    if (!(tokens >> b) || (tokens >> extra))
      throw ParseError(line_no, "expected exactly two vertex labels");
    edges.emplace_back(std::move(a), std::move(b));
  }
  if (edges.empty()) throw InputError("graph has no edges");
  return build_graph(edges, report);
}

inline Graph load_edge_list(std::string_view text, BuildReport* report = nullptr) {
  std::istringstream in{std::string(text)};
  return read_edge_list(in, report);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

}  // namespace zmod
