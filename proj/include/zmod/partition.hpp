#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "zmod/error.hpp"
#include "zmod/graph.hpp"

namespace zmod {

using Community = std::size_t;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Assignment of every vertex to exactly one community. Community ids are
// always dense (0..count()-1) and no community is empty; a move that empties
// its source community relabels the last community into the freed id.
class Partition {
 public:
  Partition() = default;

  // Densely renumbers arbitrary labels in order of first appearance.
  template <typename Label>
  static Partition from_labels(std::span<const Label> labels) {
    Partition p;
    p.assignment_.resize(labels.size());
    p.slot_.resize(labels.size());
    std::map<Label, Community> dense;
    for (Vertex v = 0; v < labels.size(); ++v) {
      auto [it, inserted] = dense.try_emplace(labels[v], p.members_.size());
      if (inserted) p.members_.emplace_back();
      p.assignment_[v] = it->second;
      p.slot_[v] = p.members_[it->second].size();
      p.members_[it->second].push_back(v);
    }
    return p;
  }

  static Partition from_labels(const std::vector<std::size_t>& labels) {
    return from_labels(std::span<const std::size_t>(labels));
  }

  // Keeps the given ids; they must already be dense (each of 0..k-1 used).
  static Partition from_assignment(std::vector<Community> assignment) {
    Partition p;
    p.slot_.resize(assignment.size());
    for (Vertex v = 0; v < assignment.size(); ++v) {
      const Community c = assignment[v];
      if (c >= p.members_.size()) p.members_.resize(c + 1);
      p.slot_[v] = p.members_[c].size();
      p.members_[c].push_back(v);
    }
    for (const auto& list : p.members_)
      if (list.empty()) throw InputError("community ids are not dense");
    p.assignment_ = std::move(assignment);
    return p;
  }

  static Partition singletons(std::size_t n) {
    std::vector<std::size_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;
    return from_labels(ids);
  }

  static Partition single_community(std::size_t n) {
    return from_labels(std::vector<std::size_t>(n, 0));
  }

  std::size_t vertex_count() const noexcept { return assignment_.size(); }
  std::size_t count() const noexcept { return members_.size(); }

  Community community_of(Vertex v) const { return assignment_[v]; }
  std::span<const Vertex> members(Community c) const { return members_[c]; }
  std::size_t size_of(Community c) const { return members_[c].size(); }
  const std::vector<Community>& assignment() const noexcept { return assignment_; }

  // Moves v into target; target == count() opens a new community. When the
  // source community empties, the former last community takes over its id
  // and that id is returned (if the source was the last one it simply
  // disappears). Returns npos when no community emptied.
  Community move(Vertex v, Community target) {
    const Community source = assignment_[v];
    if (target == source) return npos;
    if (target == members_.size()) members_.emplace_back();

    detach(v);
    assignment_[v] = target;
    slot_[v] = members_[target].size();
    members_[target].push_back(v);

    if (!members_[source].empty()) return npos;
    const Community last = members_.size() - 1;
    if (source != last) {
      members_[source] = std::move(members_[last]);
      for (Vertex u : members_[source]) assignment_[u] = source;
    }
    members_.pop_back();
    return source;
  }

  // Same grouping of vertices, ignoring community ids.
  bool equivalent(const Partition& other) const {
    if (vertex_count() != other.vertex_count() || count() != other.count()) return false;
    std::vector<Community> image(count(), npos);
    for (Vertex v = 0; v < vertex_count(); ++v) {
      Community& mapped = image[assignment_[v]];
      if (mapped == npos) mapped = other.assignment_[v];
      else if (mapped != other.assignment_[v]) return false;
    }
    return true;
  }

  // Full structural check: covering, dense ids, no empty community,
  // members consistent with assignment.
  bool valid() const {
    if (slot_.size() != assignment_.size()) return false;
    std::size_t covered = 0;
    for (Community c = 0; c < members_.size(); ++c) {
      if (members_[c].empty()) return false;
      for (std::size_t i = 0; i < members_[c].size(); ++i) {
        Vertex v = members_[c][i];
        if (v >= assignment_.size() || assignment_[v] != c || slot_[v] != i) return false;
      }
      covered += members_[c].size();
    }
    return covered == assignment_.size();
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.assignment_ == b.assignment_;
  }

 private:
  void detach(Vertex v) {
    auto& list = members_[assignment_[v]];
    const std::size_t i = slot_[v];
    list[i] = list.back();
    slot_[list[i]] = i;
    list.pop_back();
  }

  std::vector<Community> assignment_;
  std::vector<std::vector<Vertex>> members_;
  std::vector<std::size_t> slot_;
};

inline Partition singleton_partition(const Graph& g) {
  return Partition::singletons(g.vertex_count());
}

// "label community_id" per line; '#' comments and blank lines skipped. Every
// vertex of g must appear exactly once. Community ids are opaque tokens and are
// renumbered densely in order of first vertex.
inline Partition read_partition(std::istream& in, const Graph& g) {
  std::vector<std::string> ids(g.vertex_count());
  std::vector<bool> seen(g.vertex_count(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream tokens(line);
    std::string label, id, extra;
    if (!(tokens >> label) || label.front() == '#') continue;
    if (!(tokens >> id) || (tokens >> extra))
      throw ParseError(line_no, "expected 'vertex community'");
    Vertex v = g.index_of(label);
    if (v == g.vertex_count()) throw ParseError(line_no, "unknown vertex '" + label + "'");
    if (seen[v]) throw ParseError(line_no, "duplicate vertex '" + label + "'");
    seen[v] = true;
    ids[v] = std::move(id);
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!seen[v]) throw InputError("uncovered vertex '" + g.label(v) + "'");

  return Partition::from_labels(std::span<const std::string>(ids));
}

inline Partition load_partition(std::string_view text, const Graph& g) {
  std::istringstream in{std::string(text)};
  return read_partition(in, g);
}

inline void write_partition(std::ostream& out, const Graph& g, const Partition& p) {
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    out << g.label(v) << ' ' << p.community_of(v) << '\n';
}

inline std::string save_partition(const Graph& g, const Partition& p) {
  std::ostringstream out;
  write_partition(out, g, p);
  return out.str();
}

}  // namespace zmod
