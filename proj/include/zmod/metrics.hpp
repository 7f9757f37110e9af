#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "zmod/error.hpp"
#include "zmod/partition.hpp"

namespace zmod {

// Joint community counts of two partitions of the same vertex set.
struct Confusion {
  std::size_t n = 0;
  std::vector<std::size_t> rows;  // |C| for C in the first partition
  std::vector<std::size_t> cols;  // |C| for C in the second partition
  std::unordered_map<std::uint64_t, std::size_t> cells;  // key: row * cols.size() + col

  Confusion(const Partition& a, const Partition& b) : n(a.vertex_count()) {
    if (a.vertex_count() != b.vertex_count())
      throw InputError("partitions cover different vertex sets");
    rows.resize(a.count());
    cols.resize(b.count());
    for (Community c = 0; c < a.count(); ++c) rows[c] = a.size_of(c);
    for (Community c = 0; c < b.count(); ++c) cols[c] = b.size_of(c);
    for (Vertex v = 0; v < n; ++v)
      ++cells[static_cast<std::uint64_t>(a.community_of(v)) * cols.size() + b.community_of(v)];
  }
};

// H = -sum_C |C|/n log2(|C|/n)
inline double entropy(const Partition& p) {
  const double n = static_cast<double>(p.vertex_count());
  // Sorted sizes: the result does not depend on community ids.
  std::vector<std::size_t> sizes(p.count());
  for (Community c = 0; c < p.count(); ++c) sizes[c] = p.size_of(c);
  std::sort(sizes.begin(), sizes.end());
  double h = 0.0;
  for (std::size_t size : sizes) {
    const double share = static_cast<double>(size) / n;
    h -= share * std::log2(share);
  }
  return h;
}

inline double mutual_information(const Confusion& t) {
  const double n = static_cast<double>(t.n);
  std::vector<double> terms;
  terms.reserve(t.cells.size());
  for (const auto& [key, joint] : t.cells) {
    const std::size_t r = key / t.cols.size();
    const std::size_t c = key % t.cols.size();
    const double j = static_cast<double>(joint);
    terms.push_back(j / n * std::log2(n * j / (static_cast<double>(t.rows[r]) * static_cast<double>(t.cols[c]))));
  }
  // Summing in sorted order makes I(a, b) and I(b, a) bit-identical.
  std::sort(terms.begin(), terms.end());
  double info = 0.0;
  for (double term : terms) info += term;
  // Rounding can leave a tiny negative value for independent partitions.
  return info < 0.0 ? 0.0 : info;
}

inline double mutual_information(const Partition& a, const Partition& b) {
  return mutual_information(Confusion(a, b));
}

// 2 I / (H1 + H2); two single-community partitions are identical, so 1.
inline double nmi(const Partition& a, const Partition& b) {
  if (a.equivalent(b)) return 1.0;
  const double denom = entropy(a) + entropy(b);
  if (denom == 0.0) return 1.0;
  const double value = 2.0 * mutual_information(a, b) / denom;
  return value > 1.0 ? 1.0 : value;
}

}  // namespace zmod
