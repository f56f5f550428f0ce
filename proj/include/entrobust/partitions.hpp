#pragma once

#include <compare>
#include <string>
#include <vector>

namespace entrobust {

/// A split of a party set into two nonempty, disjoint, sorted groups.
/// Party indices are 0-based; `to_string` renders them 1-based.
struct Bipartition {
  std::vector<int> left;
  std::vector<int> right;

  Bipartition swapped() const { return {right, left}; }
  std::string to_string() const;

  auto operator<=>(const Bipartition&) const = default;
};

/// Throws InvalidPartition unless `part` splits {0..n-1}.
void validate(const Bipartition& part, int n);

/// All 2^(n-1) - 1 unordered splits of {0..n-1}. The smaller group is
/// `left` (on a tie, the group holding the lowest party); splits are ordered
/// by left size, then lexicographically. Throws TooFewParties for n < 2.
std::vector<Bipartition> enumerate_unordered(int n);

/// Both orientations of every unordered split, each pair adjacent.
std::vector<Bipartition> enumerate_ordered(int n);

/// Unordered splits of an arbitrary party subset (labels preserved). A single
/// party has no split and yields an empty list.
std::vector<Bipartition> nested(const std::vector<int>& subset);

}  // namespace entrobust
