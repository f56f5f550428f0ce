#include "entrobust/partitions.hpp"

#include <algorithm>
#include <string>

#include "entrobust/error.hpp"

namespace entrobust {

namespace {

std::string render(const std::vector<int>& side, bool comma) {
  std::string s;
  for (std::size_t i = 0; i < side.size(); ++i) {
    if (comma && i > 0) s += ',';
    s += std::to_string(side[i] + 1);
  }
  return s;
}

// Element i of `subset` goes right when bit i of `mask` is set.
Bipartition split(const std::vector<int>& subset, unsigned long mask) {
  Bipartition b;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    ((mask >> i) & 1UL ? b.right : b.left).push_back(subset[i]);
  }
  return b;
}

}  // namespace

std::string Bipartition::to_string() const {
  const bool comma = std::any_of(left.begin(), left.end(), [](int p) { return p >= 9; }) ||
                     std::any_of(right.begin(), right.end(), [](int p) { return p >= 9; });
  return render(left, comma) + "|" + render(right, comma);
}

void validate(const Bipartition& part, int n) {
  if (part.left.empty() || part.right.empty()) {
    throw Error(ErrorCode::InvalidPartition, "both sides must be nonempty");
  }
  std::vector<int> seen(static_cast<std::size_t>(std::max(n, 0)), 0);
  for (const auto* side : {&part.left, &part.right}) {
    if (!std::is_sorted(side->begin(), side->end())) {
      throw Error(ErrorCode::InvalidPartition, "sides must be sorted");
    }
    for (int p : *side) {
      if (p < 0 || p >= n) throw Error(ErrorCode::InvalidPartition, "party index out of range");
      if (seen[static_cast<std::size_t>(p)]++) {
        throw Error(ErrorCode::InvalidPartition, "party appears twice");
      }
    }
  }
  if (static_cast<int>(part.left.size() + part.right.size()) != n) {
    throw Error(ErrorCode::InvalidPartition, "split does not cover every party");
  }
}

std::vector<Bipartition> enumerate_unordered(int n) {
  if (n < 2) throw Error(ErrorCode::TooFewParties, "need at least two parties");
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  return nested(all);
}

std::vector<Bipartition> enumerate_ordered(int n) {
  std::vector<Bipartition> out;
  for (auto& b : enumerate_unordered(n)) {
    out.push_back(b.swapped());
    out.insert(out.end() - 1, std::move(b));
  }
  return out;
}

std::vector<Bipartition> nested(const std::vector<int>& subset) {
  std::vector<Bipartition> out;
  if (subset.size() < 2) return out;
  std::vector<int> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  // Canonical side on the left: the smaller group, or on a tie the group
  // holding the lowest-labelled party.
  for (unsigned long mask = 1; mask + 1 < (1UL << n); ++mask) {
    const auto k = static_cast<std::size_t>(__builtin_popcountl(mask));
    if (2 * k > n || (2 * k == n && !(mask & 1UL))) continue;
    Bipartition b = split(sorted, ~mask);
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const Bipartition& a, const Bipartition& b) {
    if (a.left.size() != b.left.size()) return a.left.size() < b.left.size();
    return a.left < b.left;
  });
  return out;
}

}  // namespace entrobust
