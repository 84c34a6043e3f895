#include "plasmic/bits.hpp"

#include <algorithm>

namespace plasmic {

std::vector<Subset> subsets_by_cardinality(int n) {
  std::vector<Subset> out;
  if (n <= 0) return out;
  const Subset limit = full_set(static_cast<std::size_t>(n));
  out.reserve(static_cast<std::size_t>(limit));
  for (Subset s = 1; s <= limit; ++s) out.push_back(s);
  std::stable_sort(out.begin(), out.end(), [](Subset a, Subset b) {
    return cardinality(a) < cardinality(b);
  });
  return out;
}

std::vector<int> cardinality_positions(int n) {
  std::vector<int> pos(std::size_t{1} << n, 0);
  const auto order = subsets_by_cardinality(n);
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<int>(k + 1);
  return pos;
}

std::string format_subset(Subset s, std::span<const std::string> labels) {
  std::string out = "{";
  bool first = true;
  for_each_element(s, [&](Index i) {
    if (!first) out += ',';
    first = false;
    out += i < labels.size() ? labels[i] : std::to_string(i);
  });
  out += '}';
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace plasmic
