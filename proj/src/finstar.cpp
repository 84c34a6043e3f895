#include "plasmic/finstar.hpp"

#include <charconv>

namespace plasmic {

namespace {

void check_level(int n, std::string_view what) {
  if (n < 0 || n > static_cast<int>(kMaxCarrier)) {
    throw InvalidInput(std::string(what) + ": level " + std::to_string(n) + " out of range");
  }
}

}  // namespace

PointedMap::PointedMap(int n, int m, std::vector<Index> image)
    : n_(n), m_(m), image_(std::move(image)) {
  check_level(n, "PointedMap");
  check_level(m, "PointedMap");
  if (image_.size() != static_cast<std::size_t>(n) + 1) {
    throw InvalidInput("PointedMap: image must have n+1 entries");
  }
  if (image_[0] != 0) throw InvalidInput("PointedMap: basepoint must map to 0");
  for (Index v : image_) {
    if (v > static_cast<Index>(m)) {
      throw InvalidInput("PointedMap: entry " + std::to_string(v) + " exceeds target " +
                         std::to_string(m));
    }
  }
}

PointedMap PointedMap::identity(int n) {
  check_level(n, "identity");
  std::vector<Index> image(static_cast<std::size_t>(n) + 1);
  for (Index i = 0; i < image.size(); ++i) image[i] = i;
  return PointedMap(n, n, std::move(image));
}

std::uint64_t PointedMap::rank() const noexcept {
  std::uint64_t r = 0;
  for (int i = 1; i <= n_; ++i) r = r * static_cast<std::uint64_t>(m_ + 1) + image_[i];
  return r;
}

PointedMap PointedMap::unrank(int n, int m, std::uint64_t rank) {
  check_level(n, "unrank");
  check_level(m, "unrank");
  std::vector<Index> image(static_cast<std::size_t>(n) + 1, 0);
  const auto base = static_cast<std::uint64_t>(m + 1);
  for (int i = n; i >= 1; --i) {
    image[static_cast<std::size_t>(i)] = static_cast<Index>(rank % base);
    rank /= base;
  }
  if (rank != 0) throw InvalidInput("unrank: rank out of range");
  return PointedMap(n, m, std::move(image));
}

std::string PointedMap::to_string() const {
  std::string s = std::to_string(n_) + "->" + std::to_string(m_) + ":[";
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(image_[i]);
  }
  return s + "]";
}

PointedMap PointedMap::parse(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> PointedMap { throw InvalidInput("cannot parse pointed map '" + original + "'"); };
  auto read_int = [&](std::string_view& t) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{}) fail();
    t.remove_prefix(static_cast<std::size_t>(ptr - t.data()));
    return v;
  };
  auto expect = [&](std::string_view& t, std::string_view tok) {
    if (!t.starts_with(tok)) fail();
    t.remove_prefix(tok.size());
  };
  const int n = read_int(text);
  expect(text, "->");
  const int m = read_int(text);
  expect(text, ":[");
  std::vector<Index> image;
  while (true) {
    const int v = read_int(text);
    if (v < 0) fail();
    image.push_back(static_cast<Index>(v));
    if (text.starts_with(",")) {
      text.remove_prefix(1);
      continue;
    }
    expect(text, "]");
    break;
  }
  if (!text.empty()) fail();
  return PointedMap(n, m, std::move(image));
}

PointedMap compose(const PointedMap& g, const PointedMap& f) {
  if (f.target() != g.source()) {
    throw InvalidInput("compose: " + g.to_string() + " after " + f.to_string() +
                       " is not composable");
  }
  std::vector<Index> image(f.image().size());
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = g(f.image()[i]);
  return PointedMap(f.source(), g.target(), std::move(image));
}

std::uint64_t pointed_map_count(int n, int m, Budget budget) {
  check_level(n, "pointed_map_count");
  check_level(m, "pointed_map_count");
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > budget.limit / static_cast<std::uint64_t>(m + 1)) {
      throw BudgetExceeded("Fin_*(<" + std::to_string(n) + ">, <" + std::to_string(m) +
                           ">) has more than " + std::to_string(budget.limit) + " maps");
    }
    count *= static_cast<std::uint64_t>(m + 1);
  }
  return count;
}

std::vector<PointedMap> enumerate_pointed_maps(int n, int m, Budget budget) {
  const std::uint64_t count = pointed_map_count(n, m, budget);
  std::vector<PointedMap> out;
  out.reserve(count);
  for (std::uint64_t r = 0; r < count; ++r) out.push_back(PointedMap::unrank(n, m, r));
  return out;
}

Subset preimage(const PointedMap& phi, Subset t) {
  Subset out = 0;
  for (int i = 1; i <= phi.source(); ++i) {
    const Index v = phi.image()[static_cast<std::size_t>(i)];
    if (v != 0 && contains(t, v - 1)) out |= singleton(static_cast<std::size_t>(i - 1));
  }
  return out;
}

PointedMap rho(int n, int i) {
  if (i < 1 || i > n) throw InvalidInput("rho(n, i) needs 1 <= i <= n");
  return rho_subset(n, singleton(static_cast<std::size_t>(i - 1)));
}

PointedMap rho_subset(int n, Subset s) {
  check_level(n, "rho_subset");
  if (!is_subset(s, full_set(static_cast<std::size_t>(n)))) {
    throw InvalidInput("rho_subset: subset is not contained in [" + std::to_string(n) + "]");
  }
  std::vector<Index> image(static_cast<std::size_t>(n) + 1, 0);
  for_each_element(s, [&](Index k) { image[k + 1] = 1; });
  return PointedMap(n, 1, std::move(image));
}

PointedMap rho_pair(int n, Subset s, Subset t) {
  check_level(n, "rho_pair");
  if (!is_subset(s | t, full_set(static_cast<std::size_t>(n)))) {
    throw InvalidInput("rho_pair: subset is not contained in [" + std::to_string(n) + "]");
  }
  if (s & t) throw InvalidInput("rho_pair: subsets must be disjoint");
  std::vector<Index> image(static_cast<std::size_t>(n) + 1, 0);
  for_each_element(s, [&](Index k) { image[k + 1] = 1; });
  for_each_element(t, [&](Index k) { image[k + 1] = 2; });
  return PointedMap(n, 2, std::move(image));
}

PointedMap alpha() { return PointedMap(2, 1, {0, 1, 1}); }
PointedMap i1() { return PointedMap(1, 2, {0, 1}); }
PointedMap i2() { return PointedMap(1, 2, {0, 2}); }
PointedMap tau() { return PointedMap(2, 2, {0, 2, 1}); }
PointedMap unit_map() { return PointedMap(0, 1, {0}); }
PointedMap zeta() { return PointedMap(1, 0, {0, 0}); }

}  // namespace plasmic
