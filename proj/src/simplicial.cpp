#include "plasmic/simplicial.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include "plasmic/nerve.hpp"

namespace plasmic {

DeltaMap::DeltaMap(int m, int n, std::vector<int> values) : m_(m), n_(n), values_(std::move(values)) {
  if (m < 0 || n < 0) throw InvalidInput("DeltaMap: negative object");
  if (values_.size() != static_cast<std::size_t>(m) + 1) {
    throw InvalidInput("DeltaMap: need m+1 values");
  }
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (values_[j] < 0 || values_[j] > n) throw InvalidInput("DeltaMap: value out of range");
    if (j > 0 && values_[j] < values_[j - 1]) throw InvalidInput("DeltaMap: not order preserving");
  }
}

DeltaMap DeltaMap::coface(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw InvalidInput("coface(n, k) needs n >= 1 and 0 <= k <= n");
  std::vector<int> v;
  for (int j = 0; j < n; ++j) v.push_back(j < k ? j : j + 1);
  return DeltaMap(n - 1, n, std::move(v));
}

DeltaMap DeltaMap::codegeneracy(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw InvalidInput("codegeneracy(n, k) needs 0 <= k <= n");
  std::vector<int> v;
  for (int j = 0; j <= n + 1; ++j) v.push_back(j <= k ? j : j - 1);
  return DeltaMap(n + 1, n, std::move(v));
}

DeltaMap DeltaMap::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) v[static_cast<std::size_t>(j)] = j;
  return DeltaMap(n, n, std::move(v));
}

DeltaMap compose(const DeltaMap& psi, const DeltaMap& phi) {
  if (phi.target() != psi.source()) throw InvalidInput("compose: Delta maps are not composable");
  std::vector<int> v;
  for (int x : phi.values()) v.push_back(psi(x));
  return DeltaMap(phi.source(), psi.target(), std::move(v));
}

std::vector<DeltaMap> enumerate_delta_maps(int m, int n) {
  if (m < 0 || n < 0) throw InvalidInput("enumerate_delta_maps: negative object");
  std::vector<DeltaMap> out;
  std::vector<int> v(static_cast<std::size_t>(m) + 1, 0);
  auto rec = [&](auto&& self, std::size_t j, int lo) -> void {
    if (j == v.size()) {
      out.emplace_back(m, n, v);
      return;
    }
    for (int x = lo; x <= n; ++x) {
      v[j] = x;
      self(self, j + 1, x);
    }
  };
  rec(rec, 0, 0);
  return out;
}

PointedMap beta(const DeltaMap& phi) {
  const int m = phi.source();
  const int n = phi.target();
  std::vector<Index> image(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    // φ is monotone, so K_i is an upper interval of [m].
    int first = -1;
    for (int j = 0; j <= m; ++j) {
      if (phi(j) >= i) {
        first = j;
        break;
      }
    }
    image[static_cast<std::size_t>(i)] = first > 0 ? static_cast<Index>(first) : 0;
  }
  return PointedMap(n, m, std::move(image));
}

PointedMap beta_face(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw InvalidInput("beta_face(n, k) needs n >= 1 and 0 <= k <= n");
  std::vector<Index> image(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    if (k == n) {
      image[static_cast<std::size_t>(i)] = i == n ? 0 : static_cast<Index>(i);
    } else {
      image[static_cast<std::size_t>(i)] = static_cast<Index>(i <= k ? i : i - 1);
    }
  }
  return PointedMap(n, n - 1, std::move(image));
}

PointedMap beta_degen(int n, int k) {
  if (n < 1 || k < 0 || k > n - 1) throw InvalidInput("beta_degen(n, k) needs 0 <= k <= n-1");
  std::vector<Index> image(static_cast<std::size_t>(n), 0);
  for (int i = 1; i <= n - 1; ++i) image[static_cast<std::size_t>(i)] = static_cast<Index>(i <= k ? i : i + 1);
  return PointedMap(n - 1, n, std::move(image));
}

Index TruncatedSimplicialSet::face(int n, int i, Index x) const {
  return faces.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(i)).at(x);
}

Index TruncatedSimplicialSet::degeneracy(int n, int i, Index x) const {
  return degeneracies.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(i)).at(x);
}

TruncatedSimplicialSet underlying_simplicial(const TabulatedModule& x) {
  TruncatedSimplicialSet s;
  s.name = "B(" + x.name() + ")";
  s.simplices = x.levels();
  const int N = x.truncation();
  s.faces.resize(static_cast<std::size_t>(N) + 1);
  s.degeneracies.resize(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    if (n >= 1) {
      for (int i = 0; i <= n; ++i) {
        const auto row = x.action(beta_face(n, i));
        s.faces[static_cast<std::size_t>(n)].emplace_back(row.begin(), row.end());
      }
    }
    if (n < N) {
      for (int i = 0; i <= n; ++i) {
        const auto row = x.action(beta_degen(n + 1, i));
        s.degeneracies[static_cast<std::size_t>(n)].emplace_back(row.begin(), row.end());
      }
    }
  }
  return s;
}

CheckResult check_simplicial_identities(const TruncatedSimplicialSet& s) {
  const int N = s.truncation();
  auto fail = [](std::string what, int n, Index x) {
    return CheckResult{false, what + " fails on level " + std::to_string(n) + " at element " + std::to_string(x)};
  };
  for (int n = 0; n <= N; ++n) {
    if (s.simplices[static_cast<std::size_t>(n)].empty()) return {false, "empty level " + std::to_string(n)};
    for (const auto& f : s.faces[static_cast<std::size_t>(n)]) {
      if (f.empty() || f[0] != 0) return {false, "face map on level " + std::to_string(n) + " is not pointed"};
    }
    for (const auto& f : s.degeneracies[static_cast<std::size_t>(n)]) {
      if (f.empty() || f[0] != 0) return {false, "degeneracy on level " + std::to_string(n) + " is not pointed"};
    }
  }
  for (int n = 2; n <= N; ++n) {
    for (Index x = 0; x < s.size(n); ++x) {
      for (int j = 0; j <= n; ++j) {
        for (int i = 0; i < j; ++i) {
          if (s.face(n - 1, i, s.face(n, j, x)) != s.face(n - 1, j - 1, s.face(n, i, x))) {
            return fail("d" + std::to_string(i) + " d" + std::to_string(j) + " = d" +
                            std::to_string(j - 1) + " d" + std::to_string(i),
                        n, x);
          }
        }
      }
    }
  }
  for (int n = 0; n < N; ++n) {
    for (Index x = 0; x < s.size(n); ++x) {
      for (int j = 0; j <= n; ++j) {
        const Index y = s.degeneracy(n, j, x);
        for (int i = 0; i <= n + 1; ++i) {
          const Index lhs = s.face(n + 1, i, y);
          Index rhs = 0;
          if (i < j) {
            rhs = s.degeneracy(n - 1, j - 1, s.face(n, i, x));
          } else if (i == j || i == j + 1) {
            rhs = x;
          } else {
            rhs = s.degeneracy(n - 1, j, s.face(n, i - 1, x));
          }
          if (lhs != rhs) {
            return fail("d" + std::to_string(i) + " s" + std::to_string(j), n, x);
          }
        }
      }
    }
  }
  for (int n = 0; n + 2 <= N; ++n) {
    for (Index x = 0; x < s.size(n); ++x) {
      for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= j; ++i) {
          if (s.degeneracy(n + 1, i, s.degeneracy(n, j, x)) !=
              s.degeneracy(n + 1, j + 1, s.degeneracy(n, i, x))) {
            return fail("s" + std::to_string(i) + " s" + std::to_string(j) + " = s" +
                            std::to_string(j + 1) + " s" + std::to_string(i),
                        n, x);
          }
        }
      }
    }
  }
  return {};
}

TwoSegalReport two_segal_check(const TruncatedSimplicialSet& s) {
  const int N = s.truncation();
  if (N < 3) throw InvalidInput("two_segal_check: truncation level must be >= 3");
  TwoSegalReport report;
  for (int n = 2; n + 1 <= N; ++n) {
    for (int i = 1; i < n; ++i) {
      for (int kind = 1; kind <= 2; ++kind) {
        // Right leg on b, bottom leg on a, and the two maps out of X_{n+1}.
        const int right = i;
        const int bottom = kind == 1 ? 0 : n;
        const int top = kind == 1 ? 0 : n + 1;
        const int left = kind == 1 ? i + 1 : i;
        std::map<Index, std::vector<Index>> by_corner;
        for (Index a = 0; a < s.size(n); ++a) by_corner[s.face(n, bottom, a)].push_back(a);
        std::set<std::pair<Index, Index>> pullback;
        for (Index b = 0; b < s.size(n); ++b) {
          auto it = by_corner.find(s.face(n, right, b));
          if (it == by_corner.end()) continue;
          for (Index a : it->second) pullback.emplace(b, a);
        }
        std::set<std::pair<Index, Index>> image;
        bool inside = true;
        for (Index z = 0; z < s.size(n + 1); ++z) {
          const std::pair<Index, Index> p{s.face(n + 1, top, z), s.face(n + 1, left, z)};
          inside = inside && pullback.contains(p);
          image.insert(p);
        }
        SegalSquare sq;
        sq.n = n;
        sq.i = i;
        sq.kind = kind;
        sq.pullback_size = pullback.size();
        sq.top_size = s.size(n + 1);
        sq.bijective = inside && image.size() == sq.top_size && image.size() == sq.pullback_size;
        if (!sq.bijective && report.ok) {
          report.ok = false;
          report.witness = "square " + std::to_string(kind) + " at n=" + std::to_string(n) +
                           ", i=" + std::to_string(i) + ": level " + std::to_string(n + 1) + " has " +
                           std::to_string(sq.top_size) + " elements, pullback has " +
                           std::to_string(sq.pullback_size);
        }
        report.squares.push_back(sq);
      }
    }
  }
  return report;
}

SpanPullback span_pullback(const Plasma& m) {
  SpanPullback r;
  const auto z = nerve_level(m, 2);
  r.middle_size = z.size();
  // z.entries: [∅, {1}, {2}, {1,2}] = [e, π₁, π₂, π₃].
  std::set<std::tuple<Index, Index, Index>> covered;
  for (Index a = 0; a < z.size(); ++a) {
    for (Index k = 0; k < m.size(); ++k) {
      for (Index b = 0; b < z.size(); ++b) {
        if (z[a].entries[3] == z[b].entries[1] && k == z[b].entries[2]) {
          r.apex.emplace_back(a, k, b);
          covered.emplace(z[a].entries[1], z[a].entries[2], k);
        }
      }
    }
  }
  r.covered_triples = covered.size();
  for (Index a = 0; a < m.size(); ++a) {
    for (Index b = 0; b < m.size(); ++b) {
      for (Index k = 0; k < m.size(); ++k) {
        const Subset sums = m.sum_set(m.sum(a, b), k);
        if (sums) ++r.inhabited_triples;
        r.triple_sum_records += static_cast<std::size_t>(cardinality(sums));
      }
    }
  }
  return r;
}

std::size_t span_pullback_count() { return span_pullback(krasner()).apex.size(); }

TruncatedSimplicialSet partial_monoid_classifying(const Plasma& m, int N) {
  const auto props = check_properties(m);
  if (!props.deterministic || !props.strictly_unital || !props.associative) {
    throw InvalidInput("partial_monoid_classifying: '" + m.name() +
                       "' is not a commutative partial monoid");
  }
  if (N < 0 || N > 8) throw InvalidInput("partial_monoid_classifying: N must be in 0..8");
  auto add = [&](std::optional<Index> a, Index b) -> std::optional<Index> {
    if (!a) return std::nullopt;
    const Subset s = m.sum(*a, b);
    if (s == 0) return std::nullopt;
    return static_cast<Index>(std::countr_zero(s));
  };
  TruncatedSimplicialSet s;
  s.name = "B" + m.name();
  std::vector<std::map<std::vector<Index>, Index>> index(static_cast<std::size_t>(N) + 1);
  std::vector<std::vector<std::vector<Index>>> tuples(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    std::vector<Index> t(static_cast<std::size_t>(n), 0);
    auto& level = tuples[static_cast<std::size_t>(n)];
    auto rec = [&](auto&& self, std::size_t k, std::optional<Index> acc) -> void {
      if (!acc) return;
      if (k == t.size()) {
        level.push_back(t);
        return;
      }
      for (Index v = 0; v < m.size(); ++v) {
        t[k] = v;
        self(self, k + 1, add(acc, v));
      }
    };
    rec(rec, 0, std::optional<Index>(m.unit()));
    auto& labels = s.simplices.emplace_back();
    for (Index i = 0; i < level.size(); ++i) {
      index[static_cast<std::size_t>(n)][level[i]] = i;
      std::string l = "(";
      for (std::size_t k = 0; k < level[i].size(); ++k) l += (k ? "," : "") + m.label(level[i][k]);
      labels.push_back(l + ")");
    }
  }
  auto lookup = [&](int n, const std::vector<Index>& t) {
    return index[static_cast<std::size_t>(n)].at(t);
  };
  s.faces.resize(static_cast<std::size_t>(N) + 1);
  s.degeneracies.resize(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    const auto& level = tuples[static_cast<std::size_t>(n)];
    if (n >= 1) {
      for (int i = 0; i <= n; ++i) {
        auto& d = s.faces[static_cast<std::size_t>(n)].emplace_back();
        for (const auto& t : level) {
          std::vector<Index> u;
          for (int k = 0; k < n; ++k) {
            if (i == 0 && k == 0) continue;
            if (i == n && k == n - 1) continue;
            if (0 < i && i < n && k == i) {
              u.back() = *add(u.back(), t[static_cast<std::size_t>(k)]);
              continue;
            }
            u.push_back(t[static_cast<std::size_t>(k)]);
          }
          d.push_back(lookup(n - 1, u));
        }
      }
    }
    if (n < N) {
      for (int i = 0; i <= n; ++i) {
        auto& sd = s.degeneracies[static_cast<std::size_t>(n)].emplace_back();
        for (const auto& t : level) {
          std::vector<Index> u = t;
          u.insert(u.begin() + i, m.unit());
          sd.push_back(lookup(n + 1, u));
        }
      }
    }
  }
  return s;
}

CheckResult check_simplicial_isomorphism(const TruncatedSimplicialSet& a,
                                         const TruncatedSimplicialSet& b,
                                         const std::vector<std::vector<Index>>& level_maps) {
  const int N = a.truncation();
  if (b.truncation() != N || level_maps.size() != static_cast<std::size_t>(N) + 1) {
    return {false, "truncation levels differ"};
  }
  for (int n = 0; n <= N; ++n) {
    const auto& f = level_maps[static_cast<std::size_t>(n)];
    if (f.size() != a.size(n) || a.size(n) != b.size(n)) {
      return {false, "level " + std::to_string(n) + " sizes differ"};
    }
    std::set<Index> hit(f.begin(), f.end());
    if (hit.size() != f.size() || *hit.rbegin() >= b.size(n)) {
      return {false, "level " + std::to_string(n) + " map is not a bijection"};
    }
  }
  for (int n = 1; n <= N; ++n) {
    for (int i = 0; i <= n; ++i) {
      for (Index x = 0; x < a.size(n); ++x) {
        if (level_maps[static_cast<std::size_t>(n) - 1][a.face(n, i, x)] !=
            b.face(n, i, level_maps[static_cast<std::size_t>(n)][x])) {
          return {false, "d" + std::to_string(i) + " differs on level " + std::to_string(n) +
                             " at " + a.simplices[static_cast<std::size_t>(n)][x]};
        }
      }
    }
  }
  for (int n = 0; n < N; ++n) {
    for (int i = 0; i <= n; ++i) {
      for (Index x = 0; x < a.size(n); ++x) {
        if (level_maps[static_cast<std::size_t>(n) + 1][a.degeneracy(n, i, x)] !=
            b.degeneracy(n, i, level_maps[static_cast<std::size_t>(n)][x])) {
          return {false, "s" + std::to_string(i) + " differs on level " + std::to_string(n) +
                             " at " + a.simplices[static_cast<std::size_t>(n)][x]};
        }
      }
    }
  }
  return {};
}

std::vector<std::vector<Index>> nerve_to_classifying(const Plasma& m, int N, Budget budget) {
  const auto bm = partial_monoid_classifying(m, N);
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    std::map<std::string, Index> by_label;
    for (Index i = 0; i < bm.size(n); ++i) by_label[bm.simplices[static_cast<std::size_t>(n)][i]] = i;
    for (const auto& t : nerve_level(m, n, budget)) {
      std::string l = "(";
      for (int k = 0; k < n; ++k) l += (k ? "," : "") + m.label(t[singleton(static_cast<std::size_t>(k))]);
      auto it = by_label.find(l + ")");
      if (it == by_label.end()) throw InvalidInput("nerve_to_classifying: " + l + ") is not in BM");
      out[static_cast<std::size_t>(n)].push_back(it->second);
    }
  }
  return out;
}

std::vector<std::pair<Index, Index>> unfilled_inner_horns(const TruncatedSimplicialSet& s) {
  if (s.truncation() < 2) throw InvalidInput("unfilled_inner_horns: need level 2");
  std::set<std::pair<Index, Index>> filled;
  for (Index z = 0; z < s.size(2); ++z) filled.emplace(s.face(2, 2, z), s.face(2, 0, z));
  std::vector<std::pair<Index, Index>> out;
  for (Index f = 0; f < s.size(1); ++f) {
    for (Index g = 0; g < s.size(1); ++g) {
      if (s.face(1, 0, f) != s.face(1, 1, g)) continue;
      if (!filled.contains({f, g})) out.emplace_back(f, g);
    }
  }
  return out;
}

std::string simplicial_to_tsv(const TruncatedSimplicialSet& s) {
  std::ostringstream out;
  out << "level\tindex\tlabel\tfaces\tdegeneracies\n";
  for (int n = 0; n <= s.truncation(); ++n) {
    for (Index x = 0; x < s.size(n); ++x) {
      out << n << '\t' << x << '\t' << s.simplices[static_cast<std::size_t>(n)][x] << '\t';
      for (std::size_t i = 0; i < s.faces[static_cast<std::size_t>(n)].size(); ++i) {
        out << (i ? "," : "") << s.faces[static_cast<std::size_t>(n)][i][x];
      }
      out << '\t';
      for (std::size_t i = 0; i < s.degeneracies[static_cast<std::size_t>(n)].size(); ++i) {
        out << (i ? "," : "") << s.degeneracies[static_cast<std::size_t>(n)][i][x];
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace plasmic
