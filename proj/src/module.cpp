#include "plasmic/module.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace plasmic {

namespace {

std::size_t pow_size(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::size_t map_count(int n, int m) { return pow_size(static_cast<std::size_t>(m) + 1, n); }

// Digits of a pointed map image in rank order; digits[0] is the basepoint.
void unrank_into(std::size_t rank, int n, int m, std::vector<Index>& digits) {
  digits.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = n; i >= 1; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<Index>(rank % static_cast<std::size_t>(m + 1));
    rank /= static_cast<std::size_t>(m + 1);
  }
}

std::size_t rank_of(const std::vector<Index>& digits, int m) {
  std::size_t r = 0;
  for (std::size_t i = 1; i < digits.size(); ++i) r = r * static_cast<std::size_t>(m + 1) + digits[i];
  return r;
}

}  // namespace

TabulatedModule::TabulatedModule(std::string name, std::vector<std::vector<std::string>> levels,
                                 const ActionFn& act)
    : name_(std::move(name)), levels_(std::move(levels)) {
  if (levels_.empty()) throw InvalidInput("module '" + name_ + "' has no levels");
  const int N = truncation();
  if (N > 8) throw InvalidInput("module '" + name_ + "': truncation level above 8 is not supported");
  tables_.resize(levels_.size() * levels_.size());
  for (int n = 0; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      auto& table = tables_[table_index(n, m)];
      const std::size_t count = map_count(n, m);
      table.reserve(count * size(n));
      for (std::size_t r = 0; r < count; ++r) {
        const PointedMap phi = PointedMap::unrank(n, m, r);
        for (Index x = 0; x < size(n); ++x) table.push_back(act(phi, x));
      }
    }
  }
  validate_shape();
}

TabulatedModule::TabulatedModule(std::string name, std::vector<std::vector<std::string>> levels,
                                 std::vector<std::vector<Index>> tables)
    : name_(std::move(name)), levels_(std::move(levels)), tables_(std::move(tables)) {
  if (levels_.empty()) throw InvalidInput("module '" + name_ + "' has no levels");
  if (truncation() > 8) {
    throw InvalidInput("module '" + name_ + "': truncation level above 8 is not supported");
  }
  validate_shape();
}

void TabulatedModule::validate_shape() const {
  const int N = truncation();
  if (levels_[0].size() != 1) {
    throw InvalidInput("module '" + name_ + "': level 0 must be a singleton");
  }
  for (int n = 0; n <= N; ++n) {
    if (levels_[static_cast<std::size_t>(n)].empty()) {
      throw InvalidInput("module '" + name_ + "': level " + std::to_string(n) + " is empty");
    }
    std::set<std::string> seen(levels_[static_cast<std::size_t>(n)].begin(),
                               levels_[static_cast<std::size_t>(n)].end());
    if (seen.size() != size(n)) {
      throw InvalidInput("module '" + name_ + "': duplicate element at level " + std::to_string(n));
    }
  }
  if (tables_.size() != levels_.size() * levels_.size()) {
    throw InvalidInput("module '" + name_ + "': wrong number of action tables");
  }
  for (int n = 0; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      const auto& table = tables_[table_index(n, m)];
      if (table.size() != map_count(n, m) * size(n)) {
        throw InvalidInput("module '" + name_ + "': action table " + std::to_string(n) + "->" +
                           std::to_string(m) + " has the wrong size");
      }
      for (Index v : table) {
        if (v >= size(m)) {
          throw InvalidInput("module '" + name_ + "': action " + std::to_string(n) + "->" +
                             std::to_string(m) + " leaves level " + std::to_string(m));
        }
      }
    }
  }
}

std::span<const Index> TabulatedModule::action(const PointedMap& phi) const {
  const int n = phi.source();
  const int m = phi.target();
  if (n > truncation() || m > truncation()) {
    throw InvalidInput("module '" + name_ + "' is truncated at level " +
                       std::to_string(truncation()) + "; cannot apply " + phi.to_string());
  }
  const auto& table = tables_[table_index(n, m)];
  return std::span<const Index>(table).subspan(phi.rank() * size(n), size(n));
}

// ---------------------------------------------------------------------------

TabulatedModule f1_module(int N) {
  if (N < 0) throw InvalidInput("f1_module: N must be >= 0");
  std::vector<std::vector<std::string>> levels;
  for (int k = 0; k <= N; ++k) {
    auto& level = levels.emplace_back();
    for (int i = 0; i <= k; ++i) level.push_back(std::to_string(i));
  }
  return TabulatedModule("F1", std::move(levels), [](const PointedMap& phi, Index x) { return phi(x); });
}

TabulatedModule corepresented_module(int n, int N, Budget budget) {
  if (n < 0 || N < 0) throw InvalidInput("corepresented_module: levels must be >= 0");
  std::vector<std::vector<std::string>> levels;
  for (int k = 0; k <= N; ++k) {
    auto& level = levels.emplace_back();
    for (const auto& g : enumerate_pointed_maps(n, k, budget)) {
      const auto s = g.to_string();
      level.push_back(s.substr(s.find(':') + 1));
    }
  }
  return TabulatedModule(
      "corep(" + std::to_string(n) + ")", std::move(levels), [n](const PointedMap& phi, Index x) {
        const PointedMap g = PointedMap::unrank(n, phi.source(), x);
        return static_cast<Index>(compose(phi, g).rank());
      });
}

TabulatedModule wedge_sum(std::span<const TabulatedModule> summands) {
  if (summands.empty()) throw InvalidInput("wedge_sum: no summands");
  const int N = summands[0].truncation();
  for (const auto& s : summands) {
    if (s.truncation() != N) throw InvalidInput("wedge_sum: truncation levels differ");
  }
  // offsets[n][j]: index of the first non-basepoint element of summand j.
  std::vector<std::vector<Index>> offsets(static_cast<std::size_t>(N) + 1);
  std::vector<std::vector<std::string>> levels;
  for (int n = 0; n <= N; ++n) {
    auto& level = levels.emplace_back(1, "*");
    for (std::size_t j = 0; j < summands.size(); ++j) {
      offsets[static_cast<std::size_t>(n)].push_back(static_cast<Index>(level.size()));
      const auto& labels = summands[j].labels(n);
      for (std::size_t x = 1; x < labels.size(); ++x) {
        level.push_back(std::to_string(j + 1) + ":" + labels[x]);
      }
    }
  }
  std::string name = "wedge(";
  for (std::size_t j = 0; j < summands.size(); ++j) name += (j ? "," : "") + summands[j].name();
  return TabulatedModule(name + ")", std::move(levels), [&](const PointedMap& phi, Index x) -> Index {
    if (x == 0) return 0;
    const auto& from = offsets[static_cast<std::size_t>(phi.source())];
    const auto j = static_cast<std::size_t>(std::upper_bound(from.begin(), from.end(), x) - from.begin() - 1);
    const Index local = x - from[j] + 1;
    const Index image = summands[j].act(phi, local);
    return image == 0 ? 0 : offsets[static_cast<std::size_t>(phi.target())][j] + image - 1;
  });
}

Plasma psi_truncate(const TabulatedModule& x) {
  if (x.truncation() < 2) throw InvalidInput("psi_truncate: truncation level must be >= 2");
  if (x.act(unit_map(), 0) != 0) {
    throw InvalidInput("psi_truncate: module '" + x.name() + "' is not pointed at level 1");
  }
  const auto r1 = x.action(rho(2, 1));
  const auto r2 = x.action(rho(2, 2));
  const auto a = x.action(alpha());
  const std::size_t n = x.size(1);
  if (n > kMaxCarrier) throw InvalidInput("psi_truncate: level 1 has more than 63 elements");
  std::vector<Subset> sums(n * n, 0);
  for (Index z = 0; z < x.size(2); ++z) sums[r1[z] * n + r2[z]] |= singleton(a[z]);
  return Plasma("Psi(" + x.name() + ")", x.labels(1),
                [&](Index p, Index q) { return sums[p * n + q]; });
}

CheckResult check_functoriality(const TabulatedModule& x) {
  const int N = x.truncation();
  if (x.size(0) != 1) return {false, "level 0 is not a singleton"};
  for (int n = 0; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      const auto& table = x.tables()[x.table_index(n, m)];
      for (std::size_t r = 0; r < map_count(n, m); ++r) {
        if (table[r * x.size(n)] != 0) {
          return {false, PointedMap::unrank(n, m, r).to_string() + " does not fix the basepoint"};
        }
      }
    }
    const auto id = x.action(PointedMap::identity(n));
    for (Index e = 0; e < id.size(); ++e) {
      if (id[e] != e) {
        return {false, "identity on level " + std::to_string(n) + " moves " + x.labels(n)[e]};
      }
    }
  }
  std::vector<Index> phi, psi, comp;
  for (int n = 0; n <= N; ++n) {
    const std::size_t sn = x.size(n);
    for (int m = 0; m <= N; ++m) {
      const auto& tphi = x.tables()[x.table_index(n, m)];
      const std::size_t sm = x.size(m);
      for (int k = 0; k <= N; ++k) {
        const auto& tpsi = x.tables()[x.table_index(m, k)];
        const auto& tcomp = x.tables()[x.table_index(n, k)];
        for (std::size_t rp = 0; rp < map_count(n, m); ++rp) {
          unrank_into(rp, n, m, phi);
          for (std::size_t rq = 0; rq < map_count(m, k); ++rq) {
            unrank_into(rq, m, k, psi);
            comp.resize(phi.size());
            for (std::size_t i = 0; i < phi.size(); ++i) comp[i] = psi[phi[i]];
            const std::size_t rc = rank_of(comp, k);
            for (std::size_t e = 0; e < sn; ++e) {
              const Index via = tpsi[rq * sm + tphi[rp * sn + e]];
              if (via != tcomp[rc * sn + e]) {
                const PointedMap f = PointedMap::unrank(n, m, rp);
                const PointedMap g = PointedMap::unrank(m, k, rq);
                return {false, "composition fails for " + g.to_string() + " after " + f.to_string() +
                                   " at element " + x.labels(n)[e]};
              }
            }
          }
        }
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

bool is_natural(const TabulatedModule& x, const TabulatedModule& y, const ModuleMorphism& f) {
  const int N = x.truncation();
  if (y.truncation() != N || f.size() != static_cast<std::size_t>(N) + 1) return false;
  for (int n = 0; n <= N; ++n) {
    const auto& fn = f[static_cast<std::size_t>(n)];
    if (fn.size() != x.size(n) || fn[0] != 0) return false;
    for (Index v : fn) {
      if (v >= y.size(n)) return false;
    }
  }
  for (int n = 0; n <= N; ++n) {
    const auto& fn = f[static_cast<std::size_t>(n)];
    for (int m = 0; m <= N; ++m) {
      const auto& fm = f[static_cast<std::size_t>(m)];
      const auto& tx = x.tables()[x.table_index(n, m)];
      const auto& ty = y.tables()[y.table_index(n, m)];
      for (std::size_t r = 0; r < map_count(n, m); ++r) {
        for (std::size_t e = 0; e < x.size(n); ++e) {
          if (fm[tx[r * x.size(n) + e]] != ty[r * y.size(n) + fn[e]]) return false;
        }
      }
    }
  }
  return true;
}

bool is_module_isomorphism(const TabulatedModule& x, const TabulatedModule& y,
                           const ModuleMorphism& f) {
  if (!is_natural(x, y, f)) return false;
  for (int n = 0; n <= x.truncation(); ++n) {
    if (x.size(n) != y.size(n)) return false;
    std::vector<Index> sorted = f[static_cast<std::size_t>(n)];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  }
  // A levelwise bijective natural transformation has a natural inverse.
  return true;
}

ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
  if (g.size() != f.size()) throw InvalidInput("compose: module morphisms have different levels");
  ModuleMorphism out(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) {
    for (Index v : f[n]) out[n].push_back(g[n].at(v));
  }
  return out;
}

ModuleMorphism identity_morphism(const TabulatedModule& x) {
  ModuleMorphism out(static_cast<std::size_t>(x.truncation()) + 1);
  for (int n = 0; n <= x.truncation(); ++n) {
    out[static_cast<std::size_t>(n)].resize(x.size(n));
    std::iota(out[static_cast<std::size_t>(n)].begin(), out[static_cast<std::size_t>(n)].end(), 0u);
  }
  return out;
}

std::vector<ModuleMorphism> enumerate_module_morphisms(const TabulatedModule& x,
                                                       const TabulatedModule& y, Budget budget) {
  const int N = x.truncation();
  if (y.truncation() != N) throw InvalidInput("enumerate_module_morphisms: truncation levels differ");

  // Flat positions: level-major, element-minor.
  std::vector<std::size_t> offset(static_cast<std::size_t>(N) + 2, 0);
  for (int n = 0; n <= N; ++n) offset[static_cast<std::size_t>(n) + 1] = offset[static_cast<std::size_t>(n)] + x.size(n);
  const std::size_t total = offset.back();
  std::vector<int> level_of(total);
  for (int n = 0; n <= N; ++n) {
    for (std::size_t p = offset[static_cast<std::size_t>(n)]; p < offset[static_cast<std::size_t>(n) + 1]; ++p) level_of[p] = n;
  }

  // A naturality square for (φ, e) says f(φe) = φ_Y(f(e)). It is attached to
  // the later of its two positions: as a forcing rule when that is φe, as a
  // check when that is e.
  struct Square {
    std::size_t other;
    const Index* y_row;
  };
  std::vector<std::vector<Square>> forcing(total), checks(total);
  for (int n = 0; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      const auto& tx = x.tables()[x.table_index(n, m)];
      const auto& ty = y.tables()[y.table_index(n, m)];
      const std::size_t identity_rank = n == m ? PointedMap::identity(n).rank() : map_count(n, m);
      for (std::size_t r = 0; r < map_count(n, m); ++r) {
        if (r == identity_rank) continue;
        const Index* y_row = ty.data() + r * y.size(n);
        for (std::size_t e = 1; e < x.size(n); ++e) {
          const std::size_t src = offset[static_cast<std::size_t>(n)] + e;
          const std::size_t dst = offset[static_cast<std::size_t>(m)] + tx[r * x.size(n) + e];
          if (dst > src) {
            forcing[dst].push_back({src, y_row});
          } else {
            checks[src].push_back({dst, y_row});
          }
        }
      }
    }
  }

  BudgetMeter meter(budget, "enumerate_module_morphisms(" + x.name() + ", " + y.name() + ")");
  std::vector<Index> f(total, 0);
  std::vector<ModuleMorphism> out;

  auto accept = [&](std::size_t p, Index v) {
    for (const auto& s : forcing[p]) {
      if (s.y_row[f[s.other]] != v) return false;
    }
    for (const auto& s : checks[p]) {
      // s.other == p is a square that loops back to its own element.
      const Index other = s.other == p ? v : f[s.other];
      if (other != s.y_row[v]) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t p) -> void {
    if (p == total) {
      ModuleMorphism m(static_cast<std::size_t>(N) + 1);
      for (int n = 0; n <= N; ++n) {
        m[static_cast<std::size_t>(n)].assign(f.begin() + static_cast<std::ptrdiff_t>(offset[static_cast<std::size_t>(n)]),
                                              f.begin() + static_cast<std::ptrdiff_t>(offset[static_cast<std::size_t>(n) + 1]));
      }
      out.push_back(std::move(m));
      return;
    }
    const bool basepoint = p == offset[static_cast<std::size_t>(level_of[p])];
    if (basepoint || !forcing[p].empty()) {
      const Index v = basepoint ? 0 : forcing[p].front().y_row[f[forcing[p].front().other]];
      meter.charge();
      if (accept(p, v)) {
        f[p] = v;
        self(self, p + 1);
      }
      return;
    }
    const auto candidates = static_cast<Index>(y.size(level_of[p]));
    for (Index v = 0; v < candidates; ++v) {
      meter.charge();
      if (!accept(p, v)) continue;
      f[p] = v;
      self(self, p + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// ---------------------------------------------------------------------------

GLReport gl_n(int n, int N, Budget budget) {
  if (n < 1) throw InvalidInput("gl_n: n must be >= 1");
  if (N < 1) throw InvalidInput("gl_n: truncation must be >= 1");
  GLReport report;
  report.n = n;
  report.truncation = N;
  const std::vector<TabulatedModule> copies(static_cast<std::size_t>(n), f1_module(N));
  const TabulatedModule w = wedge_sum(copies);

  const auto endo = enumerate_module_morphisms(w, w, budget);
  report.endomorphism_count = endo.size();
  for (const auto& f : endo) {
    if (is_module_isomorphism(w, w, f)) report.elements.push_back(f);
  }
  const std::set<ModuleMorphism> group(report.elements.begin(), report.elements.end());

  bool axioms = group.contains(identity_morphism(w));
  for (const auto& a : report.elements) {
    bool has_inverse = false;
    for (const auto& b : report.elements) {
      axioms = axioms && group.contains(compose(a, b));
      has_inverse = has_inverse || compose(a, b) == identity_morphism(w);
    }
    axioms = axioms && has_inverse;
  }
  report.group_axioms = axioms;

  // Summand j, element i of level k sits at 1 + j*k + (i-1).
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 1);
  std::map<ModuleMorphism, std::vector<int>> from_permutations;
  bool natural = true;
  do {
    ModuleMorphism f(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) {
      auto& fk = f[static_cast<std::size_t>(k)];
      fk.assign(w.size(k), 0);
      for (int j = 0; j < n; ++j) {
        for (int i = 1; i <= k; ++i) {
          fk[static_cast<std::size_t>(1 + j * k + i - 1)] =
              static_cast<Index>(1 + (sigma[static_cast<std::size_t>(j)] - 1) * k + i - 1);
        }
      }
    }
    natural = natural && is_module_isomorphism(w, w, f);
    from_permutations.emplace(std::move(f), sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  std::set<ModuleMorphism> perm_set;
  for (const auto& [f, s] : from_permutations) perm_set.insert(f);
  std::size_t factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= static_cast<std::size_t>(i);
  report.equals_summand_permutations = natural && perm_set.size() == factorial && perm_set == group;
  if (report.equals_summand_permutations) {
    for (const auto& f : report.elements) report.permutations.push_back(from_permutations.at(f));
  }
  return report;
}

// ---------------------------------------------------------------------------

nlohmann::json module_to_json(const TabulatedModule& x) {
  nlohmann::json j;
  j["name"] = x.name();
  j["levels"] = x.levels();
  nlohmann::json action = nlohmann::json::object();
  const int N = x.truncation();
  for (int n = 0; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      for (std::size_t r = 0; r < map_count(n, m); ++r) {
        const PointedMap phi = PointedMap::unrank(n, m, r);
        const auto row = x.action(phi);
        action[phi.to_string()] = std::vector<Index>(row.begin(), row.end());
      }
    }
  }
  j["action"] = std::move(action);
  return j;
}

TabulatedModule module_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("levels") || !j.contains("action")) {
    throw InvalidInput("module JSON needs 'levels' and 'action'");
  }
  std::vector<std::vector<std::string>> levels;
  try {
    levels = j.at("levels").get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidInput("module JSON: 'levels' must be a list of lists of strings");
  }
  if (levels.empty()) throw InvalidInput("module JSON: no levels");
  const int N = static_cast<int>(levels.size()) - 1;
  if (N > 8) throw InvalidInput("module JSON: truncation level above 8 is not supported");
  const auto& action = j.at("action");
  if (!action.is_object()) throw InvalidInput("module JSON: 'action' must be an object");

  std::vector<std::vector<Index>> tables(levels.size() * levels.size());
  std::vector<std::vector<bool>> filled(tables.size());
  for (int n = 0; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      const std::size_t t = static_cast<std::size_t>(n) * levels.size() + static_cast<std::size_t>(m);
      tables[t].assign(map_count(n, m) * levels[static_cast<std::size_t>(n)].size(), 0);
      filled[t].assign(map_count(n, m), false);
    }
  }
  for (const auto& [key, value] : action.items()) {
    const PointedMap phi = PointedMap::parse(key);
    if (phi.source() > N || phi.target() > N) {
      throw InvalidInput("module JSON: map " + key + " is above the truncation level");
    }
    const std::size_t width = levels[static_cast<std::size_t>(phi.source())].size();
    std::vector<Index> row;
    try {
      row = value.get<std::vector<Index>>();
    } catch (const nlohmann::json::exception&) {
      throw InvalidInput("module JSON: action of " + key + " must be a list of indices");
    }
    if (row.size() != width) throw InvalidInput("module JSON: action of " + key + " has the wrong length");
    const std::size_t t = static_cast<std::size_t>(phi.source()) * levels.size() + static_cast<std::size_t>(phi.target());
    std::copy(row.begin(), row.end(), tables[t].begin() + static_cast<std::ptrdiff_t>(phi.rank() * width));
    filled[t][phi.rank()] = true;
  }
  for (int n = 0; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      const auto& f = filled[static_cast<std::size_t>(n) * levels.size() + static_cast<std::size_t>(m)];
      const auto missing = std::find(f.begin(), f.end(), false);
      if (missing != f.end()) {
        const auto r = static_cast<std::uint64_t>(missing - f.begin());
        throw InvalidInput("module JSON: action of " + PointedMap::unrank(n, m, r).to_string() + " is missing");
      }
    }
  }
  return TabulatedModule(j.value("name", "module"), std::move(levels), std::move(tables));
}

}  // namespace plasmic
