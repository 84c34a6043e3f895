#include "plasmic/matroid.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace plasmic {

namespace {

std::string subset_text(Subset s, const std::vector<std::string>* labels) {
  if (labels) return format_subset(s, *labels);
  std::string out = "{";
  bool first = true;
  for_each_element(s, [&](Index i) {
    out += (first ? "" : ",") + std::to_string(i);
    first = false;
  });
  return out + "}";
}

CheckResult axioms(std::size_t n, const std::vector<Subset>& k, const std::vector<std::string>* labels) {
  auto show = [&](Subset s) { return subset_text(s, labels); };
  if (n == 0 || n > kMaxMatroidGround) return {false, "ground set must have 1..16 elements"};
  const Subset all = full_set(n);
  if (k.size() != (std::size_t{1} << n)) return {false, "closure table has the wrong size"};
  for (Subset a = 0; a <= all; ++a) {
    if (!is_subset(k[a], all)) return {false, "closure of " + show(a) + " leaves the ground set"};
  }
  for (Subset a = 0; a <= all; ++a) {
    if (!is_subset(a, k[a])) return {false, "not extensive at " + show(a)};
  }
  for (Subset a = 0; a <= all; ++a) {
    for (Index x = 0; x < n; ++x) {
      if (!contains(a, x) && !is_subset(k[a], k[a | singleton(x)])) {
        return {false, "not monotone: " + show(a) + " ⊆ " + show(a | singleton(x))};
      }
    }
  }
  for (Subset a = 0; a <= all; ++a) {
    if (k[k[a]] != k[a]) return {false, "not idempotent at " + show(a)};
  }
  for (Subset a = 0; a <= all; ++a) {
    for (Index y = 0; y < n; ++y) {
      const Subset gained = k[a | singleton(y)] & ~k[a];
      bool ok = true;
      Index bad = 0;
      for_each_element(gained, [&](Index x) {
        if (ok && !contains(k[a | singleton(x)], y)) {
          ok = false;
          bad = x;
        }
      });
      if (!ok) {
        return {false, "exchange fails for A = " + show(a) + ", x = " + show(singleton(bad)) +
                           ", y = " + show(singleton(y))};
      }
    }
  }
  if (!contains(k[0], 0)) return {false, "basepoint is not in the closure of the empty set"};
  return {};
}

Subset span_f2(Subset a) {
  // Closure of a set of vectors under XOR, including 0.
  Subset span = singleton(0);
  for_each_element(a, [&](Index v) {
    Subset next = span;
    for_each_element(span, [&](Index w) { next |= singleton(v ^ w); });
    span = next;
  });
  return span;
}

std::vector<std::string> strings(const nlohmann::json& j, std::string_view key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InvalidInput("matroid JSON: '" + std::string(key) + "' must be an array of strings");
  }
  std::vector<std::string> out;
  for (const auto& e : j.at(key)) {
    if (!e.is_string()) throw InvalidInput("matroid JSON: '" + std::string(key) + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

CheckResult check_matroid_axioms(std::size_t ground_size, const std::vector<Subset>& closure) {
  return axioms(ground_size, closure, nullptr);
}

PointedMatroid::PointedMatroid(std::string name, std::vector<std::string> ground,
                               std::vector<Subset> closure)
    : name_(std::move(name)), ground_(std::move(ground)), closure_(std::move(closure)) {
  std::set<std::string> seen(ground_.begin(), ground_.end());
  if (seen.size() != ground_.size()) throw InvalidInput("matroid '" + name_ + "': duplicate label");
  const auto r = axioms(ground_.size(), closure_, &ground_);
  if (!r.ok) throw InvalidInput("matroid '" + name_ + "': " + r.witness);
}

PointedMatroid from_closure_table(std::string name, std::vector<std::string> ground,
                                  std::vector<Subset> closure) {
  return PointedMatroid(std::move(name), std::move(ground), std::move(closure));
}

PointedMatroid from_lines(std::string name, std::vector<std::string> points,
                          const std::vector<std::vector<std::string>>& lines) {
  std::sort(points.begin(), points.end());
  std::vector<std::string> ground{"0"};
  for (auto& p : points) {
    if (p == "0") throw InvalidInput(name + ": '0' is reserved for the basepoint");
    ground.push_back(std::move(p));
  }
  const std::size_t n = ground.size();
  if (n > kMaxMatroidGround) throw InvalidInput(name + ": at most 15 points are supported");
  std::vector<Subset> line_sets;
  for (const auto& line : lines) {
    Subset s = 0;
    for (const auto& p : line) {
      auto it = std::find(ground.begin() + 1, ground.end(), p);
      if (it == ground.end()) throw InvalidInput(name + ": line mentions unknown point '" + p + "'");
      s |= singleton(static_cast<std::size_t>(it - ground.begin()));
    }
    if (cardinality(s) < 2) throw InvalidInput(name + ": a line needs at least two points");
    line_sets.push_back(s);
  }
  const Subset all = full_set(n);
  std::vector<Subset> closure(std::size_t{1} << n);
  for (Subset a = 0; a <= all; ++a) {
    const Subset pts = a & ~singleton(0);
    if (cardinality(pts) <= 1) {
      closure[a] = pts | singleton(0);
      continue;
    }
    std::vector<Subset> containing;
    for (Subset l : line_sets) {
      if (is_subset(pts, l)) containing.push_back(l);
    }
    if (cardinality(pts) == 2 && containing.size() > 1) {
      throw InvalidInput(name + ": points " + format_subset(pts, ground) + " lie on two lines");
    }
    if (!containing.empty()) {
      closure[a] = containing.front() | singleton(0);
    } else {
      closure[a] = cardinality(pts) == 2 ? pts | singleton(0) : all;
    }
  }
  return PointedMatroid(std::move(name), std::move(ground), std::move(closure));
}

PointedMatroid pg_f2(int k) {
  if (k < 0 || k > 4) throw InvalidInput("pg_f2(k) needs 0 <= k <= 4");
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::string> ground;
  for (std::size_t v = 0; v < n; ++v) {
    std::string s;
    for (int b = k - 1; b >= 0; --b) s += ((v >> b) & 1u) ? '1' : '0';
    ground.push_back(k == 0 ? "0" : s);
  }
  std::vector<Subset> closure(std::size_t{1} << n);
  for (Subset a = 0; a < closure.size(); ++a) closure[a] = span_f2(a);
  return PointedMatroid("PG_F2(" + std::to_string(k) + ")", std::move(ground), std::move(closure));
}

PointedMatroid free_simple(int n) {
  if (n < 0 || n + 1 > static_cast<int>(kMaxMatroidGround)) throw InvalidInput("free_simple(n) needs 0 <= n <= 15");
  std::vector<std::string> ground{"0"};
  for (int i = 1; i <= n; ++i) ground.push_back(std::to_string(i));
  std::vector<Subset> closure(std::size_t{1} << (n + 1));
  for (Subset a = 0; a < closure.size(); ++a) closure[a] = a | singleton(0);
  return PointedMatroid("free(" + std::to_string(n) + ")", std::move(ground), std::move(closure));
}

MatroidClassification classify_matroid(const PointedMatroid& m, Budget budget) {
  MatroidClassification c;
  const auto r = check_matroid_axioms(m.size(), m.closure_table());
  c.matroid = r.ok;
  if (!r.ok) {
    c.witness = r.witness;
    return c;
  }
  const std::size_t n = m.size();
  c.simple_pointed = m.closure(0) == singleton(0);
  if (!c.simple_pointed) c.witness = "closure of the empty set is " + m.format(m.closure(0));
  for (Index x = 0; x < n && c.simple_pointed; ++x) {
    if (m.closure(singleton(x)) != (singleton(0) | singleton(x))) {
      c.simple_pointed = false;
      c.witness = "closure of {" + m.labels()[x] + "} is " + m.format(m.closure(singleton(x)));
    }
  }
  if (!c.simple_pointed) return c;

  const Subset all = full_set(n);
  // Condition 1: κ(A) is the union of κ(B) over B ⊆ A. With a finite ground
  // set every subset is finite; U(A) = κ(A) ∪ ⋃_x U(A − x) computes it.
  std::vector<Subset> u(std::size_t{1} << n);
  bool generated = true;
  for (Subset a = 0; a <= all; ++a) {
    Subset acc = m.closure(a);
    for_each_element(a, [&](Index x) { acc |= u[a & ~singleton(x)]; });
    u[a] = acc;
    if (generated && acc != m.closure(a)) {
      generated = false;
      c.witness = "closure of " + m.format(a) + " is not generated by its subsets";
    }
  }
  // Condition 2 over pairs of flats: κ(A∪B) = κ(κA ∪ κB) and the right-hand
  // union depends only on κA and κB.
  std::vector<Subset> flats;
  for (Subset a = 0; a <= all; ++a) {
    if (m.closure(a) == a) flats.push_back(a);
  }
  std::vector<Subset> line(n * n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) line[x * n + y] = m.closure(singleton(x) | singleton(y));
  }
  BudgetMeter meter(budget, "classify_matroid(" + m.name() + ")");
  bool joins = true;
  for (std::size_t i = 0; i < flats.size() && joins; ++i) {
    for (std::size_t j = i; j < flats.size(); ++j) {
      meter.charge();
      Subset rhs = 0;
      for_each_element(flats[i], [&](Index x) {
        for_each_element(flats[j], [&](Index y) { rhs |= line[x * n + y]; });
      });
      if (rhs != m.closure(flats[i] | flats[j])) {
        joins = false;
        c.witness = "join of flats " + m.format(flats[i]) + " and " + m.format(flats[j]) +
                    " is not covered by lines";
        break;
      }
    }
  }
  c.projective = generated && joins;
  return c;
}

Plasma pi_plasma(const PointedMatroid& m) {
  const auto c = classify_matroid(m);
  if (!c.simple_pointed) {
    throw InvalidInput("pi_plasma: '" + m.name() + "' is not simple pointed: " + c.witness);
  }
  if (m.size() > kMaxCarrier) throw InvalidInput("pi_plasma: ground set too large");
  return Plasma("Pi(" + m.name() + ")", m.labels(), [&](Index x, Index y) -> Subset {
    if (x == y) return singleton(x) | singleton(0);
    if (x == 0) return singleton(y);
    if (y == 0) return singleton(x);
    return m.closure(singleton(x) | singleton(y)) & ~(singleton(x) | singleton(y) | singleton(0));
  });
}

bool is_matroid_morphism(const PointedMatroid& m, const PointedMatroid& n,
                         std::span<const Index> map) {
  if (map.size() != m.size() || map[0] != 0) return false;
  for (Index v : map) {
    if (v >= n.size()) return false;
  }
  auto image = [&](Subset s) {
    Subset out = 0;
    for_each_element(s, [&](Index x) { out |= singleton(map[x]); });
    return out;
  };
  const Subset all = full_set(m.size());
  for (Subset a = 0; a <= all; ++a) {
    if (!is_subset(image(m.closure(a)), n.closure(image(a)))) return false;
  }
  return true;
}

std::vector<ElementMap> enumerate_matroid_morphisms(const PointedMatroid& m,
                                                    const PointedMatroid& n, Budget budget) {
  const std::size_t sm = m.size();
  const Subset all = full_set(sm);
  // A subset is checkable once A and κ(A) are assigned. Within one bucket,
  // small subsets come first so that point and line violations prune early.
  std::vector<std::vector<Subset>> ready(sm);
  for (Subset a = 0; a <= all; ++a) {
    ready[static_cast<std::size_t>(highest_element(a | m.closure(a)))].push_back(a);
  }
  for (auto& bucket : ready) {
    std::stable_sort(bucket.begin(), bucket.end(),
                     [](Subset x, Subset y) { return cardinality(x) < cardinality(y); });
  }
  ElementMap f(sm, 0);
  auto image = [&](Subset s) {
    Subset out = 0;
    for_each_element(s, [&](Index x) { out |= singleton(f[x]); });
    return out;
  };
  auto consistent = [&](std::size_t k) {
    for (Subset a : ready[k]) {
      if (!is_subset(image(m.closure(a)), n.closure(image(a)))) return false;
    }
    return true;
  };
  BudgetMeter meter(budget, "enumerate_matroid_morphisms(" + m.name() + ", " + n.name() + ")");
  std::vector<ElementMap> out;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == sm) {
      out.push_back(f);
      return;
    }
    for (Index v = 0; v < n.size(); ++v) {
      meter.charge();
      f[k] = v;
      if (consistent(k)) self(self, k + 1);
    }
  };
  if (consistent(0)) rec(rec, 1);
  return out;
}

EmbeddingReport embedding_check(const PointedMatroid& m, const PointedMatroid& n, Budget budget) {
  EmbeddingReport r;
  const auto mat = enumerate_matroid_morphisms(m, n, budget);
  const Plasma pm = pi_plasma(m);
  const Plasma pn = pi_plasma(n);
  const auto plas = enumerate_morphism_maps(pm, pn, budget);
  r.matroid_homs = mat.size();
  r.plasma_homs = plas.size();
  r.functorial = std::all_of(mat.begin(), mat.end(), [&](const ElementMap& f) { return is_morphism(pm, pn, f); });
  // Π is the identity on underlying functions, so distinct morphisms stay distinct.
  const std::set<ElementMap> mat_set(mat.begin(), mat.end());
  r.faithful = r.functorial && mat_set.size() == mat.size();
  r.both_projective = classify_matroid(m, budget).projective && classify_matroid(n, budget).projective;
  const std::set<ElementMap> plas_set(plas.begin(), plas.end());
  r.full = r.faithful && plas_set == mat_set;
  return r;
}

std::optional<ElementMap> find_isomorphism(const PointedMatroid& m, const PointedMatroid& n,
                                           Budget budget) {
  if (m.size() != n.size()) return std::nullopt;
  for (const auto& f : enumerate_matroid_morphisms(m, n, budget)) {
    ElementMap inv(f.size(), 0);
    Subset hit = 0;
    for (Index x = 0; x < f.size(); ++x) {
      hit |= singleton(f[x]);
      inv[f[x]] = x;
    }
    if (hit == full_set(f.size()) && is_matroid_morphism(n, m, inv)) return f;
  }
  return std::nullopt;
}

PointedMatroid matroid_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("matroid JSON must be an object");
  const std::string name = j.value("name", "matroid");
  if (j.contains("builder")) {
    const auto b = j.at("builder").get<std::string>();
    auto arg = [&](const char* key) {
      if (!j.contains(key) || !j.at(key).is_number_integer()) {
        throw InvalidInput("matroid JSON: integer field '" + std::string(key) + "' is required");
      }
      return j.at(key).get<int>();
    };
    if (b == "pg_f2") return pg_f2(arg("k"));
    if (b == "free_simple") return free_simple(arg("n"));
    throw InvalidInput("matroid JSON: unknown builder '" + b + "'");
  }
  if (j.contains("lines")) {
    std::vector<std::vector<std::string>> lines;
    for (const auto& l : j.at("lines")) {
      auto& line = lines.emplace_back();
      for (const auto& p : l) {
        if (!p.is_string()) throw InvalidInput("matroid JSON: line entries must be strings");
        line.push_back(p.get<std::string>());
      }
    }
    if (j.contains("basepoint") && j.at("basepoint") != "0") {
      throw InvalidInput("matroid JSON: the basepoint of a line geometry is always '0'");
    }
    return from_lines(name, strings(j, "points"), lines);
  }
  if (!j.contains("closure") || !j.at("closure").is_object()) {
    throw InvalidInput("matroid JSON needs 'lines', 'closure' or 'builder'");
  }
  const auto ground = strings(j, "ground");
  if (ground.empty() || ground.size() > kMaxMatroidGround) {
    throw InvalidInput("matroid JSON: ground must have 1..16 elements");
  }
  auto parse = [&](const std::string& text) {
    Subset s = 0;
    std::size_t start = 0;
    while (start < text.size()) {
      const auto comma = std::min(text.find(',', start), text.size());
      const std::string label = text.substr(start, comma - start);
      auto it = std::find(ground.begin(), ground.end(), label);
      if (it == ground.end()) throw InvalidInput("matroid JSON: unknown element '" + label + "'");
      s |= singleton(static_cast<std::size_t>(it - ground.begin()));
      start = comma + 1;
    }
    return s;
  };
  std::vector<Subset> closure(std::size_t{1} << ground.size());
  std::vector<bool> given(closure.size(), false);
  for (const auto& [key, value] : j.at("closure").items()) {
    if (!value.is_string()) throw InvalidInput("matroid JSON: closure values must be strings");
    const Subset a = parse(key);
    if (given[a]) throw InvalidInput("matroid JSON: closure of '" + key + "' given twice");
    given[a] = true;
    closure[a] = parse(value.get<std::string>());
  }
  for (std::size_t a = 0; a < closure.size(); ++a) {
    if (!given[a]) {
      throw InvalidInput("matroid JSON: closure of " + format_subset(a, ground) + " is missing");
    }
  }
  return PointedMatroid(name, ground, std::move(closure));
}

PointedMatroid build_matroid(std::string_view descriptor) {
  std::string name(descriptor);
  std::string arg;
  if (auto open = name.find('('); open != std::string::npos && name.back() == ')') {
    arg = name.substr(open + 1, name.size() - open - 2);
    name.resize(open);
  } else if (auto colon = name.find(':'); colon != std::string::npos) {
    arg = name.substr(colon + 1);
    name.resize(colon);
  }
  int v = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
  const bool has_int = !arg.empty() && ec == std::errc{} && ptr == arg.data() + arg.size();
  if (name == "pg_f2" && has_int) return pg_f2(v);
  if (name == "free_simple" && has_int) return free_simple(v);
  throw InvalidInput("unknown matroid builder '" + std::string(descriptor) + "'");
}

}  // namespace plasmic
