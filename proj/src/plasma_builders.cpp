#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "plasmic/plasma.hpp"

namespace plasmic {

namespace {

Index lookup(const std::vector<std::string>& labels, const std::string& label,
             std::string_view context) {
  for (Index i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  throw InvalidInput(std::string(context) + ": unknown element '" + label + "'");
}

// Unit first, the remaining labels in lexicographic order.
std::vector<std::string> canonical_order(std::vector<std::string> labels, const std::string& unit) {
  auto it = std::find(labels.begin(), labels.end(), unit);
  if (it == labels.end()) throw InvalidInput("unit '" + unit + "' is not among the elements");
  labels.erase(it);
  std::sort(labels.begin(), labels.end());
  labels.insert(labels.begin(), unit);
  return labels;
}

void check_size(std::size_t n, std::string_view what) {
  if (n == 0) throw InvalidInput(std::string(what) + ": empty carrier");
  if (n > kMaxCarrier) throw InvalidInput(std::string(what) + ": more than 63 elements");
}

}  // namespace

Plasma krasner() {
  return Plasma("krasner", {"0", "1"}, [](Index a, Index b) -> Subset {
    if (a == 0) return singleton(b);
    if (b == 0) return singleton(a);
    return 0b11;
  });
}

Plasma psi_f1() {
  return Plasma("psi_f1", {"0", "1"}, [](Index a, Index b) -> Subset {
    if (a == 0) return singleton(b);
    if (b == 0) return singleton(a);
    return 0;
  });
}

Plasma boolean_monoid() {
  return Plasma("boolean", {"0", "1"}, [](Index a, Index b) { return singleton(a | b); });
}

Plasma power_set(int n) {
  if (n < 0 || n > 5) throw InvalidInput("power_set(n) needs 0 <= n <= 5");
  const Index size = Index{1} << n;
  std::vector<std::string> labels;
  for (Index s = 0; s < size; ++s) {
    std::string l = "{";
    for (int k = 0; k < n; ++k) {
      if (s & (Index{1} << k)) l += std::to_string(k + 1);
    }
    labels.push_back(l + "}");
  }
  return Plasma("P(" + std::to_string(n) + ")", std::move(labels), [](Index a, Index b) -> Subset {
    return (a & b) ? 0 : singleton(a | b);
  });
}

Plasma linear_tree(int n) {
  if (n < 0 || n >= static_cast<int>(kMaxCarrier)) throw InvalidInput("linear_tree(n) needs 0 <= n < 63");
  std::vector<std::string> labels;
  for (int i = 0; i <= n; ++i) labels.push_back(std::to_string(i));
  return Plasma("T" + std::to_string(n), std::move(labels), [](Index a, Index b) {
    if (a > b) std::swap(a, b);
    return full_set(b + 1) & ~full_set(a);
  });
}

Plasma cyclic_group(int n) {
  if (n < 1 || n > static_cast<int>(kMaxCarrier)) throw InvalidInput("cyclic(n) needs 1 <= n <= 63");
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  const auto m = static_cast<Index>(n);
  return Plasma("Z/" + std::to_string(n), std::move(labels),
                [m](Index a, Index b) { return singleton((a + b) % m); });
}

Plasma poset_plasma(std::string name, std::vector<std::string> elements,
                    const std::vector<LabelPair>& relation, const std::string& least) {
  check_size(elements.size(), name);
  const auto labels = canonical_order(std::move(elements), least);
  const std::size_t n = labels.size();
  std::vector<Subset> below(n);  // below[y] = {x : x <= y}
  for (Index i = 0; i < n; ++i) below[i] = singleton(i);
  for (const auto& [a, b] : relation) {
    below[lookup(labels, b, name)] |= singleton(lookup(labels, a, name));
  }
  // Transitive closure.
  for (bool changed = true; changed;) {
    changed = false;
    for (Index y = 0; y < n; ++y) {
      Subset acc = below[y];
      for_each_element(below[y], [&](Index x) { acc |= below[x]; });
      if (acc != below[y]) {
        below[y] = acc;
        changed = true;
      }
    }
  }
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      if (contains(below[x], y) && contains(below[y], x)) {
        throw InvalidInput(name + ": relation is not antisymmetric (" + labels[x] + ", " +
                           labels[y] + ")");
      }
    }
  }
  for (Index y = 0; y < n; ++y) {
    if (!contains(below[y], 0)) {
      throw InvalidInput(name + ": '" + least + "' is not below '" + labels[y] + "'");
    }
  }
  std::vector<Subset> above(n, 0);
  for (Index y = 0; y < n; ++y) {
    for_each_element(below[y], [&](Index x) { above[x] |= singleton(y); });
  }
  return Plasma(std::move(name), labels, [&](Index a, Index b) -> Subset {
    if (contains(below[b], a)) return above[a] & below[b];
    if (contains(below[a], b)) return above[b] & below[a];
    return 0;
  });
}

Plasma tree_plasma(std::string name, std::vector<std::string> vertices,
                   const std::vector<LabelPair>& edges, const std::string& root) {
  check_size(vertices.size(), name);
  const auto labels = canonical_order(std::move(vertices), root);
  const std::size_t n = labels.size();
  if (edges.size() + 1 != n) {
    throw InvalidInput(name + ": a tree on " + std::to_string(n) + " vertices needs " +
                       std::to_string(n - 1) + " edges");
  }
  std::vector<std::vector<Index>> adj(n);
  for (const auto& [a, b] : edges) {
    const Index u = lookup(labels, a, name);
    const Index v = lookup(labels, b, name);
    if (u == v) throw InvalidInput(name + ": loop at '" + a + "'");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  // Root paths by DFS; with n-1 edges, reaching every vertex
  // means the graph is connected and acyclic.
  std::vector<Subset> path_to_root(n, 0);
  std::vector<Index> stack{0};
  Subset seen = singleton(0);
  path_to_root[0] = singleton(0);
  while (!stack.empty()) {
    const Index u = stack.back();
    stack.pop_back();
    for (Index v : adj[u]) {
      if (contains(seen, v)) continue;
      seen |= singleton(v);
      path_to_root[v] = path_to_root[u] | singleton(v);
      stack.push_back(v);
    }
  }
  if (seen != full_set(n)) throw InvalidInput(name + ": edges do not form a tree");
  return Plasma(std::move(name), labels, [&](Index a, Index b) -> Subset {
    const Subset common = path_to_root[a] & path_to_root[b];
    // The meeting vertex is the deepest common ancestor.
    Index meet = 0;
    for_each_element(common, [&](Index v) {
      if (cardinality(path_to_root[v]) > cardinality(path_to_root[meet])) meet = v;
    });
    return (path_to_root[a] ^ path_to_root[b]) | singleton(meet);
  });
}

Plasma monoid_plasma(std::string name, std::vector<std::string> elements,
                     const std::vector<std::vector<std::optional<std::string>>>& table) {
  check_size(elements.size(), name);
  const std::size_t n = elements.size();
  if (table.size() != n) throw InvalidInput(name + ": table has the wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != n) throw InvalidInput(name + ": table row has the wrong length");
  }
  const auto labels = canonical_order(elements, elements[0]);
  std::vector<Index> pos(n);
  for (Index i = 0; i < n; ++i) pos[i] = lookup(labels, elements[i], name);
  std::vector<Subset> dense(n * n, 0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (table[i][j]) dense[pos[i] * n + pos[j]] = singleton(lookup(labels, *table[i][j], name));
    }
  }
  return Plasma(std::move(name), labels, [&](Index a, Index b) { return dense[a * n + b]; });
}

std::vector<Subset> recovered_order(const Plasma& p) {
  std::vector<Subset> below(p.size(), 0);
  for (Index y = 0; y < p.size(); ++y) below[y] = p.sum(p.unit(), y);
  return below;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::vector<std::string> string_list(const nlohmann::json& j, std::string_view key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InvalidInput("plasma JSON: '" + std::string(key) + "' must be an array of strings");
  }
  std::vector<std::string> out;
  for (const auto& e : j.at(key)) {
    if (!e.is_string()) throw InvalidInput("plasma JSON: '" + std::string(key) + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<LabelPair> pair_list(const nlohmann::json& j, std::string_view key) {
  std::vector<LabelPair> out;
  if (!j.contains(key)) return out;
  for (const auto& e : j.at(key)) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw InvalidInput("plasma JSON: '" + std::string(key) + "' entries must be [a, b]");
    }
    out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return out;
}

int int_field(const nlohmann::json& j, std::string_view key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw InvalidInput("plasma JSON: integer field '" + std::string(key) + "' is required");
  }
  return j.at(key).get<int>();
}

Plasma plasma_from_table(const nlohmann::json& j) {
  const std::string name = j.value("name", "plasma");
  auto elements = string_list(j, "elements");
  check_size(elements.size(), name);
  if (!j.contains("unit") || !j.at("unit").is_string()) {
    throw InvalidInput("plasma JSON: 'unit' must name an element");
  }
  const std::string unit = j.at("unit").get<std::string>();
  auto it = std::find(elements.begin(), elements.end(), unit);
  if (it == elements.end()) throw InvalidInput("plasma JSON: unit '" + unit + "' is not an element");
  // Given order is kept with the unit moved to the front.
  std::rotate(elements.begin(), it, it + 1);
  const std::size_t n = elements.size();
  const bool strict_unit = j.value("strict_unit", false);

  std::map<std::pair<Index, Index>, Subset> sums;
  if (j.contains("sum")) {
    if (!j.at("sum").is_object()) throw InvalidInput("plasma JSON: 'sum' must be an object");
    for (const auto& [key, value] : j.at("sum").items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos || key.find(',', comma + 1) != std::string::npos) {
        throw InvalidInput("plasma JSON: sum key '" + key + "' must be 'a,b'");
      }
      Index a = lookup(elements, key.substr(0, comma), "plasma JSON");
      Index b = lookup(elements, key.substr(comma + 1), "plasma JSON");
      if (a > b) std::swap(a, b);
      if (!value.is_array()) throw InvalidInput("plasma JSON: sum '" + key + "' must be an array");
      Subset s = 0;
      for (const auto& e : value) {
        if (!e.is_string()) throw InvalidInput("plasma JSON: sum '" + key + "' must hold strings");
        s |= singleton(lookup(elements, e.get<std::string>(), "plasma JSON"));
      }
      if (!sums.emplace(std::pair{a, b}, s).second) {
        throw InvalidInput("plasma JSON: pair '" + key + "' is given twice");
      }
    }
  }
  for (Index x = 0; x < n; ++x) {
    if (sums.contains({0, x})) continue;
    if (!strict_unit) {
      throw InvalidInput("plasma JSON: missing sum for (" + unit + "," + elements[x] +
                         "); set \"strict_unit\": true to default it");
    }
    sums[{0, x}] = singleton(x);
  }
  return Plasma(name, std::move(elements), [&](Index a, Index b) -> Subset {
    if (a > b) std::swap(a, b);
    auto f = sums.find({a, b});
    return f == sums.end() ? 0 : f->second;
  });
}

}  // namespace

Plasma plasma_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("plasma JSON must be an object");
  if (!j.contains("builder")) return plasma_from_table(j);
  const auto builder = j.at("builder").get<std::string>();
  if (builder == "table") return plasma_from_table(j);
  if (builder == "poset") {
    if (!j.contains("least")) throw InvalidInput("poset builder: 'least' is required");
    return poset_plasma(j.value("name", "poset"), string_list(j, "elements"),
                        pair_list(j, "relation"), j.at("least").get<std::string>());
  }
  if (builder == "tree") {
    if (!j.contains("root")) throw InvalidInput("tree builder: 'root' is required");
    return tree_plasma(j.value("name", "tree"), string_list(j, "vertices"), pair_list(j, "edges"),
                       j.at("root").get<std::string>());
  }
  if (builder == "monoid") {
    auto elements = string_list(j, "elements");
    std::vector<std::vector<std::optional<std::string>>> table;
    if (!j.contains("table") || !j.at("table").is_array()) {
      throw InvalidInput("monoid builder: 'table' must be an array of rows");
    }
    for (const auto& row : j.at("table")) {
      auto& out = table.emplace_back();
      for (const auto& e : row) {
        if (e.is_null()) {
          out.emplace_back();
        } else if (e.is_string()) {
          out.emplace_back(e.get<std::string>());
        } else {
          throw InvalidInput("monoid builder: entries must be strings or null");
        }
      }
    }
    return monoid_plasma(j.value("name", "monoid"), std::move(elements), table);
  }
  Plasma p = [&] {
    if (builder == "power_set") return power_set(int_field(j, "n"));
    if (builder == "linear_tree") return linear_tree(int_field(j, "n"));
    if (builder == "cyclic") return cyclic_group(int_field(j, "n"));
    return build_plasma(builder);
  }();
  return j.contains("name") ? p.renamed(j.at("name").get<std::string>()) : p;
}

nlohmann::json plasma_to_json(const Plasma& p) {
  nlohmann::json j;
  j["name"] = p.name();
  j["elements"] = p.labels();
  j["unit"] = p.label(p.unit());
  nlohmann::json sum = nlohmann::json::object();
  for (Index a = 0; a < p.size(); ++a) {
    for (Index b = a; b < p.size(); ++b) {
      const Subset s = p.sum(a, b);
      if (s == 0 && a != 0) continue;
      auto& entry = sum[p.label(a) + "," + p.label(b)];
      entry = nlohmann::json::array();
      for_each_element(s, [&](Index c) { entry.push_back(p.label(c)); });
    }
  }
  j["sum"] = std::move(sum);
  return j;
}

Plasma build_plasma(std::string_view descriptor) {
  std::string name(descriptor);
  std::optional<int> arg;
  auto parse_arg = [&](std::string_view text) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw InvalidInput("invalid builder argument in '" + std::string(descriptor) + "'");
    }
    return v;
  };
  if (auto open = name.find('('); open != std::string::npos) {
    if (name.back() != ')') throw InvalidInput("invalid builder '" + std::string(descriptor) + "'");
    arg = parse_arg(std::string_view(name).substr(open + 1, name.size() - open - 2));
    name.resize(open);
  } else if (auto colon = name.find(':'); colon != std::string::npos) {
    arg = parse_arg(std::string_view(name).substr(colon + 1));
    name.resize(colon);
  }
  auto need = [&](bool wants) {
    if (wants != arg.has_value()) {
      throw InvalidInput("builder '" + name + (wants ? "' needs an argument" : "' takes no argument"));
    }
  };
  if (name == "krasner") return need(false), krasner();
  if (name == "psi_f1") return need(false), psi_f1();
  if (name == "boolean") return need(false), boolean_monoid();
  if (name == "power_set") return need(true), power_set(*arg);
  if (name == "linear_tree") return need(true), linear_tree(*arg);
  if (name == "cyclic") return need(true), cyclic_group(*arg);
  throw InvalidInput("unknown plasma builder '" + std::string(descriptor) + "'");
}

}  // namespace plasmic
