#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "plasmic/bits.hpp"
#include "plasmic/errors.hpp"
#include "plasmic/matroid.hpp"
#include "plasmic/module.hpp"
#include "plasmic/nerve.hpp"
#include "plasmic/plasma.hpp"
#include "plasmic/simplicial.hpp"

namespace {

using nlohmann::json;
using namespace plasmic;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;

struct Options {
  bool json = false;
  bool timing = false;
  std::uint64_t budget = kDefaultBudget;
};

struct Report {
  std::string command;
  json inputs = json::array();
  std::vector<std::string> lines;
  json results = json::object();
  int exit_code = kExitOk;

  void line(std::string s) { lines.push_back(std::move(s)); }
};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

// A file path is read from disk; anything else is a builder descriptor.
struct Source {
  std::string text;
  bool is_file = false;
};

Source read_source(Report& r, const std::string& arg) {
  Source s;
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    s.text = buf.str();
    s.is_file = true;
  } else {
    s.text = arg;
  }
  r.inputs.push_back({{"source", arg}, {"kind", s.is_file ? "file" : "builder"},
                      {"fnv1a64", hex64(fnv1a64(s.text))}});
  return s;
}

json parse_json(const Source& s) {
  try {
    return json::parse(s.text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

Plasma load_plasma(Report& r, const std::string& arg) {
  const Source s = read_source(r, arg);
  return s.is_file ? plasma_from_json(parse_json(s)) : build_plasma(s.text);
}

PointedMatroid load_matroid(Report& r, const std::string& arg) {
  const Source s = read_source(r, arg);
  return s.is_file ? matroid_from_json(parse_json(s)) : build_matroid(s.text);
}

int parse_parameter(std::string_view d, std::string_view prefix) {
  std::string rest(d.substr(prefix.size()));
  if (!rest.empty() && (rest.front() == '(' || rest.front() == ':')) rest.erase(0, 1);
  if (!rest.empty() && rest.back() == ')') rest.pop_back();
  try {
    return std::stoi(rest);
  } catch (const std::exception&) {
    throw InvalidInput("bad parameter in '" + std::string(d) + "'");
  }
}

// f1, corep(n), em:<plasma>, nerve:<plasma>, a module JSON file or a plasma
// (file or builder), whose nerve is taken.
TabulatedModule load_module(Report& r, const std::string& arg, int N, Budget budget) {
  if (arg == "f1") {
    read_source(r, arg);
    return f1_module(N);
  }
  if (arg.starts_with("corep")) {
    read_source(r, arg);
    return corepresented_module(parse_parameter(arg, "corep"), N, budget);
  }
  if (arg.starts_with("em:")) return eilenberg_maclane(load_plasma(r, arg.substr(3)), N);
  if (arg.starts_with("nerve:")) return nerve_module(load_plasma(r, arg.substr(6)), N, budget);
  const Source s = read_source(r, arg);
  if (s.is_file) {
    const json j = parse_json(s);
    if (j.contains("levels")) return module_from_json(j);
    return nerve_module(plasma_from_json(j), N, budget);
  }
  return nerve_module(build_plasma(s.text), N, budget);
}

std::string format_map(const Plasma& p, const Plasma& q, const ElementMap& f) {
  std::string out;
  for (Index a = 0; a < f.size(); ++a) out += (a ? " " : "") + p.label(a) + "->" + q.label(f[a]);
  return out;
}

std::string format_values(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "]";
}

// ---------------------------------------------------------------------------

void run_check(Report& r, const Options&, const std::string& file) {
  const Plasma p = load_plasma(r, file);
  const PropertyReport rep = check_properties(p);
  r.line("plasma " + p.name() + " with " + std::to_string(p.size()) + " elements");
  const std::vector<std::tuple<const char*, bool, const std::optional<Witness>*>> flags = {
      {"commutative", rep.commutative, &rep.commutative_witness},
      {"weakly_unital", rep.weakly_unital, &rep.weakly_unital_witness},
      {"associative", rep.associative, &rep.associative_witness},
      {"strictly_unital", rep.strictly_unital, &rep.strictly_unital_witness},
      {"total", rep.total, &rep.total_witness},
      {"deterministic", rep.deterministic, &rep.deterministic_witness},
      {"reversible", rep.reversible, &rep.reversible_witness},
      {"mosaic", rep.mosaic, nullptr},
      {"monoid", rep.monoid, nullptr},
  };
  for (const auto& [name, value, witness] : flags) {
    std::string l = std::string(name) + "=" + yes_no(value);
    r.results[name] = value;
    if (witness && witness->has_value()) {
      l += "  witness: " + (*witness)->text;
      r.results[std::string(name) + "_witness"] = (*witness)->text;
    }
    r.line(l);
  }
  r.line("inverse_count=" + std::to_string(rep.inverse_count));
  r.results["inverse_count"] = rep.inverse_count;
  if (rep.inverse) {
    r.line("inverse: " + format_map(p, p, *rep.inverse));
    r.results["inverse"] = *rep.inverse;
  }
}

void run_nerve(Report& r, const Options& o, const std::string& file, int n) {
  const Plasma p = load_plasma(r, file);
  const auto level = nerve_level(p, n, Budget{o.budget});
  json tuples = json::array();
  for (const auto& t : level) {
    r.line(format_tuple(p, t));
    tuples.push_back(format_tuple(p, t));
  }
  r.results = {{"plasma", p.name()}, {"n", n}, {"count", level.size()}, {"tuples", tuples}};
  r.line("# count=" + std::to_string(level.size()));
}

void run_hom(Report& r, const Options& o, const std::string& a, const std::string& b, bool list) {
  const Plasma p = load_plasma(r, a);
  const Plasma q = load_plasma(r, b);
  const auto maps = enumerate_morphism_maps(p, q, Budget{o.budget});
  r.line("|Plas(" + p.name() + ", " + q.name() + ")|=" + std::to_string(maps.size()));
  r.results["count"] = maps.size();
  if (list) {
    r.results["maps"] = json::array();
    for (const auto& f : maps) {
      r.line(format_map(p, q, f));
      r.results["maps"].push_back(f);
    }
  }
}

void run_segal(Report& r, const Options& o, const std::string& file, int N) {
  const TabulatedModule x = load_module(r, file, N, Budget{o.budget});
  const SegalReport rep = segal_check(x, Budget{o.budget});
  r.line("module " + x.name() + " truncated at " + std::to_string(x.truncation()));
  r.line(std::string("iso_form=") + yes_no(rep.iso_form));
  r.line(std::string("pullback_form=") + yes_no(rep.pullback_form));
  if (!rep.witness.empty()) r.line("witness: " + rep.witness);
  r.line(std::string("segal=") + yes_no(rep.iso_form && rep.pullback_form));
  r.results = {{"module", x.name()},
               {"iso_form", rep.iso_form},
               {"pullback_form", rep.pullback_form},
               {"witness", rep.witness}};
  if (!(rep.iso_form && rep.pullback_form)) r.exit_code = kExitCheckFailed;
}

void run_two_segal(Report& r, const Options& o, const std::string& file, int N, bool dump) {
  const TabulatedModule x = load_module(r, file, N, Budget{o.budget});
  const TruncatedSimplicialSet s = underlying_simplicial(x);
  const CheckResult ids = check_simplicial_identities(s);
  const TwoSegalReport rep = two_segal_check(s);
  r.line("simplicial set " + s.name + " truncated at " + std::to_string(s.truncation()));
  r.line(std::string("simplicial_identities=") + yes_no(ids.ok) +
         (ids.ok ? "" : "  witness: " + ids.witness));
  json squares = json::array();
  for (const auto& sq : rep.squares) {
    r.line("n=" + std::to_string(sq.n) + " i=" + std::to_string(sq.i) + " square=" +
           std::to_string(sq.kind) + " pullback=" + std::to_string(sq.pullback_size) + " level" +
           std::to_string(sq.n + 1) + "=" + std::to_string(sq.top_size) +
           " bijective=" + yes_no(sq.bijective));
    squares.push_back({{"n", sq.n},
                       {"i", sq.i},
                       {"square", sq.kind},
                       {"pullback", sq.pullback_size},
                       {"top", sq.top_size},
                       {"bijective", sq.bijective}});
  }
  r.line(std::string("two_segal=") + yes_no(rep.ok) + (rep.ok ? "" : "  failing: " + rep.witness));
  r.results = {{"simplicial_identities", ids.ok}, {"two_segal", rep.ok},
               {"witness", rep.witness}, {"squares", squares}};
  if (dump) {
    std::istringstream tsv(simplicial_to_tsv(s));
    for (std::string l; std::getline(tsv, l);) r.line(l);
  }
  if (!rep.ok || !ids.ok) r.exit_code = kExitCheckFailed;
}

void run_matroid(Report& r, const Options& o, const std::string& file) {
  const PointedMatroid m = load_matroid(r, file);
  const MatroidClassification c = classify_matroid(m, Budget{o.budget});
  r.line("matroid " + m.name() + " on " + std::to_string(m.size()) + " elements");
  r.line(std::string("matroid=") + yes_no(c.matroid));
  r.line(std::string("simple_pointed=") + yes_no(c.simple_pointed));
  r.line(std::string("projective=") + yes_no(c.projective));
  if (!c.witness.empty()) r.line("witness: " + c.witness);
  r.results = {{"matroid", c.matroid},
               {"simple_pointed", c.simple_pointed},
               {"projective", c.projective},
               {"witness", c.witness}};
  if (!c.simple_pointed) return;
  const Plasma p = pi_plasma(m);
  const PropertyReport props = check_properties(p);
  r.line(std::string("pi: commutative=") + yes_no(props.commutative) +
         " mosaic=" + yes_no(props.mosaic) + " associative=" + yes_no(props.associative));
  r.results["pi"] = plasma_to_json(p);
  r.results["pi_mosaic"] = props.mosaic;
  for (Index a = 0; a < p.size(); ++a) {
    for (Index b = a; b < p.size(); ++b) {
      r.line(p.label(a) + " + " + p.label(b) + " = " + p.format(p.sum(a, b)));
    }
  }
}

void run_counterexample(Report& r, const Options& o) {
  const Plasma k = krasner();
  const Budget budget{o.budget};
  const std::size_t h2 = nerve_level(k, 2, budget).size();
  const std::size_t h3 = nerve_level(k, 3, budget).size();
  const std::size_t h4 = nerve_level(k, 4, budget).size();
  const TwoSegalReport rep = two_segal_check(underlying_simplicial(nerve_module(k, 3, budget)));
  std::size_t pullback = 0;
  bool bijective = true;
  for (const auto& sq : rep.squares) {
    if (sq.n == 2 && sq.i == 1 && sq.kind == 1) {
      pullback = sq.pullback_size;
      bijective = sq.bijective;
    }
  }
  const std::size_t span = span_pullback_count();
  r.line("|HK_2|=" + std::to_string(h2) + " |HK_3|=" + std::to_string(h3) +
         " |pullback|=" + std::to_string(pullback) + " |HK_4|=" + std::to_string(h4));
  r.line("span_pullback=" + std::to_string(span) + " comparison_bijective=" + yes_no(bijective));
  r.results = {{"HK_2", h2}, {"HK_3", h3}, {"pullback", pullback}, {"HK_4", h4},
               {"span_pullback", span}, {"comparison_bijective", bijective}};
  const bool expected = h2 == 5 && h3 == 19 && pullback == 13 && h4 == 137 && span == 13 && !bijective;
  if (!expected) r.exit_code = kExitCheckFailed;
}

void run_gl(Report& r, const Options& o, int n, int N) {
  const GLReport g = gl_n(n, N, Budget{o.budget});
  r.line("|GL_" + std::to_string(n) + "|=" + std::to_string(g.elements.size()) +
         " at truncation " + std::to_string(N));
  r.line("endomorphisms=" + std::to_string(g.endomorphism_count));
  r.line(std::string("group_axioms=") + yes_no(g.group_axioms));
  r.line(std::string("summand_permutations=") + yes_no(g.equals_summand_permutations));
  json perms = json::array();
  for (const auto& p : g.permutations) {
    r.line("perm " + format_values(p));
    perms.push_back(p);
  }
  r.results = {{"n", n},
               {"truncation", N},
               {"order", g.elements.size()},
               {"endomorphisms", g.endomorphism_count},
               {"group_axioms", g.group_axioms},
               {"summand_permutations", g.equals_summand_permutations},
               {"permutations", perms}};
  if (!g.group_axioms || !g.equals_summand_permutations) r.exit_code = kExitCheckFailed;
}

void run_beta_table(Report& r, const Options&, int K) {
  if (K < 1) throw InvalidInput("beta-table: -n must be at least 1");
  bool agree = true;
  json rows = json::array();
  auto emit = [&](const std::string& name, const DeltaMap& d, const PointedMap& b,
                  const PointedMap& closed) {
    const bool same = b == closed;
    agree = agree && same;
    r.line(name + " [" + std::to_string(d.source()) + "]->[" + std::to_string(d.target()) + "] " +
           format_values(d.values()) + "  beta " + b.to_string() + (same ? "" : "  MISMATCH"));
    rows.push_back({{"map", name}, {"delta", d.values()}, {"beta", b.to_string()}, {"closed_form", same}});
  };
  for (int n = 1; n <= K; ++n) {
    for (int k = 0; k <= n; ++k) {
      const DeltaMap d = DeltaMap::coface(n, k);
      emit("delta^" + std::to_string(n) + "_" + std::to_string(k), d, beta(d), beta_face(n, k));
    }
    for (int k = 0; k < n; ++k) {
      const DeltaMap s = DeltaMap::codegeneracy(n - 1, k);
      emit("sigma^" + std::to_string(n - 1) + "_" + std::to_string(k), s, beta(s), beta_degen(n, k));
    }
  }
  r.line(std::string("closed_forms=") + yes_no(agree));
  r.results = {{"rows", rows}, {"closed_forms", agree}};
  if (!agree) r.exit_code = kExitCheckFailed;
}

void emit(const Report& r, const Options& o, double ms) {
  if (o.json) {
    json out = {{"command", r.command}, {"inputs", r.inputs}, {"results", r.results},
                {"exit_code", r.exit_code}};
    if (o.timing) out["wall_ms"] = ms;
    std::cout << out.dump(2) << '\n';
    return;
  }
  std::cout << "# " << r.command << '\n';
  for (const auto& in : r.inputs) {
    std::cout << "# input " << in["source"].get<std::string>() << " fnv1a64="
              << in["fnv1a64"].get<std::string>() << '\n';
  }
  for (const auto& l : r.lines) std::cout << l << '\n';
  if (o.timing) std::cout << "# wall_ms=" << ms << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite plasmas, F1-modules and their nerves"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  app.add_flag("--json", opts.json, "Machine-readable output");
  app.add_flag("--timing", opts.timing, "Report wall time");
  app.add_option("--budget", opts.budget, "Search node limit for enumerations")->check(CLI::PositiveNumber);

  std::string file, file2;
  int n = 2;
  int N = 3;
  bool list = false;
  bool dump = false;

  auto* check = app.add_subcommand("check", "Property report of a plasma");
  check->add_option("plasma", file, "Plasma JSON file or builder")->required();

  auto* nerve = app.add_subcommand("nerve", "Level n of the plasmic nerve");
  nerve->add_option("plasma", file, "Plasma JSON file or builder")->required();
  nerve->add_option("-n", n, "Level")->check(CLI::Range(0, 8));

  auto* hom = app.add_subcommand("hom", "Plasma morphisms A -> B");
  hom->add_option("source", file, "Plasma JSON file or builder")->required();
  hom->add_option("target", file2, "Plasma JSON file or builder")->required();
  hom->add_flag("--list", list, "List every morphism");

  auto* segal = app.add_subcommand("segal", "Segal condition of a module");
  segal->add_option("module", file, "Module JSON, plasma, f1, corep(n), em:<plasma>")->required();
  segal->add_option("-N", N, "Truncation level")->check(CLI::Range(1, 8));

  auto* two = app.add_subcommand("two-segal", "2-Segal condition of the underlying simplicial set");
  two->add_option("module", file, "Module JSON, plasma, f1, corep(n), em:<plasma>")->required();
  two->add_option("-N", N, "Truncation level")->check(CLI::Range(3, 8));
  two->add_flag("--dump", dump, "Append the simplicial set as TSV");

  auto* mat = app.add_subcommand("matroid", "Classify a pointed matroid and dump its plasma");
  mat->add_option("matroid", file, "Matroid JSON file or builder")->required();

  auto* counter = app.add_subcommand("counterexample", "Krasner nerve 2-Segal counterexample");

  auto* gl = app.add_subcommand("gl", "Automorphisms of the n-fold wedge of F1");
  gl->add_option("-n", n, "Number of summands")->check(CLI::Range(1, 4));
  gl->add_option("-N", N, "Truncation level")->check(CLI::Range(1, 4));

  auto* beta_table = app.add_subcommand("beta-table", "Faces and degeneracies under beta");
  beta_table->add_option("-n", n, "Highest simplex dimension")->check(CLI::Range(1, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Report report;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--timing" || a == "--json") continue;
    report.command += (report.command.empty() ? "" : " ") + a;
  }
  report.command = "plasmic " + report.command;

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*check) run_check(report, opts, file);
    else if (*nerve) run_nerve(report, opts, file, n);
    else if (*hom) run_hom(report, opts, file, file2, list);
    else if (*segal) run_segal(report, opts, file, N);
    else if (*two) run_two_segal(report, opts, file, N, dump);
    else if (*mat) run_matroid(report, opts, file);
    else if (*counter) run_counterexample(report, opts);
    else if (*gl) run_gl(report, opts, n, N);
    else if (*beta_table) run_beta_table(report, opts, n);
  } catch (const BudgetExceeded& e) {
    std::cerr << "plasmic: " << e.what() << '\n';
    return kExitBudget;
  } catch (const InvalidInput& e) {
    std::cerr << "plasmic: " << e.what() << '\n';
    return kExitUsage;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  emit(report, opts, ms);
  return report.exit_code;
}
