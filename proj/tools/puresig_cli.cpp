/*
 * Copyright 2026 The puresig Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Batch driver: one subcommand per run, options from flags and/or a TOML or JSON config
// file (flags win). Output is a CSV table or a JSON document.
//
// Exit codes: 0 ok, 1 invalid configuration, 2 resource guard, 3 non-convergence.

#include <CLI11.hpp>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "puresig/puresig.hpp"
#include "puresig/version.hpp"

using nlohmann::json;
using namespace puresig;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitResource = 2;
constexpr int kExitConvergence = 3;

// First character after whitespace and C-style comments.
char first_significant(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    } else if (text.compare(i, 2, "/*") == 0) {
      auto end = text.find("*/", i + 2);
      if (end == std::string::npos) return '\0';
      i = end + 2;
    } else if (text.compare(i, 2, "//") == 0) {
      auto end = text.find('\n', i);
      if (end == std::string::npos) return '\0';
      i = end + 1;
    } else {
      return text[i];
    }
  }
  return '\0';
}

// Config files whose first token is '{' are read as flat JSON objects (comments allowed),
// anything else as TOML.
class TomlOrJson : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::string text((std::istreambuf_iterator<char>(input)), std::istreambuf_iterator<char>());
    if (first_significant(text) != '{') {
      std::istringstream is(text);
      return CLI::ConfigTOML::from_config(is);
    }
    json j;
    try {
      j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
      throw CLI::ConfigError(std::string("JSON config: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      item.name = key;
      auto scalar = [&](const json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
      };
      if (key == "lie" || key == "lie2" || key == "la" || key == "lb") {
        // Lie polynomials may be given inline as tensor JSON.
        item.inputs.push_back(value.is_object() ? value.dump() : scalar(value));
      } else if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else if (value.is_object()) {
        throw CLI::ConfigError("JSON config: nested object under '" + key + "'");
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
    return items;
  }
};

struct Config {
  std::string subcommand;
  std::string lie, lie2, la, lb;
  int d = 0;
  int m = 0;
  int N = -1;
  int N0 = -1;
  int J = 10;
  int K = 6;
  int k = 1;
  std::string norm = "l1";
  std::string agg = "sum";
  bool exact = false;
  std::string preset;
  std::string signs;
  std::string dev;
  std::vector<double> lambda;
  std::string targets;
  std::uint64_t seed = 1;
  int restarts = 64;
  int max_iter = 200;
  double tol = 1e-10;
  std::string out;
  std::string format = "csv";

  // Every field that affects the result, one key = value per line.
  std::string canonical() const {
    std::ostringstream os;
    auto q = [](const std::string& s) { return json(s).dump(); };
    char buf[64];
    os << "subcommand = " << q(subcommand) << "\n";
    os << "lie = " << q(lie) << "\nlie2 = " << q(lie2) << "\nla = " << q(la) << "\nlb = " << q(lb) << "\n";
    os << "d = " << d << "\nm = " << m << "\nN = " << N << "\nN0 = " << N0 << "\nJ = " << J << "\nK = " << K
       << "\nk = " << k << "\n";
    os << "norm = " << q(norm) << "\nagg = " << q(agg) << "\nexact = " << (exact ? "true" : "false") << "\n";
    os << "preset = " << q(preset) << "\nsigns = " << q(signs) << "\ndev = " << q(dev) << "\n";
    if (!lambda.empty()) {
      os << "lambda = [";
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", lambda[i]);
        os << (i ? ", " : "") << buf;
      }
      os << "]\n";
    }
    std::snprintf(buf, sizeof buf, "%.17g", tol);
    os << "targets = " << q(targets) << "\nseed = " << seed << "\nrestarts = " << restarts << "\nmax-iter = " << max_iter << "\ntol = " << buf
       << "\nformat = " << q(format) << "\n";
    return os.str();
  }
};

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// A result table; cells are json scalars (numbers, strings, booleans or null for blank).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json extra = json::object();

  void add(std::vector<json> row) {
    if (row.size() != columns.size()) throw std::logic_error("table row width");
    rows.push_back(std::move(row));
  }
};

std::string cell_text(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    // RFC 4180 quoting; bracket expressions contain commas.
    const std::string& raw = v.get_ref<const std::string&>();
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string q = "\"";
    for (char ch : raw) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  return fmt(v.get<double>());
}

void render(std::ostream& os, const Table& t, const Config& c) {
  const std::string hash = hex64(fnv1a64(c.canonical()));
  if (c.format == "json") {
    json doc;
    doc["tool"] = "puresig";
    doc["version"] = kVersion;
    doc["config_hash"] = hash;
    doc["subcommand"] = c.subcommand;
    doc["columns"] = t.columns;
    doc["rows"] = t.rows;
    if (!t.extra.empty()) doc["details"] = t.extra;
    os << doc.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_text(r[i]);
    os << "\n";
  }
  os << "# puresig " << kVersion << " config=" << hash << "\n";
}

GradedTensor<Rational> read_lie(const std::string& text, const std::string& flag, int d) {
  if (text.empty()) throw DomainError("--" + flag + " is required");
  auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '{') return parse_tensor<Rational>(text);
  return parse_lie_tensor(text, d);
}

NormKind norm_kind(const Config& c) {
  if (c.norm != "l1" && c.norm != "hs") throw DomainError("--norm must be l1 or hs");
  return parse_norm_kind(c.norm);
}

int degree_of(const GradedTensor<Rational>& l, int m) {
  if (m > 0) return m;
  int top = l.max_degree();
  if (top < 1) throw DomainError("Lie polynomial is zero");
  return top;
}

// "1", "-0.5", "2i", "1+2i", "1-0.5i", comma separated.
std::vector<Complex> parse_targets(const std::string& s) {
  std::vector<Complex> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::string t;
    for (char ch : tok) {
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    }
    const char* p = t.c_str();
    char* end = nullptr;
    double a = std::strtod(p, &end);
    if (end == p) {
      if (t == "i" || t == "+i") out.emplace_back(0.0, 1.0);
      else if (t == "-i") out.emplace_back(0.0, -1.0);
      else throw DomainError("bad target '" + tok + "'");
      continue;
    }
    if (*end == '\0') {
      out.emplace_back(a, 0.0);
    } else if (*end == 'i' && end[1] == '\0') {
      out.emplace_back(0.0, a);
    } else {
      const char* q = end;
      double b = std::strtod(q, &end);
      if (end == q || *end != 'i' || end[1] != '\0') throw DomainError("bad target '" + tok + "'");
      out.emplace_back(a, b);
    }
  }
  if (out.empty()) throw DomainError("--targets is empty");
  return out;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

// ---------------------------------------------------------------------------------------

template <class S>
Table tail_table(const GradedTensor<Rational>& l, const Config& c, int m, int N) {
  GradedTensor<S> ls = tensor_cast<S>(l);
  TailReport rep = tail_sequence(ls, m, N, norm_kind(c), c.N0);
  Table t;
  t.columns = {"n", "norm", "t_n", "window_sup"};
  double sup = 0.0;
  for (const auto& r : rep.rows) {
    json ws = nullptr;
    if (r.n >= rep.N0) {
      sup = std::max(sup, r.t);
      ws = sup;
    }
    t.add({r.n, r.norm, r.t, ws});
  }
  t.extra = {{"m", m}, {"N", N}, {"N0", rep.N0}, {"norm", c.norm}, {"mode", ScalarTraits<S>::name()},
             {"window_sup", rep.window_sup}};
  return t;
}

Table run_tail(const Config& c) {
  auto l = read_lie(c.lie, "lie", c.d);
  int m = degree_of(l, c.m);
  int N = c.N < 0 ? 20 : c.N;
  return c.exact ? tail_table<Rational>(l, c, m, N) : tail_table<double>(l, c, m, N);
}

template <class S>
Table upper_table(const GradedTensor<Rational>& l, const Config& c, int m, int N) {
  GradedTensor<S> ls = tensor_cast<S>(l);
  NormKind kind = norm_kind(c);
  GradedTensor<S> X = signature(ls, N);
  Table t;
  t.columns = {"n", "norm", "upper_bound", "ratio"};
  bool all = true;
  for (int n = 1; n <= N; ++n) {
    double a = norm(project(X, n), kind);
    double b = upper_bound_series(ls, m, n, kind);
    all = all && a <= b * (1 + 1e-12);
    t.add({n, a, b, b > 0 ? json(a / b) : json(nullptr)});
  }
  t.extra = {{"m", m}, {"N", N}, {"norm", c.norm}, {"bound_holds", all}};
  return t;
}

Table run_upper(const Config& c) {
  auto l = read_lie(c.lie, "lie", c.d);
  int m = degree_of(l, c.m);
  int N = c.N < 0 ? 20 : c.N;
  return c.exact ? upper_table<Rational>(l, c, m, N) : upper_table<double>(l, c, m, N);
}

Table run_localvar(const Config& c) {
  auto l = read_lie(c.lie, "lie", c.d);
  int m = degree_of(l, c.m);
  if (c.agg != "sum" && c.agg != "max") throw DomainError("--agg must be sum or max");
  auto agg = c.agg == "sum" ? VariationAggregate::sum : VariationAggregate::max;
  auto vals = local_variation(l, m, c.J, norm_kind(c), agg);
  Table t;
  t.columns = {"j", "intervals", "value"};
  for (std::size_t j = 0; j < vals.size(); ++j) t.add({static_cast<int>(j), std::uint64_t{1} << j, vals[j]});
  return t;
}

Table run_hall(const Config& c) {
  int d = c.d == 0 ? 2 : c.d;
  if (c.m < 1) throw DomainError("--m must be >= 1");
  HallBasis b = hall_basis(d, c.m);
  Table t;
  t.columns = {"index", "lyndon_word", "bracket", "l1_norm", "hs_norm_squared"};
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::string w;
    for (std::size_t j = 0; j < b.lyndon[i].size(); ++j) {
      if (d > 9 && j) w += '.';
      w += std::to_string(b.lyndon[i][j]);
    }
    auto x = expand_bracket(b.elements[i], d);
    t.add({static_cast<int>(i + 1), w, b.elements[i].to_string(), l1_norm(x).get_str(),
           hs_norm_squared(x).get_str()});
  }
  t.extra = {{"d", d}, {"m", c.m}, {"dimension", dim_free_lie(d, c.m)}};
  return t;
}

Table run_develop(const Config& c) {
  Development phi;
  GradedTensor<Rational> l(2, 1);
  int m = c.m;
  if (!c.preset.empty()) {
    if (!c.dev.empty()) throw DomainError("--preset and --dev are exclusive");
    Preset p = preset_development(c.preset, c.signs);
    phi = p.dev;
    l = c.lie.empty() ? p.default_lie() : read_lie(c.lie, "lie", 2);
    if (m == 0) m = p.m;
  } else {
    if (c.dev.empty()) throw DomainError("develop needs --preset or --dev");
    std::ifstream in(c.dev);
    if (!in) throw DomainError("cannot open development file '" + c.dev + "'");
    try {
      phi = development_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw DomainError(std::string("development file: ") + e.what());
    }
    l = read_lie(c.lie, "lie", static_cast<int>(phi.M.size()));
    m = degree_of(l, m);
  }
  if (l.dim() != static_cast<int>(phi.M.size())) throw DomainError("Lie polynomial and development differ in dimension");
  const int N = c.N < 0 ? 40 : c.N;
  std::vector<double> lambdas = c.lambda.empty() ? std::vector<double>{0.5, 1, 2, 4} : c.lambda;
  double nrm = operator_norm(phi);
  double pim = norm(project(l, m), NormKind::l1);
  double eb = eigen_lower_bound(phi, l, m);
  GrowthCurve gc = growth_curve(phi, l, m, lambdas, N);
  Table t;
  t.columns = {"quantity", "lambda", "value"};
  t.add({"phi_norm", nullptr, nrm});
  t.add({"pi_m_norm", nullptr, pim});
  t.add({"eigen_bound", nullptr, eb});
  t.add({"factor", nullptr, pim > 0 ? json(eb / pim) : json(nullptr)});
  for (const auto& p : gc.points) t.add({"growth", p.lambda, p.value});
  for (const auto& p : gc.points) t.add({"series_error", p.lambda, p.series_error});
  json spec = json::array();
  for (auto z : spectrum(apply_tensor(phi, project(l, m)))) spec.push_back(complex_json(z));
  t.extra = {{"m", m}, {"N", N}, {"development", to_json(phi)}, {"spectrum", spec}};
  return t;
}

// Returns the table and whether the solver converged.
std::pair<Table, bool> run_solve(const Config& c) {
  int d = c.d == 0 ? 2 : c.d;
  std::vector<GradedTensor<Rational>> elements;
  GradedTensor<Rational> l(2, 1);
  int m = c.m;
  if (!c.lie.empty()) {
    l = read_lie(c.lie, "lie", d);
    m = degree_of(l, m);
  }
  if (m < 1) throw DomainError("solve needs --m or --lie");
  for (const auto& h : hall_basis(d, m).elements) elements.push_back(expand_bracket(h, d));
  auto polys = polys_from_elements(elements);
  std::vector<Complex> targets;
  GradedTensor<Rational> B(2, 1);
  if (!c.targets.empty()) {
    if (!c.lie.empty()) throw DomainError("--targets and --lie are exclusive");
    targets = parse_targets(c.targets);
  } else if (!c.lie.empty()) {
    B = l1_dual_witness(project(l, m).with_trunc(m));
    targets = witness_targets(elements, B);
  } else {
    throw DomainError("solve needs --targets or --lie");
  }
  PolySystem sys = assemble_system(polys, c.k, targets);
  SolveOptions opt;
  opt.seed = c.seed;
  opt.restarts = c.restarts;
  opt.max_iterations = c.max_iter;
  opt.tol = c.tol;
  SolveResult r = solve_system(sys, opt);
  Table t;
  t.columns = {"block", "letter", "position", "re", "im"};
  if (r.z.size() == sys.unknowns()) {
    for (int b = 0; b < sys.k; ++b) {
      auto w = sys.block(r.z, b);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < m; ++j) {
          Complex z = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          t.add({b + 1, i + 1, j + 1, z.real(), z.imag()});
        }
      }
    }
  }
  t.extra = to_json(sys, r);
  t.extra.erase("solution");
  if (r.converged && !c.lie.empty()) {
    VerifyReport v = verify_solution(sys, r, l, B, 1e-8);
    t.extra["verification"] = {{"representation_dim", v.phi.k}, {"witness_value", v.witness_value},
                               {"phi_norm", v.phi_norm}, {"achieved_factor", v.achieved_factor},
                               {"eigen_bound", v.eigen_bound}, {"ratio", v.ratio}};
  }
  std::fprintf(stderr, "solve: converged=%s residual=%.3g restarts_used=%d\n", r.converged ? "true" : "false",
               r.residual, r.restarts_used);
  return {t, r.converged};
}

Table run_hs_check(const Config& c) {
  auto la = read_lie(c.la, "la", c.d);
  auto lb = read_lie(c.lb, "lb", la.dim());
  OrthogonalityReport rep = orthogonality_check(la, lb, c.K);
  Table t;
  t.columns = {"k", "inner_product", "condition_holds", "lower_bound", "signature_hs"};
  for (const auto& r : rep.rows) t.add({r.k, r.inner.get_str(), r.condition_holds, r.lower_bound, r.signature_hs});
  t.extra = {{"a", rep.a}, {"b", rep.b}, {"condition_holds", rep.condition_holds}};
  return t;
}

Table run_separate(const Config& c) {
  auto l = read_lie(c.lie, "lie", c.d);
  auto lp = read_lie(c.lie2, "lie2", l.dim());
  SolveOptions opt;
  opt.seed = c.seed;
  opt.restarts = c.restarts;
  opt.max_iterations = c.max_iter;
  opt.tol = c.tol;
  SeparationResult s = separate_points(l, lp, opt);
  Table t;
  t.columns = {"quantity", "value"};
  t.add({"m", s.m});
  t.add({"blocks", s.blocks});
  t.add({"epsilon", s.epsilon});
  t.add({"lie_difference", s.lie_difference});
  t.add({"exp_difference", s.exp_difference});
  t.extra = {{"development", to_json(s.dev)}};
  return t;
}

int dispatch(const Config& c) {
  Table t;
  bool converged = true;
  const std::string& s = c.subcommand;
  if (s == "tail") t = run_tail(c);
  else if (s == "upper") t = run_upper(c);
  else if (s == "localvar") t = run_localvar(c);
  else if (s == "hall") t = run_hall(c);
  else if (s == "develop") t = run_develop(c);
  else if (s == "solve") std::tie(t, converged) = run_solve(c);
  else if (s == "hs-check") t = run_hs_check(c);
  else if (s == "separate") t = run_separate(c);
  else throw DomainError("unknown subcommand '" + s + "'");
  if (c.out.empty() || c.out == "-") {
    render(std::cout, t, c);
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw DomainError("cannot write '" + c.out + "'");
    render(f, t, c);
  }
  return converged ? 0 : kExitConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"puresig: signatures of pure rough paths"};
  app.set_version_flag("--version", std::string(kVersion));
  app.config_formatter(std::make_shared<TomlOrJson>());
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "TOML or JSON file with option values; flags override it");
  Config c;
  bool print_config = false;
  const std::vector<std::string> commands{"tail", "upper", "localvar", "hall", "develop", "solve", "hs-check", "separate"};
  app.add_option("subcommand", c.subcommand, "tail|upper|localvar|hall|develop|solve|hs-check|separate")
      ->check(CLI::IsMember(commands));
  app.add_option("--lie", c.lie, "Lie polynomial, e.g. \"e1 + [e1,e2]\", or tensor JSON");
  app.add_option("--lie2", c.lie2, "second Lie polynomial (separate)");
  app.add_option("--la", c.la, "lower-degree Lie element (hs-check)");
  app.add_option("--lb", c.lb, "higher-degree Lie element (hs-check)");
  app.add_option("--d", c.d, "alphabet size (0 infers from the letters)")->check(CLI::Range(0, 9));
  app.add_option("--m", c.m, "degree (0 uses the top degree of --lie)")->check(CLI::Range(0, 64));
  app.add_option("--N", c.N, "truncation degree")->check(CLI::Range(-1, 400));
  app.add_option("--N0", c.N0, "start of the sup window (default ceil(N/2))")->check(CLI::Range(-1, 400));
  app.add_option("--J", c.J, "finest dyadic level (localvar)")->check(CLI::Range(0, 60));
  app.add_option("--K", c.K, "largest power k (hs-check)")->check(CLI::Range(1, 12));
  app.add_option("--k", c.k, "block count (solve)")->check(CLI::Range(1, 1024));
  app.add_option("--norm", c.norm, "l1 or hs")->check(CLI::IsMember({"l1", "hs"}));
  app.add_option("--agg", c.agg, "sum or max over levels (localvar)")->check(CLI::IsMember({"sum", "max"}));
  app.add_flag("--exact", c.exact, "exact rational arithmetic");
  app.add_option("--preset", c.preset, "deg2|deg3|deg4_so5|deg4_sharp");
  app.add_option("--signs", c.signs, "coefficient signs for the preset, e.g. +-");
  app.add_option("--dev", c.dev, "development JSON file (develop)");
  app.add_option("--lambda", c.lambda, "dilation values (develop)")->delimiter(',');
  app.add_option("--targets", c.targets, "comma separated complex targets, e.g. 1,0,2i (solve)");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--restarts", c.restarts, "random restarts")->check(CLI::Range(1, 100000));
  app.add_option("--max-iter", c.max_iter, "descent iterations per restart")->check(CLI::Range(0, 100000));
  app.add_option("--tol", c.tol, "solver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--print-config", print_config, "print the resolved configuration as TOML and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  if (print_config) {
    std::cout << c.canonical();
    return 0;
  }
  if (c.subcommand.empty()) {
    std::cerr << "error: no subcommand given\n" << app.help();
    return kExitConfig;
  }
  try {
    return dispatch(c);
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const DomainError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  }
}
