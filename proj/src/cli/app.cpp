#include "derivkit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "derivkit/errors.hpp"
#include "derivkit/json_io.hpp"
#include "derivkit/linear.hpp"
#include "derivkit/oracle.hpp"
#include "derivkit/registry.hpp"
#include "derivkit/weitzenboeck.hpp"

#ifndef DERIVKIT_VERSION
#define DERIVKIT_VERSION "0.0.0"
#endif

namespace derivkit {

const char* library_version() { return DERIVKIT_VERSION; }

namespace {

constexpr unsigned kMaxDegreeCap = 256;

struct RunConfig {
  std::string command;
  std::size_t n = 0;
  std::optional<std::size_t> level;
  std::optional<unsigned> power;
  std::optional<unsigned> deg;
  std::uint64_t seed = 1;
  unsigned degree_cap = 64;
  std::string format = "json";
  std::string input;
  std::string registry;
};

/// Thrown by a command whose checks did not all pass; carries the report.
struct VerificationFailed {
  Json result;
  std::string text;
};

struct Output {
  Json result;
  std::string text;
};

Json config_json(const RunConfig& cfg) {
  Json j;
  if (cfg.n != 0) j["n"] = cfg.n;
  if (cfg.level) j["level"] = *cfg.level;
  if (cfg.power) j["power"] = *cfg.power;
  if (cfg.deg) j["deg"] = *cfg.deg;
  if (!cfg.input.empty()) j["input"] = cfg.input;
  if (!cfg.registry.empty()) j["registry"] = cfg.registry;
  j["degree_cap"] = cfg.degree_cap;
  j["format"] = cfg.format;
  j["seed"] = cfg.seed;
  return j;
}

void require_n(const RunConfig& cfg) {
  if (cfg.n < 2) throw ParseError("--n must be at least 2");
}

unsigned oracle_degree(const RunConfig& cfg) {
  return cfg.deg ? *cfg.deg : std::min(3U, default_oracle_degree(cfg.n));
}

KernelRegistry load_registry(const RunConfig& cfg) {
  return cfg.registry.empty() ? KernelRegistry::builtin() : KernelRegistry::from_file(cfg.registry);
}

const RegistryEntry& registry_entry(const KernelRegistry& reg, std::size_t n) {
  if (!reg.contains(n)) {
    throw ParseError("no kernel generators registered for n = " + std::to_string(n));
  }
  return reg.at(n);
}

Json read_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ParseError("--input is required");
  std::ifstream in(cfg.input);
  if (!in) throw ParseError("cannot open input file " + cfg.input);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParseError(cfg.input + ": " + ex.what());
  }
}

const Json& input_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("input is missing the \"") + key + "\" field");
  }
  return j.at(key);
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// Two-column text table.
std::string table(const std::vector<std::pair<std::string, std::string>>& rows,
                  const std::string& indent = "  ") {
  std::size_t width = 0;
  for (const auto& [a, b] : rows) width = std::max(width, a.size());
  std::ostringstream os;
  for (const auto& [a, b] : rows) os << indent << pad(a, width) << "  " << b << "\n";
  return os.str();
}

// ---------------------------------------------------------------- sl2

Json sl2_relations(const Sl2Triple& t) {
  return Json{{"[D,Dhat]=H", bracket(t.raising, t.lowering) == t.cartan},
              {"[H,D]=2D", bracket(t.cartan, t.raising) == BigRat(2) * t.raising},
              {"[H,Dhat]=-2Dhat", bracket(t.cartan, t.lowering) == BigRat(-2) * t.lowering}};
}

Output cmd_sl2(const RunConfig& cfg) {
  require_n(cfg);
  const auto t = build_sl2(cfg.n);
  const Json rel = sl2_relations(t);
  Output o;
  o.result = Json{{"D", to_json(t.raising)},
                  {"Dhat", to_json(t.lowering)},
                  {"H", to_json(t.cartan)},
                  {"relations", rel}};
  std::vector<std::pair<std::string, std::string>> rows{
      {"D", to_string(t.raising)}, {"Dhat", to_string(t.lowering)}, {"H", to_string(t.cartan)}};
  for (const auto& [name, ok] : rel.items()) rows.emplace_back(name, ok.get<bool>() ? "holds" : "FAILS");
  o.text = "sl2 triple, n = " + std::to_string(cfg.n) + "\n" + table(rows);
  return o;
}

// ---------------------------------------------------------------- gens

std::string factor_text(const GeneratorElement& e) {
  if (e.factors.empty()) return "1";
  std::string s;
  for (const auto& f : e.factors) {
    if (!s.empty()) s += " * ";
    s += "Dhat^" + std::to_string(f.power) + "(a" + std::to_string(f.generator + 1) + ")";
  }
  return s;
}

Output cmd_gens(const RunConfig& cfg) {
  require_n(cfg);
  const auto reg = load_registry(cfg);
  const auto& entry = registry_entry(reg, cfg.n);
  const std::size_t level = cfg.level.value_or(cfg.n);
  if (level < 1) throw ParseError("--level must be at least 1");
  const auto s = build_generator_set(level, entry.generators);

  Output o;
  Json kernel = Json::array();
  for (const auto& g : entry.generators) kernel.push_back(to_json(g));
  o.result = Json{{"kernel_generators", kernel},
                  {"provenance", entry.provenance},
                  {"generator_set", to_json(s)}};

  std::ostringstream os;
  os << "S_" << level << " for n = " << cfg.n << " (" << s.elements.size() << " elements)\n";
  std::vector<std::pair<std::string, std::string>> rows;
  for (std::size_t k = 0; k < s.elements.size(); ++k) {
    rows.emplace_back(std::to_string(k + 1) + "  " + to_string(s.elements[k].poly),
                      "from " + factor_text(s.elements[k]));
  }
  os << table(rows);
  o.text = os.str();
  return o;
}

// ---------------------------------------------------------------- centralizer

Output cmd_centralizer(const RunConfig& cfg) {
  require_n(cfg);
  const auto reg = load_registry(cfg);
  const auto& entry = registry_entry(reg, cfg.n);
  const auto gens = centralizer_generators(entry.generators);

  Output o;
  Json list = Json::array();
  std::vector<std::pair<std::string, std::string>> rows;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    list.push_back(Json{{"source", to_json(gens[k].source)},
                        {"derivation", to_json(gens[k].derivation)}});
    rows.emplace_back(std::to_string(k + 1) + "  s = " + to_string(gens[k].source.poly),
                      "D_s = " + to_string(gens[k].derivation));
  }
  o.result = Json{{"provenance", entry.provenance}, {"generators", list}};
  o.text = "centralizer of D, n = " + std::to_string(cfg.n) + " (" + std::to_string(gens.size()) +
           " generators)\n" + table(rows);
  return o;
}

// ---------------------------------------------------------------- bracket / decompose / rank

Output cmd_bracket(const RunConfig& cfg) {
  const Json in = read_input(cfg);
  const auto d = derivation_from_json(input_field(in, "d"));
  const auto t = derivation_from_json(input_field(in, "t"));
  if (d.nvars() != t.nvars()) throw ParseError("\"d\" and \"t\" differ in nvars");
  const auto b = bracket(d, t);
  Output o;
  o.result = Json{{"bracket", to_json(b)}};
  o.text = "[D, T] = " + to_string(b) + "\n";
  return o;
}

Output cmd_decompose(const RunConfig& cfg) {
  const Json in = read_input(cfg);
  const auto t = derivation_from_json(input_field(in, "target"));
  const auto a = matrix_from_json(input_field(in, "matrix"));
  if (a.size() != t.nvars()) throw ParseError("matrix size differs from the derivation's nvars");
  const auto dec = decompose_over_constants(t, a);
  const bool ok = verify_constant_multiple_membership(dec, linear_derivation(a));
  Output o;
  o.result = Json{{"decomposition", to_json(dec)}, {"verified", ok}};
  std::vector<std::pair<std::string, std::string>> rows;
  for (std::size_t k = 0; k < dec.coefficients.size(); ++k) {
    rows.emplace_back("phi_" + std::to_string(k), to_string(dec.coefficients[k]));
  }
  o.text = "T = " + to_string(t) + "\n" + table(rows) +
           "  verified: " + (ok ? "yes" : "no") + "\n";
  if (!ok) throw VerificationFailed{o.result, o.text};
  return o;
}

std::vector<Derivation> read_derivations(const RunConfig& cfg) {
  const Json in = read_input(cfg);
  const Json& arr = in.is_array() ? in : input_field(in, "derivations");
  if (!arr.is_array() || arr.empty()) throw ParseError("expected a nonempty derivation list");
  std::vector<Derivation> ds;
  for (const auto& j : arr) ds.push_back(derivation_from_json(j));
  for (const auto& d : ds) {
    if (d.nvars() != ds[0].nvars()) throw ParseError("derivations differ in nvars");
  }
  return ds;
}

Json rank_certificate(const RankResult& r, const RankOptions& opt) {
  return Json{{"method", r.method},
              {"sample_ranks", r.samples},
              {"seed", opt.seed},
              {"coordinate_bound", opt.bound}};
}

Output cmd_rank(const RunConfig& cfg) {
  const auto ds = read_derivations(cfg);
  RankOptions opt;
  opt.seed = cfg.seed;
  const auto r = rank_over_fractions(ds, opt);
  Output o;
  o.result = Json{{"rank", r.rank}, {"certificate", rank_certificate(r, opt)}};
  o.text = "rank over the fraction field: " + std::to_string(r.rank) + " (" + r.method + ")\n";
  return o;
}

// ---------------------------------------------------------------- oracle

Output cmd_oracle_kernel(const RunConfig& cfg) {
  require_n(cfg);
  const unsigned power = cfg.power.value_or(1);
  const unsigned deg = oracle_degree(cfg);
  const auto basis = kernel_power_basis(weitzenboeck_derivation(cfg.n), power, deg);
  Output o;
  Json vecs = Json::array();
  std::ostringstream os;
  os << "Ker D^" << power << " up to degree " << deg << ", n = " << cfg.n << ": dimension "
     << basis.vectors.size() << "\n";
  for (const auto& v : basis.vectors) {
    vecs.push_back(to_json(v));
    os << "  " << to_string(v) << "\n";
  }
  o.result = Json{{"basis", vecs},
                  {"certificate", Json{{"dimension", basis.vectors.size()},
                                       {"monomials", monomials_up_to(cfg.n, deg).size()}}}};
  o.text = os.str();
  return o;
}

Json witness_json(const SpanCertificate& cert, const GradedBasis& target) {
  Json list = Json::array();
  for (std::size_t t = 0; t < cert.witnesses.size(); ++t) {
    Json combo = Json::array();
    for (const auto& w : cert.witnesses[t]) {
      combo.push_back(Json{{"multiplier", w.multiplier},
                           {"element", w.element},
                           {"coeff", format_rational(w.coeff)}});
    }
    list.push_back(Json{{"target", to_json(target.vectors[t])}, {"combination", combo}});
  }
  return list;
}

struct Thm2Level {
  std::size_t level;
  std::size_t set_size;
  std::size_t target_dim;
  SpanCertificate cert;
  GradedBasis target;
};

std::vector<Thm2Level> run_thm2(std::size_t n, const std::vector<Poly>& gens, unsigned deg) {
  const auto d = weitzenboeck_derivation(n);
  std::vector<Thm2Level> out;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto s = build_generator_set(i, gens);
    auto target = kernel_power_basis(d, static_cast<unsigned>(i), deg);
    auto cert = module_span_check(s, gens, target, deg);
    out.push_back(Thm2Level{i, s.elements.size(), target.vectors.size(), std::move(cert),
                            std::move(target)});
  }
  return out;
}

Output cmd_oracle_thm2(const RunConfig& cfg) {
  require_n(cfg);
  const auto reg = load_registry(cfg);
  const auto& entry = registry_entry(reg, cfg.n);
  const unsigned deg = oracle_degree(cfg);
  const auto levels = run_thm2(cfg.n, entry.generators, deg);

  bool all = true;
  Json cert = Json::array();
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& l : levels) {
    all = all && l.cert.contained;
    Json c{{"level", l.level},
           {"contained", l.cert.contained},
           {"set_size", l.set_size},
           {"target_dimension", l.target_dim},
           {"spanning_size", l.cert.spanning_size}};
    if (l.cert.contained) {
      c["witnesses"] = witness_json(l.cert, l.target);
    } else {
      c["first_failure"] = to_json(*l.cert.first_failure);
    }
    cert.push_back(std::move(c));
    rows.emplace_back("i = " + std::to_string(l.level),
                      std::string(l.cert.contained ? "contained" : "NOT contained") + "  dim " +
                          std::to_string(l.target_dim) + ", |S_i| = " + std::to_string(l.set_size));
  }
  Output o;
  o.result = Json{{"all_contained", all}, {"certificate", cert}};
  o.text = "Ker D^i inside the A1-span of S_i up to degree " + std::to_string(deg) + ", n = " +
           std::to_string(cfg.n) + "\n" + table(rows);
  if (!all) throw VerificationFailed{o.result, o.text};
  return o;
}

struct Prop1Check {
  std::size_t centralizer_dim;
  std::size_t df_dim;
  std::size_t joint_rank;
  [[nodiscard]] bool equal() const {
    return centralizer_dim == df_dim && df_dim == joint_rank;
  }
};

Prop1Check run_prop1(std::size_t n, unsigned deg) {
  const auto d = weitzenboeck_derivation(n);
  const auto cent = centralizer_truncated(d, deg);
  std::vector<Derivation> dfs;
  for (const auto& f : kernel_power_basis(d, static_cast<unsigned>(n), deg).vectors) {
    dfs.push_back(centralizing_derivation(f));
  }
  std::vector<Derivation> joint = cent;
  joint.insert(joint.end(), dfs.begin(), dfs.end());
  return Prop1Check{derivation_span_rank(cent), derivation_span_rank(dfs),
                    derivation_span_rank(joint)};
}

Output cmd_oracle_prop1(const RunConfig& cfg) {
  require_n(cfg);
  const unsigned deg = oracle_degree(cfg);
  const auto c = run_prop1(cfg.n, deg);
  Output o;
  o.result = Json{{"equal", c.equal()},
                  {"certificate", Json{{"centralizer_dimension", c.centralizer_dim},
                                       {"df_dimension", c.df_dim},
                                       {"joint_rank", c.joint_rank}}}};
  o.text = "truncated centralizer vs {D_f} up to degree " + std::to_string(deg) + ", n = " +
           std::to_string(cfg.n) + "\n" +
           table({{"centralizer dimension", std::to_string(c.centralizer_dim)},
                  {"D_f dimension", std::to_string(c.df_dim)},
                  {"joint rank", std::to_string(c.joint_rank)},
                  {"equal", c.equal() ? "yes" : "no"}});
  if (!c.equal()) throw VerificationFailed{o.result, o.text};
  return o;
}

Output cmd_oracle_candidates(const RunConfig& cfg) {
  require_n(cfg);
  const unsigned deg = cfg.deg.value_or(default_oracle_degree(cfg.n));
  const auto gens = kernel_generator_candidates(cfg.n, deg);
  Output o;
  Json list = Json::array();
  std::ostringstream os;
  os << "kernel generator candidates, n = " << cfg.n << ", degree <= " << deg << "\n";
  for (const auto& g : gens) {
    list.push_back(to_json(g));
    os << "  " << to_string(g) << "\n";
  }
  o.result = Json{{"candidates", list},
                  {"certificate", Json{{"span_checked_levels", cfg.n}, {"degree", deg}}}};
  o.text = os.str();
  return o;
}

// ---------------------------------------------------------------- verify

struct Item {
  std::string name;
  bool pass;
  Json detail;
};

Output cmd_verify(const RunConfig& cfg) {
  require_n(cfg);
  const auto reg = load_registry(cfg);
  const auto& entry = registry_entry(reg, cfg.n);
  const unsigned deg = oracle_degree(cfg);
  const std::size_t n = cfg.n;
  const auto d = weitzenboeck_derivation(n);
  std::vector<Item> items;

  auto run = [&](const std::string& name, const std::function<Item()>& body) {
    try {
      items.push_back(body());
    } catch (const std::exception& ex) {
      items.push_back(Item{name, false, Json{{"error", ex.what()}}});
    }
  };

  std::vector<CentralizerGenerator> gens;
  run("centralizer.kernel_precondition", [&] {
    gens = centralizer_generators(entry.generators);
    return Item{"centralizer.kernel_precondition", true, Json{{"generators", gens.size()}}};
  });
  run("registry.membership", [&] {
    const auto problems = reg.validate(n);
    return Item{"registry.membership", problems.empty(), Json{{"problems", problems}}};
  });
  run("sl2.relations", [&] {
    const Json rel = sl2_relations(build_sl2(n));
    bool ok = true;
    for (const auto& [k, v] : rel.items()) ok = ok && v.get<bool>();
    return Item{"sl2.relations", ok, rel};
  });
  run("prop1.commutation", [&] {
    if (gens.empty()) throw PreconditionError("no centralizer generators available");
    Json failing = Json::array();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (!bracket(gens[k].derivation, d).is_zero()) failing.push_back(k);
    }
    return Item{"prop1.commutation", failing.empty(),
                Json{{"checked", gens.size()}, {"failing", failing}}};
  });
  std::vector<Thm2Level> levels;
  try {
    levels = run_thm2(n, entry.generators, deg);
  } catch (const std::exception& ex) {
    items.push_back(Item{"thm2.span", false, Json{{"error", ex.what()}}});
  }
  for (const auto& l : levels) {
    Json detail{{"level", l.level},
                {"degree", deg},
                {"target_dimension", l.target_dim},
                {"spanning_size", l.cert.spanning_size}};
    if (!l.cert.contained) detail["first_failure"] = to_json(*l.cert.first_failure);
    items.push_back(Item{"thm2.span.level" + std::to_string(l.level), l.cert.contained, detail});
  }
  run("prop1.equivalence", [&] {
    const auto c = run_prop1(n, deg);
    return Item{"prop1.equivalence", c.equal(),
                Json{{"degree", deg},
                     {"centralizer_dimension", c.centralizer_dim},
                     {"df_dimension", c.df_dim},
                     {"joint_rank", c.joint_rank}}};
  });
  run("thm1.decomposition", [&] {
    const unsigned cdeg = std::min(deg, 3U);
    const auto jordan = MatrixQ::jordan_block(n, 0);
    Json failing = Json::array();
    const auto basis = centralizer_truncated(d, cdeg);
    for (const auto& t : basis) {
      const auto dec = decompose_over_constants(t, jordan);
      if (!verify_constant_multiple_membership(dec, d)) failing.push_back(to_json(t));
    }
    return Item{"thm1.decomposition", failing.empty(),
                Json{{"degree", cdeg}, {"checked", basis.size()}, {"failing", failing}}};
  });
  run("thm4.rank", [&] {
    if (gens.empty()) throw PreconditionError("no centralizer generators available");
    std::vector<Derivation> ds;
    for (const auto& g : gens) ds.push_back(g.derivation);
    RankOptions opt;
    opt.seed = cfg.seed;
    const auto r = rank_over_fractions(ds, opt);
    return Item{"thm4.rank", r.rank == n,
                Json{{"rank", r.rank}, {"expected", n}, {"certificate", rank_certificate(r, opt)}}};
  });

  Json list = Json::array();
  std::vector<std::pair<std::string, std::string>> rows;
  const Item* first_failure = nullptr;
  for (const auto& it : items) {
    list.push_back(Json{{"name", it.name}, {"pass", it.pass}, {"detail", it.detail}});
    rows.emplace_back(it.name, it.pass ? "PASS" : "FAIL");
    if (!it.pass && first_failure == nullptr) first_failure = &it;
  }
  Output o;
  o.result = Json{{"all_pass", first_failure == nullptr}, {"items", list}};
  if (first_failure != nullptr) {
    o.result["first_failure"] = Json{{"name", first_failure->name}, {"detail", first_failure->detail}};
  }
  o.text = "verification suite, n = " + std::to_string(n) + ", degree " + std::to_string(deg) +
           "\n" + table(rows);
  if (first_failure != nullptr) {
    o.text += "first failure: " + first_failure->name + "\n  " + first_failure->detail.dump() + "\n";
    throw VerificationFailed{o.result, o.text};
  }
  return o;
}

// ---------------------------------------------------------------- driver

void emit(std::ostream& out, const RunConfig& cfg, const Output& o, const char* status) {
  if (cfg.format == "text") {
    out << o.text;
    return;
  }
  Json report{{"command", cfg.command},
              {"version", library_version()},
              {"config", config_json(cfg)},
              {"status", status},
              {"result", o.result}};
  out << report.dump(2) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Centralizers of linear and basic Weitzenboeck derivations", "derivkit"};
  app.set_version_flag("--version", std::string(library_version()));
  app.require_subcommand(1);
  app.fallthrough();

  int n_value = 0;
  std::optional<int> level_value;
  std::optional<int> power_value;
  std::optional<int> deg_value;
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", cfg.seed, "Seed for rank sampling");
  app.add_option("--degree-cap", cfg.degree_cap, "Maximum polynomial degree")
      ->check(CLI::Range(1U, kMaxDegreeCap));
  app.add_option("--registry", cfg.registry, "Kernel registry JSON file")
      ->check(CLI::ExistingFile);

  std::map<CLI::App*, std::function<Output()>> handlers;
  auto with_n = [&](CLI::App* sub) { sub->add_option("--n", n_value, "Number of variables")->required(); };
  auto with_deg = [&](CLI::App* sub) { sub->add_option("--deg", deg_value, "Truncation degree"); };
  auto with_input = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "JSON input file")->required();
  };

  auto* sl2 = app.add_subcommand("sl2", "The sl2 triple (D, Dhat, H) and its relations");
  with_n(sl2);
  handlers[sl2] = [&] { return cmd_sl2(cfg); };

  auto* gens = app.add_subcommand("gens", "Generator set S_i built from the kernel registry");
  with_n(gens);
  gens->add_option("--level", level_value, "Level i (default n)");
  handlers[gens] = [&] { return cmd_gens(cfg); };

  auto* cent = app.add_subcommand("centralizer", "Generators D_s of the centralizer of D");
  with_n(cent);
  handlers[cent] = [&] { return cmd_centralizer(cfg); };

  auto* brk = app.add_subcommand("bracket", "Bracket [D, T] of two derivations");
  with_input(brk);
  handlers[brk] = [&] { return cmd_bracket(cfg); };

  auto* dec = app.add_subcommand("decompose", "Decompose T over the constants of a linear D");
  with_input(dec);
  handlers[dec] = [&] { return cmd_decompose(cfg); };

  auto* rank = app.add_subcommand("rank", "Rank of derivations over the fraction field");
  with_input(rank);
  handlers[rank] = [&] { return cmd_rank(cfg); };

  auto* verify = app.add_subcommand("verify", "Run the full verification suite");
  with_n(verify);
  with_deg(verify);
  handlers[verify] = [&] { return cmd_verify(cfg); };

  auto* oracle = app.add_subcommand("oracle", "Brute-force oracles");
  oracle->require_subcommand(1);
  auto* okernel = oracle->add_subcommand("kernel", "Truncated basis of Ker D^i");
  with_n(okernel);
  with_deg(okernel);
  okernel->add_option("--power", power_value, "Power i of D")->check(CLI::PositiveNumber);
  handlers[okernel] = [&] { return cmd_oracle_kernel(cfg); };
  auto* othm2 = oracle->add_subcommand("verify-thm2", "Ker D^i inside the A1-span of S_i");
  with_n(othm2);
  with_deg(othm2);
  handlers[othm2] = [&] { return cmd_oracle_thm2(cfg); };
  auto* oprop1 = oracle->add_subcommand("verify-prop1", "Truncated centralizer equals {D_f}");
  with_n(oprop1);
  with_deg(oprop1);
  handlers[oprop1] = [&] { return cmd_oracle_prop1(cfg); };
  auto* orank = oracle->add_subcommand("rank", "Rank of derivations over the fraction field");
  with_input(orank);
  handlers[orank] = [&] { return cmd_rank(cfg); };
  auto* ocand = oracle->add_subcommand("candidates", "Low-degree kernel generator candidates");
  with_n(ocand);
  with_deg(ocand);
  handlers[ocand] = [&] { return cmd_oracle_candidates(cfg); };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << library_version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return kExitInputError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (chosen == oracle) {
    chosen = oracle->get_subcommands().front();
    cfg.command += " " + chosen->get_name();
  }
  if (n_value < 0) {
    err << "usage error: --n must be at least 2\n";
    return kExitInputError;
  }
  cfg.n = static_cast<std::size_t>(n_value);
  if (level_value) {
    if (*level_value < 1) {
      err << "usage error: --level must be at least 1\n";
      return kExitInputError;
    }
    cfg.level = static_cast<std::size_t>(*level_value);
  }
  if (power_value) cfg.power = static_cast<unsigned>(*power_value);
  if (deg_value) {
    if (*deg_value < 0) {
      err << "usage error: --deg must be non-negative\n";
      return kExitInputError;
    }
    cfg.deg = static_cast<unsigned>(*deg_value);
  }

  const auto start = std::chrono::steady_clock::now();
  auto timing = [&](const char* status) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    err << Json{{"command", cfg.command}, {"status", status}, {"wall_clock_seconds", secs}}.dump()
        << "\n";
  };

  try {
    DegreeCapScope cap(cfg.degree_cap);
    const Output o = handlers.at(chosen)();
    emit(out, cfg, o, "ok");
    timing("ok");
    return kExitOk;
  } catch (const VerificationFailed& f) {
    emit(out, cfg, Output{f.result, f.text}, "verification_failed");
    timing("verification_failed");
    return kExitVerifyFailed;
  } catch (const ParseError& ex) {
    err << "input error: " << ex.what() << "\n";
    return kExitInputError;
  } catch (const DimensionError& ex) {
    err << "input error: " << ex.what() << "\n";
    return kExitInputError;
  } catch (const IndexError& ex) {
    err << "input error: " << ex.what() << "\n";
    return kExitInputError;
  } catch (const RegistryError& ex) {
    err << "registry error: " << ex.what() << "\n";
    return kExitVerifyFailed;
  } catch (const PreconditionError& ex) {
    err << "precondition error: " << ex.what() << "\n";
    return kExitPrecondition;
  } catch (const ResourceError& ex) {
    err << "resource limit: " << ex.what() << "\n";
    return kExitPrecondition;
  } catch (const InternalInconsistency& ex) {
    err << "internal inconsistency: " << ex.what() << "\n";
    return kExitVerifyFailed;
  }
}

}  // namespace derivkit
