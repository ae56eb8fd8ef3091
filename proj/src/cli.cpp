#include "nilpet/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace nilpet {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// The run's configuration with every default filled in. Commands read from
// here and it becomes the sidecar.
struct Setup {
  Json cfg;
  AlgebraPtr algebra;
  std::vector<std::string> vars;
  PolyFamily family;

  template <class T>
  T get(const char* key, T fallback) {
    if (!cfg.contains(key)) cfg[key] = fallback;
    try {
      return cfg.at(key).get<T>();
    } catch (const Json::exception&) {
      fail(std::string("field '") + key + "' has the wrong type");
    }
  }

  Rational rational(const char* key, const std::string& fallback) {
    if (!cfg.contains(key)) cfg[key] = fallback;
    return rational_from_json(cfg.at(key));
  }

  std::vector<std::string> param_vars() const { return {vars.begin() + 1, vars.end()}; }
};

Setup load(const Json& config, const CliOverrides& overrides, bool needs_algebra) {
  if (!config.is_object()) fail("config must be a JSON object");
  Setup s{config, nullptr, {}, {}};
  s.vars = s.get<std::vector<std::string>>("vars", {"t"});
  if (s.vars.empty()) fail("'vars' must start with the time variable");
  if (overrides.seed) s.cfg["seed"] = *overrides.seed;
  if (overrides.threads) s.cfg["threads"] = *overrides.threads;
  s.get<std::uint64_t>("seed", 0);
  if (s.cfg.contains("algebra")) {
    s.algebra = algebra_from_json(s.cfg["algebra"]);
  } else if (needs_algebra) {
    fail("missing field 'algebra'");
  }
  const Json family = s.cfg.value("family", Json::array());
  if (!family.is_array()) fail("'family' must be a list of maps");
  Json normalized = Json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    PolyMap phi = polymap_from_json(family[i], s.algebra, s.vars);
    if (auto bad = normalization_violation(phi))
      fail("family member " + std::to_string(i) + ": coordinate " + std::to_string(*bad) + " (" +
           phi.algebra()->labels()[static_cast<std::size_t>(*bad)] + " = " +
           phi.coord(*bad).to_string(phi.vars()) + ") does not vanish at t = 0");
    const Json ref = family[i].is_object() && family[i].contains("algebra") ? family[i]["algebra"] : s.cfg["algebra"];
    normalized.push_back(polymap_to_json(phi, ref));
    s.family.push_back(std::move(phi));
  }
  s.cfg["family"] = normalized;
  return s;
}

AverageOptions average_options(Setup& s) {
  AverageOptions o;
  o.dt = s.rational("dt", "1/20");
  o.n_samples = s.get<std::size_t>("n_samples", 10000);
  o.seed = s.get<std::uint64_t>("seed", 0);
  o.threads = s.get<int>("threads", 0);
  o.block_size = s.get<std::size_t>("block_size", 1024);
  if (o.n_samples == 0 || o.block_size == 0) fail("n_samples and block_size must be positive");
  return o;
}

void finish(Setup& s, const std::string& command, const fs::path& out) {
  Json side = s.cfg;
  side["command"] = command;
  write_file(out / "sidecar.json", dump(side));
}

// Generic parameter point: constraints are {"member", "functional"} pairs
// and/or explicit varieties given as lists of polynomials in the parameters.
struct GenericResult {
  RationalVector h;
  MeagreSet set;
  std::vector<std::string> sources;
};

GenericResult sample_generic(Setup& s, Json& spec) {
  if (!spec.is_object()) fail("'generic' must be an object");
  const auto params = s.param_vars();
  GenericResult r;
  for (const auto& c : spec.value("constraints", Json::array())) {
    const int m = c.value("member", -1);
    if (m < 0 || m >= static_cast<int>(s.family.size())) fail("constraint member out of range");
    const PolyMap& phi = s.family[static_cast<std::size_t>(m)];
    RationalVector ell = rational_vector_from_json(c.at("functional"));
    if (ell.size() != phi.algebra()->dim())
      fail("functional for member " + std::to_string(m) + " needs " + std::to_string(phi.algebra()->dim()) +
           " entries");
    r.set.varieties.push_back(vanishing_variety(phi, ell));
    r.sources.push_back("member " + std::to_string(m) + " functional " + c.at("functional").dump());
  }
  for (const auto& v : spec.value("varieties", Json::array())) {
    Variety var;
    for (const auto& p : v) var.generators.push_back(poly_from_json(p, params));
    r.set.varieties.push_back(std::move(var));
    r.sources.push_back("explicit");
  }
  SampleOptions so;
  if (!spec.contains("box")) spec["box"] = so.initial_box;
  if (!spec.contains("max_attempts")) spec["max_attempts"] = so.max_attempts;
  so.initial_box = spec["box"].get<int>();
  so.max_attempts = spec["max_attempts"].get<int>();
  for (std::size_t i = 0; i < r.set.varieties.size(); ++i) {
    if (!is_proper(r.set.varieties[i]))
      throw std::domain_error("variety from " + r.sources[i] + " is all of parameter space (improper)");
  }
  r.h = generic_sample(r.set, static_cast<int>(params.size()), s.cfg["seed"].get<std::uint64_t>(), so);
  return r;
}

Json witnesses(const GenericResult& g, const std::vector<std::string>& params) {
  Json out = Json::array();
  std::vector<Rational> point(g.h.data(), g.h.data() + g.h.size());
  for (std::size_t i = 0; i < g.set.varieties.size(); ++i) {
    const Variety& v = g.set.varieties[i];
    Json gens = Json::array();
    for (const auto& p : v.generators) gens.push_back(p.to_string(params));
    Json w = nullptr;
    for (std::size_t k = 0; k < v.generators.size(); ++k) {
      Rational val = v.generators[k].evaluate(point);
      if (val != 0) {
        w = Json{{"generator", k}, {"value", to_string(val)}};
        break;
      }
    }
    out.push_back(Json{{"source", g.sources[i]}, {"generators", gens}, {"witness", w}});
  }
  return out;
}

// verify-poly ---------------------------------------------------------------

int cmd_verify_poly(Setup& s, const fs::path& out, std::ostream& log) {
  std::ostringstream csv;
  csv << "index,map,degree,class,leading_degree,leading_coefficient,weight\n";
  log << std::left << std::setw(6) << "index" << std::setw(8) << "degree" << std::setw(10) << "weight" << "map\n";
  for (std::size_t i = 0; i < s.family.size(); ++i) {
    const PolyMap& phi = s.family[i];
    const int degree = polynomial_degree(phi);
    std::string cls = "-", ld = "-", coef = "-", w = "constant";
    if (!phi.is_identity()) {
      LeadingTerm lt = leading_term(phi);
      std::vector<std::string> cs;
      for (Eigen::Index k = 0; k < lt.coefficient.size(); ++k) cs.push_back(lt.coefficient[k].to_string(phi.vars()));
      cls = std::to_string(lt.internal_class);
      ld = std::to_string(lt.leading_degree);
      coef = "(" + join(cs, "; ") + ")";
      w = "(" + cls + "," + ld + ")";
    }
    csv << i << ',' << csv_quote(to_string(phi)) << ',' << degree << ',' << cls << ',' << ld << ','
        << csv_quote(coef) << ',' << csv_quote(w) << '\n';
    log << std::setw(6) << i << std::setw(8) << degree << std::setw(10) << w << to_string(phi) << '\n';
  }
  write_file(out / "report.csv", csv.str());
  finish(s, "verify-poly", out);
  return exit_code::ok;
}

// pet -------------------------------------------------------------------------

int cmd_pet(Setup& s, const fs::path& out, std::ostream& log) {
  check_family(s.family);
  Json& opt = s.cfg["pet"];
  if (opt.is_null()) opt = Json::object();
  PetOptions po;
  if (!opt.contains("max_depth")) opt["max_depth"] = po.max_depth;
  if (!opt.contains("max_family_size")) opt["max_family_size"] = po.max_family_size;
  po.max_depth = opt["max_depth"].get<int>();
  po.max_family_size = opt["max_family_size"].get<std::size_t>();

  PetTrace trace = pet_trace(s.family, po);
  write_file(out / "certificate.json", dump(trace_to_json(trace, s.cfg["algebra"])));

  std::ostringstream csv;
  csv << "step,distinct_maps,total_maps,pivot,pivot_weight,assignment,clause,witness\n";
  log << std::left << std::setw(6) << "step" << std::setw(10) << "maps" << std::setw(7) << "pivot" << std::setw(12)
      << "clause" << std::setw(9) << "witness" << "assignment\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const PetStep& st = trace.steps[i];
    const Weight pw = weight(st.family.maps[static_cast<std::size_t>(st.pivot)]);
    std::vector<std::string> a;
    for (const auto& [w, n] : st.assignment)
      a.push_back("(" + std::to_string(w.c) + "," + std::to_string(w.d) + "):" + std::to_string(n));
    const std::string clause = st.certificate.clause == Descent::Clause::Assignment ? "assignment" : "matching";
    const std::string wit = "(" + std::to_string(st.certificate.witness.c) + "," +
                            std::to_string(st.certificate.witness.d) + ")";
    csv << i << ',' << st.family.maps.size() << ',' << st.family.total() << ',' << st.pivot << ','
        << csv_quote("(" + std::to_string(pw.c) + "," + std::to_string(pw.d) + ")") << ',' << csv_quote(join(a, " "))
        << ',' << clause << ',' << csv_quote(wit) << '\n';
    log << std::setw(6) << i << std::setw(10) << st.family.total() << std::setw(7) << st.pivot << std::setw(12)
        << clause << std::setw(9) << wit << join(a, " ") << '\n';
  }
  write_file(out / "report.csv", csv.str());
  finish(s, "pet", out);
  log << "status: " << to_string(trace.status) << ", depth " << trace.depth();
  if (!trace.message.empty()) log << " (" << trace.message << ")";
  log << '\n';
  switch (trace.status) {
    case PetTrace::Status::Complete: return exit_code::ok;
    case PetTrace::Status::Truncated: return exit_code::truncated;
    case PetTrace::Status::DescentViolation: return exit_code::certificate;
  }
  return exit_code::certificate;
}

// average -----------------------------------------------------------------------

GroupElement element_from_json(const Json& j, const AlgebraPtr& g) {
  RationalVector c = rational_vector_from_json(j);
  if (c.size() != g->dim()) fail("group element needs " + std::to_string(g->dim()) + " coordinates");
  return GroupElement(g, c);
}

RationalVector resolve_h(Setup& s, Json& cert) {
  const std::size_t r = s.vars.size() - 1;
  if (!s.cfg.contains("h")) s.cfg["h"] = Json::array();
  if (s.cfg["h"] == "generic") {
    if (!s.cfg.contains("generic")) s.cfg["generic"] = Json::object();
    GenericResult g = sample_generic(s, s.cfg["generic"]);
    cert["h"] = to_json(g.h);
    cert["generic"] = witnesses(g, s.param_vars());
    return g.h;
  }
  RationalVector h = rational_vector_from_json(s.cfg["h"]);
  if (static_cast<std::size_t>(h.size()) != r)
    throw ArityMismatch("h has " + std::to_string(h.size()) + " entries for " + std::to_string(r) + " parameters");
  cert["h"] = to_json(h);
  return h;
}

int cmd_average(Setup& s, const fs::path& out, std::ostream& log) {
  AverageOptions o = average_options(s);
  const auto experiment = s.get<std::string>("experiment", "joining");
  Json grid = s.cfg.value("T_grid", Json::array());
  if (!grid.is_array() || grid.empty()) fail("'T_grid' must be a nonempty list");
  std::vector<Rational> T_grid;
  for (const auto& t : grid) T_grid.push_back(rational_from_json(t));
  const Json fns_json = s.cfg.value("functions", Json::array());
  std::vector<TestFunction> fns;
  for (const auto& f : fns_json) fns.push_back(function_from_json(f));

  Json cert = Json::object();
  RationalVector h = resolve_h(s, cert);
  std::ostringstream csv;

  if (experiment == "mean_ergodic") {
    if (s.family.size() != 1 || fns.size() != 1) throw ArityMismatch("mean_ergodic needs one map and one function");
    const NilSystem sys = system_from_json(s.cfg.at("system"));
    const double tol = s.get<double>("tolerance", 0.05);
    MeanErgodicReport rep = mean_ergodic_base(sys, s.family[0], h, fns[0], T_grid, o, tol);
    csv << "T,estimate,std_error,cauchy_gap,distance_to_f,distance_std_error\n";
    for (std::size_t i = 0; i < rep.norms.T.size(); ++i) {
      const double gap = cauchy_gap(std::span<const double>(rep.norms.estimates.data(), i + 1));
      csv << format_double(rep.norms.T[i]) << ',' << format_double(rep.norms.estimates[i]) << ','
          << format_double(rep.norms.std_errors[i]) << ',' << format_double(gap) << ','
          << format_double(rep.distance_to_f[i]) << ',' << format_double(rep.distance_std_errors[i]) << '\n';
      log << "T=" << format_double(rep.norms.T[i]) << "  |A_T f| = " << format_double(rep.norms.estimates[i])
          << " +- " << format_double(rep.norms.std_errors[i]) << "  |A_T f - f| = " << format_double(rep.distance_to_f[i])
          << '\n';
    }
    cert["limit"] = to_string(rep.limit);
    log << "limit: " << to_string(rep.limit) << '\n';
  } else if (experiment == "joining") {
    JoiningSpec j;
    Json jj = s.cfg.value("joining", Json{{"kind", "diagonal"}});
    if (!jj.contains("kind")) jj["kind"] = "diagonal";
    j.kind = joining_kind_from_string(jj["kind"].get<std::string>());
    if (s.cfg.contains("systems")) {
      for (const auto& sj : s.cfg["systems"]) j.systems.push_back(system_from_json(sj));
    } else {
      const NilSystem sys = system_from_json(s.cfg.at("system"));
      j.systems.assign(s.family.size() + 1, sys);
    }
    if (j.kind == JoiningSpec::Kind::Graph) {
      const Json& g = jj.at("graph");
      if (!g.is_array() || g.size() != j.systems.size()) throw ArityMismatch("graph needs one element per system");
      for (std::size_t i = 0; i < g.size(); ++i) j.graph.push_back(element_from_json(g[i], j.systems[i].acting_algebra()));
    }
    s.cfg["joining"] = jj;
    AverageReport rep = convergence_scan(j, s.family, h, fns, T_grid, o);
    csv << "T,estimate,std_error,cauchy_gap\n";
    for (std::size_t i = 0; i < rep.T.size(); ++i) {
      const double gap = cauchy_gap(std::span<const double>(rep.estimates.data(), i + 1));
      csv << format_double(rep.T[i]) << ',' << format_double(rep.estimates[i]) << ',' << format_double(rep.std_errors[i])
          << ',' << format_double(gap) << '\n';
      log << "T=" << format_double(rep.T[i]) << "  estimate " << format_double(rep.estimates[i]) << " +- "
          << format_double(rep.std_errors[i]) << '\n';
    }
    log << "cauchy gap: " << format_double(rep.cauchy_gap) << '\n';
    cert["cauchy_gap"] = rep.cauchy_gap;
    if (s.cfg.contains("invariance")) {
      const Json& inv = s.cfg["invariance"];
      const Rational T = rational_from_json(inv.at("T"));
      std::vector<std::vector<GroupElement>> tuples;
      for (const auto& tj : inv.at("tuples")) {
        if (!tj.is_array() || tj.size() != j.systems.size())
          throw ArityMismatch("invariance tuples need one element per system");
        std::vector<GroupElement> tuple;
        for (std::size_t i = 0; i < tj.size(); ++i) tuple.push_back(element_from_json(tj[i], j.systems[i].acting_algebra()));
        tuples.push_back(std::move(tuple));
      }
      auto dev = invariance_check(j, s.family, h, fns, T, tuples, o);
      Json rows = Json::array();
      for (std::size_t u = 0; u < dev.size(); ++u) {
        rows.push_back(Json{{"tuple", inv["tuples"][u]}, {"deviation", dev[u].value}, {"std_error", dev[u].std_error}});
        log << "invariance tuple " << u << ": deviation " << format_double(dev[u].value) << " +- "
            << format_double(dev[u].std_error) << '\n';
      }
      cert["invariance"] = Json{{"T", to_string(T)}, {"results", rows}};
    }
  } else {
    fail("unknown experiment '" + experiment + "'");
  }
  s.cfg["functions"] = Json::array();
  for (const auto& f : fns) s.cfg["functions"].push_back(to_json(f));
  write_file(out / "report.csv", csv.str());
  write_file(out / "certificate.json", dump(cert));
  finish(s, "average", out);
  return exit_code::ok;
}

// generic -----------------------------------------------------------------------

int cmd_generic(Setup& s, const fs::path& out, std::ostream& log) {
  if (!s.cfg.contains("generic")) s.cfg["generic"] = Json::object();
  GenericResult g = sample_generic(s, s.cfg["generic"]);
  const auto params = s.param_vars();
  Json w = witnesses(g, params);
  std::ostringstream csv;
  csv << "variety,source,generators,witness_generator,witness_value\n";
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::vector<std::string> gens = w[i]["generators"].get<std::vector<std::string>>();
    csv << i << ',' << csv_quote(w[i]["source"].get<std::string>()) << ',' << csv_quote("[" + join(gens, "; ") + "]")
        << ',' << w[i]["witness"]["generator"].get<std::size_t>() << ',' << w[i]["witness"]["value"].get<std::string>()
        << '\n';
    log << "variety " << i << " [" << join(gens, ", ") << "]: generator " << w[i]["witness"]["generator"]
        << " = " << w[i]["witness"]["value"].get<std::string>() << " != 0\n";
  }
  std::vector<std::string> hs;
  for (Eigen::Index i = 0; i < g.h.size(); ++i) hs.push_back(params[static_cast<std::size_t>(i)] + " = " + to_string(g.h[i]));
  log << "h: " << (hs.empty() ? "(no parameters)" : join(hs, ", ")) << '\n';
  write_file(out / "report.csv", csv.str());
  write_file(out / "certificate.json", dump(Json{{"params", params}, {"h", to_json(g.h)}, {"varieties", w}}));
  finish(s, "generic", out);
  return exit_code::ok;
}

// vdc -----------------------------------------------------------------------------

int cmd_vdc(Setup& s, const fs::path& out, std::ostream& log) {
  if (s.family.size() != 1) throw ArityMismatch("vdc needs exactly one map");
  const NilSystem sys = system_from_json(s.cfg.at("system"));
  const TestFunction f = function_from_json(s.cfg.at("function"));
  check_function(sys, f);
  Json cert = Json::object();
  const RationalVector h = resolve_h(s, cert);
  const Rational step = s.rational("step", "1/1000");
  const Rational S = rational_from_json(s.cfg.at("S"));
  const Rational T = rational_from_json(s.cfg.at("T"));
  if (step <= 0) fail("step must be positive");
  if (!s.cfg.contains("x0")) s.cfg["x0"] = std::vector<double>(static_cast<std::size_t>(sys.dim()), 0.0);
  const auto xs = s.cfg["x0"].get<std::vector<double>>();
  if (static_cast<int>(xs.size()) != sys.dim()) throw ArityMismatch("x0 needs " + std::to_string(sys.dim()) + " coordinates");
  NilPoint x0(sys.dim());
  for (int i = 0; i < sys.dim(); ++i) x0[i] = xs[static_cast<std::size_t>(i)];
  const Rational span = (S + T) / step;
  const auto needed = static_cast<std::size_t>(floor(span).convert_to<long long>()) + 1;
  const auto count = s.get<std::size_t>("count", needed);
  const auto a = orbit_trajectory(sys, s.family[0], h, f, reduce(sys, x0), step, count);
  const VdcResult r = vdc_check(a, to_double(step), to_double(S), to_double(T));
  write_file(out / "report.csv", "lhs_norm,rhs_corr\n" + format_double(r.lhs_norm) + "," + format_double(r.rhs_corr) + "\n");
  log << "lhs_norm " << format_double(r.lhs_norm) << "  rhs_corr " << format_double(r.rhs_corr) << '\n';
  finish(s, "vdc", out);
  return exit_code::ok;
}

}  // namespace

int run_command(const std::string& command, const Json& config, const fs::path& out, const CliOverrides& overrides,
                std::ostream& log) {
  try {
    fs::create_directories(out);
    if (command == "verify-poly") {
      Setup s = load(config, overrides, true);
      return cmd_verify_poly(s, out, log);
    }
    if (command == "pet") {
      Setup s = load(config, overrides, true);
      return cmd_pet(s, out, log);
    }
    if (command == "average") {
      Setup s = load(config, overrides, false);
      return cmd_average(s, out, log);
    }
    if (command == "generic") {
      Setup s = load(config, overrides, false);
      return cmd_generic(s, out, log);
    }
    if (command == "vdc") {
      Setup s = load(config, overrides, false);
      return cmd_vdc(s, out, log);
    }
    log << "error: unknown command '" << command << "'\n";
    return exit_code::config;
  } catch (const SamplingExhausted& e) {
    log << "truncated: " << e.what() << '\n';
    return exit_code::truncated;
  } catch (const IterationCapExceeded& e) {
    log << "truncated: " << e.what() << '\n';
    return exit_code::truncated;
  } catch (const std::domain_error& e) {
    log << "certificate failure: " << e.what() << '\n';
    return exit_code::certificate;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return exit_code::config;
  } catch (const Json::exception& e) {
    log << "config error: " << e.what() << '\n';
    return exit_code::config;
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << '\n';
    return exit_code::config;
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Polynomial maps into nilpotent groups: PET certificates, genericity and averages"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify-poly", "degree, class, leading term and weight of each family member"},
      {"pet", "PET induction trace with descent certificates"},
      {"average", "convergence scan of joining averages, optional invariance check"},
      {"generic", "certified generic parameter point"},
      {"vdc", "van der Corput diagnostic on one trajectory"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "overrides the config seed");
    sub->add_option("--threads", threads, "worker threads (0 = all cores)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_code::ok : exit_code::config;
  }
  Json config;
  try {
    std::ifstream is(config_path);
    config = Json::parse(is);
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_code::config;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  int rc = run_command(command, config, out_dir, {seed, threads}, std::cout);
  std::cout.flush();
  return rc;
}

}  // namespace nilpet
