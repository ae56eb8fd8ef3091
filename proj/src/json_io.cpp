#include "nilpet/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace nilpet {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(as_int(x, what));
  return out;
}

// Recursive descent over + - * / ^ and parentheses. Division only by
// nonzero constants.
class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void error(const std::string& what) {
    fail("polynomial \"" + std::string(s_) + "\": " + what + " at offset " + std::to_string(pos_));
  }

  MultiPoly expr() {
    MultiPoly p = term();
    for (;;) {
      if (eat('+'))
        p += term();
      else if (eat('-'))
        p -= term();
      else
        return p;
    }
  }

  MultiPoly term() {
    MultiPoly p = unary();
    for (;;) {
      if (eat('*')) {
        p = p * unary();
      } else if (eat('/')) {
        MultiPoly d = unary();
        if (!d.is_constant() || d.is_zero()) error("division by a non-constant or zero");
        p *= Rational(1) / d.constant_term();
      } else {
        return p;
      }
    }
  }

  MultiPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    MultiPoly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) error("expected a nonnegative integer exponent");
      return base.pow(std::stoi(std::string(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  MultiPoly atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end");
    if (eat('(')) {
      MultiPoly p = expr();
      if (!eat(')')) error("expected ')'");
      return p;
    }
    const char c = s_[pos_];
    std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return MultiPoly(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) error("unknown variable '" + name + "'");
      return MultiPoly::variable(static_cast<int>(it - vars_.begin()));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Json algebra_to_json(const LieAlgebra& g) {
  Json brackets = Json::array();
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = i + 1; j < g.dim(); ++j) {
      auto terms = g.bracket_terms(i, j);
      if (terms.empty()) continue;
      Json ts = Json::array();
      for (const auto& t : terms) ts.push_back(Json::array({t.index, to_string(t.coef)}));
      brackets.push_back(Json::array({i, j, ts}));
    }
  }
  return Json{{"dim", g.dim()}, {"labels", g.labels()}, {"step", g.step()}, {"layers", g.layers()},
              {"brackets", brackets}};
}

AlgebraPtr algebra_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return builtin_from_name(j.get<std::string>());
    } catch (const std::exception& e) {
      fail("algebra \"" + j.get<std::string>() + "\": " + e.what());
    }
  }
  if (!j.is_object()) fail("algebra must be a builtin name or an object");
  const int dim = as_int(field(j, "dim"), "dim");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = j.at("labels").get<std::vector<std::string>>();
  } else {
    for (int i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
  }
  std::vector<LieAlgebra::Entry> entries;
  for (const auto& b : field(j, "brackets")) {
    if (!b.is_array() || b.size() != 3) fail("bracket entries are [i, j, [[k, coef], ...]]");
    LieAlgebra::Entry e{as_int(b[0], "bracket index"), as_int(b[1], "bracket index"), {}};
    for (const auto& t : b[2]) {
      if (!t.is_array() || t.size() != 2) fail("bracket terms are [k, coef]");
      e.terms.push_back({as_int(t[0], "bracket index"), rational_from_json(t[1])});
    }
    entries.push_back(std::move(e));
  }
  std::shared_ptr<LieAlgebra> g;
  try {
    g = std::make_shared<LieAlgebra>(std::move(labels), int_list(field(j, "layers"), "layers"),
                                     as_int(field(j, "step"), "step"), entries);
  } catch (const std::invalid_argument& e) {
    fail(std::string("algebra: ") + e.what());
  }
  if (g->dim() != dim) fail("algebra: dim does not match the layers");
  auto violations = verify_algebra(*g);
  if (!violations.empty()) fail("algebra: " + to_string(violations.front().kind) + ": " + violations.front().message);
  return g;
}

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  return PolyParser(text, vars).parse();
}

MultiPoly poly_from_json(const Json& j, const std::vector<std::string>& vars) {
  if (j.is_string()) return parse_poly(j.get<std::string>(), vars);
  if (j.is_number_integer()) return MultiPoly(j.get<int>());
  if (!j.is_array()) fail("polynomial must be a string or a list of terms");
  MultiPoly p;
  for (const auto& t : j) {
    auto e = int_list(field(t, "exp"), "exp");
    if (e.size() > vars.size()) fail("exponent vector longer than the variable list");
    if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; })) fail("negative exponent");
    p += MultiPoly::monomial(std::move(e), rational_from_json(field(t, "coef")));
  }
  return p;
}

Json poly_to_json(const MultiPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(Json{{"exp", e}, {"coef", to_string(c)}});
  return out;
}

PolyMap polymap_from_json(const Json& j, const AlgebraPtr& default_algebra,
                          const std::vector<std::string>& default_vars) {
  AlgebraPtr g = j.is_object() && j.contains("algebra") ? algebra_from_json(j.at("algebra")) : default_algebra;
  if (!g) fail("map without an algebra");
  std::vector<std::string> vars = default_vars;
  if (j.is_object() && j.contains("vars")) vars = j.at("vars").get<std::vector<std::string>>();
  if (vars.empty()) fail("map needs at least the time variable");
  const Json& coords = j.is_object() ? field(j, "coords") : j;
  if (!coords.is_array() || static_cast<int>(coords.size()) != g->dim())
    fail("map needs " + std::to_string(g->dim()) + " coordinates");
  PolyVector c(g->dim());
  for (int i = 0; i < g->dim(); ++i) c[i] = poly_from_json(coords[static_cast<std::size_t>(i)], vars);
  return PolyMap(std::move(g), std::move(vars), std::move(c));
}

Json polymap_to_json(const PolyMap& phi, const Json& algebra_ref) {
  Json coords = Json::array();
  for (int i = 0; i < phi.algebra()->dim(); ++i) coords.push_back(poly_to_json(phi.coord(i)));
  return Json{{"algebra", algebra_ref}, {"vars", phi.vars()}, {"coords", coords}};
}

Rational rational_from_json(const Json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  fail("rationals are integers or strings \"p/q\", got " + j.dump());
}

RationalVector rational_vector_from_json(const Json& j) {
  if (!j.is_array()) fail("expected a list of rationals");
  RationalVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = rational_from_json(j[i]);
  return v;
}

Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v[i]));
  return out;
}

NilSystem system_from_json(const Json& j) {
  const auto kind = field(j, "kind").get<std::string>();
  NilSystem sys = NilSystem::heisenberg3();
  try {
    if (kind == "torus")
      sys = NilSystem::torus(as_int(field(j, "dim"), "dim"));
    else if (kind != "heisenberg3")
      fail("unknown system kind '" + kind + "'");
    if (j.contains("acting")) {
      const Json& a = j.at("acting");
      AlgebraPtr src = algebra_from_json(field(a, "algebra"));
      const Json& rows = field(a, "matrix");
      if (!rows.is_array() || rows.empty()) fail("acting matrix must be a nonempty list of rows");
      RationalMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        RationalVector row = rational_vector_from_json(rows[r]);
        if (row.size() != m.cols()) fail("ragged acting matrix");
        m.row(static_cast<Eigen::Index>(r)) = row.transpose();
      }
      sys = sys.via(std::move(src), std::move(m));
    }
  } catch (const std::invalid_argument& e) {
    fail(std::string("system: ") + e.what());
  }
  return sys;
}

TestFunction function_from_json(const Json& j) {
  TestFunction f;
  const auto kind = field(j, "kind").get<std::string>();
  if (kind == "torus")
    f.kind = TestFunction::Kind::Torus;
  else if (kind == "heis_abelian")
    f.kind = TestFunction::Kind::HeisAbelian;
  else if (kind == "heis_vertical")
    f.kind = TestFunction::Kind::HeisVertical;
  else if (kind == "one")
    f.kind = TestFunction::Kind::One;
  else
    fail("unknown function kind '" + kind + "'");
  if (j.contains("freq")) f.freq = int_list(j.at("freq"), "freq");
  const auto part = j.value("part", std::string("cos"));
  if (part == "sin")
    f.part = TestFunction::Part::Sin;
  else if (part != "cos")
    fail("function part must be cos or sin");
  return f;
}

Json to_json(const TestFunction& f) {
  return Json{{"kind", to_string(f.kind)}, {"freq", f.freq}, {"part", to_string(f.part)}};
}

JoiningSpec::Kind joining_kind_from_string(const std::string& s) {
  if (s == "diagonal") return JoiningSpec::Kind::Diagonal;
  if (s == "product") return JoiningSpec::Kind::Product;
  if (s == "graph") return JoiningSpec::Kind::Graph;
  fail("unknown joining kind '" + s + "'");
}

Json weight_assignment_to_json(const WeightAssignment& a) {
  Json out = Json::array();
  for (const auto& [w, n] : a) out.push_back(Json::array({w.c, w.d, n}));
  return out;
}

Json trace_to_json(const PetTrace& trace, const Json& algebra_ref) {
  auto multiset = [&](const MapMultiset& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.maps.size(); ++i) {
      Json e = polymap_to_json(m.maps[i], algebra_ref);
      e["multiplicity"] = m.multiplicity[i];
      out.push_back(std::move(e));
    }
    return out;
  };
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    const Weight w = weight(s.family.maps[static_cast<std::size_t>(s.pivot)]);
    steps.push_back(Json{
        {"assignment", weight_assignment_to_json(s.assignment)},
        {"pivot", s.pivot},
        {"pivot_weight", Json::array({w.c, w.d})},
        {"derived", multiset(s.derived)},
        {"derived_dropped", s.derived_dropped},
        {"descent",
         Json{{"clause", s.certificate.clause == Descent::Clause::Assignment ? "assignment" : "matching"},
              {"witness", Json::array({s.certificate.witness.c, s.certificate.witness.d})}}},
    });
  }
  return Json{{"status", to_string(trace.status)},
              {"depth", trace.depth()},
              {"initial_dropped", trace.initial_dropped},
              {"message", trace.message},
              {"steps", steps},
              {"final_family", multiset(trace.final_family)}};
}

std::string format_double(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

}  // namespace nilpet
