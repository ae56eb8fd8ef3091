#include "nilpet/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nilpet {

namespace {

void trim(MultiPoly::Exponent& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

}  // namespace

MultiPoly::MultiPoly(const Rational& value) {
  if (value != 0) terms_.emplace(Exponent{}, value);
}

MultiPoly MultiPoly::variable(int index) {
  Exponent e(static_cast<std::size_t>(index) + 1, 0);
  e.back() = 1;
  return monomial(std::move(e), Rational(1));
}

MultiPoly MultiPoly::monomial(Exponent exponent, const Rational& coef) {
  MultiPoly p;
  trim(exponent);
  if (coef != 0) p.terms_.emplace(std::move(exponent), coef);
  return p;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational MultiPoly::constant_term() const {
  auto it = terms_.find(Exponent{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::degree_in(int var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    if (var < static_cast<int>(e.size())) d = std::max(d, e[static_cast<std::size_t>(var)]);
  }
  return d;
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

int MultiPoly::arity() const {
  int n = 0;
  for (const auto& [e, c] : terms_) n = std::max(n, static_cast<int>(e.size()));
  return n;
}

MultiPoly MultiPoly::coefficient_in(int var, int power) const {
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    int p = var < static_cast<int>(e.size()) ? e[static_cast<std::size_t>(var)] : 0;
    if (p != power) continue;
    Exponent r = e;
    if (var < static_cast<int>(r.size())) r[static_cast<std::size_t>(var)] = 0;
    trim(r);
    out.add_term(r, c);
  }
  return out;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    if (e.size() > point.size()) throw std::invalid_argument("evaluation point has too few coordinates");
    Rational m = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    }
    total += m;
  }
  return total;
}

double MultiPoly::evaluate(std::span<const double> point) const {
  double total = 0;
  for (const auto& [e, c] : terms_) {
    if (e.size() > point.size()) throw std::invalid_argument("evaluation point has too few coordinates");
    double m = to_double(c);
    for (std::size_t i = 0; i < e.size(); ++i) m *= std::pow(point[i], e[i]);
    total += m;
  }
  return total;
}

MultiPoly MultiPoly::compose(std::span<const MultiPoly> images) const {
  // powers[i][p] = images[i]^p, filled lazily
  std::vector<std::vector<MultiPoly>> powers(images.size());
  auto power_of = [&](std::size_t i, int p) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly(1));
    while (static_cast<int>(cache.size()) <= p) cache.push_back(cache.back() * images[i]);
    return cache[static_cast<std::size_t>(p)];
  };
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    Exponent kept;
    MultiPoly term(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i < images.size()) {
        if (e[i] > 0) term *= power_of(i, e[i]);
      } else {
        kept.resize(e.size(), 0);
        kept[i] = e[i];
      }
    }
    if (!kept.empty()) term *= monomial(kept, Rational(1));
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::pow(int exponent) const {
  if (exponent < 0) throw std::invalid_argument("negative polynomial power");
  MultiPoly out(1);
  for (int i = 0; i < exponent; ++i) out *= *this;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  if (a.is_zero() || b.is_zero()) return out;
  MultiPoly::Exponent e;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      e.assign(std::max(ea.size(), eb.size()), 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) {
  *this = *this * other;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& scale) {
  if (scale == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scale;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = !e.empty();
    if (!has_var || mag != 1) {
      os << nilpet::to_string(mag);
      if (has_var) os << "*";
    }
    bool first_var = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string({}); }

bool is_zero(const PolyVector& v) {
  return std::all_of(v.begin(), v.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

}  // namespace nilpet
