#include "nilpet/poly_map.hpp"

#include <algorithm>
#include <sstream>

namespace nilpet {

PolyMap::PolyMap(AlgebraPtr algebra, std::vector<std::string> vars, PolyVector coords)
    : algebra_(std::move(algebra)), vars_(std::move(vars)), coords_(std::move(coords)) {
  if (!algebra_) throw std::invalid_argument("PolyMap without algebra");
  if (vars_.empty()) throw std::invalid_argument("PolyMap needs at least the time variable");
  if (coords_.size() != algebra_->dim())
    throw std::invalid_argument("PolyMap coordinate count differs from algebra dimension");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    for (std::size_t j = i + 1; j < vars_.size(); ++j) {
      if (vars_[i] == vars_[j]) throw std::invalid_argument("duplicate variable '" + vars_[i] + "'");
    }
  }
  for (const auto& p : coords_) {
    if (p.arity() > num_vars())
      throw std::invalid_argument("polynomial uses more variables than declared");
  }
}

PolyMap PolyMap::identity(AlgebraPtr algebra, std::vector<std::string> vars) {
  PolyVector c(algebra->dim());
  return PolyMap(std::move(algebra), std::move(vars), std::move(c));
}

PolyMap PolyMap::along(AlgebraPtr algebra, std::vector<std::string> vars, int index,
                       const MultiPoly& p) {
  PolyVector c(algebra->dim());
  c[index] = p;
  return PolyMap(std::move(algebra), std::move(vars), std::move(c));
}

int PolyMap::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw UnknownVariable(name);
  return static_cast<int>(it - vars_.begin());
}

bool PolyMap::operator==(const PolyMap& other) const {
  return same_algebra(algebra_, other.algebra_) && vars_ == other.vars_ && coords_ == other.coords_;
}

GroupElement eval(const PolyMap& phi, std::span<const Rational> point) {
  if (static_cast<int>(point.size()) != phi.num_vars())
    throw ArityMismatch("evaluation point has " + std::to_string(point.size()) +
                        " coordinates, map has " + std::to_string(phi.num_vars()) + " variables");
  RationalVector x(phi.algebra()->dim());
  for (int i = 0; i < x.size(); ++i) x[i] = phi.coord(i).evaluate(point);
  return GroupElement(phi.algebra(), std::move(x));
}

namespace {

void require_compatible(const PolyMap& a, const PolyMap& b) {
  if (!same_algebra(a.algebra(), b.algebra())) throw AlgebraMismatch();
  if (a.vars() != b.vars()) throw ArityMismatch("maps are defined on different variable lists");
}

std::string fresh_name(const std::vector<std::string>& taken, const std::string& base) {
  auto used = [&](const std::string& s) {
    return std::find(taken.begin(), taken.end(), s) != taken.end();
  };
  if (!used(base)) return base;
  for (int i = 2;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!used(candidate)) return candidate;
  }
}

}  // namespace

PolyMap pointwise_product(const PolyMap& phi, const PolyMap& psi, const BchTable& table) {
  require_compatible(phi, psi);
  return PolyMap(phi.algebra(), phi.vars(), bch(*phi.algebra(), phi.coords(), psi.coords(), table));
}

PolyMap pointwise_inverse(const PolyMap& phi) {
  PolyVector c(phi.coords().size());
  for (int i = 0; i < c.size(); ++i) c[i] = -phi.coord(i);
  return PolyMap(phi.algebra(), phi.vars(), std::move(c));
}

PolyMap substitute(const PolyMap& phi, const std::vector<std::string>& new_vars,
                   const std::vector<std::pair<std::string, MultiPoly>>& assignment) {
  std::vector<MultiPoly> images(static_cast<std::size_t>(phi.num_vars()));
  std::vector<bool> assigned(images.size(), false);
  for (const auto& [name, image] : assignment) {
    int i = phi.var_index(name);
    if (image.total_degree() > 1)
      throw std::invalid_argument("substitution for '" + name + "' is not affine");
    if (image.arity() > static_cast<int>(new_vars.size()))
      throw std::invalid_argument("substitution for '" + name + "' uses undeclared variables");
    images[static_cast<std::size_t>(i)] = image;
    assigned[static_cast<std::size_t>(i)] = true;
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (assigned[i]) continue;
    auto it = std::find(new_vars.begin(), new_vars.end(), phi.vars()[i]);
    if (it == new_vars.end()) {
      // An unassigned variable may only disappear if nothing depends on it.
      bool used = std::any_of(phi.coords().begin(), phi.coords().end(), [&](const MultiPoly& p) {
        return p.degree_in(static_cast<int>(i)) > 0;
      });
      if (used) throw UnknownVariable(phi.vars()[i]);
      images[i] = MultiPoly();
    } else {
      images[i] = MultiPoly::variable(static_cast<int>(it - new_vars.begin()));
    }
  }
  PolyVector c(phi.coords().size());
  for (int k = 0; k < c.size(); ++k) c[k] = phi.coord(k).compose(images);
  return PolyMap(phi.algebra(), new_vars, std::move(c));
}

PolyMap extend_vars(const PolyMap& phi, const std::vector<std::string>& extra) {
  std::vector<std::string> vars = phi.vars();
  vars.insert(vars.end(), extra.begin(), extra.end());
  return PolyMap(phi.algebra(), std::move(vars), phi.coords());
}

PolyMap difference(const PolyMap& phi, std::span<const MultiPoly> shift, const BchTable& table) {
  if (static_cast<int>(shift.size()) > phi.num_vars())
    throw ArityMismatch("shift has more components than the domain");
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < shift.size(); ++i)
    images.push_back(MultiPoly::variable(static_cast<int>(i)) - shift[i]);
  PolyVector shifted(phi.coords().size());
  for (int k = 0; k < shifted.size(); ++k) shifted[k] = phi.coord(k).compose(images);
  PolyVector inverse = pointwise_inverse(phi).coords();
  return PolyMap(phi.algebra(), phi.vars(), bch(*phi.algebra(), shifted, inverse, table));
}

PolyMap difference(const PolyMap& phi, const RationalVector& shift, const BchTable& table) {
  if (shift.size() != phi.num_vars())
    throw ArityMismatch("shift arity differs from the number of variables");
  std::vector<MultiPoly> s;
  for (const auto& x : shift) s.emplace_back(x);
  return difference(phi, s, table);
}

PolyMap symbolic_difference(const PolyMap& phi, int domain_arity, const BchTable& table) {
  if (domain_arity < 0 || domain_arity > phi.num_vars())
    throw ArityMismatch("domain arity out of range");
  std::vector<std::string> vars = phi.vars();
  std::vector<MultiPoly> shift;
  for (int i = 0; i < domain_arity; ++i) {
    std::string name = fresh_name(vars, "d" + vars[static_cast<std::size_t>(i)]);
    vars.push_back(name);
    shift.push_back(MultiPoly::variable(static_cast<int>(vars.size()) - 1));
  }
  PolyMap wide(phi.algebra(), std::move(vars), phi.coords());
  return difference(wide, shift, table);
}

int annihilation_order(const PolyMap& phi, int cap, const BchTable& table) {
  const int n = phi.num_vars();
  PolyMap current = phi;
  int m = 0;
  while (!current.is_identity()) {
    if (m >= cap)
      throw IterationCapExceeded("map not annihilated after " + std::to_string(cap) +
                                 " symbolic differences");
    current = symbolic_difference(current, n, table);
    ++m;
  }
  return m;
}

int polynomial_degree(const PolyMap& phi, int cap, const BchTable& table) {
  return std::max(annihilation_order(phi, cap, table) - 1, 0);
}

int internal_class(const PolyMap& phi) {
  int c = 0;
  for (int i = 0; i < phi.coords().size(); ++i) {
    if (phi.coord(i).is_zero()) continue;
    int l = phi.algebra()->layer(i);
    if (c == 0 || l < c) c = l;
  }
  if (c == 0) throw ConstantMapError();
  return c;
}

LeadingTerm leading_term(const PolyMap& phi) {
  LeadingTerm lt;
  lt.internal_class = internal_class(phi);
  lt.layer_indices = phi.algebra()->layer_indices(lt.internal_class);
  for (int i : lt.layer_indices) lt.leading_degree = std::max(lt.leading_degree, phi.coord(i).degree_in(0));
  lt.coefficient.resize(static_cast<Eigen::Index>(lt.layer_indices.size()));
  for (std::size_t k = 0; k < lt.layer_indices.size(); ++k) {
    lt.coefficient[static_cast<Eigen::Index>(k)] =
        phi.coord(lt.layer_indices[k]).coefficient_in(0, lt.leading_degree);
  }
  return lt;
}

bool LeadingTerm::operator==(const LeadingTerm& other) const {
  return internal_class == other.internal_class && leading_degree == other.leading_degree &&
         layer_indices == other.layer_indices && coefficient == other.coefficient;
}

std::optional<int> normalization_violation(const PolyMap& phi) {
  for (int i = 0; i < phi.coords().size(); ++i) {
    if (!phi.coord(i).coefficient_in(0, 0).is_zero()) return i;
  }
  return std::nullopt;
}

std::string to_string(const PolyMap& phi) {
  std::ostringstream os;
  const auto& labels = phi.algebra()->labels();
  os << "exp(";
  bool first = true;
  for (int i = 0; i < phi.coords().size(); ++i) {
    if (phi.coord(i).is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << phi.coord(i).to_string(phi.vars()) << ")" << labels[static_cast<std::size_t>(i)];
  }
  if (first) os << "0";
  os << ")";
  return os.str();
}

}  // namespace nilpet
