#include "nilpet/lie_algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace nilpet {

LieAlgebra::LieAlgebra(std::vector<std::string> labels, std::vector<int> layers, int step,
                       const std::vector<Entry>& entries)
    : dim_(static_cast<int>(layers.size())),
      step_(step),
      labels_(std::move(labels)),
      layers_(std::move(layers)) {
  if (dim_ <= 0) throw std::invalid_argument("Lie algebra dimension must be positive");
  if (step_ <= 0) throw std::invalid_argument("Lie algebra step must be positive");
  if (labels_.empty()) {
    for (int i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i + 1));
  }
  if (static_cast<int>(labels_.size()) != dim_)
    throw std::invalid_argument("label count does not match dimension");
  for (int l : layers_) {
    if (l < 1) throw std::invalid_argument("layers must be positive");
  }

  table_.assign(static_cast<std::size_t>(dim_ * dim_), {});
  std::vector<bool> given(static_cast<std::size_t>(dim_ * dim_), false);
  auto slot = [&](int i, int j) { return static_cast<std::size_t>(i * dim_ + j); };
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.i >= dim_ || e.j >= dim_)
      throw std::invalid_argument("bracket index out of range");
    std::map<int, Rational> acc;
    for (const auto& t : e.terms) {
      if (t.index < 0 || t.index >= dim_) throw std::invalid_argument("bracket index out of range");
      acc[t.index] += t.coef;
    }
    std::vector<Term> terms;
    for (auto& [k, c] : acc) {
      if (c != 0) terms.push_back({k, c});
    }
    table_[slot(e.i, e.j)] = std::move(terms);
    given[slot(e.i, e.j)] = true;
  }
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      if (given[slot(i, j)] && !given[slot(j, i)] && i != j) {
        std::vector<Term> neg;
        for (const auto& t : table_[slot(i, j)]) neg.push_back({t.index, -t.coef});
        table_[slot(j, i)] = std::move(neg);
        given[slot(j, i)] = true;
      }
    }
  }
}

std::vector<int> LieAlgebra::layer_indices(int layer) const {
  std::vector<int> out;
  for (int i = 0; i < dim_; ++i) {
    if (layers_[static_cast<std::size_t>(i)] == layer) out.push_back(i);
  }
  return out;
}

bool LieAlgebra::same_structure(const LieAlgebra& other) const {
  return dim_ == other.dim_ && step_ == other.step_ && layers_ == other.layers_ &&
         table_ == other.table_;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_structure(*b);
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::Shape: return "shape";
    case Violation::Kind::Antisymmetry: return "antisymmetry";
    case Violation::Kind::Jacobi: return "jacobi";
    case Violation::Kind::Grading: return "grading";
    case Violation::Kind::Layers: return "layers";
    case Violation::Kind::LowerCentralSeries: return "lower_central_series";
  }
  return "unknown";
}

namespace {

std::vector<RationalVector> echelon(std::vector<RationalVector> rows) {
  if (rows.empty()) return rows;
  const Eigen::Index cols = rows.front().size();
  std::size_t r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows.size(); ++c) {
    auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end(),
                              [c](const RationalVector& v) { return v[c] != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(r), pivot);
    const RationalVector& p = rows[r];
    for (std::size_t k = r + 1; k < rows.size(); ++k) {
      if (rows[k][c] == 0) continue;
      Rational f = rows[k][c] / p[c];
      for (Eigen::Index m = c; m < cols; ++m) rows[k][m] -= f * p[m];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

}  // namespace

int rank(std::vector<RationalVector> rows) {
  return static_cast<int>(echelon(std::move(rows)).size());
}

namespace {

RationalVector basis_vector(int dim, int i) {
  RationalVector v = zero_vector(dim);
  v[i] = 1;
  return v;
}

std::string idx(std::initializer_list<int> is) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (int i : is) {
    os << (first ? "" : ",") << i;
    first = false;
  }
  os << ")";
  return os.str();
}

}  // namespace

std::vector<Violation> verify_algebra(const LieAlgebra& g) {
  std::vector<Violation> out;
  const int n = g.dim();
  const int s = g.step();

  // Layers: contiguous 1..s.
  int max_layer = *std::max_element(g.layers().begin(), g.layers().end());
  if (max_layer != s) {
    out.push_back({Violation::Kind::Layers, {max_layer, s},
                   "largest layer " + std::to_string(max_layer) + " differs from step " +
                       std::to_string(s)});
  }
  for (int l = 1; l <= max_layer; ++l) {
    if (g.layer_indices(l).empty()) {
      out.push_back({Violation::Kind::Layers, {l}, "layer " + std::to_string(l) + " is empty"});
    }
  }

  auto coef = [&](int i, int j, int k) -> Rational {
    for (const auto& t : g.bracket_terms(i, j)) {
      if (t.index == k) return t.coef;
    }
    return 0;
  };

  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (coef(i, j, k) != -coef(j, i, k)) {
          out.push_back({Violation::Kind::Antisymmetry, {i, j, k},
                         "c" + idx({i, j, k}) + " != -c" + idx({j, i, k})});
        }
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (const auto& t : g.bracket_terms(i, j)) {
        int target = g.layer(i) + g.layer(j);
        if (target > s || g.layer(t.index) < target) {
          out.push_back({Violation::Kind::Grading, {i, j, t.index},
                         "[e" + std::to_string(i) + ",e" + std::to_string(j) +
                             "] has a component on e" + std::to_string(t.index) + " in layer " +
                             std::to_string(g.layer(t.index)) + " (< " +
                             std::to_string(target) + " or beyond the step)"});
        }
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    RationalVector ei = basis_vector(n, i);
    for (int j = i + 1; j < n; ++j) {
      RationalVector ej = basis_vector(n, j);
      for (int k = j + 1; k < n; ++k) {
        RationalVector ek = basis_vector(n, k);
        RationalVector sum = bracket(g, ei, bracket(g, ej, ek)) +
                             bracket(g, ej, bracket(g, ek, ei)) +
                             bracket(g, ek, bracket(g, ei, ej));
        if (!is_zero(sum)) {
          out.push_back({Violation::Kind::Jacobi, {i, j, k},
                         "Jacobi identity fails on " + idx({i, j, k})});
        }
      }
    }
  }

  // When the grading is compatible, g^l is contained in span(layers >= l);
  // the layer map encodes the lower central series iff the dimensions agree.
  bool grading_ok = std::none_of(out.begin(), out.end(), [](const Violation& v) {
    return v.kind == Violation::Kind::Grading || v.kind == Violation::Kind::Layers;
  });
  if (grading_ok) {
    std::vector<RationalVector> current;
    for (int i = 0; i < n; ++i) current.push_back(basis_vector(n, i));
    for (int l = 1; l <= s; ++l) {
      int expected = static_cast<int>(std::count_if(g.layers().begin(), g.layers().end(),
                                                    [l](int x) { return x >= l; }));
      current = echelon(std::move(current));
      int actual = static_cast<int>(current.size());
      if (actual != expected) {
        out.push_back({Violation::Kind::LowerCentralSeries, {l},
                       "dim g^" + std::to_string(l) + " = " + std::to_string(actual) +
                           " but layers >= " + std::to_string(l) + " span " +
                           std::to_string(expected)});
        break;
      }
      std::vector<RationalVector> next;
      for (int i = 0; i < n; ++i) {
        RationalVector ei = basis_vector(n, i);
        for (const auto& v : current) {
          RationalVector b = bracket(g, ei, v);
          if (!is_zero(b)) next.push_back(std::move(b));
        }
      }
      current = std::move(next);
    }
  }
  return out;
}

}  // namespace nilpet
