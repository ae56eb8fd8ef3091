#include "nilpet/lie_algebra.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace nilpet {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw UnsupportedSize(what);
}

// Noncommutative polynomials keyed by words; used only to build the free
// nilpotent structure constants.
using Word = std::vector<int>;
using NcPoly = std::map<Word, Rational>;

void add_to(NcPoly& acc, const NcPoly& p, const Rational& scale) {
  for (const auto& [w, c] : p) {
    Rational& slot = acc[w];
    slot += scale * c;
    if (slot == 0) acc.erase(w);
  }
}

NcPoly nc_product(const NcPoly& a, const NcPoly& b) {
  NcPoly out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      Rational& slot = out[w];
      slot += ca * cb;
      if (slot == 0) out.erase(w);
    }
  }
  return out;
}

NcPoly nc_commutator(const NcPoly& a, const NcPoly& b) {
  NcPoly out = nc_product(a, b);
  add_to(out, nc_product(b, a), Rational(-1));
  return out;
}

bool is_lyndon(const Word& w) {
  // Strictly smaller than each proper rotation.
  const std::size_t n = w.size();
  for (std::size_t r = 1; r < n; ++r) {
    Word rot(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
    if (!(w < rot)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::vector<int>> lyndon_words(int letters, int max_length) {
  std::vector<Word> out;
  for (int len = 1; len <= max_length; ++len) {
    Word w(static_cast<std::size_t>(len), 0);
    while (true) {
      if (is_lyndon(w)) out.push_back(w);
      int pos = len - 1;
      while (pos >= 0 && w[static_cast<std::size_t>(pos)] == letters - 1) {
        w[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++w[static_cast<std::size_t>(pos)];
    }
  }
  return out;
}

AlgebraPtr abelian(int d, const BuiltinLimits& limits) {
  require(d >= 1 && d <= limits.max_dim, "abelian dimension out of range");
  std::vector<std::string> labels;
  for (int i = 0; i < d; ++i) labels.push_back("e" + std::to_string(i + 1));
  return std::make_shared<const LieAlgebra>(labels, std::vector<int>(static_cast<std::size_t>(d), 1),
                                            1, std::vector<LieAlgebra::Entry>{});
}

AlgebraPtr heisenberg(int dim, const BuiltinLimits& limits) {
  require(dim >= 3 && dim % 2 == 1 && dim <= limits.max_dim,
          "heisenberg dimension must be odd and >= 3");
  const int m = (dim - 1) / 2;
  std::vector<std::string> labels;
  if (m == 1) {
    labels = {"X", "Y", "Z"};
  } else {
    for (int i = 0; i < m; ++i) labels.push_back("X" + std::to_string(i + 1));
    for (int i = 0; i < m; ++i) labels.push_back("Y" + std::to_string(i + 1));
    labels.push_back("Z");
  }
  std::vector<int> layers(static_cast<std::size_t>(dim), 1);
  layers.back() = 2;
  std::vector<LieAlgebra::Entry> entries;
  for (int i = 0; i < m; ++i) entries.push_back({i, m + i, {{dim - 1, Rational(1)}}});
  return std::make_shared<const LieAlgebra>(labels, layers, 2, entries);
}

AlgebraPtr strictly_upper_triangular(int n, const BuiltinLimits& limits) {
  require(n >= 2 && n <= limits.max_matrix_size, "strictly_upper_triangular size out of range");
  // Basis E_ij (i < j), ordered by layer j - i then by row.
  std::vector<std::pair<int, int>> basis;
  for (int l = 1; l < n; ++l) {
    for (int i = 0; i + l < n; ++i) basis.emplace_back(i, i + l);
  }
  auto index_of = [&](int i, int j) {
    auto it = std::find(basis.begin(), basis.end(), std::make_pair(i, j));
    return static_cast<int>(it - basis.begin());
  };
  std::vector<std::string> labels;
  std::vector<int> layers;
  for (auto [i, j] : basis) {
    labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    layers.push_back(j - i);
  }
  std::vector<LieAlgebra::Entry> entries;
  const int dim = static_cast<int>(basis.size());
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      auto [i, j] = basis[static_cast<std::size_t>(a)];
      auto [k, l] = basis[static_cast<std::size_t>(b)];
      // [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
      std::vector<LieAlgebra::Term> terms;
      if (j == k) terms.push_back({index_of(i, l), Rational(1)});
      if (l == i) terms.push_back({index_of(k, j), Rational(-1)});
      if (!terms.empty()) entries.push_back({a, b, terms});
    }
  }
  return std::make_shared<const LieAlgebra>(labels, layers, n - 1, entries);
}

AlgebraPtr free_nilpotent(int generators, int step, const BuiltinLimits& limits) {
  require(generators >= 1 && generators <= limits.max_generators,
          "free_nilpotent generator count out of range");
  require(step >= 1 && step <= limits.max_step, "free_nilpotent step out of range");
  require(!(generators == 1 && step > 1), "free_nilpotent on one generator is abelian of step 1");

  const std::vector<Word> words = lyndon_words(generators, step);
  std::map<Word, int> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<int>(i);

  // Standard bracketing P(w) = [P(u), P(v)] with v the longest proper Lyndon suffix.
  std::vector<NcPoly> expansion(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    if (w.size() == 1) {
      expansion[i] = NcPoly{{w, Rational(1)}};
      continue;
    }
    for (std::size_t split = 1; split < w.size(); ++split) {
      Word v(w.begin() + static_cast<std::ptrdiff_t>(split), w.end());
      if (index.count(v)) {
        Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(split));
        expansion[i] = nc_commutator(expansion[static_cast<std::size_t>(index.at(u))],
                                     expansion[static_cast<std::size_t>(index.at(v))]);
        break;
      }
    }
  }

  // P(w) = w + (lexicographically larger words), so a Lie polynomial is
  // decomposed by repeatedly peeling off its smallest word.
  auto decompose = [&](NcPoly q) {
    std::vector<LieAlgebra::Term> terms;
    while (!q.empty()) {
      const Word lead = q.begin()->first;
      const Rational c = q.begin()->second;
      auto it = index.find(lead);
      if (it == index.end())
        throw std::logic_error("Lie polynomial with non-Lyndon minimal word");
      terms.push_back({it->second, c});
      add_to(q, expansion[static_cast<std::size_t>(it->second)], Rational(-c));
    }
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.index < b.index; });
    return terms;
  };

  const int dim = static_cast<int>(words.size());
  std::vector<LieAlgebra::Entry> entries;
  for (int a = 0; a < dim; ++a) {
    for (int b = a + 1; b < dim; ++b) {
      const auto& wa = words[static_cast<std::size_t>(a)];
      const auto& wb = words[static_cast<std::size_t>(b)];
      if (static_cast<int>(wa.size() + wb.size()) > step) continue;
      auto terms = decompose(nc_commutator(expansion[static_cast<std::size_t>(a)],
                                           expansion[static_cast<std::size_t>(b)]));
      if (!terms.empty()) entries.push_back({a, b, terms});
    }
  }

  std::vector<std::string> labels;
  std::vector<int> layers;
  const std::string alphabet = "xyzw";
  for (const auto& w : words) {
    std::string label;
    for (int letter : w) label += alphabet[static_cast<std::size_t>(letter)];
    labels.push_back(label);
    layers.push_back(static_cast<int>(w.size()));
  }
  return std::make_shared<const LieAlgebra>(labels, layers, step, entries);
}

AlgebraPtr make_builtin(std::string_view kind, std::span<const int> params,
                        const BuiltinLimits& limits) {
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw std::invalid_argument("builtin '" + std::string(kind) + "' expects " +
                                  std::to_string(n) + " parameter(s)");
  };
  if (kind == "abelian") {
    need(1);
    return abelian(params[0], limits);
  }
  if (kind == "heisenberg") {
    need(1);
    return heisenberg(params[0], limits);
  }
  if (kind == "strictly_upper_triangular" || kind == "upper_triangular") {
    need(1);
    return strictly_upper_triangular(params[0], limits);
  }
  if (kind == "free_nilpotent") {
    need(2);
    return free_nilpotent(params[0], params[1], limits);
  }
  throw std::invalid_argument("unknown builtin algebra '" + std::string(kind) + "'");
}

AlgebraPtr builtin_from_name(std::string_view name, const BuiltinLimits& limits) {
  auto open = name.find('(');
  auto close = name.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    throw std::invalid_argument("malformed algebra name '" + std::string(name) + "'");
  std::string_view kind = name.substr(0, open);
  std::string_view args = name.substr(open + 1, close - open - 1);
  std::vector<int> params;
  while (!args.empty()) {
    while (!args.empty() && (args.front() == ' ' || args.front() == ',')) args.remove_prefix(1);
    if (args.empty()) break;
    int value = 0;
    auto [ptr, ec] = std::from_chars(args.data(), args.data() + args.size(), value);
    if (ec != std::errc())
      throw std::invalid_argument("malformed algebra name '" + std::string(name) + "'");
    args.remove_prefix(static_cast<std::size_t>(ptr - args.data()));
    params.push_back(value);
  }
  return make_builtin(kind, params, limits);
}

}  // namespace nilpet
