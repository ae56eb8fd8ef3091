#include "nilpet/zariski.hpp"

#include "nilpet/errors.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace nilpet {

std::vector<MultiPoly> t_coefficients(const MultiPoly& p, int t_var) {
  std::vector<MultiPoly> out(static_cast<std::size_t>(p.degree_in(t_var)) + 1);
  const auto t = static_cast<std::size_t>(t_var);
  for (const auto& [e, c] : p.terms()) {
    int power = t < e.size() ? e[t] : 0;
    MultiPoly::Exponent rest = e;
    if (t < rest.size()) rest.erase(rest.begin() + t_var);
    out[static_cast<std::size_t>(power)] += MultiPoly::monomial(std::move(rest), c);
  }
  return out;
}

Variety vanishing_variety(const PolyMap& phi, const RationalVector& functional) {
  if (functional.size() != phi.algebra()->dim())
    throw std::invalid_argument("functional has " + std::to_string(functional.size()) +
                                " coordinates, algebra has dimension " + std::to_string(phi.algebra()->dim()));
  MultiPoly composed;
  for (int i = 0; i < functional.size(); ++i) {
    if (functional[i] != 0) composed += phi.coord(i) * functional[i];
  }
  return {t_coefficients(composed, 0)};
}

bool is_proper(const Variety& v) {
  return std::any_of(v.generators.begin(), v.generators.end(), [](const MultiPoly& p) { return !p.is_zero(); });
}

bool contains(const Variety& v, std::span<const Rational> point) {
  return std::all_of(v.generators.begin(), v.generators.end(),
                     [&](const MultiPoly& p) { return p.evaluate(point) == 0; });
}

bool membership(const MeagreSet& m, std::span<const Rational> point) {
  return std::any_of(m.varieties.begin(), m.varieties.end(),
                     [&](const Variety& v) { return contains(v, point); });
}

Variety restrict_to_line(const Variety& v, const RationalVector& base, const RationalVector& direction) {
  if (base.size() != direction.size()) throw std::invalid_argument("line base and direction differ in size");
  const MultiPoly s = MultiPoly::variable(0);
  std::vector<MultiPoly> images;
  for (int i = 0; i < base.size(); ++i) images.push_back(MultiPoly(base[i]) + s * direction[i]);
  Variety out;
  for (const auto& p : v.generators) {
    if (p.arity() > base.size()) throw ArityMismatch("generator uses more variables than the line provides");
    out.generators.push_back(p.compose(images));
  }
  return out;
}

namespace {

// Uniform integer in [-bound, bound] by rejection, independent of the
// standard library's distribution implementation.
std::int64_t draw(std::mt19937_64& rng, std::int64_t bound) {
  const std::uint64_t n = 2 * static_cast<std::uint64_t>(bound) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return static_cast<std::int64_t>(x % n) - bound;
}

}  // namespace

RationalVector generic_sample(const MeagreSet& m, int dim, std::uint64_t seed, const SampleOptions& options) {
  if (dim < 0) throw std::invalid_argument("negative sampling dimension");
  if (options.initial_box < 1) throw std::invalid_argument("initial sampling box must be at least 1");
  for (std::size_t i = 0; i < m.varieties.size(); ++i) {
    if (!is_proper(m.varieties[i]))
      throw std::invalid_argument("variety " + std::to_string(i) + " is not proper");
    for (const auto& p : m.varieties[i].generators) {
      if (p.arity() > dim) throw ArityMismatch("generator uses more variables than the sampling dimension");
    }
  }
  std::mt19937_64 rng(seed);
  std::int64_t bound = options.initial_box;
  RationalVector point(dim);
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    for (int i = 0; i < dim; ++i) point[i] = Rational(draw(rng, bound));
    std::span<const Rational> view(point.data(), static_cast<std::size_t>(dim));
    if (!membership(m, view)) return point;
    if (bound <= std::numeric_limits<std::int64_t>::max() / 4) bound *= 2;
  }
  throw SamplingExhausted("no generic point found in " + std::to_string(options.max_attempts) + " attempts");
}

std::string to_string(const Variety& v, std::span<const std::string> names) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.generators.size(); ++i) {
    if (i) out += ", ";
    out += v.generators[i].to_string(names);
  }
  return out + "]";
}

}  // namespace nilpet
