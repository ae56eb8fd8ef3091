#include "nilpet/pet.hpp"

#include <algorithm>
#include <set>

namespace nilpet {

bool weight_less(const Weight& a, const Weight& b) {
  return a.c > b.c || (a.c == b.c && a.d < b.d);
}

Weight weight(const PolyMap& phi) {
  LeadingTerm lt = leading_term(phi);
  return {lt.internal_class, lt.leading_degree};
}

bool lt_equivalent(const PolyMap& phi, const PolyMap& psi) {
  if (!same_algebra(phi.algebra(), psi.algebra())) throw AlgebraMismatch();
  if (phi.vars() != psi.vars()) throw ArityMismatch("maps are defined on different variable lists");
  return leading_term(phi) == leading_term(psi);
}

FamilyAnalysis analyze_family(const PolyFamily& family, std::span<const std::uint64_t> multiplicity) {
  if (!multiplicity.empty() && multiplicity.size() != family.size())
    throw std::invalid_argument("multiplicity list does not match family size");
  auto copies = [&](int j) -> std::uint64_t {
    return multiplicity.empty() ? 1 : multiplicity[static_cast<std::size_t>(j)];
  };
  FamilyAnalysis out;
  std::vector<LeadingTerm> reps;
  for (int j = 0; j < static_cast<int>(family.size()); ++j) {
    const PolyMap& phi = family[static_cast<std::size_t>(j)];
    if (phi.is_identity()) {
      out.dropped.push_back(j);
      continue;
    }
    LeadingTerm lt = leading_term(phi);
    auto it = std::find(reps.begin(), reps.end(), lt);
    if (it == reps.end()) {
      out.classes.push_back({{lt.internal_class, lt.leading_degree}, {j}, copies(j)});
      reps.push_back(std::move(lt));
    } else {
      auto& cls = out.classes[static_cast<std::size_t>(it - reps.begin())];
      cls.members.push_back(j);
      cls.size += copies(j);
    }
  }
  for (const auto& cls : out.classes) ++out.assignment[cls.weight];
  return out;
}

WeightAssignment weight_assignment(const PolyFamily& family) {
  return analyze_family(family).assignment;
}

namespace {

// Weights present in either map, PET-largest first.
std::vector<Weight> descending_support(const WeightAssignment& f, const WeightAssignment& g) {
  std::set<Weight> all;
  for (const auto& [w, n] : f) all.insert(w);
  for (const auto& [w, n] : g) all.insert(w);
  std::vector<Weight> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), [](const Weight& a, const Weight& b) { return weight_less(b, a); });
  return out;
}

int count_at(const WeightAssignment& f, const Weight& w) {
  auto it = f.find(w);
  return it == f.end() ? 0 : it->second;
}

std::optional<Weight> first_difference(const WeightAssignment& f, const WeightAssignment& g) {
  for (const Weight& w : descending_support(f, g)) {
    if (count_at(f, w) != count_at(g, w)) return w;
  }
  return std::nullopt;
}

std::map<Weight, std::vector<std::uint64_t>> sizes_by_weight(const FamilyAnalysis& a) {
  std::map<Weight, std::vector<std::uint64_t>> out;
  for (const auto& cls : a.classes) out[cls.weight].push_back(cls.size);
  for (auto& [w, sizes] : out) std::sort(sizes.rbegin(), sizes.rend());
  return out;
}

}  // namespace

bool assignment_precedes(const WeightAssignment& f, const WeightAssignment& g) {
  auto w = first_difference(f, g);
  return w && count_at(f, *w) < count_at(g, *w);
}

std::optional<Descent> precedes_certificate(const FamilyAnalysis& f, const FamilyAnalysis& g) {
  if (auto w = first_difference(f.assignment, g.assignment)) {
    if (count_at(f.assignment, *w) < count_at(g.assignment, *w))
      return Descent{Descent::Clause::Assignment, *w};
    return std::nullopt;
  }
  // Equal assignments: class matching.
  auto fs = sizes_by_weight(f);
  auto gs = sizes_by_weight(g);
  std::optional<Weight> strict;
  for (const Weight& w : descending_support(f.assignment, g.assignment)) {
    const auto& a = fs[w];
    const auto& b = gs[w];
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] > b[i]) return std::nullopt;
      if (a[i] < b[i] && !strict) strict = w;
    }
  }
  if (!strict) return std::nullopt;
  return Descent{Descent::Clause::Matching, *strict};
}

std::optional<Descent> family_precedes_certificate(const PolyFamily& f, const PolyFamily& g) {
  return precedes_certificate(analyze_family(f), analyze_family(g));
}

bool family_precedes(const PolyFamily& f, const PolyFamily& g) {
  return family_precedes_certificate(f, g).has_value();
}

int pivot(const PolyFamily& family) {
  int best = -1;
  Weight best_w;
  for (int j = 0; j < static_cast<int>(family.size()); ++j) {
    const PolyMap& phi = family[static_cast<std::size_t>(j)];
    if (phi.is_identity()) continue;
    Weight w = weight(phi);
    if (best < 0 || weight_less(w, best_w)) {
      best = j;
      best_w = w;
    }
  }
  if (best < 0) throw ConstantMapError();
  return best;
}

void check_family(const PolyFamily& family) {
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (!same_algebra(family[j].algebra(), family.front().algebra()))
      throw AlgebraMismatch();
    if (family[j].vars() != family.front().vars())
      throw ArityMismatch("family members are defined on different variable lists");
    if (auto bad = normalization_violation(family[j])) {
      throw std::invalid_argument("member " + std::to_string(j) + " is not the identity at t = 0 (coordinate " +
                                  family[j].algebra()->labels()[static_cast<std::size_t>(*bad)] + ")");
    }
  }
}

PolyFamily derived_family(const PolyFamily& family, int i, const BchTable& table) {
  if (i < 0 || i >= static_cast<int>(family.size()))
    throw std::out_of_range("derived_family: index " + std::to_string(i) + " out of range");
  for (const auto& phi : family) {
    if (phi.vars() != family.front().vars())
      throw ArityMismatch("family members are defined on different variable lists");
  }
  std::vector<std::string> vars = family.front().vars();
  std::string k = "k";
  for (int n = 2; std::find(vars.begin(), vars.end(), k) != vars.end(); ++n) k = "k" + std::to_string(n);
  vars.push_back(k);
  const MultiPoly t_var = MultiPoly::variable(0);
  const MultiPoly k_var = MultiPoly::variable(static_cast<int>(vars.size()) - 1);
  const std::vector<MultiPoly> shift_t = {t_var + k_var};
  const std::vector<MultiPoly> at_k = {k_var};

  auto on = [&](const PolyMap& phi, std::span<const MultiPoly> images) {
    PolyVector c(phi.coords().size());
    for (int n = 0; n < c.size(); ++n) c[n] = images.empty() ? phi.coord(n) : phi.coord(n).compose(images);
    return PolyMap(phi.algebra(), vars, std::move(c));
  };

  const PolyMap inv_i = pointwise_inverse(on(family[static_cast<std::size_t>(i)], {}));
  PolyFamily out;
  for (int j = 0; j < static_cast<int>(family.size()); ++j) {
    if (j == i) continue;
    out.push_back(pointwise_product(on(family[static_cast<std::size_t>(j)], {}), inv_i, table));
  }
  for (const auto& phi : family) {
    PolyMap a = pointwise_inverse(on(phi, at_k));
    PolyMap b = on(phi, shift_t);
    out.push_back(pointwise_product(pointwise_product(a, b, table), inv_i, table));
  }
  return out;
}

std::string to_string(PetTrace::Status status) {
  switch (status) {
    case PetTrace::Status::Complete: return "complete";
    case PetTrace::Status::Truncated: return "truncated";
    case PetTrace::Status::DescentViolation: return "descent_violation";
  }
  return "unknown";
}

void MapMultiset::add(PolyMap phi, std::uint64_t count) {
  if (count == 0) return;
  for (std::size_t u = 0; u < maps.size(); ++u) {
    if (maps[u] == phi) {
      if (__builtin_add_overflow(multiplicity[u], count, &multiplicity[u]))
        throw std::overflow_error("multiplicity overflow");
      return;
    }
  }
  maps.push_back(std::move(phi));
  multiplicity.push_back(count);
}

std::uint64_t MapMultiset::total() const {
  std::uint64_t n = 0;
  for (auto m : multiplicity) {
    if (__builtin_add_overflow(n, m, &n)) throw std::overflow_error("multiplicity overflow");
  }
  return n;
}

PolyFamily MapMultiset::expand() const {
  PolyFamily out;
  for (std::size_t u = 0; u < maps.size(); ++u)
    out.insert(out.end(), static_cast<std::size_t>(multiplicity[u]), maps[u]);
  return out;
}

namespace {

// Derived tuple of a multiset at distinct map `p`, with its count of
// constant maps.
std::pair<MapMultiset, std::uint64_t> derive(const MapMultiset& f, int p, const BchTable& table) {
  PolyFamily d = derived_family(f.maps, p, table);
  const std::size_t n = f.maps.size();
  MapMultiset out;
  std::uint64_t constants = 0;
  auto put = [&](PolyMap phi, std::uint64_t count) {
    if (phi.is_identity()) {
      if (__builtin_add_overflow(constants, count, &constants))
        throw std::overflow_error("multiplicity overflow");
    } else {
      out.add(std::move(phi), count);
    }
  };
  // first kind: n - 1 maps for u != p, plus m_p - 1 copies of the identity
  std::size_t idx = 0;
  for (std::size_t u = 0; u < n; ++u) {
    if (static_cast<int>(u) == p) continue;
    put(d[idx++], f.multiplicity[u]);
  }
  put(PolyMap::identity(d.front().algebra(), d.front().vars()), f.multiplicity[static_cast<std::size_t>(p)] - 1);
  for (std::size_t u = 0; u < n; ++u) put(d[idx++], f.multiplicity[u]);
  return {std::move(out), constants};
}

}  // namespace

PetTrace pet_trace(const PolyFamily& family, const PetOptions& options, const BchTable& table) {
  check_family(family);
  PetTrace trace;
  MapMultiset current;
  for (const auto& phi : family) {
    if (phi.is_identity()) ++trace.initial_dropped;
    else current.add(phi, 1);
  }
  try {
    while (current.total() > 1) {
      if (trace.depth() >= options.max_depth) {
        trace.status = PetTrace::Status::Truncated;
        trace.message = "max_depth " + std::to_string(options.max_depth) + " reached with " +
                        std::to_string(current.total()) + " maps remaining";
        break;
      }
      PetStep step;
      FamilyAnalysis here = analyze_family(current.maps, current.multiplicity);
      step.classes = here.classes;
      step.assignment = here.assignment;
      step.pivot = pivot(current.maps);
      auto [derived, constants] = derive(current, step.pivot, table);
      FamilyAnalysis next = analyze_family(derived.maps, derived.multiplicity);
      step.derived_dropped = constants;
      auto cert = precedes_certificate(next, here);
      step.family = std::move(current);
      step.derived = derived;
      if (!cert) {
        trace.status = PetTrace::Status::DescentViolation;
        trace.message = "derived family at depth " + std::to_string(trace.depth()) +
                        " does not precede its parent";
        trace.steps.push_back(std::move(step));
        return trace;
      }
      step.certificate = *cert;
      trace.steps.push_back(std::move(step));
      current = std::move(derived);
      if (current.maps.size() > options.max_family_size) {
        trace.status = PetTrace::Status::Truncated;
        trace.message = std::to_string(current.maps.size()) + " distinct maps exceed max_family_size " +
                        std::to_string(options.max_family_size);
        break;
      }
    }
  } catch (const std::overflow_error&) {
    trace.status = PetTrace::Status::Truncated;
    trace.message = "tuple size overflowed 64-bit counters";
  }
  trace.final_family = current;
  return trace;
}

}  // namespace nilpet
