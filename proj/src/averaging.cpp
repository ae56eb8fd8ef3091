#include "nilpet/averaging.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace nilpet {

namespace {

// Per-output sums over draws, reduced block by block in block order so the
// result does not depend on the thread count.
struct Moments {
  std::vector<double> sum, sum_sq;
  std::size_t n = 0;

  explicit Moments(std::size_t outputs = 0) : sum(outputs, 0.0), sum_sq(outputs, 0.0) {}

  Estimate estimate(std::size_t i) const {
    const double m = sum[i] / static_cast<double>(n);
    double var = 0;
    if (n > 1) var = std::max(0.0, (sum_sq[i] - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
    return {m, std::sqrt(var / static_cast<double>(n))};
  }
};

// kernel(rng, out) evaluates one draw and writes `outputs` values.
template <class Kernel>
Moments monte_carlo(std::size_t outputs, const AverageOptions& options, const Kernel& kernel) {
  if (options.n_samples == 0) throw std::invalid_argument("n_samples must be positive");
  if (options.block_size == 0) throw std::invalid_argument("block_size must be positive");
  const std::size_t blocks = (options.n_samples + options.block_size - 1) / options.block_size;
  std::vector<Moments> per_block(blocks, Moments(outputs));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<double> out(outputs);
    for (std::size_t b = next++; b < blocks; b = next++) {
      std::mt19937_64 rng(options.seed + b);
      const std::size_t begin = b * options.block_size;
      const std::size_t end = std::min(options.n_samples, begin + options.block_size);
      Moments& m = per_block[b];
      for (std::size_t s = begin; s < end; ++s) {
        kernel(rng, out);
        for (std::size_t i = 0; i < outputs; ++i) {
          m.sum[i] += out[i];
          m.sum_sq[i] += out[i] * out[i];
        }
      }
      m.n = end - begin;
    }
  };
  int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp<int>(threads, 1, static_cast<int>(blocks));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  Moments total(outputs);
  for (const auto& m : per_block) {
    for (std::size_t i = 0; i < outputs; ++i) {
      total.sum[i] += m.sum[i];
      total.sum_sq[i] += m.sum_sq[i];
    }
    total.n += m.n;
  }
  return total;
}

std::size_t steps_for(const Rational& T, const Rational& dt) {
  if (dt <= 0) throw std::invalid_argument("dt must be positive");
  if (T <= 0) throw std::invalid_argument("horizon T must be positive");
  Rational q = T / dt;
  if (denominator(q) != 1) throw std::invalid_argument("dt must divide T = " + to_string(T));
  return numerator(q).convert_to<std::size_t>();
}

void check_setup(const JoiningSpec& joining, const PolyFamily& family, const RationalVector& h,
                 const std::vector<TestFunction>& fns) {
  const int k = joining.k();
  if (k < 0) throw std::invalid_argument("joining has no systems");
  if (static_cast<int>(family.size()) != k)
    throw ArityMismatch("family has " + std::to_string(family.size()) + " maps for " + std::to_string(k) +
                        " moving factors");
  if (static_cast<int>(fns.size()) != k + 1)
    throw ArityMismatch("expected " + std::to_string(k + 1) + " test functions, got " + std::to_string(fns.size()));
  for (int i = 0; i <= k; ++i) check_function(joining.systems[static_cast<std::size_t>(i)], fns[static_cast<std::size_t>(i)]);
  for (int i = 0; i < k; ++i) {
    const PolyMap& phi = family[static_cast<std::size_t>(i)];
    if (!same_algebra(phi.algebra(), joining.systems[static_cast<std::size_t>(i) + 1].acting_algebra()))
      throw AlgebraMismatch();
    if (phi.num_vars() != h.size() + 1)
      throw ArityMismatch("map " + std::to_string(i + 1) + " takes " + std::to_string(phi.num_vars() - 1) +
                          " parameters, got " + std::to_string(h.size()));
  }
  if (joining.kind == JoiningSpec::Kind::Diagonal) {
    for (const auto& s : joining.systems) {
      if (!s.same_manifold(joining.systems.front()))
        throw std::invalid_argument("diagonal joining needs identical component systems");
    }
  }
  if (joining.kind == JoiningSpec::Kind::Graph && joining.graph.size() != joining.systems.size())
    throw ArityMismatch("graph joining needs one group element per system");
}

// Draws (x_0, ..., x_k) from the joining.
class Sampler {
 public:
  explicit Sampler(const JoiningSpec& joining) : joining_(joining) {
    if (joining.kind == JoiningSpec::Kind::Graph) {
      for (std::size_t i = 0; i < joining.systems.size(); ++i) push_.push_back(prepare(joining.systems[i], joining.graph[i]));
    }
  }

  void draw(std::mt19937_64& rng, std::vector<NilPoint>& x) const {
    const auto& sys = joining_.systems;
    x.resize(sys.size());
    if (joining_.kind == JoiningSpec::Kind::Product) {
      for (std::size_t i = 0; i < sys.size(); ++i) x[i] = sample_haar(sys[i], rng);
      return;
    }
    NilPoint base = sample_haar(sys.front(), rng);
    for (std::size_t i = 0; i < sys.size(); ++i)
      x[i] = joining_.kind == JoiningSpec::Kind::Graph ? apply(sys[i], push_[i], base) : base;
  }

 private:
  const JoiningSpec& joining_;
  std::vector<Translation> push_;
};

std::vector<Rational> midpoints(const Rational& dt, std::size_t steps) {
  std::vector<Rational> t(steps);
  for (std::size_t j = 0; j < steps; ++j) t[j] = (Rational(static_cast<long long>(j)) + Rational(1, 2)) * dt;
  return t;
}

std::vector<Rational> with_time(const Rational& t, const RationalVector& h) {
  std::vector<Rational> p;
  p.reserve(static_cast<std::size_t>(h.size()) + 1);
  p.push_back(t);
  for (int i = 0; i < h.size(); ++i) p.push_back(h[i]);
  return p;
}

// translations[i][j] for factor i + 1 at grid time j, as left * phi_i(t_j) * right.
std::vector<std::vector<Translation>> flow_plan(const JoiningSpec& joining, const PolyFamily& family,
                                                const RationalVector& h, const std::vector<Rational>& times,
                                                const std::vector<GroupElement>* left = nullptr,
                                                const std::vector<GroupElement>* right = nullptr) {
  std::vector<std::vector<Translation>> plan(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    const NilSystem& sys = joining.systems[i + 1];
    plan[i].reserve(times.size());
    for (const Rational& t : times) {
      auto p = with_time(t, h);
      GroupElement g = eval(family[i], p);
      if (left) g = bch_product((*left)[i + 1], g);
      if (right) g = bch_product(g, (*right)[i + 1]);
      plan[i].push_back(prepare(sys, g));
    }
  }
  return plan;
}

std::vector<std::size_t> checkpoints(const std::vector<Rational>& T_grid, const Rational& dt) {
  if (T_grid.empty()) throw std::invalid_argument("empty T grid");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    if (i > 0 && T_grid[i] <= T_grid[i - 1]) throw std::invalid_argument("T grid must be strictly increasing");
    out.push_back(steps_for(T_grid[i], dt));
  }
  return out;
}

// Running time average of prod_i f_i(plan[i][j] x_i), written at each checkpoint.
void time_averages(const JoiningSpec& joining, const std::vector<TestFunction>& fns,
                   const std::vector<std::vector<Translation>>& plan, const std::vector<NilPoint>& x,
                   const std::vector<std::size_t>& stops, double* out) {
  const std::size_t k = plan.size();
  double acc = 0;
  std::size_t next = 0;
  const std::size_t steps = stops.back();
  for (std::size_t j = 0; j < steps; ++j) {
    double v = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const TestFunction& f = fns[i + 1];
      if (f.is_constant_one()) continue;
      v *= eval_fn(f, apply(joining.systems[i + 1], plan[i][j], x[i + 1]));
    }
    acc += v;
    while (next < stops.size() && stops[next] == j + 1) out[next++] = acc / static_cast<double>(j + 1);
  }
}

}  // namespace

double cauchy_gap(std::span<const double> estimates) {
  const std::size_t n = estimates.size();
  if (n < 2) return 0.0;
  const std::size_t m = std::min(n, std::max<std::size_t>(2, (n + 3) / 4));
  auto tail = estimates.subspan(n - m);
  auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  return *hi - *lo;
}

AverageReport convergence_scan(const JoiningSpec& joining, const PolyFamily& family, const RationalVector& h,
                               const std::vector<TestFunction>& fns, const std::vector<Rational>& T_grid,
                               const AverageOptions& options) {
  check_setup(joining, family, h, fns);
  const auto stops = checkpoints(T_grid, options.dt);
  const auto plan = flow_plan(joining, family, h, midpoints(options.dt, stops.back()));
  const Sampler sampler(joining);
  const std::size_t m = stops.size();
  Moments mom = monte_carlo(m, options, [&](std::mt19937_64& rng, std::span<double> out) {
    thread_local std::vector<NilPoint> x;
    sampler.draw(rng, x);
    time_averages(joining, fns, plan, x, stops, out.data());
    const double f0 = eval_fn(fns.front(), x.front());
    for (double& v : out) v *= f0;
  });
  AverageReport r;
  r.dt = to_double(options.dt);
  r.n_samples = options.n_samples;
  r.seed = options.seed;
  for (std::size_t i = 0; i < m; ++i) {
    Estimate e = mom.estimate(i);
    r.T.push_back(to_double(T_grid[i]));
    r.estimates.push_back(e.value);
    r.std_errors.push_back(e.std_error);
  }
  r.cauchy_gap = cauchy_gap(r.estimates);
  return r;
}

Estimate joining_average(const JoiningSpec& joining, const PolyFamily& family, const RationalVector& h,
                         const std::vector<TestFunction>& fns, const Rational& T, const AverageOptions& options) {
  AverageReport r = convergence_scan(joining, family, h, fns, {T}, options);
  return {r.estimates[0], r.std_errors[0]};
}

std::vector<Estimate> invariance_check(const JoiningSpec& joining, const PolyFamily& family,
                                       const RationalVector& h, const std::vector<TestFunction>& fns,
                                       const Rational& T, const std::vector<std::vector<GroupElement>>& tuples,
                                       const AverageOptions& options) {
  check_setup(joining, family, h, fns);
  const std::vector<std::size_t> stops = {steps_for(T, options.dt)};
  const auto times = midpoints(options.dt, stops.back());
  const auto plain = flow_plan(joining, family, h, times);

  struct Moved {
    std::vector<std::vector<Translation>> plan;
    Translation first;
  };
  std::vector<Moved> moved;
  for (const auto& g : tuples) {
    if (g.size() != joining.systems.size())
      throw ArityMismatch("tuple has " + std::to_string(g.size()) + " elements for " +
                          std::to_string(joining.systems.size()) + " systems");
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!same_algebra(g[i].algebra(), joining.systems[i].acting_algebra())) throw AlgebraMismatch();
    }
    std::vector<GroupElement> right;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& alg = joining.systems[i].acting_algebra();
      if (joining.diagonal_invariant() && same_algebra(alg, g[0].algebra()))
        right.push_back(group_inverse(g[0]));
      else
        right.push_back(GroupElement::zero(alg));
    }
    Moved mv;
    mv.plan = flow_plan(joining, family, h, times, &g, &right);
    mv.first = prepare(joining.systems[0], bch_product(g[0], right[0]));
    moved.push_back(std::move(mv));
  }

  const Sampler sampler(joining);
  Moments mom = monte_carlo(tuples.size(), options, [&](std::mt19937_64& rng, std::span<double> out) {
    thread_local std::vector<NilPoint> x;
    sampler.draw(rng, x);
    double base = 0, shifted = 0;
    time_averages(joining, fns, plain, x, stops, &base);
    base *= eval_fn(fns.front(), x.front());
    for (std::size_t u = 0; u < moved.size(); ++u) {
      time_averages(joining, fns, moved[u].plan, x, stops, &shifted);
      shifted *= eval_fn(fns.front(), apply(joining.systems[0], moved[u].first, x.front()));
      out[u] = shifted - base;
    }
  });
  std::vector<Estimate> out;
  for (std::size_t u = 0; u < tuples.size(); ++u) {
    Estimate e = mom.estimate(u);
    out.push_back({std::abs(e.value), e.std_error});
  }
  return out;
}

VdcResult vdc_check(std::span<const double> a, double step, double S, double T) {
  if (step <= 0 || S <= 0 || T <= 0) throw std::invalid_argument("step, S and T must be positive");
  auto count = [&](double L, const char* what) {
    double q = L / step;
    auto n = static_cast<std::size_t>(std::llround(q));
    if (std::abs(q - static_cast<double>(n)) > 1e-9 * std::max(1.0, q))
      throw std::invalid_argument(std::string(what) + " is not a multiple of the grid step");
    return n;
  };
  const std::size_t nT = count(T, "T"), nS = count(S, "S");
  if (a.size() < nT + nS + 1)
    throw std::invalid_argument("trajectory covers " + std::to_string(a.size()) + " grid points, need " +
                                std::to_string(nT + nS + 1));
  // running trapezoid integral A(j step)
  std::vector<double> A(nT + nS + 1, 0.0);
  for (std::size_t j = 1; j < A.size(); ++j) A[j] = A[j - 1] + 0.5 * step * (a[j - 1] + a[j]);
  VdcResult r;
  r.lhs_norm = std::abs(A[nT]) / T;
  double corr = 0;
  for (std::size_t j = 0; j <= nT; ++j) {
    const double w = (j == 0 || j == nT) ? 0.5 : 1.0;
    corr += w * a[j] * (A[j + nS] - A[j]);
  }
  r.rhs_corr = corr * step / (S * T);
  return r;
}

std::vector<double> orbit_trajectory(const NilSystem& sys, const PolyMap& phi, const RationalVector& h,
                                     const TestFunction& f, const NilPoint& x0, const Rational& step,
                                     std::size_t count) {
  check_function(sys, f);
  if (!same_algebra(phi.algebra(), sys.acting_algebra())) throw AlgebraMismatch();
  if (phi.num_vars() != h.size() + 1) throw ArityMismatch("parameter vector does not match the map");
  std::vector<double> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    auto p = with_time(Rational(static_cast<long long>(j)) * step, h);
    out[j] = eval_fn(f, apply(sys, prepare(sys, eval(phi, p)), x0));
  }
  return out;
}

MeanErgodicReport mean_ergodic_base(const NilSystem& sys, const PolyMap& phi, const RationalVector& h,
                                    const TestFunction& f, const std::vector<Rational>& T_grid,
                                    const AverageOptions& options, double tolerance) {
  JoiningSpec single{JoiningSpec::Kind::Diagonal, {sys, sys}, {}};
  std::vector<TestFunction> fns = {TestFunction{}, f};
  PolyFamily family = {phi};
  check_setup(single, family, h, fns);
  const auto stops = checkpoints(T_grid, options.dt);
  const auto plan = flow_plan(single, family, h, midpoints(options.dt, stops.back()));
  const std::size_t m = stops.size();
  Moments mom = monte_carlo(2 * m, options, [&](std::mt19937_64& rng, std::span<double> out) {
    thread_local std::vector<NilPoint> x;
    x.assign(2, sample_haar(sys, rng));
    time_averages(single, fns, plan, x, stops, out.data());
    const double fx = eval_fn(f, x[1]);
    for (std::size_t i = 0; i < m; ++i) {
      const double avg = out[i];
      out[i] = avg * avg;
      out[m + i] = (avg - fx) * (avg - fx);
    }
  });
  auto root = [](Estimate e) {
    // delta method for the square root of a mean
    const double r = std::sqrt(std::max(0.0, e.value));
    const double se = r > 0 ? e.std_error / (2 * r) : std::sqrt(e.std_error);
    return Estimate{r, se};
  };
  MeanErgodicReport rep;
  rep.norms.dt = to_double(options.dt);
  rep.norms.n_samples = options.n_samples;
  rep.norms.seed = options.seed;
  for (std::size_t i = 0; i < m; ++i) {
    Estimate norm = root(mom.estimate(i)), dist = root(mom.estimate(m + i));
    rep.norms.T.push_back(to_double(T_grid[i]));
    rep.norms.estimates.push_back(norm.value);
    rep.norms.std_errors.push_back(norm.std_error);
    rep.distance_to_f.push_back(dist.value);
    rep.distance_std_errors.push_back(dist.std_error);
  }
  rep.norms.cauchy_gap = cauchy_gap(rep.norms.estimates);
  if (rep.norms.estimates.back() <= tolerance)
    rep.limit = MeanErgodicReport::Limit::Vanishing;
  else if (rep.distance_to_f.back() <= tolerance)
    rep.limit = MeanErgodicReport::Limit::Invariant;
  return rep;
}

std::string to_string(JoiningSpec::Kind kind) {
  switch (kind) {
    case JoiningSpec::Kind::Diagonal: return "diagonal";
    case JoiningSpec::Kind::Product: return "product";
    case JoiningSpec::Kind::Graph: return "graph";
  }
  return "unknown";
}

std::string to_string(MeanErgodicReport::Limit limit) {
  switch (limit) {
    case MeanErgodicReport::Limit::Vanishing: return "vanishing";
    case MeanErgodicReport::Limit::Invariant: return "invariant";
    case MeanErgodicReport::Limit::Undetermined: return "undetermined";
  }
  return "unknown";
}

}  // namespace nilpet
