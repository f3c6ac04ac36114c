#include "etk/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "etk/optimize.hpp"

namespace etk {

namespace {

constexpr double kDegenerate = 1e-12;

int thread_count(int requested, int tasks) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ENTROPY_TOOLKIT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::clamp(n, 1, std::max(1, tasks));
}

struct Evaluation {
  double value = 0;
  std::optional<CrossSectionPoint> point;
};

// Cross-section point of h when it violates the frame's inequality.
std::optional<CrossSectionPoint> point_of(const SetFunction& h, const IngletonFrame& fr) {
  const double top = h.rank();
  if (top <= kDegenerate || ingleton_value(h, fr) >= -kDegenerate * top) return std::nullopt;
  try {
    return cross_section_point(h, fr).point;
  } catch (const DegeneratePoint&) {
    return std::nullopt;
  }
}

Evaluation evaluate(const SetFunction& h, const IngletonFrame& fr, Objective objective,
                    const Eigen::Vector3d& direction, bool want_point) {
  Evaluation e;
  const double top = h.rank();
  if (top <= kDegenerate) return e;
  const double stv = ingleton_value(h, fr);
  switch (objective) {
    case Objective::raw_score:
      e.value = stv / top;
      break;
    case Objective::tight_score: {
      const double t = tight_part(h).rank();
      e.value = t <= kDegenerate ? 0.0 : stv / t;
      break;
    }
    case Objective::pipeline_score: {
      if (stv >= 0) {
        e.value = stv / top;
        break;
      }
      const auto g = a_map(b_map(tight_part(h), fr), fr);
      e.value = g.rank() <= kDegenerate ? 0.0 : ingleton_value(g, fr) / g.rank();
      break;
    }
    case Objective::alpha_in_direction: {
      e.point = point_of(h, fr);
      if (!e.point) {
        e.value = std::max(0.0, stv / top);
      } else {
        // Shifted so that every violating point scores below every other one.
        const auto& w = *e.point;
        const double gain = w.alpha_w + direction.dot(Eigen::Vector3d(w.beta_w, w.gamma_w, w.delta_w));
        e.value = -gain - (1.0 + direction.norm());
      }
      return e;
    }
  }
  if (want_point) e.point = point_of(h, fr);
  return e;
}

std::vector<double> softmax(const Eigen::VectorXd& x) {
  const double top = x.maxCoeff();
  std::vector<double> p(x.size());
  double sum = 0;
  for (Eigen::Index c = 0; c < x.size(); ++c) sum += p[c] = std::exp(x[c] - top);
  for (double& v : p) v /= sum;
  return p;
}

struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> cells;
  long evals = 0;
  bool exhausted = false;
  std::vector<CrossSectionPoint> points;
};

RestartOutcome run_restart(const SearchConfig& cfg, const IngletonFrame& fr, std::uint64_t seed,
                           int index, bool record) {
  const GroundSet ground = GroundSet::ijkl();
  const std::span<const int> sizes(cfg.alphabet_sizes);
  long cells = 1;
  for (int a : cfg.alphabet_sizes) cells *= a;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd x(cells);
  if (cfg.initial) {
    const auto p = cfg.initial->to_cells();
    for (long c = 0; c < cells; ++c) x[c] = std::log(std::max(p[c], 1e-12));
    if (index > 0) {
      for (long c = 0; c < cells; ++c) x[c] += 0.5 * cfg.initial_step * normal(rng);
    }
  } else {
    for (long c = 0; c < cells; ++c) x[c] = cfg.initial_step * normal(rng);
  }

  RestartOutcome out;
  auto f = [&](const Eigen::VectorXd& logits) {
    const auto p = softmax(logits);
    const auto h = entropy_from_cells(ground, sizes, p);
    auto e = evaluate(h, fr, cfg.objective, cfg.direction, record);
    if (record && e.point) out.points.push_back(*e.point);
    if (e.value < out.value) {
      out.value = e.value;
      out.cells = p;
    }
    return e.value;
  };

  NelderMeadOptions opt;
  opt.initial_step = cfg.initial_step;
  // Restart the simplex around the incumbent until a pass stops improving.
  double previous = std::numeric_limits<double>::infinity();
  while (out.evals < cfg.budget_evals) {
    opt.max_evals = cfg.budget_evals - out.evals;
    const auto r = nelder_mead(f, x, opt);
    out.evals += r.evals;
    if (r.budget_exhausted) {
      out.exhausted = true;
      break;
    }
    if (!(r.value < previous - 1e-12)) break;
    previous = r.value;
    x = r.x;
  }
  return out;
}

struct SearchRun {
  SearchResult result;
  std::vector<RestartOutcome> outcomes;
};

SearchRun run_search(const SearchConfig& cfg, const IngletonFrame& fr, bool record) {
  cfg.validate();
  SearchRun run;
  run.outcomes.resize(cfg.restarts);
  std::vector<std::uint64_t> seeds(cfg.restarts);
  for (int r = 0; r < cfg.restarts; ++r) seeds[r] = restart_seed(cfg.master_seed, r);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int r = next++; r < cfg.restarts; r = next++) {
      try {
        run.outcomes[r] = run_restart(cfg, fr, seeds[r], r, record);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n = thread_count(cfg.threads, cfg.restarts);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  auto& res = run.result;
  res.seed_trace = seeds;
  int best = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    const auto& o = run.outcomes[r];
    res.eval_count += o.evals;
    res.budget_exhausted = res.budget_exhausted || o.exhausted;
    res.restart_values.push_back(o.value);
    if (o.value < run.outcomes[best].value) best = r;  // ties keep the lower index
  }
  res.best_restart = best;
  std::vector<int> sizes(cfg.alphabet_sizes.begin(), cfg.alphabet_sizes.end());
  res.best_distribution = JointDistribution::from_cells(GroundSet::ijkl(), sizes, run.outcomes[best].cells);
  const auto h = entropy_function(res.best_distribution);
  res.best_value = evaluate(h, fr, cfg.objective, cfg.direction, false).value;
  res.best_point = point_of(h, fr);
  return run;
}

}  // namespace

std::string to_string(Objective o) {
  switch (o) {
    case Objective::raw_score: return "raw_score";
    case Objective::tight_score: return "tight_score";
    case Objective::pipeline_score: return "pipeline_score";
    case Objective::alpha_in_direction: return "alpha_in_direction";
  }
  return "?";
}

Objective objective_from_string(const std::string& name) {
  for (auto o : {Objective::raw_score, Objective::tight_score, Objective::pipeline_score,
                 Objective::alpha_in_direction}) {
    if (to_string(o) == name) return o;
  }
  throw std::invalid_argument("unknown objective '" + name + "'");
}

void SearchConfig::validate() const {
  bool informative = false;
  double cells = 1;
  for (int a : alphabet_sizes) {
    if (a < 1 || a > 11) throw std::invalid_argument("alphabet sizes must lie in 1..11");
    informative = informative || a >= 2;
    cells *= a;
  }
  if (!informative) throw std::invalid_argument("at least one alphabet needs two or more symbols");
  if (cells > kMaxCells) throw std::invalid_argument("alphabet product exceeds the cell limit");
  if (restarts < 1) throw std::invalid_argument("restarts must be positive");
  if (budget_evals < 1) throw std::invalid_argument("evaluation budget must be positive");
  if (!(initial_step > 0)) throw std::invalid_argument("initial step must be positive");
  if (!direction.allFinite()) throw std::invalid_argument("direction must be finite");
  if (initial) {
    const auto& s = initial->alphabet_sizes();
    if (!std::equal(s.begin(), s.end(), alphabet_sizes.begin(), alphabet_sizes.end())) {
      throw std::invalid_argument("initial distribution has different alphabet sizes");
    }
  }
}

std::uint64_t restart_seed(std::uint64_t master_seed, std::uint64_t restart_index) {
  // splitmix64 finalizer over a combination of the two inputs.
  std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (restart_index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double evaluate_objective(const SetFunction& h, const IngletonFrame& fr, Objective objective,
                          const Eigen::Vector3d& direction) {
  return evaluate(h, fr, objective, direction, false).value;
}

SearchResult optimize_distribution(const SearchConfig& cfg, const IngletonFrame& fr) {
  return run_search(cfg, fr, false).result;
}

std::vector<std::pair<std::string, JointDistribution>> vertex_distributions(const IngletonFrame& fr) {
  const GroundSet ground = GroundSet::ijkl();
  const std::vector<int> bits{2, 2, 2, 2};
  auto atom = [&](int xi, int xj, int xk, int xl, double prob) {
    Atom a{std::vector<int>(4), prob};
    a.symbols[fr.i()] = xi;
    a.symbols[fr.j()] = xj;
    a.symbols[fr.k()] = xk;
    a.symbols[fr.l()] = xl;
    return a;
  };
  std::vector<std::pair<std::string, JointDistribution>> out;
  // i constant, the rest one shared bit.
  out.emplace_back("vertex-beta", JointDistribution(ground, bits, {atom(0, 0, 0, 0, 0.5), atom(0, 1, 1, 1, 0.5)}));
  // k constant, l the parity of independent i and j.
  std::vector<Atom> parity;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) parity.push_back(atom(a, b, 0, a ^ b, 0.25));
  }
  out.emplace_back("vertex-gamma", JointDistribution(ground, bits, parity));
  // i and k constant, j = l one bit.
  out.emplace_back("vertex-delta", JointDistribution(ground, bits, {atom(0, 0, 0, 0, 0.5), atom(0, 1, 0, 1, 0.5)}));
  return out;
}

std::vector<CrossSectionPoint> generate_cloud(const std::vector<Eigen::Vector3d>& directions,
                                              const SearchConfig& cfg, const IngletonFrame& fr,
                                              bool optima_only) {
  std::vector<CrossSectionPoint> cloud;
  for (const auto& [tag, d] : vertex_distributions(fr)) {
    auto p = cross_section_point(entropy_function(d), fr).point;
    p.source_tag = tag;
    cloud.push_back(std::move(p));
  }
  for (std::size_t n = 0; n < directions.size(); ++n) {
    SearchConfig c = cfg;
    c.objective = Objective::alpha_in_direction;
    c.direction = directions[n];
    c.master_seed = restart_seed(cfg.master_seed ^ 0xc10dULL, n);
    const auto run = run_search(c, fr, !optima_only);
    const std::string tag = "dir" + std::to_string(n);
    if (optima_only) {
      if (run.result.best_point) {
        auto p = *run.result.best_point;
        p.source_tag = tag + "-best";
        cloud.push_back(std::move(p));
      }
      continue;
    }
    for (const auto& o : run.outcomes) {
      for (auto p : o.points) {
        p.source_tag = tag;
        cloud.push_back(std::move(p));
      }
    }
  }
  return cloud;
}

std::vector<Eigen::Vector3d> sample_directions(int count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("direction count must be nonnegative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::Vector3d> out;
  while (static_cast<int>(out.size()) < count) {
    Eigen::Vector3d v(normal(rng), normal(rng), normal(rng));
    const double len = v.norm();
    if (len > 1e-12) out.push_back(v / len);
  }
  return out;
}

}  // namespace etk
