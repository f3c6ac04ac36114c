#ifndef ETK_SEARCH_HPP
#define ETK_SEARCH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "etk/entropy.hpp"
#include "etk/four_frame.hpp"

namespace etk {

enum class Objective { raw_score, tight_score, pipeline_score, alpha_in_direction };

std::string to_string(Objective o);
/// Throws std::invalid_argument on an unknown name.
Objective objective_from_string(const std::string& name);

struct SearchConfig {
  std::array<int, 4> alphabet_sizes{4, 4, 4, 4};
  int restarts = 64;
  /// Objective evaluations per restart.
  long budget_evals = 20000;
  std::uint64_t master_seed = 1;
  Objective objective = Objective::raw_score;
  /// Only used by alpha_in_direction.
  Eigen::Vector3d direction = Eigen::Vector3d::Zero();
  /// Start of restart 0; the other restarts start from perturbations of it.
  std::optional<JointDistribution> initial;
  /// Spread of random logit starts and initial simplex edge.
  double initial_step = 1.0;
  /// 0 picks the hardware concurrency, capped by ENTROPY_TOOLKIT_THREADS.
  int threads = 0;

  /// Throws std::invalid_argument on an unusable configuration.
  void validate() const;
};

struct SearchResult {
  double best_value = 0;
  JointDistribution best_distribution;
  /// Present when the best distribution violates the frame's Ingleton inequality.
  std::optional<CrossSectionPoint> best_point;
  long eval_count = 0;
  /// Seed used by each restart, in restart order.
  std::vector<std::uint64_t> seed_trace;
  /// Best objective value reached by each restart.
  std::vector<double> restart_values;
  int best_restart = 0;
  /// Some restart stopped on its budget rather than on convergence.
  bool budget_exhausted = false;
};

/// Deterministic per-restart seed.
std::uint64_t restart_seed(std::uint64_t master_seed, std::uint64_t restart_index);

/// Value minimized by the search for entropy function h. Entropies with
/// h(N) (or the reduced value at N) below 1e-12 score 0.
double evaluate_objective(const SetFunction& h, const IngletonFrame& fr, Objective objective,
                          const Eigen::Vector3d& direction = Eigen::Vector3d::Zero());

/// Restarted Nelder-Mead over softmax logits of the cell probabilities.
SearchResult optimize_distribution(const SearchConfig& cfg, const IngletonFrame& fr);

/// Distributions on the alphabet {2,2,2,2} whose entropy functions reduce to
/// the beta, gamma and delta vertices.
std::vector<std::pair<std::string, JointDistribution>> vertex_distributions(const IngletonFrame& fr);

/// One alpha_in_direction search per direction (the objective in `cfg` is
/// overridden). Emits the cross-section point of every evaluated distribution
/// that violates the frame's Ingleton inequality, or only each search's best
/// point when `optima_only`. The vertex distributions are always included.
std::vector<CrossSectionPoint> generate_cloud(const std::vector<Eigen::Vector3d>& directions,
                                              const SearchConfig& cfg, const IngletonFrame& fr,
                                              bool optima_only = false);

/// `count` directions uniform on the unit sphere.
std::vector<Eigen::Vector3d> sample_directions(int count, std::uint64_t seed);

}  // namespace etk

#endif  // ETK_SEARCH_HPP
