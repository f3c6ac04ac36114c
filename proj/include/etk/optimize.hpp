#ifndef ETK_OPTIMIZE_HPP
#define ETK_OPTIMIZE_HPP

#include <functional>

#include <Eigen/Core>

namespace etk {

struct ScalarMinimum {
  double x = 0;
  double value = 0;
};

/// Golden-section search on [lo, hi]. For unimodal f the returned x is within
/// `tol` of the minimizer. Throws std::domain_error if f returns a non-finite
/// value or the bracket is empty.
ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              double tol = 1e-8);

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  /// Edge length of the initial simplex along each coordinate axis.
  double initial_step = 1.0;
  /// Stop when every vertex is within this distance of the best one.
  double diameter_tol = 1e-10;
  long max_evals = 20000;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0;
  long evals = 0;
  bool budget_exhausted = false;
};

/// Downhill simplex minimization of f starting from x0.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& options = {});

}  // namespace etk

#endif  // ETK_OPTIMIZE_HPP
