#include "etk/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace etk {

namespace {

double checked(double v) {
  if (!std::isfinite(v)) throw std::domain_error("objective returned a non-finite value");
  return v;
}

}  // namespace

ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::domain_error("minimize_scalar needs lo < hi");
  if (!(tol > 0)) throw std::domain_error("minimize_scalar needs a positive tolerance");
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = checked(f(c));
  double fd = checked(f(d));
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = checked(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = checked(f(d));
    }
  }
  const double x = (a + b) / 2;
  return {x, checked(f(x))};
}

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& opt) {
  const Eigen::Index n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead needs at least one dimension");
  if (opt.max_evals <= 0) throw std::invalid_argument("nelder_mead needs a positive budget");

  NelderMeadResult result;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++result.evals;
    return checked(f(x));
  };

  std::vector<Eigen::VectorXd> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  values[0] = eval(x0);
  for (Eigen::Index d = 0; d < n && result.evals < opt.max_evals; ++d) {
    simplex[d + 1][d] += opt.initial_step;
    values[d + 1] = eval(simplex[d + 1]);
  }
  // Budget ran out while building the simplex.
  if (result.evals < n + 1) {
    const auto best = std::min_element(values.begin(), values.begin() + result.evals) - values.begin();
    return {simplex[best], values[best], result.evals, true};
  }

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    std::vector<Eigen::VectorXd> s(n + 1);
    std::vector<double> v(n + 1);
    for (std::size_t r = 0; r < order.size(); ++r) {
      s[r] = std::move(simplex[order[r]]);
      v[r] = values[order[r]];
    }
    simplex = std::move(s);
    values = std::move(v);
  };

  for (;;) {
    sort_simplex();
    double diameter = 0;
    for (Eigen::Index v = 1; v <= n; ++v) diameter = std::max(diameter, (simplex[v] - simplex[0]).norm());
    if (diameter < opt.diameter_tol) break;
    if (result.evals >= opt.max_evals) {
      result.budget_exhausted = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (Eigen::Index v = 0; v < n; ++v) centroid += simplex[v];
    centroid /= static_cast<double>(n);
    const Eigen::VectorXd& worst = simplex[n];

    const Eigen::VectorXd reflected = centroid + opt.reflection * (centroid - worst);
    const double fr = eval(reflected);
    if (fr < values[0]) {
      const Eigen::VectorXd expanded = centroid + opt.expansion * (reflected - centroid);
      const double fe = result.evals < opt.max_evals ? eval(expanded) : fr;
      if (fe < fr) {
        simplex[n] = expanded;
        values[n] = fe;
      } else {
        simplex[n] = reflected;
        values[n] = fr;
      }
      continue;
    }
    if (fr < values[n - 1]) {
      simplex[n] = reflected;
      values[n] = fr;
      continue;
    }
    if (result.evals >= opt.max_evals) continue;

    const bool outside = fr < values[n];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + opt.contraction * (reflected - centroid))
                : Eigen::VectorXd(centroid + opt.contraction * (worst - centroid));
    const double fc = eval(contracted);
    if (fc < (outside ? fr : values[n])) {
      simplex[n] = contracted;
      values[n] = fc;
      continue;
    }
    for (Eigen::Index v = 1; v <= n && result.evals < opt.max_evals; ++v) {
      simplex[v] = simplex[0] + opt.shrink * (simplex[v] - simplex[0]);
      values[v] = eval(simplex[v]);
    }
  }

  sort_simplex();
  result.x = simplex[0];
  result.value = values[0];
  return result;
}

}  // namespace etk
