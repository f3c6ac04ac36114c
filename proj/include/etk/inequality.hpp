#ifndef ETK_INEQUALITY_HPP
#define ETK_INEQUALITY_HPP

#include <array>
#include <string>
#include <vector>

#include "etk/four_frame.hpp"

namespace etk {

/// Linear inequality sum_I c_I h(I) >= 0, valid on entropic points.
///
/// Coefficients live on a ground set, indexed like SetFunction values; the
/// coefficient at the empty set is always zero.
struct LinearInequality {
  std::string name;
  GroundSet ground;
  Eigen::VectorXd coefficients;

  LinearInequality() = default;
  /// Throws std::invalid_argument when the size is wrong, the empty-set
  /// coefficient is nonzero, or every coefficient is zero.
  LinearInequality(std::string name, GroundSet ground, Eigen::VectorXd coefficients);
};

/// Halfspace a*alpha + b*beta + c*gamma + d*delta >= 0 over cross-section
/// weights.
struct CrossSectionHalfspace {
  std::string name;
  std::array<double, 4> abcd{0, 0, 0, 0};

  CrossSectionHalfspace() = default;
  /// Throws std::invalid_argument when all four coefficients vanish.
  CrossSectionHalfspace(std::string name, std::array<double, 4> abcd);

  double margin(const CrossSectionPoint& w) const {
    return abcd[0] * w.alpha_w + abcd[1] * w.beta_w + abcd[2] * w.gamma_w + abcd[3] * w.delta_w;
  }
};

/// Scalar product of the coefficients with h; throws std::invalid_argument on
/// a ground-set mismatch.
double evaluate(const LinearInequality& ineq, const SetFunction& h);

/// True iff for every element the coefficients of sets containing it sum to
/// zero within 1e-12.
bool is_balanced(const LinearInequality& ineq);

/// The Ingleton expression of the frame as an inequality.
LinearInequality ingleton_inequality(const GroundSet& ground, const IngletonFrame& fr);

/// 2 stv + [D_{ik|l} + D_{il|k} + D_{kl|i}] + [D_{jk|l} + D_{jl|k} + D_{kl|j}] >= 0.
LinearInequality symmetrized_zhang_yeung(const GroundSet& ground, const IngletonFrame& fr);

/// One member of the DFZ sequence for s >= 0:
/// (2^s - 1) stv + D_{kl|i} + s 2^(s-1) [D_{ik|l} + D_{il|k}]
///   + ((s-2) 2^(s-1) + 1) [D_{jk|l} + D_{jl|k}] >= 0.
LinearInequality dfz_inequality(const GroundSet& ground, const IngletonFrame& fr, int s);

/// beta + ((s-1) 2^s + 1) delta - (2^s - 1)/2 alpha >= 0, for 1 <= s <= 20.
/// Sum of dfz_inequality and its i <-> j instance in cross-section weights.
CrossSectionHalfspace dfz_halfspace(int s);

/// beta + delta - alpha/2 >= 0.
CrossSectionHalfspace zhang_yeung_halfspace();

/// Halfspace that agrees with `ineq` on every point of the cross-section:
/// its coefficients are the inequality evaluated at the four vertices.
CrossSectionHalfspace to_halfspace(const LinearInequality& ineq, const IngletonFrame& fr);

/// dfz_halfspace(1..max_s).
std::vector<CrossSectionHalfspace> dfz_bank(int max_s);

struct HalfspaceCheck {
  std::string name;
  double margin = 0;
  bool satisfied = false;
};

struct PointReport {
  std::vector<HalfspaceCheck> checks;
  bool all_satisfied() const;
};

/// Evaluates every halfspace at w; satisfied means margin >= -tol.
PointReport check_point(const CrossSectionPoint& w, const std::vector<CrossSectionHalfspace>& bank,
                        double tol = kEntropicTol);

}  // namespace etk

#endif  // ETK_INEQUALITY_HPP
